#include "oracles.hpp"

#include <algorithm>

namespace oracle {

Raster::Raster(const IndexDomain& d, std::vector<LineSpan> h, std::vector<LineSpan> v)
    : domain(d) {
  h.push_back({d.n_lo, {d.m_lo, d.m_hi}});
  h.push_back({d.n_hi, {d.m_lo, d.m_hi}});
  v.push_back({d.m_lo, {d.n_lo, d.n_hi}});
  v.push_back({d.m_hi, {d.n_lo, d.n_hi}});
  for (const LineSpan& s : h)
    for (int x = s.span.lo; x < s.span.hi; ++x)
      h_edges.insert({{x, s.line}, {x + 1, s.line}});
  for (const LineSpan& s : v)
    for (int y = s.span.lo; y < s.span.hi; ++y)
      v_edges.insert({{s.line, y}, {s.line, y + 1}});
}

int Raster::valence(const IndexPoint& p) const {
  return int(h_edge(p.x - 1, p.y)) + int(h_edge(p.x, p.y)) + int(v_edge(p.x, p.y - 1)) +
         int(v_edge(p.x, p.y));
}

bool Raster::vertex(const IndexPoint& p) const {
  return valence(p) >= 3 || domain.is_corner(p);
}

bool Raster::on_h(const IndexPoint& p) const { return h_edge(p.x - 1, p.y) || h_edge(p.x, p.y); }
bool Raster::on_v(const IndexPoint& p) const { return v_edge(p.x, p.y - 1) || v_edge(p.x, p.y); }

int Raster::count_vertices() const {
  int n = 0;
  for (int y = domain.n_lo; y <= domain.n_hi; ++y)
    for (int x = domain.m_lo; x <= domain.m_hi; ++x) n += vertex({x, y});
  return n;
}

int Raster::count_anchors() const {
  int n = 0;
  for (int y = domain.n_lo + 2; y <= domain.n_hi - 2; ++y)
    for (int x = domain.m_lo + 2; x <= domain.m_hi - 2; ++x) n += vertex({x, y});
  return n;
}

int Raster::count_segments(astk::Axis axis) const {
  int n = 0;
  if (axis == astk::Axis::Horizontal) {
    for (int y = domain.n_lo; y <= domain.n_hi; ++y)
      for (int x = domain.m_lo; x <= domain.m_hi; ++x)
        if (h_edge(x, y) && !h_edge(x - 1, y)) ++n;  // run start
  } else {
    for (int x = domain.m_lo; x <= domain.m_hi; ++x)
      for (int y = domain.n_lo; y <= domain.n_hi; ++y)
        if (v_edge(x, y) && !v_edge(x, y - 1)) ++n;
  }
  return n;
}

std::vector<int> Raster::trace_cols(int row) const {
  std::vector<int> out;
  for (int x = domain.m_lo; x <= domain.m_hi; ++x)
    if (on_v({x, row})) out.push_back(x);
  return out;
}

std::vector<int> Raster::trace_rows(int col) const {
  std::vector<int> out;
  for (int y = domain.n_lo; y <= domain.n_hi; ++y)
    if (on_h({col, y})) out.push_back(y);
  return out;
}

Poly Poly::monomial(int degree) {
  Poly p;
  p.c.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
  p.c.back() = 1;
  return p;
}

Poly Poly::linear(const Rational& root) {
  Poly p;
  p.c = {-root, Rational(1)};
  return p;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  r.c.assign(c.size() + o.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  return r;
}

Poly Poly::derivative() const {
  Poly r;
  if (c.size() <= 1) {
    r.c = {Rational(0)};
    return r;
  }
  for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(Rational(static_cast<long>(i)) * c[i]);
  return r;
}

Rational Poly::operator()(const Rational& t) const {
  Rational acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

Rational dual_poly(const std::array<Rational, 5>& knots, const Rational& tau, const Poly& f) {
  Poly psi = Poly::linear(knots[1]) * Poly::linear(knots[2]) * Poly::linear(knots[3]);
  Poly psi1 = psi.derivative(), psi2 = psi1.derivative(), psi3 = psi2.derivative();
  Poly f1 = f.derivative(), f2 = f1.derivative(), f3 = f2.derivative();
  return (psi3(tau) * f(tau) - psi2(tau) * f1(tau) + psi1(tau) * f2(tau) - psi(tau) * f3(tau)) /
         Rational(6);
}

int rank_oracle(RatMatrix m) {
  // Gauss-Jordan on the transpose, normalizing every pivot row
  RatMatrix a = m.transpose();
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(rank));
    Rational inv = a(rank, c);
    for (int k = c; k < cols; ++k) a(rank, k) /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (int k = c; k < cols; ++k) a(r, k) -= f * a(rank, k);
    }
    ++rank;
  }
  return rank;
}

RatMatrix boehm_insertion(const std::vector<Rational>& knots, const Rational& x) {
  const int p = 3;
  int n_coarse = static_cast<int>(knots.size()) - p - 1;
  int n_fine = n_coarse + 1;
  int k = 0;  // span with knots[k] <= x < knots[k+1]
  while (k + 1 < static_cast<int>(knots.size()) && !(knots[static_cast<std::size_t>(k)] <= x &&
                                                     x < knots[static_cast<std::size_t>(k) + 1]))
    ++k;
  RatMatrix a = RatMatrix::Zero(n_fine, n_coarse);
  for (int i = 0; i < n_fine; ++i) {
    if (i <= k - p) {
      a(i, i) = 1;
    } else if (i <= k) {
      const Rational &lo = knots[static_cast<std::size_t>(i)],
                     &hi = knots[static_cast<std::size_t>(i) + p];
      Rational alpha = (x - lo) / (hi - lo);
      a(i, i) = alpha;
      a(i, i - 1) = Rational(1) - alpha;
    } else {
      a(i, i - 1) = 1;
    }
  }
  return a;
}

RatMatrix knot_insertion_matrix(const std::vector<Rational>& coarse,
                                const std::vector<Rational>& fine) {
  std::vector<Rational> work = coarse;
  RatMatrix total = RatMatrix::Identity(static_cast<int>(coarse.size()) - 4,
                                        static_cast<int>(coarse.size()) - 4);
  for (const Rational& x : fine) {
    if (std::count(work.begin(), work.end(), x) >= std::count(fine.begin(), fine.end(), x))
      continue;
    RatMatrix step = boehm_insertion(work, x);
    total = (step * total).eval();
    work.insert(std::upper_bound(work.begin(), work.end(), x), x);
  }
  return total;
}

astk::TMesh tensor_mesh(int m, int n) {
  IndexDomain d(0, m, 0, n);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= n; ++r) h.push_back({r, {0, m}});
  for (int c = 0; c <= m; ++c) v.push_back({c, {0, n}});
  return astk::TMesh::build(d, h, v);
}

astk::TMesh single_tj_mesh() {
  IndexDomain d(0, 10, 0, 9);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= 9; ++r) h.push_back({r, {0, 10}});
  for (int c = 0; c <= 10; ++c)
    if (c != 5) v.push_back({c, {0, 9}});
  v.push_back({5, {4, 9}});
  return astk::TMesh::build(d, h, v);
}

astk::TMesh bezier_mesh() { return tensor_mesh(7, 7); }

astk::GlobalKnots bezier_knots() {
  astk::GlobalKnots k;
  k.m_lo = k.n_lo = 0;
  for (int i = 0; i <= 7; ++i) {
    k.xi.push_back(i < 4 ? Rational(0) : Rational(1));
    k.eta.push_back(i < 4 ? Rational(0) : Rational(1));
  }
  return k;
}

astk::TMesh facing_overlap_mesh() {
  IndexDomain d(0, 10, 0, 9);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= 9; ++r) h.push_back({r, {0, 10}});
  for (int c = 0; c <= 10; ++c)
    if (c != 5) v.push_back({c, {0, 9}});
  v.push_back({5, {0, 2}});
  v.push_back({5, {4, 9}});
  return astk::TMesh::build(d, h, v);
}

astk::TMesh crossing_mesh() {
  IndexDomain d(0, 12, 0, 12);
  std::vector<LineSpan> h, v;
  for (int r : {0, 1, 2, 3, 9, 10, 11, 12}) h.push_back({r, {0, 12}});
  for (int c : {0, 1, 2, 3, 9, 10, 11, 12}) v.push_back({c, {0, 12}});
  h.push_back({6, {0, 5}});   // right end is a right-open junction at (5,6)
  v.push_back({5, {3, 12}});  // crosses row 6, carries a bottom-open junction at (5,3)
  v.push_back({7, {0, 3}});   // top-open junction at (7,3), face reaches row 9
  return astk::TMesh::build(d, h, v);
}

astk::TMesh tensor_minus_col5_mesh() {
  IndexDomain d(0, 10, 0, 9);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= 9; ++r) h.push_back({r, {0, 10}});
  for (int c = 0; c <= 10; ++c)
    if (c != 5) v.push_back({c, {0, 9}});
  return astk::TMesh::build(d, h, v);
}

astk::GlobalKnots uniform_knots(const IndexDomain& d) { return astk::GlobalKnots::uniform(d); }

}  // namespace oracle
