#include "astk/spline.hpp"

#include <algorithm>

namespace astk {

void GlobalKnots::validate(const IndexDomain& domain) const {
  if (static_cast<int>(xi.size()) != domain.width() + 1 ||
      static_cast<int>(eta.size()) != domain.height() + 1)
    fail(ErrorCode::InvalidArgument, "knot vector length must match the index domain");
  if (m_lo != domain.m_lo || n_lo != domain.n_lo)
    fail(ErrorCode::InvalidArgument, "knot vector offset must match the index domain");
  auto check = [&](const std::vector<Rational>& k, const char* name) {
    for (std::size_t i = 1; i < k.size(); ++i)
      if (k[i] < k[i - 1]) fail(ErrorCode::InvalidArgument, std::string(name) + " not sorted");
    std::size_t i = 0;
    while (i < k.size()) {
      std::size_t j = i;
      while (j + 1 < k.size() && k[j + 1] == k[i]) ++j;
      std::size_t mult = j - i + 1;
      bool at_end = i == 0 || j == k.size() - 1;
      if (mult > (at_end ? 4u : 3u))
        fail(ErrorCode::InvalidArgument,
             std::string(name) + " multiplicity " + std::to_string(mult) + " too high");
      i = j + 1;
    }
  };
  check(xi, "xi");
  check(eta, "eta");
}

bool GlobalKnots::has_multiplicities() const {
  for (std::size_t i = 1; i < xi.size(); ++i)
    if (xi[i] == xi[i - 1]) return true;
  for (std::size_t i = 1; i < eta.size(); ++i)
    if (eta[i] == eta[i - 1]) return true;
  return false;
}

GlobalKnots GlobalKnots::uniform(const IndexDomain& domain) {
  GlobalKnots g;
  g.m_lo = domain.m_lo;
  g.n_lo = domain.n_lo;
  for (int i = domain.m_lo; i <= domain.m_hi; ++i) g.xi.push_back(i);
  for (int j = domain.n_lo; j <= domain.n_hi; ++j) g.eta.push_back(j);
  return g;
}

template <typename Scalar>
Scalar bspline_eval(const std::array<Scalar, 5>& t, const Scalar& x, int deriv) {
  if (t[0] == t[4]) fail(ErrorCode::DegenerateKnotVector, "all five knots equal");
  if (deriv < 0 || deriv > 3) fail(ErrorCode::InvalidArgument, "deriv must be 0..3");
  if (x < t[0] || x >= t[4]) return Scalar(0);

  // degree-0 seeds, then Cox-de Boor up to degree 3 - deriv
  std::array<Scalar, 4> n;
  for (int i = 0; i < 4; ++i) n[i] = (t[i] <= x && x < t[i + 1]) ? Scalar(1) : Scalar(0);
  int top = 3 - deriv;
  for (int k = 1; k <= top; ++k)
    for (int i = 0; i + k < 4; ++i) {
      Scalar acc(0);
      if (t[i + k] != t[i]) acc += (x - t[i]) / (t[i + k] - t[i]) * n[i];
      if (t[i + k + 1] != t[i + 1]) acc += (t[i + k + 1] - x) / (t[i + k + 1] - t[i + 1]) * n[i + 1];
      n[i] = acc;
    }
  // derivative ladder: values of degree (3-deriv) combine with factor k
  for (int k = top + 1; k <= 3; ++k)
    for (int i = 0; i + k < 4; ++i) {
      Scalar acc(0);
      if (t[i + k] != t[i]) acc += Scalar(k) / (t[i + k] - t[i]) * n[i];
      if (t[i + k + 1] != t[i + 1]) acc -= Scalar(k) / (t[i + k + 1] - t[i + 1]) * n[i + 1];
      n[i] = acc;
    }
  return n[0];
}

template double bspline_eval<double>(const std::array<double, 5>&, const double&, int);
template Rational bspline_eval<Rational>(const std::array<Rational, 5>&, const Rational&, int);

std::pair<std::array<int, 5>, std::array<int, 5>> index_vectors(const TMesh& mesh,
                                                                const IndexPoint& anchor) {
  if (!mesh.is_vertex(anchor) || !mesh.domain().in_active_region(anchor))
    fail(ErrorCode::NotAnAnchor, to_string(anchor));
  auto window = [&](Axis axis) {
    std::vector<int> tr = mesh.trace(anchor, axis);
    int own = axis == Axis::Horizontal ? anchor.x : anchor.y;
    auto it = std::lower_bound(tr.begin(), tr.end(), own);
    std::size_t pos = static_cast<std::size_t>(it - tr.begin());
    if (pos < 2 || pos + 2 >= tr.size())
      fail(ErrorCode::InsufficientTrace,
           "anchor " + to_string(anchor) + " has no centered five-index window");
    return std::array<int, 5>{tr[pos - 2], tr[pos - 1], tr[pos], tr[pos + 1], tr[pos + 2]};
  };
  return {window(Axis::Horizontal), window(Axis::Vertical)};
}

bool AnchorFunction::support_overlaps(const Rational& x0, const Rational& x1, const Rational& y0,
                                      const Rational& y1) const {
  return xi_local[0] < x1 && x0 < xi_local[4] && eta_local[0] < y1 && y0 < eta_local[4];
}

SplineSpace::SplineSpace(TMesh mesh, GlobalKnots knots)
    : mesh_(std::move(mesh)), knots_(std::move(knots)), ext_(extend(mesh_)) {
  knots_.validate(mesh_.domain());
  const IndexDomain& d = mesh_.domain();
  xi_min_ = knots_.xi_at(d.m_lo + 3);
  xi_max_ = knots_.xi_at(d.m_hi - 3);
  eta_min_ = knots_.eta_at(d.n_lo + 3);
  eta_max_ = knots_.eta_at(d.n_hi - 3);

  for (const IndexPoint& a : anchors(mesh_)) {
    AnchorFunction f;
    f.anchor = a;
    std::tie(f.hv, f.vv) = index_vectors(mesh_, a);
    for (int k = 0; k < 5; ++k) {
      f.xi_local[k] = knots_.xi_at(f.hv[k]);
      f.eta_local[k] = knots_.eta_at(f.vv[k]);
      f.xi_d[k] = to_double(f.xi_local[k]);
      f.eta_d[k] = to_double(f.eta_local[k]);
    }
    functions_.push_back(std::move(f));
  }

  for (const IndexRect& q : ext_.ext_mesh.elements()) {
    ParamElement e;
    e.x0 = knots_.xi_at(q.x0);
    e.x1 = knots_.xi_at(q.x1);
    e.y0 = knots_.eta_at(q.y0);
    e.y1 = knots_.eta_at(q.y1);
    e.preimage = q;
    if (e.x0 == e.x1 || e.y0 == e.y1) continue;                  // empty in parameter space
    if (e.x1 <= xi_min_ || e.x0 >= xi_max_ || e.y1 <= eta_min_ || e.y0 >= eta_max_)
      continue;                                                  // misses the reduced domain
    for (int i = 0; i < size(); ++i)
      if (functions_[static_cast<std::size_t>(i)].support_overlaps(e.x0, e.x1, e.y0, e.y1))
        e.active.push_back(i);
    elements_.push_back(std::move(e));
  }
}

int SplineSpace::function_index(const IndexPoint& p) const {
  for (int i = 0; i < size(); ++i)
    if (functions_[static_cast<std::size_t>(i)].anchor == p) return i;
  fail(ErrorCode::NotAnAnchor, to_string(p));
}

bool SplineSpace::in_reduced_domain(double x, double y) const {
  return to_double(xi_min_) <= x && x <= to_double(xi_max_) && to_double(eta_min_) <= y &&
         y <= to_double(eta_max_);
}

int SplineSpace::element_at(double x, double y) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const ParamElement& e = elements_[i];
    if (to_double(e.x0) <= x && x < to_double(e.x1) && to_double(e.y0) <= y &&
        y < to_double(e.y1))
      return static_cast<int>(i);
  }
  return -1;
}

double SplineSpace::blending_eval(int fi, double x, double y, int dx, int dy) const {
  if (!in_reduced_domain(x, y))
    fail(ErrorCode::OutsideReducedDomain,
         "(" + format_double(x) + "," + format_double(y) + ")");
  const AnchorFunction& f = functions_[static_cast<std::size_t>(fi)];
  return bspline_eval<double>(f.xi_d, x, dx) * bspline_eval<double>(f.eta_d, y, dy);
}

double SplineSpace::sum_at(double x, double y) const {
  int ei = element_at(x, y);
  double s = 0;
  if (ei >= 0) {
    for (int fi : elements_[static_cast<std::size_t>(ei)].active) s += blending_eval(fi, x, y);
  } else {
    for (int fi = 0; fi < size(); ++fi) s += blending_eval(fi, x, y);
  }
  return s;
}

}  // namespace astk
