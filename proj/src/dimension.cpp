#include "astk/dimension.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "astk/perturb.hpp"

namespace astk {

RatMatrix ConstraintSystem::matrix() const {
  RatMatrix m = RatMatrix::Zero(rows(), cols());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const SegmentBlock& blk = blocks[b];
    for (std::size_t k = 0; k < blk.cols.size(); ++k) {
      const Rational& t = blk.abscissae[k];
      int c = blk.cols[k];
      m(4 * static_cast<int>(b) + 0, c) = 1;
      m(4 * static_cast<int>(b) + 1, c) = Rational(-3) * t;
      m(4 * static_cast<int>(b) + 2, c) = Rational(3) * t * t;
      m(4 * static_cast<int>(b) + 3, c) = Rational(-1) * t * t * t;
    }
  }
  return m;
}

ConstraintSystem assemble(const ExtendedTMesh& ext_mesh, const GlobalKnots& knots) {
  const TMesh& tx = ext_mesh.ext_mesh;
  ConstraintSystem sys;
  sys.domain = tx.domain();
  sys.columns = tx.vertices();
  std::map<IndexPoint, int> col_of;
  for (std::size_t i = 0; i < sys.columns.size(); ++i)
    col_of[sys.columns[i]] = static_cast<int>(i);

  for (const Segment& seg : segments(tx).all) {
    SegmentBlock blk;
    blk.axis = seg.axis;
    blk.line = seg.line;
    blk.span = seg.span;
    for (const IndexPoint& v : seg.vertices) {
      blk.cols.push_back(col_of.at(v));
      blk.abscissae.push_back(seg.axis == Axis::Horizontal ? knots.xi_at(v.x)
                                                           : knots.eta_at(v.y));
    }
    for (std::size_t k = 1; k < blk.abscissae.size(); ++k)
      if (blk.abscissae[k] == blk.abscissae[k - 1])
        fail(ErrorCode::KnotMultiplicityPresent,
             "repeated abscissa on a segment; take the perturbation path");
    sys.blocks.push_back(std::move(blk));
  }
  return sys;
}

ReducedSystem simplify(const ConstraintSystem& system) {
  const IndexDomain& d = system.domain;
  std::set<int> removed_rows{d.n_lo, d.n_lo + 1, d.n_hi - 1, d.n_hi};
  std::set<int> removed_cols{d.m_lo, d.m_lo + 1, d.m_hi - 1, d.m_hi};
  auto vertex_removed = [&](const IndexPoint& p) {
    return removed_rows.count(p.y) && removed_cols.count(p.x);
  };

  ReducedSystem red;
  red.system.domain = d;
  std::vector<int> new_col(system.columns.size(), -1);
  for (std::size_t i = 0; i < system.columns.size(); ++i) {
    if (vertex_removed(system.columns[i])) continue;
    new_col[i] = static_cast<int>(red.system.columns.size());
    red.system.columns.push_back(system.columns[i]);
  }
  for (const SegmentBlock& blk : system.blocks) {
    bool removed = (blk.axis == Axis::Horizontal && removed_rows.count(blk.line)) ||
                   (blk.axis == Axis::Vertical && removed_cols.count(blk.line));
    if (removed) continue;
    SegmentBlock nb;
    nb.axis = blk.axis;
    nb.line = blk.line;
    nb.span = blk.span;
    for (std::size_t k = 0; k < blk.cols.size(); ++k) {
      int nc = new_col[static_cast<std::size_t>(blk.cols[k])];
      if (nc < 0) continue;  // only the sixteen corner-block vertices vanish
      nb.cols.push_back(nc);
      nb.abscissae.push_back(blk.abscissae[k]);
    }
    red.system.blocks.push_back(std::move(nb));
  }
  red.n_segments = static_cast<int>(red.system.blocks.size());
  red.n_vertices = static_cast<int>(red.system.columns.size());
  return red;
}

int rank_exact(RatMatrix m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(rank));
    for (int r = rank + 1; r < rows; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(rank, c);
      m(r, c) = 0;
      for (int k = c + 1; k < cols; ++k)
        if (m(rank, k) != 0) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

int nullity(const RatMatrix& m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  if (rows == 0 || cols == 0) return cols;

  // clear denominators row-wise, then fraction-free Bareiss with full pivoting
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows),
                                        std::vector<mpz_class>(static_cast<std::size_t>(cols)));
  for (int r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    for (int c = 0; c < cols; ++c) {
      Rational q = m(r, c);
      q.canonicalize();
      mpz_class den = q.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    for (int c = 0; c < cols; ++c) {
      Rational q = m(r, c);
      q.canonicalize();
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          q.get_num() * (lcm / q.get_den());
    }
  }

  int rank = 0;
  mpz_class prev = 1;
  std::vector<int> col_order(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) col_order[static_cast<std::size_t>(c)] = c;
  while (rank < rows && rank < cols) {
    int pr = -1, pc = -1;
    for (int r = rank; r < rows && pr < 0; ++r)
      for (int c = rank; c < cols; ++c)
        if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col_order[static_cast<std::size_t>(c)])] != 0) {
          pr = r;
          pc = c;
          break;
        }
    if (pr < 0) break;
    std::swap(a[static_cast<std::size_t>(pr)], a[static_cast<std::size_t>(rank)]);
    std::swap(col_order[static_cast<std::size_t>(pc)], col_order[static_cast<std::size_t>(rank)]);
    const mpz_class& piv =
        a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col_order[static_cast<std::size_t>(rank)])];
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = rank + 1; c < cols; ++c) {
        std::size_t cc = static_cast<std::size_t>(col_order[static_cast<std::size_t>(c)]);
        std::size_t cp = static_cast<std::size_t>(col_order[static_cast<std::size_t>(rank)]);
        mpz_class val = piv * a[static_cast<std::size_t>(r)][cc] -
                        a[static_cast<std::size_t>(r)][cp] * a[static_cast<std::size_t>(rank)][cc];
        mpz_divexact(val.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
        a[static_cast<std::size_t>(r)][cc] = val;
      }
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col_order[static_cast<std::size_t>(rank)])] = 0;
    }
    prev = piv;
    ++rank;
  }
  return cols - rank;
}

int system_nullity(const ConstraintSystem& system) {
  // coordinates of null(M_h): one divided-difference window per five
  // consecutive vertices of each horizontal block, plus a unit coordinate
  // for every column on no horizontal block
  struct Coord {
    std::vector<std::pair<int, Rational>> weights;  // (column, weight)
  };
  std::vector<Coord> coords;
  std::vector<char> on_h(static_cast<std::size_t>(system.cols()), 0);

  for (const SegmentBlock& blk : system.blocks) {
    if (blk.axis != Axis::Horizontal) continue;
    for (int c : blk.cols) on_h[static_cast<std::size_t>(c)] = 1;
    int n = static_cast<int>(blk.cols.size());
    for (int w = 0; w + 4 < n; ++w) {
      Coord coord;
      for (int i = w; i <= w + 4; ++i) {
        Rational weight = 1;
        for (int j = w; j <= w + 4; ++j)
          if (j != i) weight /= blk.abscissae[static_cast<std::size_t>(i)] -
                                blk.abscissae[static_cast<std::size_t>(j)];
        coord.weights.push_back({blk.cols[static_cast<std::size_t>(i)], weight});
      }
      coords.push_back(std::move(coord));
    }
  }
  std::vector<char> on_v(static_cast<std::size_t>(system.cols()), 0);
  for (const SegmentBlock& blk : system.blocks)
    if (blk.axis == Axis::Vertical)
      for (int c : blk.cols) on_v[static_cast<std::size_t>(c)] = 1;

  int fully_free = 0;
  for (int c = 0; c < system.cols(); ++c) {
    if (on_h[static_cast<std::size_t>(c)]) continue;
    if (!on_v[static_cast<std::size_t>(c)]) {
      ++fully_free;  // constrained by nothing at all
      continue;
    }
    Coord coord;
    coord.weights.push_back({c, Rational(1)});
    coords.push_back(std::move(coord));
  }

  // vertical conformality conditions expressed in those coordinates
  std::vector<std::pair<int, int>> v_block_of(static_cast<std::size_t>(system.cols()), {-1, -1});
  std::vector<const SegmentBlock*> v_blocks;
  for (const SegmentBlock& blk : system.blocks) {
    if (blk.axis != Axis::Vertical) continue;
    int b = static_cast<int>(v_blocks.size());
    v_blocks.push_back(&blk);
    for (std::size_t k = 0; k < blk.cols.size(); ++k)
      v_block_of[static_cast<std::size_t>(blk.cols[k])] = {b, static_cast<int>(k)};
  }

  RatMatrix c_mat = RatMatrix::Zero(4 * static_cast<int>(v_blocks.size()),
                                    static_cast<int>(coords.size()));
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (const auto& [col, weight] : coords[j].weights) {
      auto [b, k] = v_block_of[static_cast<std::size_t>(col)];
      if (b < 0) continue;  // vertex with no vertical block (reduced systems)
      const Rational& t = v_blocks[static_cast<std::size_t>(b)]->abscissae[static_cast<std::size_t>(k)];
      c_mat(4 * b + 0, static_cast<int>(j)) += weight;
      c_mat(4 * b + 1, static_cast<int>(j)) += Rational(-3) * t * weight;
      c_mat(4 * b + 2, static_cast<int>(j)) += Rational(3) * t * t * weight;
      c_mat(4 * b + 3, static_cast<int>(j)) += Rational(-1) * t * t * t * weight;
    }

  return fully_free + static_cast<int>(coords.size()) - rank_exact(std::move(c_mat));
}

long dim_formula(const ExtendedTMesh& ext_mesh) {
  return static_cast<long>(ext_mesh.n_active) + ext_mesh.n_crossing + ext_mesh.n_overlap;
}

DiagonalizableResult diagonalizable_order(const ReducedSystem& reduced) {
  const auto& blocks = reduced.system.blocks;
  int n = static_cast<int>(blocks.size());
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> use_count(static_cast<std::size_t>(reduced.system.cols()), 0);
  for (const SegmentBlock& blk : blocks)
    for (int c : blk.cols) use_count[static_cast<std::size_t>(c)]++;

  auto sort_key = [&](int b) {  // bottommost, then leftmost
    const SegmentBlock& blk = blocks[static_cast<std::size_t>(b)];
    int y = blk.axis == Axis::Horizontal ? blk.line : blk.span.lo;
    int x = blk.axis == Axis::Horizontal ? blk.span.lo : blk.line;
    return std::tuple<int, int, int>(y, x, blk.axis == Axis::Horizontal ? 0 : 1);
  };

  DiagonalizableResult res;
  std::vector<int> peel;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int b = 0; b < n; ++b) {
      if (!alive[static_cast<std::size_t>(b)]) continue;
      int private_count = 0;
      for (int c : blocks[static_cast<std::size_t>(b)].cols)
        if (use_count[static_cast<std::size_t>(c)] == 1) ++private_count;
      if (private_count < 4) continue;
      if (best < 0 || sort_key(b) < sort_key(best)) best = b;
    }
    if (best < 0) {
      for (int b = 0; b < n; ++b)
        if (alive[static_cast<std::size_t>(b)]) res.stuck.push_back(b);
      res.ok = false;
      return res;
    }
    peel.push_back(best);
    alive[static_cast<std::size_t>(best)] = 0;
    for (int c : blocks[static_cast<std::size_t>(best)].cols)
      use_count[static_cast<std::size_t>(c)]--;
  }
  res.ok = true;
  res.order.assign(peel.rbegin(), peel.rend());
  return res;
}

DimensionReport dimension_report(const TMesh& mesh, const GlobalKnots& knots,
                                 bool allow_perturbation) {
  DimensionReport rep;
  rep.admissible = validate_admissible(mesh).admissible();
  rep.analysis_suitable = rep.admissible && is_analysis_suitable(mesh);
  rep.n_anchors = static_cast<int>(anchors(mesh).size());

  const TMesh* work_mesh = &mesh;
  const GlobalKnots* work_knots = &knots;
  PerturbResult per;
  if (knots.has_multiplicities()) {
    if (!allow_perturbation)
      fail(ErrorCode::KnotMultiplicityPresent,
           "global knots carry multiplicities; enable the perturbation path");
    per = perturb(mesh, knots, Rational(1, 64), PerturbCoeffs{});
    work_mesh = &per.mesh.mesh;
    work_knots = &per.knots.knots;
    rep.used_perturbation = true;
  }

  ExtendedTMesh em = extend(*work_mesh);
  rep.formula = dim_formula(em);
  rep.n_active = em.n_active;
  rep.n_crossing = em.n_crossing;
  rep.n_overlap = em.n_overlap;
  rep.n_extended = em.n_extended;
  rep.n_ext_vertices = em.n_ext_vertices;

  ConstraintSystem sys = assemble(em, *work_knots);
  rep.n_ext_segments = static_cast<int>(sys.blocks.size());
  rep.nullity_full = system_nullity(sys);

  ReducedSystem red = simplify(sys);
  rep.n_reduced_segments = red.n_segments;
  rep.n_reduced_vertices = red.n_vertices;
  rep.nullity_reduced = system_nullity(red.system);

  DiagonalizableResult diag = diagonalizable_order(red);
  rep.diagonalizable = diag.ok;
  rep.full_rank = (red.system.cols() - rep.nullity_reduced) == 4 * red.n_segments;
  rep.applicable = rep.admissible && rep.full_rank;
  rep.agree = rep.applicable && rep.formula == rep.nullity_full;
  rep.matches_anchor_count = rep.analysis_suitable && rep.n_crossing == 0 &&
                             rep.n_overlap == 0 && rep.nullity_full == rep.n_anchors;
  return rep;
}

}  // namespace astk
