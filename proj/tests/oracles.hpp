#pragma once

// Brute-force reference implementations used as independent oracles by the
// unit and acceptance suites. Everything here recomputes results from first
// principles and deliberately avoids the library's own code paths.

#include <array>
#include <set>
#include <vector>

#include "astk/rational.hpp"
#include "astk/spline.hpp"
#include "astk/tmesh.hpp"

namespace oracle {

using astk::IndexDomain;
using astk::IndexPoint;
using astk::LineSpan;
using astk::RatMatrix;
using astk::Rational;

/// Lattice raster built directly from raw span lists (domain boundary added),
/// bypassing TMesh entirely.
struct Raster {
  IndexDomain domain;
  std::set<std::pair<IndexPoint, IndexPoint>> h_edges, v_edges;  // unit edges

  Raster(const IndexDomain& d, std::vector<LineSpan> h, std::vector<LineSpan> v);

  bool h_edge(int x, int y) const { return h_edges.count({{x, y}, {x + 1, y}}) > 0; }
  bool v_edge(int x, int y) const { return v_edges.count({{x, y}, {x, y + 1}}) > 0; }
  int valence(const IndexPoint& p) const;
  bool vertex(const IndexPoint& p) const;
  bool on_h(const IndexPoint& p) const;
  bool on_v(const IndexPoint& p) const;

  int count_vertices() const;
  int count_anchors() const;
  /// maximal runs per direction
  int count_segments(astk::Axis axis) const;
  std::vector<int> trace_cols(int row) const;  // columns where the vertical skeleton crosses
  std::vector<int> trace_rows(int col) const;
};

/// Dense polynomial over the rationals, coefficients[k] multiplies t^k.
struct Poly {
  std::vector<Rational> c;

  static Poly monomial(int degree);            // t^degree
  static Poly linear(const Rational& root);    // (t - root)
  Poly operator*(const Poly& o) const;
  Poly derivative() const;
  Rational operator()(const Rational& t) const;
};

/// de Boor-Fix functional applied to a polynomial argument via symbolic
/// expansion: (1/6) sum (-1)^r psi^(3-r)(tau) f^(r)(tau).
Rational dual_poly(const std::array<Rational, 5>& knots, const Rational& tau, const Poly& f);

/// Independent rank by Gauss-Jordan on the transpose with full normalization.
int rank_oracle(RatMatrix m);
inline int nullity_oracle(const RatMatrix& m) {
  return static_cast<int>(m.cols()) - rank_oracle(m);
}

/// Single cubic knot insertion (Boehm): returns the matrix taking the spline
/// coefficients on `knots` to coefficients on `knots` with `x` inserted.
/// Rows index fine functions, columns coarse functions.
RatMatrix boehm_insertion(const std::vector<Rational>& knots, const Rational& x);

/// Repeated Boehm insertions turning `coarse` into `fine` (fine must contain
/// coarse as a subsequence).
RatMatrix knot_insertion_matrix(const std::vector<Rational>& coarse,
                                const std::vector<Rational>& fine);

// canonical test meshes ------------------------------------------------------

/// Full tensor-product grid on [0,m] x [0,n].
astk::TMesh tensor_mesh(int m, int n);

/// [0,10] x [0,9], all lines full except column 5 restricted to rows [4,9];
/// exactly one T-junction (a bottom-open one) at (5,4).
astk::TMesh single_tj_mesh();

/// Tensor grid on [0,7]^2; with knots (0,0,0,0,1,1,1,1)^2 the sixteen
/// blending functions are the bicubic Bernstein polynomials.
astk::TMesh bezier_mesh();
astk::GlobalKnots bezier_knots();

/// [0,10] x [0,9], full grid except column 5 carrying rows [0,2] and [4,9]:
/// two facing vertical T-junctions whose face extensions overlap on (5,3).
astk::TMesh facing_overlap_mesh();

/// [0,12]^2 sparse frame grid with three partial lines arranged so one
/// horizontal face extension crosses one vertical face extension: admissible
/// but not analysis-suitable, one crossing vertex at (7,6).
astk::TMesh crossing_mesh();

/// Tensor grid on the sub-lattice of [0,10] x [0,9] without column 5
/// (the single-T-junction mesh minus its partial line).
astk::TMesh tensor_minus_col5_mesh();

astk::GlobalKnots uniform_knots(const IndexDomain& d);

}  // namespace oracle
