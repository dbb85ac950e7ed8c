#pragma once

#include <array>
#include <vector>

#include "astk/extension.hpp"
#include "astk/rational.hpp"
#include "astk/tmesh.hpp"

namespace astk {

/// Global knot vectors, one value per index-domain line. Non-decreasing;
/// interior multiplicity at most 3, end multiplicity at most 4.
struct GlobalKnots {
  std::vector<Rational> xi;   // indexed m_lo..m_hi
  std::vector<Rational> eta;  // indexed n_lo..n_hi
  int m_lo = 0;
  int n_lo = 0;

  const Rational& xi_at(int i) const { return xi[static_cast<std::size_t>(i - m_lo)]; }
  const Rational& eta_at(int j) const { return eta[static_cast<std::size_t>(j - n_lo)]; }

  void validate(const IndexDomain& domain) const;  // throws InvalidArgument
  bool has_multiplicities() const;

  /// Uniform integer knots matching the domain (xi_at(i) == i).
  static GlobalKnots uniform(const IndexDomain& domain);
};

/// Evaluates the single cubic B-spline on a 5-knot window, or its
/// derivative. Support is half-open: zero outside [k[0], k[4]). Repeated
/// knots follow the 0/0 = 0 convention. Works for double and for exact
/// Rational arguments alike.
template <typename Scalar>
Scalar bspline_eval(const std::array<Scalar, 5>& knots, const Scalar& x, int deriv = 0);

struct AnchorFunction {
  IndexPoint anchor;
  std::array<int, 5> hv{};  // horizontal index vector, hv[2] == anchor.x
  std::array<int, 5> vv{};  // vertical index vector, vv[2] == anchor.y
  std::array<Rational, 5> xi_local{};
  std::array<Rational, 5> eta_local{};
  std::array<double, 5> xi_d{};  // double mirrors for evaluation
  std::array<double, 5> eta_d{};

  /// Open support rectangle in the parametric domain.
  bool support_overlaps(const Rational& x0, const Rational& x1, const Rational& y0,
                        const Rational& y1) const;
};

std::pair<std::array<int, 5>, std::array<int, 5>> index_vectors(const TMesh& mesh,
                                                                const IndexPoint& anchor);

/// Parametric element of the extended mesh intersecting the reduced domain.
struct ParamElement {
  Rational x0, x1, y0, y1;
  IndexRect preimage;  // index rectangle in the extended mesh
  std::vector<int> active;  // anchor-function indices whose support meets it
};

class SplineSpace {
 public:
  SplineSpace(TMesh mesh, GlobalKnots knots);

  const TMesh& mesh() const { return mesh_; }
  const GlobalKnots& knots() const { return knots_; }
  const ExtendedTMesh& extended() const { return ext_; }
  const std::vector<AnchorFunction>& functions() const { return functions_; }
  const AnchorFunction& function(int i) const { return functions_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(functions_.size()); }

  /// Index of the function anchored at p. Throws NotAnAnchor.
  int function_index(const IndexPoint& p) const;

  /// Reduced parametric domain [xi_{m_lo+3}, xi_{m_hi-3}] x [eta_...].
  const Rational& xi_min() const { return xi_min_; }
  const Rational& xi_max() const { return xi_max_; }
  const Rational& eta_min() const { return eta_min_; }
  const Rational& eta_max() const { return eta_max_; }
  bool in_reduced_domain(double x, double y) const;

  const std::vector<ParamElement>& elements() const { return elements_; }
  /// Element containing (x, y) under the half-open convention, or -1.
  int element_at(double x, double y) const;

  /// N_A and partial derivatives, right-continuous at knot lines.
  /// Throws OutsideReducedDomain.
  double blending_eval(int function_index, double x, double y, int dx = 0, int dy = 0) const;

  /// Sum of all blending functions at a point (partition of unity probe).
  double sum_at(double x, double y) const;

 private:
  TMesh mesh_;
  GlobalKnots knots_;
  ExtendedTMesh ext_;
  std::vector<AnchorFunction> functions_;
  std::vector<ParamElement> elements_;
  Rational xi_min_, xi_max_, eta_min_, eta_max_;
};

}  // namespace astk
