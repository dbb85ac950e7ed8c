#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "astk/spline.hpp"

namespace astk {

/// Partial derivatives up to order 3 in each variable: jet(i, j) = d^i_x d^j_y f.
template <typename Scalar>
using Jet = Eigen::Matrix<Scalar, 4, 4>;

/// A function with analytic derivatives to order 3 (what dual functionals
/// consume). Black-box functions go through finite_difference_adapter.
struct SmoothFunction {
  std::string name;
  std::function<double(double, double)> value;
  std::function<Jet<double>(double, double)> jet;
};

SmoothFunction fn_one();
SmoothFunction fn_monomial(int a, int b);
SmoothFunction fn_sincos();
/// Central differences with h = 1e-6; documented accuracy loss on high orders.
SmoothFunction finite_difference_adapter(std::string name,
                                         std::function<double(double, double)> f);
/// Looks up "one", "monomial a b", "sin-cos". Throws InvalidArgument.
SmoothFunction builtin_function(const std::string& spec);

/// Point dual functional biorthogonal to the blending functions: a tensor
/// product of univariate de Boor-Fix functionals with psi(t) =
/// (t-t1)(t-t2)(t-t3), evaluated at an abscissa interior to the support and
/// off every global knot line.
struct DualFunctional {
  IndexPoint anchor;
  std::array<Rational, 5> xi_local{};
  std::array<Rational, 5> eta_local{};
  Rational tau_xi;
  Rational tau_eta;
};

DualFunctional make_dual(const SplineSpace& space, int function_index);
std::vector<DualFunctional> make_duals(const SplineSpace& space);

/// Univariate de Boor-Fix functional applied to derivative values
/// f_derivs[r] = f^(r)(tau). Exact on cubic polynomials.
template <typename Scalar>
Scalar dual_apply_1d(const std::array<Scalar, 5>& knots, const Scalar& tau,
                     const std::array<Scalar, 4>& f_derivs);

double dual_apply(const DualFunctional& lam, const SmoothFunction& f);

/// lambda_A(N_B) in exact rational arithmetic; the argument function is a
/// polynomial piece around (tau_xi, tau_eta), so the evaluation is exact.
Rational dual_apply_blending(const DualFunctional& lam, const AnchorFunction& g);

/// Coefficients lambda_A(f) for all anchors; P(f) = sum coeff_A N_A.
Eigen::VectorXd project(const SplineSpace& space, const SmoothFunction& f);

double eval_combination(const SplineSpace& space, const Eigen::VectorXd& coeffs, double x,
                        double y);

struct ExtendedSupport {
  int element = -1;                 // index into space.elements()
  std::vector<int> anchors;         // contributing function indices
  std::vector<std::array<Rational, 4>> support_rects;  // {x0,x1,y0,y1} per anchor
  std::array<Rational, 4> bounding_rect{};
  double diameter = 0;
};

ExtendedSupport extended_support(const SplineSpace& space, int element_index);

/// Global L2 norm of f - P(f) over the reduced domain, per-element 5x5
/// Gauss-Legendre quadrature.
double l2_projection_error(const SplineSpace& space, const SmoothFunction& f);
double l2_norm(const SplineSpace& space, const SmoothFunction& f);

struct ConvergenceRow {
  double h = 0;        // max element diameter
  double error = 0;    // L2 error of f - P(f)
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0;       // least-squares log-log slope
  bool exact = false;     // all errors at machine precision, rate undefined
};

ConvergenceTable convergence_study(const std::vector<const SplineSpace*>& spaces,
                                   const SmoothFunction& f);

/// Uniform tensor-product space over [0,1]^2 with 4 * 2^level interior spans.
SplineSpace dyadic_tensor_space(int level);

}  // namespace astk
