#pragma once

#include <Eigen/Dense>
#include <optional>

#include "astk/dualproj.hpp"
#include "astk/perturb.hpp"
#include "astk/spline.hpp"

namespace astk {

/// Outcome of the perturbed extended-mesh inclusion test
/// T1_ext[delta, T2] inside T2_ext[delta].
struct NestingCertificate {
  enum class Verdict { Nested, NotNested };
  Verdict verdict = Verdict::NotNested;
  Rational delta;
  // a unit piece of the coarse perturbed extended skeleton missing from the
  // fine one, in expanded index coordinates
  std::optional<std::pair<Axis, LineSpan>> witness;

  bool nested() const { return verdict == Verdict::Nested; }
};

/// Certifies T1 within T2. Both meshes must be admissible, analysis-suitable,
/// share the index domain, agree on knots along T1's lines, and satisfy
/// t1 subset t2. Throws NotASubmesh / NotAnalysisSuitable.
NestingCertificate certify_nested(const TMesh& t1, const TMesh& t2, const GlobalKnots& knots1,
                                  const GlobalKnots& knots2,
                                  const Rational& delta = Rational(1, 1024));

/// Coefficients c(B, A) = lambda_B(N_A): rows indexed by fine anchors, columns
/// by coarse anchors, so each coarse function is the row-weighted combination
/// N_A = sum_B c(B, A) N_B. Exact rationals; rows sum to one.
struct RefinementMatrix {
  std::vector<IndexPoint> coarse_anchors;
  std::vector<IndexPoint> fine_anchors;
  RatMatrix c;
};

/// Requires a nested certificate. Entries are computed by applying the fine
/// dual functionals to the coarse blending functions at abscissae interior to
/// fine elements, where everything in sight is one bicubic piece.
RefinementMatrix refinement_matrix(const SplineSpace& coarse, const SplineSpace& fine,
                                   const NestingCertificate& certificate);

/// Control nets are rows of (x, y, z) per coarse anchor; the refined net is
/// the same surface expressed over the fine anchors.
Eigen::MatrixXd refine_geometry(const RefinementMatrix& matrix,
                                const Eigen::MatrixXd& coarse_points);

}  // namespace astk
