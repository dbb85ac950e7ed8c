#include "astk/nesting.hpp"

#include "astk/extension.hpp"

namespace astk {

namespace {

std::optional<std::pair<Axis, LineSpan>> find_uncovered(const TMesh& inner, const TMesh& outer) {
  for (const LineSpan& s : inner.h_spans())
    for (int x = s.span.lo; x < s.span.hi; ++x)
      if (!outer.has_edge({x, s.line}, Dir::Right))
        return std::pair<Axis, LineSpan>{Axis::Horizontal, LineSpan{s.line, {x, x + 1}}};
  for (const LineSpan& s : inner.v_spans())
    for (int y = s.span.lo; y < s.span.hi; ++y)
      if (!outer.has_edge({s.line, y}, Dir::Up))
        return std::pair<Axis, LineSpan>{Axis::Vertical, LineSpan{s.line, {y, y + 1}}};
  return std::nullopt;
}

}  // namespace

NestingCertificate certify_nested(const TMesh& t1, const TMesh& t2, const GlobalKnots& knots1,
                                  const GlobalKnots& knots2, const Rational& delta) {
  if (!validate_admissible(t1).admissible() || !is_analysis_suitable(t1))
    fail(ErrorCode::NotAnalysisSuitable, "coarse mesh");
  if (!validate_admissible(t2).admissible() || !is_analysis_suitable(t2))
    fail(ErrorCode::NotAnalysisSuitable, "fine mesh");
  if (t1.domain() != t2.domain())
    fail(ErrorCode::NotASubmesh, "meshes live on different index domains");
  if (!t1.subset_of(t2)) fail(ErrorCode::NotASubmesh, "coarse skeleton not contained in fine");

  knots1.validate(t1.domain());
  knots2.validate(t2.domain());
  const IndexDomain& d = t1.domain();
  for (int i = d.m_lo; i <= d.m_hi; ++i) {
    bool used = false;
    for (int j = d.n_lo; j <= d.n_hi && !used; ++j) used = t1.on_v_skeleton({i, j});
    if (used && knots1.xi_at(i) != knots2.xi_at(i))
      fail(ErrorCode::InvalidArgument, "knot vectors disagree on column " + std::to_string(i));
  }
  for (int j = d.n_lo; j <= d.n_hi; ++j) {
    bool used = false;
    for (int i = d.m_lo; i <= d.m_hi && !used; ++i) used = t1.on_h_skeleton({i, j});
    if (used && knots1.eta_at(j) != knots2.eta_at(j))
      fail(ErrorCode::InvalidArgument, "knot vectors disagree on row " + std::to_string(j));
  }

  RelativePerturbResult rel = relative_perturb(t1, t2, knots2, delta);
  TMesh coarse_ext = extend(rel.coarse_mesh).ext_mesh;
  TMesh fine_ext = extend(rel.fine.mesh.mesh).ext_mesh;

  NestingCertificate cert;
  cert.delta = delta;
  cert.witness = find_uncovered(coarse_ext, fine_ext);
  cert.verdict = cert.witness ? NestingCertificate::Verdict::NotNested
                              : NestingCertificate::Verdict::Nested;
  return cert;
}

RefinementMatrix refinement_matrix(const SplineSpace& coarse, const SplineSpace& fine,
                                   const NestingCertificate& certificate) {
  if (!certificate.nested())
    fail(ErrorCode::NotCertified, "refinement matrix requires a nested certificate");

  RefinementMatrix out;
  for (const AnchorFunction& f : coarse.functions()) out.coarse_anchors.push_back(f.anchor);
  for (const AnchorFunction& f : fine.functions()) out.fine_anchors.push_back(f.anchor);
  out.c = RatMatrix::Zero(fine.size(), coarse.size());

  std::vector<DualFunctional> duals = make_duals(fine);
  for (int a = 0; a < coarse.size(); ++a) {
    const AnchorFunction& na = coarse.function(a);
    for (int b = 0; b < fine.size(); ++b) {
      const DualFunctional& lam = duals[static_cast<std::size_t>(b)];
      const AnchorFunction& nb = fine.function(b);
      if (!na.support_overlaps(nb.xi_local[0], nb.xi_local[4], nb.eta_local[0], nb.eta_local[4]))
        continue;  // disjoint supports contribute exact zeros
      out.c(b, a) = dual_apply_blending(lam, na);
    }
  }
  return out;
}

Eigen::MatrixXd refine_geometry(const RefinementMatrix& matrix,
                                const Eigen::MatrixXd& coarse_points) {
  if (coarse_points.rows() != matrix.c.cols())
    fail(ErrorCode::DimensionMismatch,
         "control net has " + std::to_string(coarse_points.rows()) + " rows, expected " +
             std::to_string(matrix.c.cols()));
  Eigen::MatrixXd cd(matrix.c.rows(), matrix.c.cols());
  for (Eigen::Index r = 0; r < matrix.c.rows(); ++r)
    for (Eigen::Index cidx = 0; cidx < matrix.c.cols(); ++cidx)
      cd(r, cidx) = to_double(matrix.c(r, cidx));
  return cd * coarse_points;
}

}  // namespace astk
