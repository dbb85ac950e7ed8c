#pragma once

#include <optional>
#include <vector>

#include "astk/extension.hpp"
#include "astk/rational.hpp"
#include "astk/spline.hpp"

namespace astk {

/// Four conformality rows for one segment: the cubic expansion of
/// sum_v d_v (t - t_v)^3 = 0 over the segment's vertices.
struct SegmentBlock {
  Axis axis = Axis::Horizontal;
  int line = 0;
  Span span;
  std::vector<int> cols;            // column ids of vertices on the segment
  std::vector<Rational> abscissae;  // knot values along the segment, strictly increasing
};

/// Global system M D = 0: 4 rows per segment of the extended mesh, one
/// column per extended-mesh vertex, entries [1, -3t, 3t^2, -t^3].
/// All entries exact rationals.
struct ConstraintSystem {
  IndexDomain domain;
  std::vector<SegmentBlock> blocks;
  std::vector<IndexPoint> columns;  // vertex per column id

  int rows() const { return 4 * static_cast<int>(blocks.size()); }
  int cols() const { return static_cast<int>(columns.size()); }
  RatMatrix matrix() const;
};

/// Throws KnotMultiplicityPresent when a segment carries repeated abscissae
/// (use the perturbation path for such meshes).
ConstraintSystem assemble(const ExtendedTMesh& ext_mesh, const GlobalKnots& knots);

/// System after removing the two outermost lines on each side (eight
/// segments) together with the sixteen vertices that lie on removed lines
/// only. Leaves the nullity of M unchanged.
struct ReducedSystem {
  ConstraintSystem system;
  int n_segments = 0;  // segment count of the reduced mesh
  int n_vertices = 0;  // vertex count of the reduced mesh
};

ReducedSystem simplify(const ConstraintSystem& system);

/// Exact nullity by fraction-free (Bareiss) elimination over the integers
/// after clearing denominators row-wise.
int nullity(const RatMatrix& m);

/// Exact rank by rational Gaussian elimination. Destroys its argument.
int rank_exact(RatMatrix m);

/// Exact nullity of a cofactor system, computed through the explicit
/// divided-difference basis of the horizontal blocks' nullspace; equal to
/// nullity(system.matrix()) but far cheaper on large systems.
int system_nullity(const ConstraintSystem& system);

long dim_formula(const ExtendedTMesh& ext_mesh);  // n^a + n^+ + n^-

struct DiagonalizableResult {
  bool ok = false;
  std::vector<int> order;  // block indices, in the Definition's sense (later
                           // segments own >= 4 vertices private from earlier)
  std::vector<int> stuck;  // non-empty iff !ok
};

/// Greedy peel: repeatedly removes a segment owning at least four vertices
/// not on any other remaining segment, bottommost-then-leftmost first.
DiagonalizableResult diagonalizable_order(const ReducedSystem& reduced);

struct DimensionReport {
  bool admissible = false;
  bool analysis_suitable = false;
  bool used_perturbation = false;
  long formula = 0;        // n^a + n^+ + n^-
  long nullity_full = 0;   // nullity of M
  long nullity_reduced = 0;
  bool diagonalizable = false;
  bool full_rank = false;  // rank of the reduced matrix equals 4 * segments
  bool applicable = false; // the formula is certified (admissible, full rank)
  bool agree = false;      // formula == nullity, only claimed when applicable
  int n_active = 0, n_crossing = 0, n_overlap = 0, n_extended = 0;
  int n_ext_vertices = 0, n_ext_segments = 0;
  int n_reduced_vertices = 0, n_reduced_segments = 0;
  int n_anchors = 0;
  bool matches_anchor_count = false;  // dim == n^A (AS, no overlap/crossing)
};

/// Orchestrates the full pipeline. Meshes whose knots carry multiplicities
/// are routed through a strict perturbation when allow_perturbation is set,
/// otherwise KnotMultiplicityPresent is thrown.
DimensionReport dimension_report(const TMesh& mesh, const GlobalKnots& knots,
                                 bool allow_perturbation = true);

}  // namespace astk
