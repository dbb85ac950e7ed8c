#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "astk/tmesh.hpp"

namespace astk {

/// Face: two bays opposite the stem (toward the missing edge).
/// Edge: one bay along the stem; always lies on existing skeleton.
struct Extension {
  TJunction owner;
  Axis axis = Axis::Horizontal;  // direction the extension runs
  int line = 0;                  // row (horizontal) or column (vertical)
  Span face;
  Span edge;

  Span total() const { return {std::min(face.lo, edge.lo), std::max(face.hi, edge.hi)}; }
};

enum class VertexClass : std::uint8_t { Active, Crossing, Overlap, Extended };

const char* vertex_class_name(VertexClass c);

struct ExtendedTMesh {
  TMesh base;
  std::vector<Extension> extensions;
  TMesh ext_mesh;  // base together with all face extensions
  std::map<IndexPoint, VertexClass> classes;
  int n_active = 0;    // n^a: anchors of the base mesh
  int n_crossing = 0;  // n^+
  int n_overlap = 0;   // n^-
  int n_extended = 0;  // n^*
  int n_ext_vertices = 0;

  VertexClass class_of(const IndexPoint& p) const;
};

/// One extension per T-junction of the active region.
/// Throws InsufficientTrace when a trace has no room for the four indices.
std::vector<Extension> tjunction_extensions(const TMesh& mesh);

/// Builds the extended T-mesh and classifies every one of its vertices.
/// Classification precedence: active > crossing > overlap > extended.
/// `overlap_with_edge_extensions` widens the overlap search to edge
/// extensions; the counting theorems use face extensions only.
ExtendedTMesh extend(const TMesh& mesh, bool overlap_with_edge_extensions = false);

struct AsWitness {
  TJunction horizontal;
  TJunction vertical;
  IndexPoint at;
};

/// Empty result means analysis-suitable: no horizontal T-junction extension
/// (face together with edge) meets a vertical one.
std::optional<AsWitness> as_violation(const TMesh& mesh);

inline bool is_analysis_suitable(const TMesh& mesh) { return !as_violation(mesh).has_value(); }

}  // namespace astk
