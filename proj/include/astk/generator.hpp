#pragma once

#include <cstdint>
#include <optional>

#include "astk/spline.hpp"
#include "astk/tmesh.hpp"

namespace astk {

/// Deterministic generator with implementation-independent bounded draws,
/// so a seed pins byte-identical outputs everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next();
  int uniform(int lo, int hi);  // inclusive
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::uint64_t state_;
};

struct GeneratedMesh {
  TMesh mesh;
  GlobalKnots knots;
  std::vector<LineSpan> h_base, v_base;        // full lines of the frame grid
  std::vector<LineSpan> h_insert, v_insert;    // accepted partial-line insertions
};

/// Random admissible analysis-suitable mesh: a frame tensor grid on a random
/// domain (sides 9..16) plus up to `max_insertions` partial-line insertions,
/// rejection-sampled against admissibility and the AS test.
GeneratedMesh random_as_mesh(Rng& rng, int max_insertions = 6);

/// Rebuild of a generated mesh from a subset of its insertions (used for
/// counterexample shrinking).
TMesh rebuild_with_insertions(const GeneratedMesh& g, const std::vector<int>& h_keep,
                              const std::vector<int>& v_keep);

/// One further AS insertion into g's mesh: a strict superset mesh over the
/// same domain and knots. Empty when no legal insertion is found.
std::optional<TMesh> random_as_insertion(const GeneratedMesh& g, Rng& rng, int attempts = 40);

}  // namespace astk
