#include <doctest.h>

#include <set>

#include "astk/extension.hpp"
#include "astk/generator.hpp"
#include "oracles.hpp"

using namespace astk;

namespace {

// rasterized pairwise intersection oracle over lattice point sets
std::set<IndexPoint> extension_points(const Extension& e) {
  std::set<IndexPoint> out;
  Span t = e.total();
  for (int k = t.lo; k <= t.hi; ++k)
    out.insert(e.axis == Axis::Horizontal ? IndexPoint{k, e.line} : IndexPoint{e.line, k});
  return out;
}

bool as_by_rasterization(const TMesh& mesh) {
  std::vector<Extension> exts = tjunction_extensions(mesh);
  std::set<IndexPoint> h_points, v_points;
  for (const Extension& e : exts)
    for (const IndexPoint& p : extension_points(e))
      (e.axis == Axis::Horizontal ? h_points : v_points).insert(p);
  for (const IndexPoint& p : h_points)
    if (v_points.count(p)) return false;
  return true;
}

// random admissible meshes that may or may not be analysis-suitable
TMesh random_admissible_mesh(Rng& rng) {
  while (true) {
    int m = rng.uniform(9, 14), n = rng.uniform(9, 14);
    IndexDomain d(0, m, 0, n);
    std::vector<LineSpan> h, v;
    for (int r : {0, 1, 2, 3, n - 3, n - 2, n - 1, n}) h.push_back({r, {0, m}});
    for (int c : {0, 1, 2, 3, m - 3, m - 2, m - 1, m}) v.push_back({c, {0, n}});
    TMesh mesh = TMesh::build(d, h, v);
    for (int tries = 0; tries < 8; ++tries) {
      bool vertical = rng.coin();
      int lo = 4, hi = (vertical ? m : n) - 4;
      if (hi < lo) continue;
      int line = rng.uniform(lo, hi);
      std::vector<int> stops;
      int perp_hi = vertical ? n : m;
      stops.push_back(0);
      stops.push_back(perp_hi);
      for (int k = 2; k <= perp_hi - 2; ++k) {
        IndexPoint p = vertical ? IndexPoint{line, k} : IndexPoint{k, line};
        if (vertical ? mesh.on_h_skeleton(p) : mesh.on_v_skeleton(p)) stops.push_back(k);
      }
      std::sort(stops.begin(), stops.end());
      stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
      int ai = rng.uniform(0, static_cast<int>(stops.size()) - 2);
      int bi = rng.uniform(ai + 1, static_cast<int>(stops.size()) - 1);
      std::vector<LineSpan> h2 = mesh.h_spans(), v2 = mesh.v_spans();
      (vertical ? v2 : h2).push_back({line, {stops[static_cast<std::size_t>(ai)],
                                             stops[static_cast<std::size_t>(bi)]}});
      try {
        TMesh candidate = TMesh::build(d, h2, v2);
        if (validate_admissible(candidate).admissible()) mesh = std::move(candidate);
      } catch (const Error&) {
      }
    }
    if (validate_admissible(mesh).admissible()) return mesh;
  }
}

}  // namespace

TEST_CASE("meshes without T-junctions have no extensions") {
  CHECK(tjunction_extensions(oracle::tensor_mesh(7, 7)).empty());
  CHECK(tjunction_extensions(oracle::tensor_mesh(9, 9)).empty());
}

TEST_CASE("extension geometry of the single bottom-open junction") {
  std::vector<Extension> exts = tjunction_extensions(oracle::single_tj_mesh());
  REQUIRE(exts.size() == 1);
  const Extension& e = exts[0];
  CHECK(e.axis == Axis::Vertical);
  CHECK(e.line == 5);
  CHECK(e.face == Span{2, 4});  // two bays opposite the stem
  CHECK(e.edge == Span{4, 5});  // one bay along it
}

TEST_CASE("a right-pointing junction extends its face leftward") {
  // full grid except row 5 restricted to [4,10]: one junction at (4,5)
  IndexDomain d(0, 10, 0, 9);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= 9; ++r)
    if (r != 5) h.push_back({r, {0, 10}});
  h.push_back({5, {4, 10}});
  for (int c = 0; c <= 10; ++c) v.push_back({c, {0, 9}});
  TMesh m = TMesh::build(d, h, v);

  std::vector<TJunction> tj = t_junctions(m);
  REQUIRE(tj.size() == 1);
  CHECK(tj[0].pos == IndexPoint{4, 5});
  CHECK(tj[0].missing == Dir::Left);

  std::vector<Extension> exts = tjunction_extensions(m);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].axis == Axis::Horizontal);
  CHECK(exts[0].face == Span{2, 4});  // left two bays
  CHECK(exts[0].edge == Span{4, 5});  // right one bay
}

TEST_CASE("extending a tensor grid changes nothing") {
  TMesh grid = oracle::tensor_mesh(9, 9);
  ExtendedTMesh em = extend(grid);
  CHECK(em.ext_mesh.same_skeleton(grid));
  CHECK(em.n_crossing == 0);
  CHECK(em.n_overlap == 0);
  CHECK(em.n_active == 36);
  CHECK(em.n_active + em.n_extended == em.n_ext_vertices);
  // all frame vertices are extended
  for (const IndexPoint& p : em.ext_mesh.vertices())
    if (!grid.domain().in_active_region(p)) CHECK(em.class_of(p) == VertexClass::Extended);
}

TEST_CASE("extending the single-junction mesh materializes two extended vertices") {
  TMesh m = oracle::single_tj_mesh();
  ExtendedTMesh em = extend(m);

  // brute force: intersect the face extension with the base skeleton
  std::set<IndexPoint> new_points;
  for (int y = 2; y <= 4; ++y)
    if (m.on_h_skeleton({5, y}) && !m.is_vertex({5, y})) new_points.insert({5, y});
  CHECK(new_points == std::set<IndexPoint>{{5, 2}, {5, 3}});

  CHECK(em.class_of({5, 2}) == VertexClass::Extended);
  CHECK(em.class_of({5, 3}) == VertexClass::Extended);
  CHECK(em.n_crossing == 0);
  CHECK(em.n_overlap == 0);
  CHECK(em.n_active == 40);
  CHECK(em.n_ext_vertices == 108);
  CHECK(em.ext_mesh.vertices().size() == m.vertices().size() + 2);
  // the junction's column now reaches down to the face-extension tip
  std::vector<Segment> col5 = segments_on_line(em.ext_mesh, Axis::Vertical, 5);
  REQUIRE(col5.size() == 1);
  CHECK(col5[0].span == Span{2, 9});
}

TEST_CASE("facing junctions with overlapping face extensions produce an overlap vertex") {
  TMesh m = oracle::facing_overlap_mesh();
  CHECK(validate_admissible(m).admissible());
  ExtendedTMesh em = extend(m);
  CHECK(em.class_of({5, 3}) == VertexClass::Overlap);
  CHECK(em.n_overlap == 1);
  CHECK(em.n_crossing == 0);
  // both junction anchors stay active under the precedence rule
  CHECK(em.class_of({5, 2}) == VertexClass::Active);
  CHECK(em.class_of({5, 4}) == VertexClass::Active);
  CHECK(is_analysis_suitable(m));  // same-direction overlaps do not break AS
}

TEST_CASE("crossing extensions break analysis-suitability with a witness") {
  TMesh m = oracle::crossing_mesh();
  CHECK(validate_admissible(m).admissible());

  std::optional<AsWitness> w = as_violation(m);
  REQUIRE(w.has_value());
  CHECK(w->horizontal.axis() == Axis::Horizontal);
  CHECK(w->vertical.axis() == Axis::Vertical);

  ExtendedTMesh em = extend(m);
  CHECK(em.n_crossing == 1);
  CHECK(em.class_of({7, 6}) == VertexClass::Crossing);
}

TEST_CASE("analysis-suitability test agrees with the rasterization oracle") {
  CHECK(is_analysis_suitable(oracle::tensor_mesh(7, 7)));
  CHECK(is_analysis_suitable(oracle::single_tj_mesh()));
  CHECK_FALSE(is_analysis_suitable(oracle::crossing_mesh()));
  CHECK(as_by_rasterization(oracle::single_tj_mesh()));
  CHECK_FALSE(as_by_rasterization(oracle::crossing_mesh()));

  Rng rng(31);
  int non_as_seen = 0;
  for (int it = 0; it < 25; ++it) {
    TMesh m = random_admissible_mesh(rng);
    bool as = is_analysis_suitable(m);
    CHECK(as == as_by_rasterization(m));
    non_as_seen += !as;
  }
  CHECK(non_as_seen > 0);  // the sample exercises both outcomes
}

TEST_CASE("classification is a partition and AS meshes have no crossing vertices") {
  Rng rng(17);
  for (int it = 0; it < 10; ++it) {
    GeneratedMesh g = random_as_mesh(rng);
    ExtendedTMesh em = extend(g.mesh);
    CHECK(em.n_crossing == 0);
    CHECK(em.n_active + em.n_crossing + em.n_overlap + em.n_extended == em.n_ext_vertices);
    CHECK(em.classes.size() == static_cast<std::size_t>(em.n_ext_vertices));
    CHECK(em.n_active == static_cast<int>(anchors(g.mesh).size()));
    for (const IndexPoint& p : em.ext_mesh.vertices()) {
      if (g.mesh.is_vertex(p) && g.mesh.domain().in_active_region(p))
        CHECK(em.class_of(p) == VertexClass::Active);
    }
  }
}
