#include <doctest.h>

#include <algorithm>

#include "astk/generator.hpp"
#include "astk/tmesh.hpp"
#include "oracles.hpp"

using namespace astk;

TEST_CASE("tensor grid on [0,7]^2 is a full valence-4 lattice") {
  TMesh m = oracle::tensor_mesh(7, 7);
  CHECK(m.vertices().size() == 64);
  for (const IndexPoint& p : m.vertices()) {
    bool interior = p.x > 0 && p.x < 7 && p.y > 0 && p.y < 7;
    if (interior) CHECK(m.valence(p) == 4);
  }
  CHECK(t_junctions(m).empty());
}

TEST_CASE("tensor grid on [0,9]^2 has 100 vertices and no T-junctions") {
  TMesh m = oracle::tensor_mesh(9, 9);
  CHECK(m.vertices().size() == 100);
  CHECK(t_junctions(m).empty());
}

TEST_CASE("restricting one vertical line leaves exactly one T-junction") {
  TMesh m = oracle::single_tj_mesh();

  // brute-force valence enumeration over the lattice
  std::vector<LineSpan> h, v;
  for (int row = 0; row <= 9; ++row) h.push_back({row, {0, 10}});
  for (int c = 0; c <= 10; ++c)
    if (c != 5) v.push_back({c, {0, 9}});
  v.push_back({5, {4, 9}});
  oracle::Raster r(m.domain(), h, v);

  int valence3_interior = 0;
  for (int y = 1; y < 9; ++y)
    for (int x = 1; x < 10; ++x)
      if (r.valence({x, y}) == 3) ++valence3_interior;
  CHECK(valence3_interior == 1);
  CHECK(r.valence({5, 4}) == 3);

  std::vector<TJunction> tj = t_junctions(m);
  REQUIRE(tj.size() == 1);
  CHECK(tj[0].pos == IndexPoint{5, 4});
  CHECK(tj[0].missing == Dir::Down);
  CHECK(m.vertices().size() == static_cast<std::size_t>(r.count_vertices()));
}

TEST_CASE("build rejects spans outside the domain and dangling edges") {
  IndexDomain d(0, 8, 0, 8);
  CHECK_THROWS_WITH_AS(TMesh::build(d, {{9, {0, 8}}}, {}), doctest::Contains("SpanOutOfDomain"),
                       Error);
  CHECK_THROWS_WITH_AS(TMesh::build(d, {}, {{4, {0, 9}}}), doctest::Contains("SpanOutOfDomain"),
                       Error);
  // a vertical stub ending in open space dangles
  CHECK_THROWS_WITH_AS(TMesh::build(d, {}, {{4, {3, 5}}}), doctest::Contains("DanglingEdge"),
                       Error);
}

TEST_CASE("valence-2 interior points are absorbed") {
  IndexDomain d(0, 8, 0, 8);
  std::vector<LineSpan> h, v;
  for (int r = 0; r <= 8; ++r) h.push_back({r, {0, 4}});  // split input spans
  for (int r = 0; r <= 8; ++r) h.push_back({r, {4, 8}});
  for (int c = 0; c <= 8; ++c) v.push_back({c, {0, 8}});
  TMesh m = TMesh::build(d, h, v);
  TMesh full = oracle::tensor_mesh(8, 8);
  CHECK(m.same_skeleton(full));
  for (const LineSpan& s : m.h_spans()) CHECK(s.span == Span{0, 8});  // merged back
}

TEST_CASE("admissibility of the canonical meshes") {
  CHECK(validate_admissible(oracle::tensor_mesh(7, 7)).admissible());

  SUBCASE("missing frame line is reported with its index") {
    IndexDomain d(0, 10, 0, 9);
    std::vector<LineSpan> h, v;
    for (int r = 0; r <= 9; ++r)
      if (r != 1) h.push_back({r, {0, 10}});
    for (int c = 0; c <= 10; ++c) v.push_back({c, {0, 9}});
    TMesh m = TMesh::build(d, h, v);
    AdmissibilityReport rep = validate_admissible(m);
    CHECK_FALSE(rep.frame_lines_ok);
    REQUIRE(rep.missing_frame_lines.size() == 1);
    CHECK(rep.missing_frame_lines[0] == std::pair<Axis, int>{Axis::Horizontal, 1});
    CHECK(rep.active_lines_ok);
  }

  SUBCASE("single T-junction mesh passes all element-boundary checks") {
    AdmissibilityReport rep = validate_admissible(oracle::single_tj_mesh());
    CHECK(rep.frame_lines_ok);
    CHECK(rep.active_lines_ok);
    CHECK(rep.element_boundaries_ok);
    CHECK(rep.admissible());
  }

  SUBCASE("facing junctions across one element violate condition 3") {
    // top-open and bottom-open junction staring at each other across a cell
    IndexDomain d(0, 10, 0, 9);
    std::vector<LineSpan> h, v;
    for (int r = 0; r <= 9; ++r) h.push_back({r, {0, 10}});
    for (int c = 0; c <= 10; ++c)
      if (c != 5) v.push_back({c, {0, 9}});
    v.push_back({5, {0, 3}});
    v.push_back({5, {4, 9}});
    TMesh m = TMesh::build(d, h, v);
    AdmissibilityReport rep = validate_admissible(m);
    CHECK_FALSE(rep.element_boundaries_ok);
    REQUIRE_FALSE(rep.boundary_violations.empty());
    auto [u, w] = rep.boundary_violations[0];
    CHECK(u.x == 5);
    CHECK(w.x == 5);
  }
}

TEST_CASE("traces list perpendicular skeleton crossings") {
  TMesh grid = oracle::tensor_mesh(7, 7);
  CHECK(grid.trace({3, 3}, Axis::Horizontal) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(grid.trace({4, 4}, Axis::Vertical) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

  TMesh m = oracle::single_tj_mesh();
  oracle::Raster r(m.domain(), m.h_spans(), m.v_spans());
  for (const IndexPoint& p : m.vertices()) {
    CHECK(m.trace(p, Axis::Horizontal) == r.trace_cols(p.y));
    CHECK(m.trace(p, Axis::Vertical) == r.trace_rows(p.x));
  }
  // row 3 skips column 5 where the vertical line is absent
  std::vector<int> row3 = m.trace({4, 3}, Axis::Horizontal);
  CHECK(std::find(row3.begin(), row3.end(), 5) == row3.end());

  // a point interior to an open rectangle is not on the skeleton at all
  CHECK_THROWS_WITH_AS(static_cast<void>(oracle::crossing_mesh().trace({6, 7}, Axis::Vertical)),
                       doctest::Contains("VertexNotOnSkeleton"), Error);
}

TEST_CASE("traces are strictly increasing and contain the query coordinate") {
  Rng rng(7);
  for (int it = 0; it < 10; ++it) {
    GeneratedMesh g = random_as_mesh(rng);
    for (const IndexPoint& p : g.mesh.vertices()) {
      std::vector<int> h = g.mesh.trace(p, Axis::Horizontal);
      std::vector<int> v = g.mesh.trace(p, Axis::Vertical);
      CHECK(std::is_sorted(h.begin(), h.end()));
      CHECK(std::adjacent_find(h.begin(), h.end()) == h.end());
      CHECK(std::binary_search(h.begin(), h.end(), p.x));
      CHECK(std::binary_search(v.begin(), v.end(), p.y));
    }
  }
}

TEST_CASE("segment decomposition") {
  SUBCASE("tensor grid: one segment per line") {
    SegmentSet s = segments(oracle::tensor_mesh(7, 7));
    CHECK(s.total() == 16);
    CHECK(s.n_horizontal == 8);
    CHECK(s.n_vertical == 8);
  }
  SUBCASE("single T-junction mesh counts match the run oracle") {
    TMesh m = oracle::single_tj_mesh();
    SegmentSet s = segments(m);
    oracle::Raster r(m.domain(), m.h_spans(), m.v_spans());
    CHECK(s.n_horizontal == r.count_segments(Axis::Horizontal));
    CHECK(s.n_vertical == r.count_segments(Axis::Vertical));
    CHECK(s.n_horizontal == 10);
    CHECK(s.n_vertical == 11);
  }
  SUBCASE("a line with two disjoint spans contributes two segments") {
    std::vector<Segment> col5 = segments_on_line(oracle::facing_overlap_mesh(), Axis::Vertical, 5);
    REQUIRE(col5.size() == 2);
    CHECK(col5[0].span == Span{0, 2});
    CHECK(col5[1].span == Span{4, 9});
  }
}

TEST_CASE("segment cover: every unit edge belongs to exactly one segment") {
  Rng rng(11);
  for (int it = 0; it < 8; ++it) {
    GeneratedMesh g = random_as_mesh(rng);
    SegmentSet segs = segments(g.mesh);
    long unit_edges = 0;
    for (const LineSpan& s : g.mesh.h_spans()) unit_edges += s.span.hi - s.span.lo;
    for (const LineSpan& s : g.mesh.v_spans()) unit_edges += s.span.hi - s.span.lo;
    long covered = 0;
    for (const Segment& s : segs.all) covered += s.span.hi - s.span.lo;
    CHECK(unit_edges == covered);
    for (const Segment& s : segs.all) {
      REQUIRE(s.vertices.size() >= 2);
      CHECK(s.vertices.front() == (s.axis == Axis::Horizontal ? IndexPoint{s.span.lo, s.line}
                                                              : IndexPoint{s.line, s.span.lo}));
      CHECK(s.vertices.back() == (s.axis == Axis::Horizontal ? IndexPoint{s.span.hi, s.line}
                                                             : IndexPoint{s.line, s.span.hi}));
    }
  }
}

TEST_CASE("valence partition holds on randomized meshes") {
  Rng rng(23);
  for (int it = 0; it < 10; ++it) {
    GeneratedMesh g = random_as_mesh(rng);
    const IndexDomain& d = g.mesh.domain();
    for (const IndexPoint& p : g.mesh.vertices()) {
      int val = g.mesh.valence(p);
      if (d.is_corner(p))
        CHECK(val == 2);
      else
        CHECK((val == 3 || val == 4));
    }
  }
}

TEST_CASE("symbolic mesh matches the topology table") {
  TMesh grid = oracle::tensor_mesh(7, 7);
  SymbolicMesh sym = symbolic(grid);
  CHECK(sym.at({3, 3}) == Symbol::Plus);
  CHECK(sym.at({0, 0}) == Symbol::Plus);

  TMesh m = oracle::single_tj_mesh();
  SymbolicMesh sm = symbolic(m);
  CHECK(sm.at({5, 4}) == Symbol::TDown);  // stem upward, missing edge below
  CHECK(sm.at({5, 6}) == Symbol::Plus);   // regular crossing above the junction
  CHECK(sm.at({5, 2}) == Symbol::HEdge);  // interior of a horizontal edge
  CHECK(sm.at({5, 0}) == Symbol::HEdge);

  // a point interior to an open rectangle carries no symbol
  IndexDomain d(0, 10, 0, 10);
  std::vector<LineSpan> h, v;
  for (int r : {0, 1, 2, 3, 7, 8, 9, 10}) h.push_back({r, {0, 10}});
  for (int c : {0, 1, 2, 3, 7, 8, 9, 10}) v.push_back({c, {0, 10}});
  TMesh sparse = TMesh::build(d, h, v);
  CHECK(symbolic(sparse).at({5, 5}) == Symbol::Empty);
}

TEST_CASE("symbolic round-trip reproduces the edge set") {
  for (const TMesh& m : {oracle::tensor_mesh(7, 7), oracle::single_tj_mesh(),
                         oracle::facing_overlap_mesh(), oracle::crossing_mesh()})
    CHECK(from_symbolic(symbolic(m)).same_skeleton(m));

  Rng rng(5);
  for (int it = 0; it < 10; ++it) {
    GeneratedMesh g = random_as_mesh(rng);
    CHECK(from_symbolic(symbolic(g.mesh)).same_skeleton(g.mesh));
  }
}

TEST_CASE("anchors are the active-region vertices") {
  CHECK(anchors(oracle::tensor_mesh(7, 7)).size() == 16);
  CHECK(anchors(oracle::tensor_mesh(9, 9)).size() == 36);

  TMesh m = oracle::single_tj_mesh();
  oracle::Raster r(m.domain(), m.h_spans(), m.v_spans());
  CHECK(r.count_anchors() == 40);  // 7*6 grid anchors minus the absorbed (5,2), (5,3)
  CHECK(anchors(m).size() == 40);
}

TEST_CASE("elements of the partition are the maximal open rectangles") {
  CHECK(oracle::tensor_mesh(7, 7).elements().size() == 49);
  TMesh m = oracle::single_tj_mesh();
  long area = 0;
  for (const IndexRect& q : m.elements()) area += long(q.x1 - q.x0) * (q.y1 - q.y0);
  CHECK(area == 90);  // cells tile the domain
}
