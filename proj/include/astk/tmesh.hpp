#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "astk/error.hpp"

namespace astk {

enum class Axis : std::uint8_t { Horizontal, Vertical };

/// Direction of a missing edge at a T-junction; also the direction its face
/// extension grows.
enum class Dir : std::uint8_t { Left, Right, Down, Up };

Axis perpendicular(Axis a);

struct IndexPoint {
  int x = 0;  // column index (xi direction)
  int y = 0;  // row index (eta direction)

  friend auto operator<=>(const IndexPoint&, const IndexPoint&) = default;
};

std::string to_string(const IndexPoint& p);

/// Inclusive integer extent [lo, hi] of a line piece, lo < hi.
struct Span {
  int lo = 0;
  int hi = 0;

  bool contains(int k) const { return lo <= k && k <= hi; }
  bool covers(const Span& s) const { return lo <= s.lo && s.hi <= hi; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

/// A line piece: all points (axis == Horizontal) {x, line} for x in span,
/// or {line, y} for y in span.
struct LineSpan {
  int line = 0;
  Span span;

  friend auto operator<=>(const LineSpan&, const LineSpan&) = default;
};

struct IndexDomain {
  int m_lo = 0, m_hi = 0;
  int n_lo = 0, n_hi = 0;

  IndexDomain() = default;
  IndexDomain(int m_lo_, int m_hi_, int n_lo_, int n_hi_);

  int width() const { return m_hi - m_lo; }
  int height() const { return n_hi - n_lo; }

  bool contains(const IndexPoint& p) const {
    return m_lo <= p.x && p.x <= m_hi && n_lo <= p.y && p.y <= n_hi;
  }
  /// Closed active region [m_lo+2, m_hi-2] x [n_lo+2, n_hi-2].
  bool in_active_region(const IndexPoint& p) const {
    return m_lo + 2 <= p.x && p.x <= m_hi - 2 && n_lo + 2 <= p.y && p.y <= n_hi - 2;
  }
  /// Closed complement of the open active region inside the domain.
  bool in_frame_region(const IndexPoint& p) const {
    return contains(p) && (p.x <= m_lo + 2 || p.x >= m_hi - 2 || p.y <= n_lo + 2 || p.y >= n_hi - 2);
  }
  bool is_corner(const IndexPoint& p) const {
    return (p.x == m_lo || p.x == m_hi) && (p.y == n_lo || p.y == n_hi);
  }

  friend auto operator<=>(const IndexDomain&, const IndexDomain&) = default;
};

/// Open axis-aligned index rectangle ]x0,x1[ x ]y0,y1[.
struct IndexRect {
  int x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  friend auto operator<=>(const IndexRect&, const IndexRect&) = default;
};

struct TJunction {
  IndexPoint pos;
  Dir missing;  // side with no edge

  Axis axis() const {  // a T-junction and its extension share this axis
    return (missing == Dir::Left || missing == Dir::Right) ? Axis::Horizontal : Axis::Vertical;
  }
  friend auto operator<=>(const TJunction&, const TJunction&) = default;
};

/// Maximal run of contiguous edges/vertices on one line, terminated by
/// T-junctions (interior or boundary).
struct Segment {
  Axis axis = Axis::Horizontal;
  int line = 0;  // row for horizontal, column for vertical
  Span span;
  std::vector<IndexPoint> vertices;  // ordered along the line, endpoints included

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentSet {
  std::vector<Segment> all;  // horizontal first (by line, then start), then vertical
  int n_horizontal = 0;
  int n_vertical = 0;

  int total() const { return n_horizontal + n_vertical; }
};

enum class Symbol : std::uint8_t {
  Plus,        // valence 4, corner, or boundary valence 3
  TLeft,       // interior valence 3, missing left edge
  TRight,      // missing right
  TDown,       // missing down
  TUp,         // missing up
  VEdge,       // interior point of a vertical edge
  HEdge,       // interior point of a horizontal edge
  Empty,       // nothing here
};

const char* symbol_glyph(Symbol s);  // UTF-8 glyph per the usual table

struct SymbolicMesh {
  IndexDomain domain;
  std::vector<Symbol> cells;  // row-major, (width+1) x (height+1)

  Symbol at(const IndexPoint& p) const;
  Symbol& at(const IndexPoint& p);
  std::string render() const;  // multi-line text, top row = n_hi
};

/// Rectangular partition of an integer index domain. Immutable after build;
/// all queries are const and safe to share across threads.
class TMesh {
 public:
  TMesh() = default;  // empty mesh, only useful as a target for assignment

  /// Unions the given line spans with the domain boundary, normalizes
  /// (valence-2 interior points are absorbed) and validates the result.
  /// Throws SpanOutOfDomain / DanglingEdge.
  static TMesh build(const IndexDomain& domain, const std::vector<LineSpan>& h_lines,
                     const std::vector<LineSpan>& v_lines);

  const IndexDomain& domain() const { return domain_; }

  /// Maximal normalized spans, by construction disjoint and non-touching.
  const std::vector<LineSpan>& h_spans() const { return h_spans_; }
  const std::vector<LineSpan>& v_spans() const { return v_spans_; }

  bool on_h_skeleton(const IndexPoint& p) const;
  bool on_v_skeleton(const IndexPoint& p) const;
  bool on_skeleton(const IndexPoint& p) const { return on_h_skeleton(p) || on_v_skeleton(p); }

  /// Unit edge from p one step toward `d`.
  bool has_edge(const IndexPoint& p, Dir d) const;
  int valence(const IndexPoint& p) const;

  bool is_vertex(const IndexPoint& p) const;
  const std::vector<IndexPoint>& vertices() const { return vertices_; }

  /// Columns where the vertical skeleton crosses the row through p
  /// (Axis::Horizontal), or rows where the horizontal skeleton crosses the
  /// column through p (Axis::Vertical). Strictly increasing; contains the
  /// p coordinate itself. Throws VertexNotOnSkeleton.
  std::vector<int> trace(const IndexPoint& p, Axis axis) const;

  /// Open rectangles of the partition.
  const std::vector<IndexRect>& elements() const { return elements_; }

  /// Skeleton inclusion: every edge of this mesh is covered by `other`.
  bool subset_of(const TMesh& other) const;
  bool same_skeleton(const TMesh& other) const;

 private:
  void rebuild_caches();

  IndexDomain domain_;
  std::vector<LineSpan> h_spans_, v_spans_;
  // unit-edge rasters; h_edge_(x, y) covers (x,y)-(x+1,y), v_edge_(x, y) covers (x,y)-(x,y+1)
  std::vector<std::uint8_t> h_edge_, v_edge_;
  int w_ = 0, h_ = 0;  // lattice extents (#cols-1, #rows-1)
  std::vector<IndexPoint> vertices_;
  std::vector<IndexRect> elements_;

  std::size_t hidx(int x, int y) const;
  std::size_t vidx(int x, int y) const;
};

struct AdmissibilityReport {
  // condition 1: the six full frame lines per direction
  bool frame_lines_ok = false;
  std::vector<std::pair<Axis, int>> missing_frame_lines;
  // condition 2: the four active-region lines per direction
  bool active_lines_ok = false;
  std::vector<std::pair<Axis, int>> missing_active_lines;
  // condition 3: aligned vertices on one element boundary are joined by skeleton
  bool element_boundaries_ok = false;
  std::vector<std::pair<IndexPoint, IndexPoint>> boundary_violations;
  // standing assumption: the frame carries no interior T-junctions
  bool frame_topology_ok = false;
  std::vector<IndexPoint> frame_t_junctions;

  bool admissible() const {
    return frame_lines_ok && active_lines_ok && element_boundaries_ok && frame_topology_ok;
  }
};

AdmissibilityReport validate_admissible(const TMesh& mesh);

SegmentSet segments(const TMesh& mesh);

/// Segments on one line only, ordered by start index.
std::vector<Segment> segments_on_line(const TMesh& mesh, Axis axis, int line);

SymbolicMesh symbolic(const TMesh& mesh);
TMesh from_symbolic(const SymbolicMesh& sym);

/// Vertices in the closed active region; one blending function per anchor.
std::vector<IndexPoint> anchors(const TMesh& mesh);

/// Interior valence-3 vertices of the active region, with orientation.
std::vector<TJunction> t_junctions(const TMesh& mesh);

}  // namespace astk
