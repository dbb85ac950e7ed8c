#include "astk/tmesh.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace astk {

Axis perpendicular(Axis a) { return a == Axis::Horizontal ? Axis::Vertical : Axis::Horizontal; }

std::string to_string(const IndexPoint& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

IndexDomain::IndexDomain(int m_lo_, int m_hi_, int n_lo_, int n_hi_)
    : m_lo(m_lo_), m_hi(m_hi_), n_lo(n_lo_), n_hi(n_hi_) {
  if (m_hi - m_lo < 7 || n_hi - n_lo < 7)
    fail(ErrorCode::InvalidArgument, "index domain must be at least 7 wide in each direction");
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpanOutOfDomain: return "SpanOutOfDomain";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::VertexNotOnSkeleton: return "VertexNotOnSkeleton";
    case ErrorCode::NotAnAnchor: return "NotAnAnchor";
    case ErrorCode::InsufficientTrace: return "InsufficientTrace";
    case ErrorCode::DegenerateKnotVector: return "DegenerateKnotVector";
    case ErrorCode::OutsideReducedDomain: return "OutsideReducedDomain";
    case ErrorCode::KnotMultiplicityPresent: return "KnotMultiplicityPresent";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::NotASubmesh: return "NotASubmesh";
    case ErrorCode::NotAnalysisSuitable: return "NotAnalysisSuitable";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DerivativesUnavailable: return "DerivativesUnavailable";
    case ErrorCode::MalformedMeshFile: return "MalformedMeshFile";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

std::size_t TMesh::hidx(int x, int y) const {
  return static_cast<std::size_t>(y - domain_.n_lo) * w_ + (x - domain_.m_lo);
}

std::size_t TMesh::vidx(int x, int y) const {
  return static_cast<std::size_t>(x - domain_.m_lo) * h_ + (y - domain_.n_lo);
}

bool TMesh::has_edge(const IndexPoint& p, Dir d) const {
  if (!domain_.contains(p)) return false;
  switch (d) {
    case Dir::Left: return p.x > domain_.m_lo && h_edge_[hidx(p.x - 1, p.y)];
    case Dir::Right: return p.x < domain_.m_hi && h_edge_[hidx(p.x, p.y)];
    case Dir::Down: return p.y > domain_.n_lo && v_edge_[vidx(p.x, p.y - 1)];
    case Dir::Up: return p.y < domain_.n_hi && v_edge_[vidx(p.x, p.y)];
  }
  return false;
}

int TMesh::valence(const IndexPoint& p) const {
  return int(has_edge(p, Dir::Left)) + int(has_edge(p, Dir::Right)) + int(has_edge(p, Dir::Down)) +
         int(has_edge(p, Dir::Up));
}

bool TMesh::on_h_skeleton(const IndexPoint& p) const {
  if (!domain_.contains(p)) return false;
  return has_edge(p, Dir::Left) || has_edge(p, Dir::Right);
}

bool TMesh::on_v_skeleton(const IndexPoint& p) const {
  if (!domain_.contains(p)) return false;
  return has_edge(p, Dir::Down) || has_edge(p, Dir::Up);
}

bool TMesh::is_vertex(const IndexPoint& p) const {
  if (!domain_.contains(p)) return false;
  return valence(p) >= 3 || domain_.is_corner(p);
}

TMesh TMesh::build(const IndexDomain& domain, const std::vector<LineSpan>& h_lines,
                   const std::vector<LineSpan>& v_lines) {
  TMesh m;
  m.domain_ = domain;
  m.w_ = domain.width();
  m.h_ = domain.height();
  m.h_edge_.assign(static_cast<std::size_t>(m.w_) * (m.h_ + 1), 0);
  m.v_edge_.assign(static_cast<std::size_t>(m.h_) * (m.w_ + 1), 0);

  auto add_h = [&](const LineSpan& s) {
    if (s.line < domain.n_lo || s.line > domain.n_hi || s.span.lo < domain.m_lo ||
        s.span.hi > domain.m_hi || s.span.lo >= s.span.hi)
      fail(ErrorCode::SpanOutOfDomain, "horizontal span [" + std::to_string(s.span.lo) + "," +
                                           std::to_string(s.span.hi) + "] on row " +
                                           std::to_string(s.line));
    for (int x = s.span.lo; x < s.span.hi; ++x) m.h_edge_[m.hidx(x, s.line)] = 1;
  };
  auto add_v = [&](const LineSpan& s) {
    if (s.line < domain.m_lo || s.line > domain.m_hi || s.span.lo < domain.n_lo ||
        s.span.hi > domain.n_hi || s.span.lo >= s.span.hi)
      fail(ErrorCode::SpanOutOfDomain, "vertical span [" + std::to_string(s.span.lo) + "," +
                                           std::to_string(s.span.hi) + "] on column " +
                                           std::to_string(s.line));
    for (int y = s.span.lo; y < s.span.hi; ++y) m.v_edge_[m.vidx(s.line, y)] = 1;
  };

  for (const auto& s : h_lines) add_h(s);
  for (const auto& s : v_lines) add_v(s);
  // the domain boundary is always part of the partition
  add_h({domain.n_lo, {domain.m_lo, domain.m_hi}});
  add_h({domain.n_hi, {domain.m_lo, domain.m_hi}});
  add_v({domain.m_lo, {domain.n_lo, domain.n_hi}});
  add_v({domain.m_hi, {domain.n_lo, domain.n_hi}});

  m.rebuild_caches();
  return m;
}

void TMesh::rebuild_caches() {
  h_spans_.clear();
  v_spans_.clear();
  vertices_.clear();
  elements_.clear();

  for (int y = domain_.n_lo; y <= domain_.n_hi; ++y) {
    int run = -1;
    for (int x = domain_.m_lo; x <= domain_.m_hi; ++x) {
      bool e = x < domain_.m_hi && h_edge_[hidx(x, y)];
      if (e && run < 0) run = x;
      if (!e && run >= 0) {
        h_spans_.push_back({y, {run, x}});
        run = -1;
      }
    }
  }
  for (int x = domain_.m_lo; x <= domain_.m_hi; ++x) {
    int run = -1;
    for (int y = domain_.n_lo; y <= domain_.n_hi; ++y) {
      bool e = y < domain_.n_hi && v_edge_[vidx(x, y)];
      if (e && run < 0) run = y;
      if (!e && run >= 0) {
        v_spans_.push_back({x, {run, y}});
        run = -1;
      }
    }
  }

  for (int y = domain_.n_lo; y <= domain_.n_hi; ++y)
    for (int x = domain_.m_lo; x <= domain_.m_hi; ++x) {
      IndexPoint p{x, y};
      int val = valence(p);
      if (val == 0) continue;
      bool h = on_h_skeleton(p), v = on_v_skeleton(p);
      if (val == 1) fail(ErrorCode::DanglingEdge, "valence-1 endpoint at " + to_string(p));
      if (val == 2 && h && v && !domain_.is_corner(p))
        fail(ErrorCode::DanglingEdge, "perpendicular valence-2 corner at " + to_string(p) +
                                          " admits no rectangular partition");
      if (val >= 3 || domain_.is_corner(p)) vertices_.push_back(p);
    }
  std::sort(vertices_.begin(), vertices_.end());

  // cells of the partition: flood over unit squares not separated by edges
  const int W = w_, H = h_;
  std::vector<int> cell(static_cast<std::size_t>(W) * H, -1);
  auto cidx = [&](int x, int y) {
    return static_cast<std::size_t>(y - domain_.n_lo) * W + (x - domain_.m_lo);
  };
  int n_cells = 0;
  for (int y = domain_.n_lo; y < domain_.n_hi; ++y)
    for (int x = domain_.m_lo; x < domain_.m_hi; ++x) {
      if (cell[cidx(x, y)] >= 0) continue;
      int id = n_cells++;
      std::vector<IndexPoint> stack{{x, y}};
      cell[cidx(x, y)] = id;
      IndexRect r{x, x + 1, y, y + 1};
      while (!stack.empty()) {
        IndexPoint c = stack.back();
        stack.pop_back();
        r.x0 = std::min(r.x0, c.x);
        r.x1 = std::max(r.x1, c.x + 1);
        r.y0 = std::min(r.y0, c.y);
        r.y1 = std::max(r.y1, c.y + 1);
        auto visit = [&](int nx, int ny) {
          if (cell[cidx(nx, ny)] < 0) {
            cell[cidx(nx, ny)] = id;
            stack.push_back({nx, ny});
          }
        };
        // neighbors share the cell iff the separating unit edge is absent
        if (c.x > domain_.m_lo && !v_edge_[vidx(c.x, c.y)]) visit(c.x - 1, c.y);
        if (c.x + 1 < domain_.m_hi && !v_edge_[vidx(c.x + 1, c.y)]) visit(c.x + 1, c.y);
        if (c.y > domain_.n_lo && !h_edge_[hidx(c.x, c.y)]) visit(c.x, c.y - 1);
        if (c.y + 1 < domain_.n_hi && !h_edge_[hidx(c.x, c.y + 1)]) visit(c.x, c.y + 1);
      }
      elements_.push_back(r);
    }

  // each connected cell must be a full rectangle
  std::vector<long> area(n_cells, 0);
  for (int y = domain_.n_lo; y < domain_.n_hi; ++y)
    for (int x = domain_.m_lo; x < domain_.m_hi; ++x) area[cell[cidx(x, y)]]++;
  for (int id = 0; id < n_cells; ++id) {
    const IndexRect& r = elements_[id];
    if (area[id] != static_cast<long>(r.x1 - r.x0) * (r.y1 - r.y0))
      fail(ErrorCode::DanglingEdge, "partition cell is not rectangular");
  }
  std::sort(elements_.begin(), elements_.end());
}

std::vector<int> TMesh::trace(const IndexPoint& p, Axis axis) const {
  if (!on_skeleton(p))
    fail(ErrorCode::VertexNotOnSkeleton, to_string(p) + " is not on the skeleton");
  std::vector<int> out;
  if (axis == Axis::Horizontal) {
    for (int x = domain_.m_lo; x <= domain_.m_hi; ++x)
      if (on_v_skeleton({x, p.y})) out.push_back(x);
  } else {
    for (int y = domain_.n_lo; y <= domain_.n_hi; ++y)
      if (on_h_skeleton({p.x, y})) out.push_back(y);
  }
  return out;
}

bool TMesh::subset_of(const TMesh& other) const {
  if (domain_ != other.domain_) return false;
  for (const auto& s : h_spans_)
    for (int x = s.span.lo; x < s.span.hi; ++x)
      if (!other.h_edge_[other.hidx(x, s.line)]) return false;
  for (const auto& s : v_spans_)
    for (int y = s.span.lo; y < s.span.hi; ++y)
      if (!other.v_edge_[other.vidx(s.line, y)]) return false;
  return true;
}

bool TMesh::same_skeleton(const TMesh& other) const {
  return domain_ == other.domain_ && h_edge_ == other.h_edge_ && v_edge_ == other.v_edge_;
}

AdmissibilityReport validate_admissible(const TMesh& mesh) {
  AdmissibilityReport rep;
  const IndexDomain& d = mesh.domain();

  auto covers_v = [&](int col, int y0, int y1) {
    for (int y = y0; y < y1; ++y)
      if (!mesh.has_edge({col, y}, Dir::Up)) return false;
    return true;
  };
  auto covers_h = [&](int row, int x0, int x1) {
    for (int x = x0; x < x1; ++x)
      if (!mesh.has_edge({x, row}, Dir::Right)) return false;
    return true;
  };

  for (int col : {d.m_lo, d.m_lo + 1, d.m_lo + 2, d.m_hi - 2, d.m_hi - 1, d.m_hi})
    if (!covers_v(col, d.n_lo, d.n_hi)) rep.missing_frame_lines.push_back({Axis::Vertical, col});
  for (int row : {d.n_lo, d.n_lo + 1, d.n_lo + 2, d.n_hi - 2, d.n_hi - 1, d.n_hi})
    if (!covers_h(row, d.m_lo, d.m_hi)) rep.missing_frame_lines.push_back({Axis::Horizontal, row});
  rep.frame_lines_ok = rep.missing_frame_lines.empty();

  for (int col : {d.m_lo + 2, d.m_lo + 3, d.m_hi - 3, d.m_hi - 2})
    if (!covers_v(col, d.n_lo + 2, d.n_hi - 2))
      rep.missing_active_lines.push_back({Axis::Vertical, col});
  for (int row : {d.n_lo + 2, d.n_lo + 3, d.n_hi - 3, d.n_hi - 2})
    if (!covers_h(row, d.m_lo + 2, d.m_hi - 2))
      rep.missing_active_lines.push_back({Axis::Horizontal, row});
  rep.active_lines_ok = rep.missing_active_lines.empty();

  for (const IndexRect& q : mesh.elements()) {
    std::vector<IndexPoint> boundary;
    for (int x = q.x0; x <= q.x1; ++x) {
      if (mesh.is_vertex({x, q.y0})) boundary.push_back({x, q.y0});
      if (mesh.is_vertex({x, q.y1})) boundary.push_back({x, q.y1});
    }
    for (int y = q.y0 + 1; y < q.y1; ++y) {
      if (mesh.is_vertex({q.x0, y})) boundary.push_back({q.x0, y});
      if (mesh.is_vertex({q.x1, y})) boundary.push_back({q.x1, y});
    }
    // aligned vertices on one element boundary must be joined by skeleton:
    // the open segment between them is in S iff every unit edge between is
    for (std::size_t a = 0; a < boundary.size(); ++a)
      for (std::size_t b = a + 1; b < boundary.size(); ++b) {
        const IndexPoint &u = boundary[a], &v = boundary[b];
        bool joined = true;
        if (u.x == v.x && u.y != v.y) {
          for (int y = std::min(u.y, v.y); y < std::max(u.y, v.y); ++y)
            joined = joined && mesh.has_edge({u.x, y}, Dir::Up);
        } else if (u.y == v.y && u.x != v.x) {
          for (int x = std::min(u.x, v.x); x < std::max(u.x, v.x); ++x)
            joined = joined && mesh.has_edge({x, u.y}, Dir::Right);
        }
        if (!joined) rep.boundary_violations.push_back({u, v});
      }
  }
  rep.element_boundaries_ok = rep.boundary_violations.empty();

  for (const IndexPoint& v : mesh.vertices()) {
    bool on_boundary = v.x == d.m_lo || v.x == d.m_hi || v.y == d.n_lo || v.y == d.n_hi;
    if (!on_boundary && mesh.valence(v) == 3 && !d.in_active_region(v))
      rep.frame_t_junctions.push_back(v);
  }
  rep.frame_topology_ok = rep.frame_t_junctions.empty();

  return rep;
}

std::vector<Segment> segments_on_line(const TMesh& mesh, Axis axis, int line) {
  std::vector<Segment> out;
  const IndexDomain& d = mesh.domain();
  int lo = axis == Axis::Horizontal ? d.m_lo : d.n_lo;
  int hi = axis == Axis::Horizontal ? d.m_hi : d.n_hi;
  auto edge_at = [&](int k) {  // unit edge starting at coordinate k along the line
    return axis == Axis::Horizontal ? mesh.has_edge({k, line}, Dir::Right)
                                    : mesh.has_edge({line, k}, Dir::Up);
  };
  auto point_at = [&](int k) {
    return axis == Axis::Horizontal ? IndexPoint{k, line} : IndexPoint{line, k};
  };
  int run = -1;
  for (int k = lo; k <= hi; ++k) {
    bool e = k < hi && edge_at(k);
    if (e && run < 0) run = k;
    if (!e && run >= 0) {
      Segment seg;
      seg.axis = axis;
      seg.line = line;
      seg.span = {run, k};
      for (int t = run; t <= k; ++t)
        if (mesh.is_vertex(point_at(t))) seg.vertices.push_back(point_at(t));
      out.push_back(std::move(seg));
      run = -1;
    }
  }
  return out;
}

SegmentSet segments(const TMesh& mesh) {
  SegmentSet set;
  const IndexDomain& d = mesh.domain();
  for (int row = d.n_lo; row <= d.n_hi; ++row)
    for (auto& s : segments_on_line(mesh, Axis::Horizontal, row)) set.all.push_back(std::move(s));
  set.n_horizontal = static_cast<int>(set.all.size());
  for (int col = d.m_lo; col <= d.m_hi; ++col)
    for (auto& s : segments_on_line(mesh, Axis::Vertical, col)) set.all.push_back(std::move(s));
  set.n_vertical = static_cast<int>(set.all.size()) - set.n_horizontal;
  return set;
}

const char* symbol_glyph(Symbol s) {
  switch (s) {
    case Symbol::Plus: return "+";
    case Symbol::TLeft: return "⊢";   // ⊢  (stem on the right, face grows left)
    case Symbol::TRight: return "⊣";  // ⊣
    case Symbol::TDown: return "⊥";   // ⊥
    case Symbol::TUp: return "⊤";     // ⊤
    case Symbol::VEdge: return "|";
    case Symbol::HEdge: return "-";
    case Symbol::Empty: return "·";   // ·
  }
  return "?";
}

Symbol SymbolicMesh::at(const IndexPoint& p) const {
  return cells[static_cast<std::size_t>(p.y - domain.n_lo) * (domain.width() + 1) +
               (p.x - domain.m_lo)];
}

Symbol& SymbolicMesh::at(const IndexPoint& p) {
  return cells[static_cast<std::size_t>(p.y - domain.n_lo) * (domain.width() + 1) +
               (p.x - domain.m_lo)];
}

std::string SymbolicMesh::render() const {
  std::ostringstream os;
  for (int y = domain.n_hi; y >= domain.n_lo; --y) {
    for (int x = domain.m_lo; x <= domain.m_hi; ++x) {
      if (x > domain.m_lo) os << ' ';
      os << symbol_glyph(at({x, y}));
    }
    os << '\n';
  }
  return os.str();
}

SymbolicMesh symbolic(const TMesh& mesh) {
  SymbolicMesh sym;
  sym.domain = mesh.domain();
  sym.cells.assign(static_cast<std::size_t>(sym.domain.width() + 1) * (sym.domain.height() + 1),
                   Symbol::Empty);
  const IndexDomain& d = sym.domain;
  for (int y = d.n_lo; y <= d.n_hi; ++y)
    for (int x = d.m_lo; x <= d.m_hi; ++x) {
      IndexPoint p{x, y};
      bool L = mesh.has_edge(p, Dir::Left), R = mesh.has_edge(p, Dir::Right);
      bool D = mesh.has_edge(p, Dir::Down), U = mesh.has_edge(p, Dir::Up);
      int val = L + R + D + U;
      Symbol s = Symbol::Empty;
      bool boundary = x == d.m_lo || x == d.m_hi || y == d.n_lo || y == d.n_hi;
      if (val == 4 || (val >= 2 && d.is_corner(p)) || (val == 3 && boundary)) {
        s = Symbol::Plus;
      } else if (val == 3) {
        if (!L) s = Symbol::TLeft;
        else if (!R) s = Symbol::TRight;
        else if (!D) s = Symbol::TDown;
        else s = Symbol::TUp;
      } else if (val == 2 && D && U) {
        s = Symbol::VEdge;
      } else if (val == 2 && L && R) {
        s = Symbol::HEdge;
      }
      sym.at(p) = s;
    }
  return sym;
}

TMesh from_symbolic(const SymbolicMesh& sym) {
  const IndexDomain& d = sym.domain;
  // connection of a symbol toward a direction; Plus resolves from its position
  auto connects = [&](const IndexPoint& p, Dir dir) {
    Symbol s = sym.at(p);
    switch (s) {
      case Symbol::Empty: return false;
      case Symbol::VEdge: return dir == Dir::Up || dir == Dir::Down;
      case Symbol::HEdge: return dir == Dir::Left || dir == Dir::Right;
      case Symbol::TLeft: return dir != Dir::Left;
      case Symbol::TRight: return dir != Dir::Right;
      case Symbol::TDown: return dir != Dir::Down;
      case Symbol::TUp: return dir != Dir::Up;
      case Symbol::Plus:
        if (dir == Dir::Left) return p.x > d.m_lo;
        if (dir == Dir::Right) return p.x < d.m_hi;
        if (dir == Dir::Down) return p.y > d.n_lo;
        return p.y < d.n_hi;
    }
    return false;
  };
  std::vector<LineSpan> h, v;
  for (int y = d.n_lo; y <= d.n_hi; ++y)
    for (int x = d.m_lo; x < d.m_hi; ++x)
      if (connects({x, y}, Dir::Right) && connects({x + 1, y}, Dir::Left))
        h.push_back({y, {x, x + 1}});
  for (int x = d.m_lo; x <= d.m_hi; ++x)
    for (int y = d.n_lo; y < d.n_hi; ++y)
      if (connects({x, y}, Dir::Up) && connects({x, y + 1}, Dir::Down))
        v.push_back({x, {y, y + 1}});
  return TMesh::build(d, h, v);
}

std::vector<IndexPoint> anchors(const TMesh& mesh) {
  std::vector<IndexPoint> out;
  for (const IndexPoint& v : mesh.vertices())
    if (mesh.domain().in_active_region(v)) out.push_back(v);
  return out;
}

std::vector<TJunction> t_junctions(const TMesh& mesh) {
  std::vector<TJunction> out;
  const IndexDomain& d = mesh.domain();
  for (const IndexPoint& p : mesh.vertices()) {
    if (!d.in_active_region(p)) continue;
    bool on_boundary = p.x == d.m_lo || p.x == d.m_hi || p.y == d.n_lo || p.y == d.n_hi;
    if (on_boundary || mesh.valence(p) != 3) continue;
    if (!mesh.has_edge(p, Dir::Left)) out.push_back({p, Dir::Left});
    else if (!mesh.has_edge(p, Dir::Right)) out.push_back({p, Dir::Right});
    else if (!mesh.has_edge(p, Dir::Down)) out.push_back({p, Dir::Down});
    else out.push_back({p, Dir::Up});
  }
  return out;
}

}  // namespace astk
