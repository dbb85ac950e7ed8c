#include "astk/extension.hpp"

#include <algorithm>

namespace astk {

const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Active: return "active";
    case VertexClass::Crossing: return "crossing";
    case VertexClass::Overlap: return "overlap";
    case VertexClass::Extended: return "extended";
  }
  return "?";
}

VertexClass ExtendedTMesh::class_of(const IndexPoint& p) const {
  auto it = classes.find(p);
  if (it == classes.end())
    fail(ErrorCode::InvalidArgument, to_string(p) + " is not a vertex of the extended mesh");
  return it->second;
}

std::vector<Extension> tjunction_extensions(const TMesh& mesh) {
  std::vector<Extension> out;
  for (const TJunction& tj : t_junctions(mesh)) {
    Axis ax = tj.axis();
    std::vector<int> tr = mesh.trace(tj.pos, ax);
    int own = ax == Axis::Horizontal ? tj.pos.x : tj.pos.y;
    auto it = std::lower_bound(tr.begin(), tr.end(), own);
    std::size_t pos = static_cast<std::size_t>(it - tr.begin());

    Extension ext;
    ext.owner = tj;
    ext.axis = ax;
    ext.line = ax == Axis::Horizontal ? tj.pos.y : tj.pos.x;
    bool face_down = tj.missing == Dir::Left || tj.missing == Dir::Down;
    if (face_down) {
      // indices i1 < i2 < i3 = own < i4; face [i1, own], edge ]own, i4]
      if (pos < 2 || pos + 1 >= tr.size())
        fail(ErrorCode::InsufficientTrace, "T-junction at " + to_string(tj.pos));
      ext.face = {tr[pos - 2], own};
      ext.edge = {own, tr[pos + 1]};
    } else {
      if (pos < 1 || pos + 2 >= tr.size())
        fail(ErrorCode::InsufficientTrace, "T-junction at " + to_string(tj.pos));
      ext.face = {own, tr[pos + 2]};
      ext.edge = {tr[pos - 1], own};
    }
    out.push_back(ext);
  }
  return out;
}

ExtendedTMesh extend(const TMesh& mesh, bool overlap_with_edge_extensions) {
  ExtendedTMesh em;
  em.base = mesh;
  em.extensions = tjunction_extensions(mesh);

  std::vector<LineSpan> h, v;
  for (const auto& s : mesh.h_spans()) h.push_back(s);
  for (const auto& s : mesh.v_spans()) v.push_back(s);
  for (const Extension& e : em.extensions) {
    (e.axis == Axis::Horizontal ? h : v).push_back({e.line, e.face});
    (e.axis == Axis::Horizontal ? h : v).push_back({e.line, e.edge});
  }
  em.ext_mesh = TMesh::build(mesh.domain(), h, v);

  auto on_face_ext = [&](Axis axis, const IndexPoint& p) {
    for (const Extension& e : em.extensions) {
      if (e.axis != axis) continue;
      int line = axis == Axis::Horizontal ? p.y : p.x;
      int k = axis == Axis::Horizontal ? p.x : p.y;
      if (e.line == line && e.face.contains(k)) return true;
    }
    return false;
  };
  auto on_same_dir_overlap = [&](Axis axis, const IndexPoint& p) {
    int line = axis == Axis::Horizontal ? p.y : p.x;
    int k = axis == Axis::Horizontal ? p.x : p.y;
    int hits = 0;
    for (const Extension& e : em.extensions) {
      if (e.axis != axis || e.line != line) continue;
      Span probe = overlap_with_edge_extensions ? e.total() : e.face;
      if (probe.contains(k)) ++hits;
    }
    return hits >= 2;
  };

  std::vector<IndexPoint> base_anchors = anchors(mesh);
  auto is_anchor = [&](const IndexPoint& p) {
    return std::binary_search(base_anchors.begin(), base_anchors.end(), p);
  };

  for (const IndexPoint& p : em.ext_mesh.vertices()) {
    VertexClass c;
    if (is_anchor(p)) {
      c = VertexClass::Active;
    } else if (on_face_ext(Axis::Horizontal, p) && on_face_ext(Axis::Vertical, p)) {
      c = VertexClass::Crossing;
    } else if ((on_same_dir_overlap(Axis::Horizontal, p) && mesh.on_v_skeleton(p)) ||
               (on_same_dir_overlap(Axis::Vertical, p) && mesh.on_h_skeleton(p))) {
      c = VertexClass::Overlap;
    } else {
      c = VertexClass::Extended;
    }
    em.classes.emplace(p, c);
    switch (c) {
      case VertexClass::Active: em.n_active++; break;
      case VertexClass::Crossing: em.n_crossing++; break;
      case VertexClass::Overlap: em.n_overlap++; break;
      case VertexClass::Extended: em.n_extended++; break;
    }
  }
  em.n_ext_vertices = static_cast<int>(em.ext_mesh.vertices().size());
  return em;
}

std::optional<AsWitness> as_violation(const TMesh& mesh) {
  std::vector<Extension> exts = tjunction_extensions(mesh);
  for (const Extension& he : exts) {
    if (he.axis != Axis::Horizontal) continue;
    Span hs = he.total();
    for (const Extension& ve : exts) {
      if (ve.axis != Axis::Vertical) continue;
      Span vs = ve.total();
      // horizontal [hs.lo,hs.hi] x {he.line} meets vertical {ve.line} x [vs.lo,vs.hi]
      if (hs.contains(ve.line) && vs.contains(he.line))
        return AsWitness{he.owner, ve.owner, {ve.line, he.line}};
    }
  }
  return std::nullopt;
}

}  // namespace astk
