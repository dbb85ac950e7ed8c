#include "astk/generator.hpp"

#include <algorithm>

#include "astk/extension.hpp"

namespace astk {

std::uint64_t Rng::next() {  // splitmix64 step
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::uniform(int lo, int hi) {
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % range);
}

namespace {

struct Insertion {
  Axis axis;
  LineSpan span;
};

// candidate span for one new partial line on an unused lattice line
std::optional<Insertion> propose_insertion(const TMesh& mesh, Rng& rng) {
  const IndexDomain& d = mesh.domain();
  Axis axis = rng.coin() ? Axis::Vertical : Axis::Horizontal;
  int line_lo = (axis == Axis::Vertical ? d.m_lo : d.n_lo) + 4;
  int line_hi = (axis == Axis::Vertical ? d.m_hi : d.n_hi) - 4;
  if (line_hi < line_lo) return std::nullopt;

  std::vector<int> unused;
  for (int line = line_lo; line <= line_hi; ++line) {
    bool used = false;
    if (axis == Axis::Vertical) {
      for (int y = d.n_lo; y < d.n_hi && !used; ++y) used = mesh.has_edge({line, y}, Dir::Up);
    } else {
      for (int x = d.m_lo; x < d.m_hi && !used; ++x) used = mesh.has_edge({x, line}, Dir::Right);
    }
    if (!used) unused.push_back(line);
  }
  if (unused.empty()) return std::nullopt;
  int line = unused[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(unused.size()) - 1))];

  // endpoints: perpendicular crossings within the active band, or the boundary
  int perp_lo = axis == Axis::Vertical ? d.n_lo : d.m_lo;
  int perp_hi = axis == Axis::Vertical ? d.n_hi : d.m_hi;
  std::vector<int> stops{perp_lo, perp_hi};
  for (int k = perp_lo + 2; k <= perp_hi - 2; ++k) {
    IndexPoint p = axis == Axis::Vertical ? IndexPoint{line, k} : IndexPoint{k, line};
    bool crossed = axis == Axis::Vertical ? mesh.on_h_skeleton(p) : mesh.on_v_skeleton(p);
    if (crossed) stops.push_back(k);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  if (stops.size() < 2) return std::nullopt;
  int ai = rng.uniform(0, static_cast<int>(stops.size()) - 2);
  int bi = rng.uniform(ai + 1, static_cast<int>(stops.size()) - 1);
  return Insertion{axis, {line, {stops[static_cast<std::size_t>(ai)], stops[static_cast<std::size_t>(bi)]}}};
}

TMesh build_from(const IndexDomain& d, const std::vector<LineSpan>& h,
                 const std::vector<LineSpan>& v) {
  return TMesh::build(d, h, v);
}

bool acceptable(const TMesh& mesh) {
  return validate_admissible(mesh).admissible() && is_analysis_suitable(mesh);
}

}  // namespace

GeneratedMesh random_as_mesh(Rng& rng, int max_insertions) {
  int m = rng.uniform(9, 16), n = rng.uniform(9, 16);
  IndexDomain d(0, m, 0, n);

  GeneratedMesh g;
  for (int r : {0, 1, 2, 3, n - 3, n - 2, n - 1, n}) g.h_base.push_back({r, {0, m}});
  for (int c : {0, 1, 2, 3, m - 3, m - 2, m - 1, m}) g.v_base.push_back({c, {0, n}});
  TMesh mesh = build_from(d, g.h_base, g.v_base);

  int wanted = rng.uniform(1, max_insertions);
  int attempts = 0;
  while (static_cast<int>(g.h_insert.size() + g.v_insert.size()) < wanted && attempts < 60) {
    ++attempts;
    std::optional<Insertion> ins = propose_insertion(mesh, rng);
    if (!ins) continue;
    std::vector<LineSpan> h = g.h_base, v = g.v_base;
    for (const LineSpan& s : g.h_insert) h.push_back(s);
    for (const LineSpan& s : g.v_insert) v.push_back(s);
    (ins->axis == Axis::Horizontal ? h : v).push_back(ins->span);
    TMesh candidate = build_from(d, h, v);
    if (!acceptable(candidate)) continue;
    (ins->axis == Axis::Horizontal ? g.h_insert : g.v_insert).push_back(ins->span);
    mesh = std::move(candidate);
  }
  g.mesh = std::move(mesh);

  g.knots.m_lo = 0;
  g.knots.n_lo = 0;
  for (int i = 0; i <= m; ++i) g.knots.xi.push_back(Rational(16 * i + rng.uniform(-7, 7), 16));
  for (int j = 0; j <= n; ++j) g.knots.eta.push_back(Rational(16 * j + rng.uniform(-7, 7), 16));
  return g;
}

TMesh rebuild_with_insertions(const GeneratedMesh& g, const std::vector<int>& h_keep,
                              const std::vector<int>& v_keep) {
  std::vector<LineSpan> h = g.h_base, v = g.v_base;
  for (int i : h_keep) h.push_back(g.h_insert[static_cast<std::size_t>(i)]);
  for (int i : v_keep) v.push_back(g.v_insert[static_cast<std::size_t>(i)]);
  return build_from(g.mesh.domain(), h, v);
}

std::optional<TMesh> random_as_insertion(const GeneratedMesh& g, Rng& rng, int attempts) {
  for (int k = 0; k < attempts; ++k) {
    std::optional<Insertion> ins = propose_insertion(g.mesh, rng);
    if (!ins) continue;
    std::vector<LineSpan> h = g.mesh.h_spans(), v = g.mesh.v_spans();
    (ins->axis == Axis::Horizontal ? h : v).push_back(ins->span);
    TMesh candidate = build_from(g.mesh.domain(), h, v);
    if (candidate.same_skeleton(g.mesh)) continue;
    if (!acceptable(candidate)) continue;
    return candidate;
  }
  return std::nullopt;
}

}  // namespace astk
