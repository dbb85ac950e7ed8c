#include "astk/perturb.hpp"

#include <algorithm>

namespace astk {

IndexPoint PerturbedMesh::original_of(const IndexPoint& p) const {
  auto it = provenance.find(p);
  if (it == provenance.end())
    fail(ErrorCode::InvalidArgument, to_string(p) + " has no provenance record");
  return it->second.original;
}

namespace {

struct AxisExpansion {
  std::vector<int> pi;                         // perturbed offset -> original line
  std::vector<std::vector<int>> image;         // image[line - lo][ordinal] -> perturbed line
  std::vector<Rational> values;                // perturbed knot values
  int slots = 0;
};

AxisExpansion expand_axis(int lo, int hi, const std::vector<Rational>& knots,
                          const std::vector<std::vector<Segment>>& segs_per_line, Axis axis,
                          const Rational& delta, const PerturbCoeffs& coeffs) {
  AxisExpansion ex;
  ex.image.resize(static_cast<std::size_t>(hi - lo + 1));
  for (int line = lo; line <= hi; ++line) {
    std::size_t copies = std::max<std::size_t>(1, segs_per_line[static_cast<std::size_t>(line - lo)].size());
    for (std::size_t g = 0; g < copies; ++g) {
      ex.image[static_cast<std::size_t>(line - lo)].push_back(lo + static_cast<int>(ex.pi.size()));
      ex.pi.push_back(line);
    }
  }
  ex.values.resize(ex.pi.size());
  ex.values[0] = knots[0];
  for (std::size_t k = 1; k < ex.pi.size(); ++k) {
    Rational span = knots[static_cast<std::size_t>(ex.pi[k] - lo)] -
                    knots[static_cast<std::size_t>(ex.pi[k - 1] - lo)];
    if (span == 0) span = coeffs.get(axis, ex.slots++) * delta;
    ex.values[k] = ex.values[k - 1] + span;
  }
  return ex;
}

// ordinal of the segment on `line` whose span contains coordinate k
int ordinal_on_line(const std::vector<Segment>& segs, int k, const IndexPoint& where) {
  for (std::size_t g = 0; g < segs.size(); ++g)
    if (segs[g].span.contains(k)) return static_cast<int>(g);
  fail(ErrorCode::InvalidArgument, "no segment through " + to_string(where));
}

}  // namespace

PerturbResult perturb(const TMesh& mesh, const GlobalKnots& knots, const Rational& delta,
                      const PerturbCoeffs& coeffs) {
  if (delta <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  knots.validate(mesh.domain());
  const IndexDomain& d = mesh.domain();

  std::vector<std::vector<Segment>> v_per_col(static_cast<std::size_t>(d.width() + 1));
  for (int c = d.m_lo; c <= d.m_hi; ++c)
    v_per_col[static_cast<std::size_t>(c - d.m_lo)] = segments_on_line(mesh, Axis::Vertical, c);
  std::vector<std::vector<Segment>> h_per_row(static_cast<std::size_t>(d.height() + 1));
  for (int r = d.n_lo; r <= d.n_hi; ++r)
    h_per_row[static_cast<std::size_t>(r - d.n_lo)] = segments_on_line(mesh, Axis::Horizontal, r);

  // xi splits by the vertical segments per column, eta by the horizontal per row
  AxisExpansion ex_x = expand_axis(d.m_lo, d.m_hi, knots.xi, v_per_col, Axis::Horizontal, delta, coeffs);
  AxisExpansion ex_y = expand_axis(d.n_lo, d.n_hi, knots.eta, h_per_row, Axis::Vertical, delta, coeffs);

  IndexDomain nd(d.m_lo, d.m_lo + static_cast<int>(ex_x.pi.size()) - 1, d.n_lo,
                 d.n_lo + static_cast<int>(ex_y.pi.size()) - 1);

  auto col_image = [&](const IndexPoint& v) {
    int g = ordinal_on_line(v_per_col[static_cast<std::size_t>(v.x - d.m_lo)], v.y, v);
    return std::pair<int, int>{ex_x.image[static_cast<std::size_t>(v.x - d.m_lo)][static_cast<std::size_t>(g)], g};
  };
  auto row_image = [&](const IndexPoint& v) {
    int g = ordinal_on_line(h_per_row[static_cast<std::size_t>(v.y - d.n_lo)], v.x, v);
    return std::pair<int, int>{ex_y.image[static_cast<std::size_t>(v.y - d.n_lo)][static_cast<std::size_t>(g)], g};
  };

  std::vector<LineSpan> h_spans, v_spans;
  for (int r = d.n_lo; r <= d.n_hi; ++r)
    for (const Segment& seg : h_per_row[static_cast<std::size_t>(r - d.n_lo)]) {
      const IndexPoint &a = seg.vertices.front(), &b = seg.vertices.back();
      h_spans.push_back({row_image(a).first, {col_image(a).first, col_image(b).first}});
    }
  for (int c = d.m_lo; c <= d.m_hi; ++c)
    for (const Segment& seg : v_per_col[static_cast<std::size_t>(c - d.m_lo)]) {
      const IndexPoint &a = seg.vertices.front(), &b = seg.vertices.back();
      v_spans.push_back({col_image(a).first, {row_image(a).first, row_image(b).first}});
    }

  PerturbResult out;
  out.mesh.mesh = TMesh::build(nd, h_spans, v_spans);
  for (const IndexPoint& v : mesh.vertices()) {
    auto [cx, gx] = col_image(v);
    auto [cy, gy] = row_image(v);
    out.mesh.provenance[{cx, cy}] = {v, gx, gy};
  }

  out.knots.knots.m_lo = nd.m_lo;
  out.knots.knots.n_lo = nd.n_lo;
  out.knots.knots.xi = ex_x.values;
  out.knots.knots.eta = ex_y.values;
  out.knots.hpi = ex_x.pi;
  out.knots.vpi = ex_y.pi;
  out.knots.slots_xi = ex_x.slots;
  out.knots.slots_eta = ex_y.slots;
  out.knots.delta = delta;
  out.knots.knots.validate(nd);
  return out;
}

RelativePerturbResult relative_perturb(const TMesh& t1, const TMesh& t2,
                                       const GlobalKnots& knots2, const Rational& delta,
                                       const PerturbCoeffs& coeffs) {
  if (!t1.subset_of(t2))
    fail(ErrorCode::NotASubmesh, "the coarse mesh is not contained in the fine mesh");
  if (!coeffs.all_strict())
    fail(ErrorCode::InvalidArgument, "relative perturbation needs strictly positive coefficients");

  RelativePerturbResult out;
  out.fine = perturb(t2, knots2, delta, coeffs);
  const IndexDomain& d = t2.domain();

  std::vector<std::vector<Segment>> v_per_col(static_cast<std::size_t>(d.width() + 1));
  for (int c = d.m_lo; c <= d.m_hi; ++c)
    v_per_col[static_cast<std::size_t>(c - d.m_lo)] = segments_on_line(t2, Axis::Vertical, c);
  std::vector<std::vector<Segment>> h_per_row(static_cast<std::size_t>(d.height() + 1));
  for (int r = d.n_lo; r <= d.n_hi; ++r)
    h_per_row[static_cast<std::size_t>(r - d.n_lo)] = segments_on_line(t2, Axis::Horizontal, r);

  std::map<IndexPoint, IndexPoint> image;
  for (const auto& [img, origin] : out.fine.mesh.provenance) image[origin.original] = img;
  auto image_of = [&](const IndexPoint& v) {
    auto it = image.find(v);
    if (it == image.end()) fail(ErrorCode::InvalidArgument, "vertex image not found");
    return it->second;
  };

  // keep the images of exactly those fine-mesh runs that lie in t1
  std::vector<LineSpan> h_spans, v_spans;
  for (int r = d.n_lo; r <= d.n_hi; ++r)
    for (const Segment& seg : h_per_row[static_cast<std::size_t>(r - d.n_lo)])
      for (std::size_t t = 0; t + 1 < seg.vertices.size(); ++t) {
        const IndexPoint &a = seg.vertices[t], &b = seg.vertices[t + 1];
        bool in_t1 = true;
        for (int x = a.x; x < b.x; ++x) in_t1 = in_t1 && t1.has_edge({x, r}, Dir::Right);
        if (!in_t1) continue;
        IndexPoint ia = image_of(a), ib = image_of(b);
        h_spans.push_back({ia.y, {ia.x, ib.x}});
      }
  for (int c = d.m_lo; c <= d.m_hi; ++c)
    for (const Segment& seg : v_per_col[static_cast<std::size_t>(c - d.m_lo)])
      for (std::size_t t = 0; t + 1 < seg.vertices.size(); ++t) {
        const IndexPoint &a = seg.vertices[t], &b = seg.vertices[t + 1];
        bool in_t1 = true;
        for (int y = a.y; y < b.y; ++y) in_t1 = in_t1 && t1.has_edge({c, y}, Dir::Up);
        if (!in_t1) continue;
        IndexPoint ia = image_of(a), ib = image_of(b);
        v_spans.push_back({ia.x, {ia.y, ib.y}});
      }

  out.coarse_mesh = TMesh::build(out.fine.mesh.mesh.domain(), h_spans, v_spans);
  return out;
}

DeviationTable convergence_experiment(const TMesh& mesh, const GlobalKnots& knots,
                                      const std::vector<Rational>& deltas,
                                      const PerturbCoeffs& coeffs) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] <= 0) fail(ErrorCode::InvalidArgument, "deltas must be positive");
    if (i > 0 && deltas[i] >= deltas[i - 1])
      fail(ErrorCode::InvalidArgument, "deltas must be strictly decreasing");
  }

  DeviationTable table;
  table.deltas = deltas;
  SplineSpace base(mesh, knots);
  table.anchors = anchors(mesh);

  for (const Rational& delta : deltas) {
    PerturbResult per = perturb(mesh, knots, delta, coeffs);
    SplineSpace ps(per.mesh.mesh, per.knots.knots);

    // sample strictly inside both reduced domains, off the knot lines
    double x0 = std::max(to_double(base.xi_min()), to_double(ps.xi_min()));
    double x1 = std::min(to_double(base.xi_max()), to_double(ps.xi_max()));
    double y0 = std::max(to_double(base.eta_min()), to_double(ps.eta_min()));
    double y1 = std::min(to_double(base.eta_max()), to_double(ps.eta_max()));
    const int n = 33;
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
      double t = (i + 0.5 + 0.1371 * ((i * 7) % 3)) / (n + 1);
      xs.push_back(x0 + (x1 - x0) * t);
      ys.push_back(y0 + (y1 - y0) * t);
    }

    std::vector<double> devs(table.anchors.size(), 0.0);
    for (int fi = 0; fi < ps.size(); ++fi) {
      const AnchorFunction& f = ps.function(fi);
      IndexPoint orig = per.mesh.original_of(f.anchor);
      auto it = std::lower_bound(table.anchors.begin(), table.anchors.end(), orig);
      if (it == table.anchors.end() || *it != orig)
        fail(ErrorCode::InvalidArgument, "perturbed anchor has no source anchor");
      std::size_t ai = static_cast<std::size_t>(it - table.anchors.begin());
      int bi = base.function_index(orig);

      // exact index-vector commutation through the index maps
      auto [hv_p, vv_p] = index_vectors(per.mesh.mesh, f.anchor);
      auto [hv_o, vv_o] = index_vectors(mesh, orig);
      for (int k = 0; k < 5; ++k) {
        if (per.knots.hpi_at(hv_p[static_cast<std::size_t>(k)]) != hv_o[static_cast<std::size_t>(k)] ||
            per.knots.vpi_at(vv_p[static_cast<std::size_t>(k)]) != vv_o[static_cast<std::size_t>(k)])
          table.commutation_ok = false;
      }

      double dev = 0;
      for (double x : xs)
        for (double y : ys)
          dev = std::max(dev, std::abs(ps.blending_eval(fi, x, y) - base.blending_eval(bi, x, y)));
      devs[ai] = dev;
    }
    double worst = 0;
    for (double v : devs) worst = std::max(worst, v);
    table.deviations.push_back(std::move(devs));
    table.max_deviation.push_back(worst);
  }
  return table;
}

}  // namespace astk
