#include "astk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace astk {

namespace {

class SvgWriter {
 public:
  SvgWriter(const IndexDomain& d, const SvgOptions& o) : d_(d), o_(o) {
    width_ = d.width() * o.cell + 2 * o.margin;
    height_ = d.height() * o.cell + 2 * o.margin;
  }

  double px(double x) const { return o_.margin + (x - d_.m_lo) * o_.cell; }
  double py(double y) const { return height_ - o_.margin - (y - d_.n_lo) * o_.cell; }

  void line(double x0, double y0, double x1, double y1, const char* color, double w,
            const char* dash = nullptr) {
    body_ << "  <line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1)
          << "\" y2=\"" << py(y1) << "\" stroke=\"" << color << "\" stroke-width=\"" << w << "\"";
    if (dash) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
  }

  void marker(const IndexPoint& p, VertexClass c, bool t_junction, bool new_vertex) {
    double x = px(p.x), y = py(p.y);
    const double r = o_.cell * 0.16;
    body_ << "  <g class=\"vertex " << vertex_class_name(c) << "\">";
    switch (c) {
      case VertexClass::Active:
        body_ << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r << "\" fill=\""
              << (t_junction ? "#d62728" : "white") << "\" stroke=\""
              << (t_junction ? "#d62728" : "black") << "\" stroke-width=\"1.4\"/>";
        break;
      case VertexClass::Crossing: {  // red star
        body_ << "<path d=\"";
        for (int k = 0; k < 10; ++k) {
          double rad = k % 2 ? r * 0.45 : r * 1.25;
          double a = -M_PI / 2 + k * M_PI / 5;
          body_ << (k ? "L" : "M") << x + rad * std::cos(a) << " " << y + rad * std::sin(a) << " ";
        }
        body_ << "Z\" fill=\"#d62728\"/>";
        break;
      }
      case VertexClass::Overlap:  // green triangle
        body_ << "<path d=\"M" << x << " " << y - 1.3 * r << " L" << x - 1.2 * r << " "
              << y + r << " L" << x + 1.2 * r << " " << y + r << " Z\" fill=\"#2ca02c\"/>";
        break;
      case VertexClass::Extended:
        if (new_vertex)
          body_ << "<rect x=\"" << x - r << "\" y=\"" << y - r << "\" width=\"" << 2 * r
                << "\" height=\"" << 2 * r << "\" fill=\"black\"/>";
        else
          body_ << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r
                << "\" fill=\"#9b9b9b\"/>";
        break;
    }
    body_ << "</g>\n";
  }

  void raw(const std::string& s) { body_ << s; }

  std::string finish() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_
       << "\">\n"
       << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  IndexDomain d_;
  SvgOptions o_;
  int width_ = 0, height_ = 0;
  std::ostringstream body_;
};

}  // namespace

std::string render_svg(const TMesh& mesh, const SvgOptions& options) {
  SvgWriter w(mesh.domain(), options);

  if (options.raster_space && options.raster_function >= 0) {
    const SplineSpace& sp = *options.raster_space;
    int n = options.raster_samples;
    double x0 = to_double(sp.xi_min()), x1 = to_double(sp.xi_max());
    double y0 = to_double(sp.eta_min()), y1 = to_double(sp.eta_max());
    // raster in parameter space, drawn over the index-space active region
    const IndexDomain& d = mesh.domain();
    double ix0 = d.m_lo + 3, ix1 = d.m_hi - 3, iy0 = d.n_lo + 3, iy1 = d.n_hi - 3;
    double peak = 0;
    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double x = x0 + (x1 - x0) * (a + 0.5) / n, y = y0 + (y1 - y0) * (b + 0.5) / n;
        double v = sp.blending_eval(options.raster_function, x, y);
        vals[static_cast<std::size_t>(a) * n + b] = v;
        peak = std::max(peak, v);
      }
    std::ostringstream cells;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = peak > 0 ? vals[static_cast<std::size_t>(a) * n + b] / peak : 0;
        int grey = static_cast<int>(255 - 215 * v);
        double cx = w.px(ix0 + (ix1 - ix0) * a / n);
        double cy = w.py(iy0 + (iy1 - iy0) * (b + 1.0) / n);
        double cw = (ix1 - ix0) / n * options.cell, ch = (iy1 - iy0) / n * options.cell;
        cells << "  <rect x=\"" << cx << "\" y=\"" << cy << "\" width=\"" << cw
              << "\" height=\"" << ch << "\" fill=\"rgb(" << grey << "," << grey << "," << grey
              << ")\"/>\n";
      }
    w.raw(cells.str());
  }

  if (!options.extended) {
    for (const LineSpan& s : mesh.h_spans()) w.line(s.span.lo, s.line, s.span.hi, s.line, "black", 1.6);
    for (const LineSpan& s : mesh.v_spans()) w.line(s.line, s.span.lo, s.line, s.span.hi, "black", 1.6);
    for (const IndexPoint& p : mesh.vertices()) {
      bool in_ar = mesh.domain().in_active_region(p);
      bool tj = in_ar && mesh.valence(p) == 3 && p.x != mesh.domain().m_lo &&
                p.x != mesh.domain().m_hi && p.y != mesh.domain().n_lo &&
                p.y != mesh.domain().n_hi;
      w.marker(p, in_ar ? VertexClass::Active : VertexClass::Extended, tj, false);
    }
    return w.finish();
  }

  ExtendedTMesh em = extend(mesh);
  // extension-only skeleton drawn thinner underneath the base mesh
  for (const LineSpan& s : em.ext_mesh.h_spans()) w.line(s.span.lo, s.line, s.span.hi, s.line, "#b0b0b0", 1.0, "4 3");
  for (const LineSpan& s : em.ext_mesh.v_spans()) w.line(s.line, s.span.lo, s.line, s.span.hi, "#b0b0b0", 1.0, "4 3");
  for (const LineSpan& s : mesh.h_spans()) w.line(s.span.lo, s.line, s.span.hi, s.line, "black", 1.6);
  for (const LineSpan& s : mesh.v_spans()) w.line(s.line, s.span.lo, s.line, s.span.hi, "black", 1.6);

  std::vector<TJunction> tjs = t_junctions(mesh);
  for (const IndexPoint& p : em.ext_mesh.vertices()) {
    bool tj = false;
    for (const TJunction& t : tjs) tj = tj || t.pos == p;
    bool new_vertex = !mesh.is_vertex(p);
    w.marker(p, em.class_of(p), tj, new_vertex);
  }
  return w.finish();
}

}  // namespace astk
