#include "astk/dualproj.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace astk {

SmoothFunction fn_one() {
  SmoothFunction f;
  f.name = "one";
  f.value = [](double, double) { return 1.0; };
  f.jet = [](double, double) {
    Jet<double> j = Jet<double>::Zero();
    j(0, 0) = 1.0;
    return j;
  };
  return f;
}

SmoothFunction fn_monomial(int a, int b) {
  if (a < 0 || b < 0) fail(ErrorCode::InvalidArgument, "monomial exponents must be >= 0");
  SmoothFunction f;
  f.name = "monomial " + std::to_string(a) + " " + std::to_string(b);
  f.value = [a, b](double x, double y) { return std::pow(x, a) * std::pow(y, b); };
  f.jet = [a, b](double x, double y) {
    auto dpow = [](int e, int d, double t) {
      if (d > e) return 0.0;
      double c = 1;
      for (int k = 0; k < d; ++k) c *= e - k;
      return c * std::pow(t, e - d);
    };
    Jet<double> j;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) j(i, k) = dpow(a, i, x) * dpow(b, k, y);
    return j;
  };
  return f;
}

SmoothFunction fn_sincos() {
  SmoothFunction f;
  f.name = "sin-cos";
  f.value = [](double x, double y) { return std::sin(x) * std::cos(y); };
  f.jet = [](double x, double y) {
    auto dsin = [](int d, double t) {
      switch (d % 4) {
        case 0: return std::sin(t);
        case 1: return std::cos(t);
        case 2: return -std::sin(t);
        default: return -std::cos(t);
      }
    };
    auto dcos = [&](int d, double t) { return dsin(d + 1, t); };
    Jet<double> j;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) j(i, k) = dsin(i, x) * dcos(k, y);
    return j;
  };
  return f;
}

SmoothFunction finite_difference_adapter(std::string name,
                                         std::function<double(double, double)> f) {
  SmoothFunction s;
  s.name = std::move(name);
  s.value = f;
  s.jet = [f](double x, double y) {
    const double h = 1e-6;
    // central stencils per axis, tensorized
    auto d1 = [&](auto&& g, double t) { return (g(t + h) - g(t - h)) / (2 * h); };
    auto d2 = [&](auto&& g, double t) { return (g(t + h) - 2 * g(t) + g(t - h)) / (h * h); };
    auto d3 = [&](auto&& g, double t) {
      return (g(t + 2 * h) - 2 * g(t + h) + 2 * g(t - h) - g(t - 2 * h)) / (2 * h * h * h);
    };
    Jet<double> j;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        auto fy = [&](double yy) {
          auto fx = [&](double xx) { return f(xx, yy); };
          switch (i) {
            case 0: return fx(x);
            case 1: return d1(fx, x);
            case 2: return d2(fx, x);
            default: return d3(fx, x);
          }
        };
        switch (k) {
          case 0: j(i, k) = fy(y); break;
          case 1: j(i, k) = d1(fy, y); break;
          case 2: j(i, k) = d2(fy, y); break;
          default: j(i, k) = d3(fy, y); break;
        }
      }
    return j;
  };
  return s;
}

SmoothFunction builtin_function(const std::string& spec) {
  std::istringstream is(spec);
  std::string head;
  is >> head;
  if (head == "one") return fn_one();
  if (head == "sin-cos") return fn_sincos();
  if (head == "monomial") {
    int a = -1, b = -1;
    if (is >> a >> b) return fn_monomial(a, b);
    fail(ErrorCode::InvalidArgument, "monomial needs two exponents");
  }
  fail(ErrorCode::InvalidArgument, "unknown test function: " + spec);
}

namespace {

/// Midpoint of the widest global-knot gap inside the widest span of the
/// local knot vector; never lands on a global knot value.
Rational pick_tau(const std::array<Rational, 5>& local, const std::vector<Rational>& global) {
  int best = -1;
  Rational best_len(-1);
  for (int k = 0; k < 4; ++k) {
    Rational len = local[k + 1] - local[k];
    if (len > best_len) {
      best_len = len;
      best = k;
    }
  }
  Rational lo = local[best], hi = local[best + 1];
  std::vector<Rational> cuts{lo};
  for (const Rational& g : global)
    if (lo < g && g < hi) cuts.push_back(g);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  Rational a = cuts[0], b = cuts[1];
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] - cuts[i] > b - a) {
      a = cuts[i];
      b = cuts[i + 1];
    }
  return (a + b) / 2;
}

}  // namespace

DualFunctional make_dual(const SplineSpace& space, int fi) {
  const AnchorFunction& f = space.function(fi);
  DualFunctional lam;
  lam.anchor = f.anchor;
  lam.xi_local = f.xi_local;
  lam.eta_local = f.eta_local;
  lam.tau_xi = pick_tau(f.xi_local, space.knots().xi);
  lam.tau_eta = pick_tau(f.eta_local, space.knots().eta);
  return lam;
}

std::vector<DualFunctional> make_duals(const SplineSpace& space) {
  std::vector<DualFunctional> out;
  out.reserve(static_cast<std::size_t>(space.size()));
  for (int i = 0; i < space.size(); ++i) out.push_back(make_dual(space, i));
  return out;
}

template <typename Scalar>
Scalar dual_apply_1d(const std::array<Scalar, 5>& t, const Scalar& tau,
                     const std::array<Scalar, 4>& f) {
  // psi(t) = (t - t1)(t - t2)(t - t3) via elementary symmetric functions
  Scalar e1 = t[1] + t[2] + t[3];
  Scalar e2 = t[1] * t[2] + t[1] * t[3] + t[2] * t[3];
  Scalar e3 = t[1] * t[2] * t[3];
  Scalar psi = tau * tau * tau - e1 * tau * tau + e2 * tau - e3;
  Scalar psi1 = Scalar(3) * tau * tau - Scalar(2) * e1 * tau + e2;
  Scalar psi2 = Scalar(6) * tau - Scalar(2) * e1;
  Scalar psi3 = Scalar(6);
  return (psi3 * f[0] - psi2 * f[1] + psi1 * f[2] - psi * f[3]) / Scalar(6);
}

template double dual_apply_1d<double>(const std::array<double, 5>&, const double&,
                                      const std::array<double, 4>&);
template Rational dual_apply_1d<Rational>(const std::array<Rational, 5>&, const Rational&,
                                          const std::array<Rational, 4>&);

namespace {

template <typename Scalar>
Scalar tensor_dual_apply(const std::array<Scalar, 5>& kx, const std::array<Scalar, 5>& ky,
                         const Scalar& tx, const Scalar& ty, const Jet<Scalar>& jet) {
  // collapse the y direction first, then apply the x functional
  std::array<Scalar, 4> collapsed;
  for (int r = 0; r < 4; ++r) {
    std::array<Scalar, 4> row{jet(r, 0), jet(r, 1), jet(r, 2), jet(r, 3)};
    collapsed[static_cast<std::size_t>(r)] = dual_apply_1d<Scalar>(ky, ty, row);
  }
  return dual_apply_1d<Scalar>(kx, tx, collapsed);
}

}  // namespace

double dual_apply(const DualFunctional& lam, const SmoothFunction& f) {
  if (!f.jet) fail(ErrorCode::DerivativesUnavailable, f.name);
  std::array<double, 5> kx, ky;
  for (int i = 0; i < 5; ++i) {
    kx[static_cast<std::size_t>(i)] = to_double(lam.xi_local[static_cast<std::size_t>(i)]);
    ky[static_cast<std::size_t>(i)] = to_double(lam.eta_local[static_cast<std::size_t>(i)]);
  }
  double tx = to_double(lam.tau_xi), ty = to_double(lam.tau_eta);
  return tensor_dual_apply<double>(kx, ky, tx, ty, f.jet(tx, ty));
}

Rational dual_apply_blending(const DualFunctional& lam, const AnchorFunction& g) {
  Jet<Rational> jet;
  std::array<Rational, 4> bx, by;
  for (int d = 0; d < 4; ++d) {
    bx[static_cast<std::size_t>(d)] = bspline_eval<Rational>(g.xi_local, lam.tau_xi, d);
    by[static_cast<std::size_t>(d)] = bspline_eval<Rational>(g.eta_local, lam.tau_eta, d);
  }
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s)
      jet(r, s) = bx[static_cast<std::size_t>(r)] * by[static_cast<std::size_t>(s)];
  return tensor_dual_apply<Rational>(lam.xi_local, lam.eta_local, lam.tau_xi, lam.tau_eta, jet);
}

Eigen::VectorXd project(const SplineSpace& space, const SmoothFunction& f) {
  Eigen::VectorXd c(space.size());
  for (int i = 0; i < space.size(); ++i) c[i] = dual_apply(make_dual(space, i), f);
  return c;
}

double eval_combination(const SplineSpace& space, const Eigen::VectorXd& coeffs, double x,
                        double y) {
  int ei = space.element_at(x, y);
  double s = 0;
  if (ei >= 0) {
    for (int fi : space.elements()[static_cast<std::size_t>(ei)].active)
      s += coeffs[fi] * space.blending_eval(fi, x, y);
  } else {
    for (int fi = 0; fi < space.size(); ++fi) s += coeffs[fi] * space.blending_eval(fi, x, y);
  }
  return s;
}

ExtendedSupport extended_support(const SplineSpace& space, int element_index) {
  const ParamElement& q = space.elements()[static_cast<std::size_t>(element_index)];
  ExtendedSupport out;
  out.element = element_index;
  out.anchors = q.active;
  bool first = true;
  for (int fi : q.active) {
    const AnchorFunction& f = space.function(fi);
    std::array<Rational, 4> r{f.xi_local[0], f.xi_local[4], f.eta_local[0], f.eta_local[4]};
    if (first) {
      out.bounding_rect = r;
      first = false;
    } else {
      out.bounding_rect[0] = std::min(out.bounding_rect[0], r[0]);
      out.bounding_rect[1] = std::max(out.bounding_rect[1], r[1]);
      out.bounding_rect[2] = std::min(out.bounding_rect[2], r[2]);
      out.bounding_rect[3] = std::max(out.bounding_rect[3], r[3]);
    }
    out.support_rects.push_back(r);
  }
  double w = to_double(out.bounding_rect[1] - out.bounding_rect[0]);
  double h = to_double(out.bounding_rect[3] - out.bounding_rect[2]);
  out.diameter = std::sqrt(w * w + h * h);
  return out;
}

namespace {

// 5-point Gauss-Legendre on [-1, 1]
constexpr double kGaussX[5] = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                               0.53846931010568309104, 0.90617984593866399280};
constexpr double kGaussW[5] = {0.23692688505618908751, 0.47862867049936646804,
                               0.56888888888888888889, 0.47862867049936646804,
                               0.23692688505618908751};

template <typename Fn>
double l2_over_reduced_domain(const SplineSpace& space, Fn&& integrand) {
  double acc = 0;
  double xmin = to_double(space.xi_min()), xmax = to_double(space.xi_max());
  double ymin = to_double(space.eta_min()), ymax = to_double(space.eta_max());
  for (const ParamElement& e : space.elements()) {
    double x0 = std::max(to_double(e.x0), xmin), x1 = std::min(to_double(e.x1), xmax);
    double y0 = std::max(to_double(e.y0), ymin), y1 = std::min(to_double(e.y1), ymax);
    if (x0 >= x1 || y0 >= y1) continue;
    double sx = (x1 - x0) / 2, cx = (x0 + x1) / 2;
    double sy = (y1 - y0) / 2, cy = (y0 + y1) / 2;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        double v = integrand(cx + sx * kGaussX[a], cy + sy * kGaussX[b]);
        acc += kGaussW[a] * kGaussW[b] * sx * sy * v * v;
      }
  }
  return std::sqrt(acc);
}

}  // namespace

double l2_projection_error(const SplineSpace& space, const SmoothFunction& f) {
  Eigen::VectorXd c = project(space, f);
  return l2_over_reduced_domain(space, [&](double x, double y) {
    return f.value(x, y) - eval_combination(space, c, x, y);
  });
}

double l2_norm(const SplineSpace& space, const SmoothFunction& f) {
  return l2_over_reduced_domain(space, [&](double x, double y) { return f.value(x, y); });
}

ConvergenceTable convergence_study(const std::vector<const SplineSpace*>& spaces,
                                   const SmoothFunction& f) {
  if (spaces.size() < 3)
    fail(ErrorCode::InvalidArgument, "convergence study needs at least 3 levels");
  ConvergenceTable table;
  for (const SplineSpace* s : spaces) {
    ConvergenceRow row;
    for (const ParamElement& e : s->elements()) {
      double w = to_double(e.x1 - e.x0), h = to_double(e.y1 - e.y0);
      row.h = std::max(row.h, std::sqrt(w * w + h * h));
    }
    row.error = l2_projection_error(*s, f);
    table.rows.push_back(row);
  }
  table.exact = true;
  for (const ConvergenceRow& r : table.rows)
    if (r.error > 1e-12) table.exact = false;
  if (!table.exact) {
    // least-squares slope of log(error) against log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(table.rows.size());
    for (const ConvergenceRow& r : table.rows) {
      double lx = std::log(r.h), ly = std::log(r.error);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    table.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return table;
}

SplineSpace dyadic_tensor_space(int level) {
  int spans = 4 << level;
  IndexDomain d(0, spans + 6, 0, spans + 6);
  std::vector<LineSpan> h, v;
  for (int r = d.n_lo; r <= d.n_hi; ++r) h.push_back({r, {d.m_lo, d.m_hi}});
  for (int c = d.m_lo; c <= d.m_hi; ++c) v.push_back({c, {d.n_lo, d.n_hi}});
  TMesh mesh = TMesh::build(d, h, v);
  GlobalKnots k;
  k.m_lo = d.m_lo;
  k.n_lo = d.n_lo;
  for (int i = 0; i <= spans + 6; ++i) {
    Rational val = Rational(i - 3) / spans;
    k.xi.push_back(val);
    k.eta.push_back(val);
  }
  return SplineSpace(std::move(mesh), std::move(k));
}

}  // namespace astk
