#include "astk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "astk/dimension.hpp"
#include "astk/dualproj.hpp"
#include "astk/generator.hpp"
#include "astk/meshio.hpp"
#include "astk/nesting.hpp"
#include "astk/svg.hpp"

namespace astk::cli {

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageOrIo = 2;

const char* yesno(bool b) { return b ? "true" : "false"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::MalformedMeshFile, path + ": cannot open for writing");
  out << content;
}

int cmd_check(const std::string& path, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  AdmissibilityReport rep = validate_admissible(mesh);
  out << "frame_lines: " << (rep.frame_lines_ok ? "pass" : "fail");
  for (auto& [axis, line] : rep.missing_frame_lines)
    out << " missing " << (axis == Axis::Horizontal ? "row " : "column ") << line;
  out << "\nactive_region_lines: " << (rep.active_lines_ok ? "pass" : "fail");
  for (auto& [axis, line] : rep.missing_active_lines)
    out << " missing " << (axis == Axis::Horizontal ? "row " : "column ") << line;
  out << "\nelement_boundaries: " << (rep.element_boundaries_ok ? "pass" : "fail");
  for (auto& [u, v] : rep.boundary_violations) out << " " << to_string(u) << "~" << to_string(v);
  out << "\nframe_topology: " << (rep.frame_topology_ok ? "pass" : "fail");
  for (auto& p : rep.frame_t_junctions) out << " " << to_string(p);
  out << "\nadmissible: " << yesno(rep.admissible()) << "\n";
  return rep.admissible() ? kOk : kValidationFailure;
}

int cmd_as_check(const std::string& path, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  if (!validate_admissible(mesh).admissible()) {
    out << "not admissible\n";
    return kValidationFailure;
  }
  if (auto w = as_violation(mesh)) {
    out << "not analysis-suitable: horizontal T-junction " << to_string(w->horizontal.pos)
        << " and vertical T-junction " << to_string(w->vertical.pos)
        << " have intersecting extensions at " << to_string(w->at) << "\n";
    return kValidationFailure;
  }
  out << "analysis-suitable\n";
  return kOk;
}

int cmd_extend(const std::string& path, const std::string& svg_path, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  ExtendedTMesh em = extend(mesh);
  out << "n_active=" << em.n_active << " n_crossing=" << em.n_crossing
      << " n_overlap=" << em.n_overlap << " n_extended=" << em.n_extended
      << " n_ext=" << em.n_ext_vertices << "\n";
  if (!svg_path.empty()) {
    SvgOptions o;
    o.extended = true;
    write_file(svg_path, render_svg(mesh, o));
  }
  return kOk;
}

int cmd_dim(const std::string& path, bool no_perturb, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  DimensionReport rep = dimension_report(mesh, f.knots, !no_perturb);
  out << "admissible           " << yesno(rep.admissible) << "\n"
      << "analysis-suitable    " << yesno(rep.analysis_suitable) << "\n"
      << "perturbation path    " << yesno(rep.used_perturbation) << "\n"
      << "counts               n_a=" << rep.n_active << " n_plus=" << rep.n_crossing
      << " n_minus=" << rep.n_overlap << " n_star=" << rep.n_extended
      << " n_ext=" << rep.n_ext_vertices << "\n"
      << "formula              " << rep.formula << "\n"
      << "nullity              " << rep.nullity_full << "\n"
      << "nullity (reduced)    " << rep.nullity_reduced << "\n"
      << "diagonalizable       " << yesno(rep.diagonalizable) << "\n"
      << "full column rank     " << yesno(rep.full_rank) << "\n"
      << "anchors              " << rep.n_anchors << "\n";
  out << "formula=" << rep.formula << " nullity=" << rep.nullity_full << " as="
      << yesno(rep.analysis_suitable) << " diag=" << yesno(rep.diagonalizable)
      << " agree=" << yesno(rep.agree) << "\n";
  return kOk;
}

int cmd_eval(const std::string& path, bool all, std::vector<int> anchor,
             const std::vector<double>& coords, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  SplineSpace space(f.build_mesh(), f.knots);
  if (coords.size() % 2 != 0)
    fail(ErrorCode::InvalidArgument, "points come as x y pairs");
  std::vector<int> targets;
  if (all) {
    for (int i = 0; i < space.size(); ++i) targets.push_back(i);
  } else {
    if (anchor.size() != 2) fail(ErrorCode::InvalidArgument, "--anchor needs i j");
    targets.push_back(space.function_index({anchor[0], anchor[1]}));
  }
  out << "anchor_i\tanchor_j\txi\teta\tvalue\n";
  for (int t : targets) {
    const AnchorFunction& fn = space.function(t);
    for (std::size_t k = 0; k + 1 < coords.size(); k += 2) {
      double v = space.blending_eval(t, coords[k], coords[k + 1]);
      out << fn.anchor.x << "\t" << fn.anchor.y << "\t" << format_double(coords[k]) << "\t"
          << format_double(coords[k + 1]) << "\t" << format_double(v) << "\n";
    }
  }
  return kOk;
}

int cmd_project(const std::string& path, const std::string& fn_spec, int grid,
                std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  SplineSpace space(f.build_mesh(), f.knots);
  SmoothFunction fn = builtin_function(fn_spec);
  Eigen::VectorXd c = project(space, fn);
  out << "anchor_i\tanchor_j\tcoefficient\n";
  for (int i = 0; i < space.size(); ++i)
    out << space.function(i).anchor.x << "\t" << space.function(i).anchor.y << "\t"
        << format_double(c[i]) << "\n";

  double sup = 0;
  double x0 = to_double(space.xi_min()), x1 = to_double(space.xi_max());
  double y0 = to_double(space.eta_min()), y1 = to_double(space.eta_max());
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      double x = x0 + (x1 - x0) * (a + 0.5) / grid, y = y0 + (y1 - y0) * (b + 0.5) / grid;
      sup = std::max(sup, std::abs(fn.value(x, y) - eval_combination(space, c, x, y)));
    }
  out << "sup_error\t" << format_double(sup) << "\n";
  out << "l2_error\t" << format_double(l2_projection_error(space, fn)) << "\n";
  return kOk;
}

int cmd_perturb(const std::string& path, const std::string& delta_text,
                const std::string& out_path, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  Rational delta = rational_from_string(delta_text);
  PerturbResult res = perturb(mesh, f.knots, delta);

  std::vector<std::string> comments;
  comments.push_back("perturbed mesh, delta = " + to_string(delta));
  for (const auto& [img, origin] : res.mesh.provenance)
    comments.push_back("vertex " + to_string(img) + " <- " + to_string(origin.original) +
                       " segments (" + std::to_string(origin.col_segment) + "," +
                       std::to_string(origin.row_segment) + ")");
  std::string text = write_mesh_file(mesh_file_from(res.mesh.mesh, res.knots.knots), comments);
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return kOk;
}

int cmd_converge(const std::string& path, const std::vector<std::string>& delta_texts,
                 std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  std::vector<Rational> deltas;
  for (const std::string& t : delta_texts) deltas.push_back(rational_from_string(t));
  DeviationTable table = convergence_experiment(mesh, f.knots, deltas);
  out << "delta\tmax_deviation";
  for (const IndexPoint& a : table.anchors) out << "\t" << a.x << "," << a.y;
  out << "\n";
  for (std::size_t d = 0; d < table.deltas.size(); ++d) {
    out << to_string(table.deltas[d]) << "\t" << format_double(table.max_deviation[d]);
    for (double v : table.deviations[d]) out << "\t" << format_double(v);
    out << "\n";
  }
  out << "index_vector_commutation\t" << (table.commutation_ok ? "exact" : "violated") << "\n";
  return table.commutation_ok ? kOk : kValidationFailure;
}

int cmd_nest(const std::string& coarse_path, const std::string& fine_path,
             const std::string& delta_text, std::ostream& out) {
  MeshFile f1 = load_mesh_file(coarse_path);
  MeshFile f2 = load_mesh_file(fine_path);
  NestingCertificate cert = certify_nested(f1.build_mesh(), f2.build_mesh(), f1.knots, f2.knots,
                                           rational_from_string(delta_text));
  if (cert.nested()) {
    out << "nested (delta = " << to_string(cert.delta) << ")\n";
    return kOk;
  }
  const auto& [axis, span] = *cert.witness;
  out << "not-nested: coarse extended skeleton piece "
      << (axis == Axis::Horizontal ? "row " : "column ") << span.line << " ["
      << span.span.lo << "," << span.span.hi
      << "] (perturbed indices) is absent from the fine extended mesh\n";
  return kValidationFailure;
}

int cmd_refine(const std::string& coarse_path, const std::string& fine_path,
               const std::string& net_path, const std::string& delta_text,
               const std::string& out_path, std::ostream& out) {
  MeshFile f1 = load_mesh_file(coarse_path);
  MeshFile f2 = load_mesh_file(fine_path);
  TMesh t1 = f1.build_mesh(), t2 = f2.build_mesh();
  NestingCertificate cert =
      certify_nested(t1, t2, f1.knots, f2.knots, rational_from_string(delta_text));
  if (!cert.nested()) {
    out << "not-nested; refusing to refine\n";
    return kValidationFailure;
  }
  SplineSpace coarse(t1, f1.knots), fine(t2, f2.knots);
  RefinementMatrix rm = refinement_matrix(coarse, fine, cert);

  ControlNet net = load_control_net(net_path);
  Eigen::MatrixXd pts(coarse.size(), 3);
  if (static_cast<int>(net.anchors.size()) != coarse.size())
    fail(ErrorCode::DimensionMismatch,
         "control net has " + std::to_string(net.anchors.size()) + " rows, space has " +
             std::to_string(coarse.size()) + " anchors");
  for (std::size_t r = 0; r < net.anchors.size(); ++r)
    pts.row(coarse.function_index(net.anchors[r])) = net.points.row(static_cast<Eigen::Index>(r));

  ControlNet refined;
  refined.anchors = rm.fine_anchors;
  refined.points = refine_geometry(rm, pts);
  std::string text = write_control_net(refined);
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return kOk;
}

int cmd_plot(const std::string& path, const std::string& out_path, bool extended,
             std::vector<int> fn_anchor, std::ostream& out) {
  MeshFile f = load_mesh_file(path);
  TMesh mesh = f.build_mesh();
  SvgOptions o;
  o.extended = extended;
  SplineSpace space(mesh, f.knots);
  if (fn_anchor.size() == 2) {
    o.raster_space = &space;
    o.raster_function = space.function_index({fn_anchor[0], fn_anchor[1]});
  }
  std::string svg = render_svg(mesh, o);
  if (out_path.empty())
    out << svg;
  else
    write_file(out_path, svg);
  return kOk;
}

// ---------------------------------------------------------------------------
// fuzz: randomized property harness driving the module-level guarantees

struct FuzzFailure {
  int iteration;
  std::string property;
  std::string detail;
  MeshFile mesh;
};

std::string fuzz_iteration(const GeneratedMesh& g, Rng& rng, bool inject_fault,
                           std::string* failed_property) {
  // dimension formula against exact nullity, simplification safety included
  DimensionReport rep = dimension_report(g.mesh, g.knots, true);
  long formula = rep.formula + (inject_fault ? 1 : 0);
  if (!rep.full_rank || formula != rep.nullity_full || rep.nullity_full != rep.nullity_reduced ||
      !rep.diagonalizable) {
    *failed_property = "dimension";
    std::ostringstream os;
    os << "formula=" << formula << " nullity=" << rep.nullity_full
       << " reduced=" << rep.nullity_reduced << " diag=" << yesno(rep.diagonalizable);
    return os.str();
  }

  SplineSpace space(g.mesh, g.knots);
  double x0 = to_double(space.xi_min()), x1 = to_double(space.xi_max());
  double y0 = to_double(space.eta_min()), y1 = to_double(space.eta_max());
  double worst = 0;
  const int n = 40;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double x = x0 + (x1 - x0) * (a + 0.37) / n, y = y0 + (y1 - y0) * (b + 0.61) / n;
      worst = std::max(worst, std::abs(space.sum_at(x, y) - 1.0));
    }
  if (worst > 1e-12) {
    *failed_property = "partition-of-unity";
    return "max |sum - 1| = " + format_double(worst);
  }

  std::vector<DualFunctional> duals = make_duals(space);
  double bi_worst = 0;
  for (int a = 0; a < space.size(); ++a)
    for (int b = 0; b < space.size(); ++b) {
      const AnchorFunction& fb = space.function(b);
      const AnchorFunction& fa = space.function(a);
      if (!fa.support_overlaps(fb.xi_local[0], fb.xi_local[4], fb.eta_local[0], fb.eta_local[4]))
        continue;
      double v = to_double(dual_apply_blending(duals[static_cast<std::size_t>(a)], fb));
      bi_worst = std::max(bi_worst, std::abs(v - (a == b ? 1.0 : 0.0)));
    }
  if (bi_worst > 1e-10) {
    *failed_property = "biorthogonality";
    return "max |lambda_A(N_B) - delta_AB| = " + format_double(bi_worst);
  }

  std::optional<TMesh> refined = random_as_insertion(g, rng);
  if (refined) {
    NestingCertificate cert = certify_nested(g.mesh, *refined, g.knots, g.knots);
    if (cert.nested()) {
      SplineSpace fine(*refined, g.knots);
      RefinementMatrix rm = refinement_matrix(space, fine, cert);
      double rep_worst = 0;
      const int rn = 24;
      for (int a = 0; a < rn; ++a)
        for (int b = 0; b < rn; ++b) {
          double x = x0 + (x1 - x0) * (a + 0.43) / rn, y = y0 + (y1 - y0) * (b + 0.29) / rn;
          for (int ci = 0; ci < space.size(); ++ci) {
            double coarse_v = space.blending_eval(ci, x, y);
            double fine_v = 0;
            for (int fi = 0; fi < fine.size(); ++fi)
              if (rm.c(fi, ci) != 0) fine_v += to_double(rm.c(fi, ci)) * fine.blending_eval(fi, x, y);
            rep_worst = std::max(rep_worst, std::abs(coarse_v - fine_v));
          }
        }
      if (rep_worst > 1e-10) {
        *failed_property = "refinement-reproduction";
        return "max reproduction residual = " + format_double(rep_worst);
      }
    }
  }
  return {};
}

int cmd_fuzz(std::uint64_t seed, int count, bool inject_fault, std::ostream& out) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
  std::vector<FuzzFailure> failures;
  for (int i = 0; i < count; ++i) {
    Rng rng(seed * 0x100000001b3ull + static_cast<std::uint64_t>(i));
    GeneratedMesh g = random_as_mesh(rng);
    std::string property;
    std::string detail = fuzz_iteration(g, rng, inject_fault, &property);
    if (detail.empty()) {
      out << "iteration " << i << ": ok (domain " << g.mesh.domain().m_hi << "x"
          << g.mesh.domain().n_hi << ", insertions "
          << g.h_insert.size() + g.v_insert.size() << ")\n";
      continue;
    }

    // shrink: drop insertions one at a time while the property still fails
    std::vector<int> h_keep, v_keep;
    for (std::size_t k = 0; k < g.h_insert.size(); ++k) h_keep.push_back(static_cast<int>(k));
    for (std::size_t k = 0; k < g.v_insert.size(); ++k) v_keep.push_back(static_cast<int>(k));
    bool shrunk = true;
    GeneratedMesh current = g;
    while (shrunk) {
      shrunk = false;
      for (std::size_t drop = 0; drop < h_keep.size() + v_keep.size(); ++drop) {
        std::vector<int> h2 = h_keep, v2 = v_keep;
        if (drop < h_keep.size())
          h2.erase(h2.begin() + static_cast<long>(drop));
        else
          v2.erase(v2.begin() + static_cast<long>(drop - h_keep.size()));
        GeneratedMesh cand = g;
        try {
          cand.mesh = rebuild_with_insertions(g, h2, v2);
        } catch (const Error&) {
          continue;
        }
        if (!validate_admissible(cand.mesh).admissible() || !is_analysis_suitable(cand.mesh))
          continue;
        Rng rng2(seed * 0x100000001b3ull + static_cast<std::uint64_t>(i));
        std::string prop2;
        if (!fuzz_iteration(cand, rng2, inject_fault, &prop2).empty()) {
          h_keep = h2;
          v_keep = v2;
          current = cand;
          shrunk = true;
          break;
        }
      }
    }
    out << "iteration " << i << ": FAIL " << property << " (" << detail << ")\n";
    failures.push_back(
        {i, property, detail, mesh_file_from(current.mesh, current.knots)});
  }

  out << "fuzz: " << count - static_cast<int>(failures.size()) << "/" << count << " passed\n";
  for (const FuzzFailure& f : failures) {
    out << "--- minimized counterexample for iteration " << f.iteration << " (" << f.property
        << ")\n";
    out << write_mesh_file(f.mesh, {f.detail});
  }
  return failures.empty() ? kOk : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bicubic analysis-suitable T-spline kernel"};
  app.require_subcommand(1);

  std::string mesh_path, mesh2_path, out_path, svg_path, fn_spec = "one", delta = "1/1024";
  std::string net_path;
  std::vector<std::string> deltas{"1/10", "1/100", "1/1000", "1/10000", "1/100000"};
  std::vector<double> points;
  std::vector<int> anchor;
  bool all = false, extended = false, no_perturb = false, inject_fault = false;
  int grid = 50, count = 10;
  std::uint64_t seed = 1;

  CLI::App* c_check = app.add_subcommand("check", "validate admissibility");
  c_check->add_option("mesh", mesh_path)->required();

  CLI::App* c_as = app.add_subcommand("as-check", "analysis-suitability test");
  c_as->add_option("mesh", mesh_path)->required();

  CLI::App* c_ext = app.add_subcommand("extend", "extended T-mesh and vertex classification");
  c_ext->add_option("mesh", mesh_path)->required();
  c_ext->add_option("--svg", svg_path, "write the classified mesh as SVG");

  CLI::App* c_dim = app.add_subcommand("dim", "spline space dimension report");
  c_dim->add_option("mesh", mesh_path)->required();
  c_dim->add_flag("--no-perturb", no_perturb, "fail on knot multiplicities instead of perturbing");

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate blending functions");
  c_eval->add_option("mesh", mesh_path)->required();
  c_eval->add_flag("--all", all, "every anchor");
  c_eval->add_option("--anchor", anchor, "anchor i j")->expected(2);
  c_eval->add_option("--points", points, "xi eta pairs")->expected(-1);

  CLI::App* c_proj = app.add_subcommand("project", "dual-functional projection");
  c_proj->add_option("mesh", mesh_path)->required();
  c_proj->add_option("--function", fn_spec, "one | 'monomial a b' | sin-cos");
  c_proj->add_option("--grid", grid, "sup-norm sample grid");

  CLI::App* c_pert = app.add_subcommand("perturb", "emit the perturbed mesh");
  c_pert->add_option("mesh", mesh_path)->required();
  c_pert->add_option("--delta", delta, "perturbation parameter (rational)");
  c_pert->add_option("-o,--output", out_path);

  CLI::App* c_conv = app.add_subcommand("converge", "basis convergence experiment");
  c_conv->add_option("mesh", mesh_path)->required();
  c_conv->add_option("--deltas", deltas, "decreasing rationals")->expected(-1);

  CLI::App* c_nest = app.add_subcommand("nest", "nestedness certificate");
  c_nest->add_option("coarse", mesh_path)->required();
  c_nest->add_option("fine", mesh2_path)->required();
  c_nest->add_option("--delta", delta);

  CLI::App* c_ref = app.add_subcommand("refine", "refine a control net");
  c_ref->add_option("coarse", mesh_path)->required();
  c_ref->add_option("fine", mesh2_path)->required();
  c_ref->add_option("--net", net_path, "control net file")->required();
  c_ref->add_option("--delta", delta);
  c_ref->add_option("-o,--output", out_path);

  CLI::App* c_plot = app.add_subcommand("plot", "SVG rendering");
  c_plot->add_option("mesh", mesh_path)->required();
  c_plot->add_option("-o,--output", out_path);
  c_plot->add_flag("--extended", extended);
  c_plot->add_option("--function", anchor, "raster one blending function (anchor i j)")
      ->expected(2);

  CLI::App* c_fuzz = app.add_subcommand("fuzz", "randomized property harness");
  c_fuzz->add_option("--seed", seed);
  c_fuzz->add_option("--count", count);
  c_fuzz->add_flag("--inject-fault", inject_fault, "self-test: flip one classification count");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageOrIo;
  }

  try {
    if (c_check->parsed()) return cmd_check(mesh_path, out);
    if (c_as->parsed()) return cmd_as_check(mesh_path, out);
    if (c_ext->parsed()) return cmd_extend(mesh_path, svg_path, out);
    if (c_dim->parsed()) return cmd_dim(mesh_path, no_perturb, out);
    if (c_eval->parsed()) return cmd_eval(mesh_path, all, anchor, points, out);
    if (c_proj->parsed()) return cmd_project(mesh_path, fn_spec, grid, out);
    if (c_pert->parsed()) return cmd_perturb(mesh_path, delta, out_path, out);
    if (c_conv->parsed()) return cmd_converge(mesh_path, deltas, out);
    if (c_nest->parsed()) return cmd_nest(mesh_path, mesh2_path, delta, out);
    if (c_ref->parsed()) return cmd_refine(mesh_path, mesh2_path, net_path, delta, out_path, out);
    if (c_plot->parsed()) return cmd_plot(mesh_path, out_path, extended, anchor, out);
    if (c_fuzz->parsed()) return cmd_fuzz(seed, count, inject_fault, out);
    err << "UnknownCommand\n";
    return kUsageOrIo;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::MalformedMeshFile:
      case ErrorCode::UnknownCommand:
      case ErrorCode::InvalidArgument:
        return kUsageOrIo;
      default:
        return kValidationFailure;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kUsageOrIo;
  }
}

}  // namespace astk::cli
