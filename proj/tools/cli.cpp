#include "cli.hpp"

#include "mono/bodies.hpp"
#include "mono/equilibria.hpp"
#include "mono/gomboc.hpp"
#include "mono/integrate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace mono::cli {

namespace {

using nlohmann::json;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceOpts {
  std::string space = "spherical";
  std::string norm = "superellipsoid";
  double p = 4.0;
  double axial = 0.8;
  std::string norm_csv;

  void add(CLI::App* app) {
    app->add_option("--space", space, "Geometry")
        ->check(CLI::IsMember({"spherical", "hyperbolic", "euclidean", "normed"}))
        ->capture_default_str();
    app->add_option("--norm", norm, "Unit ball of a normed space")
        ->check(CLI::IsMember({"superellipsoid", "spheroid", "sphere", "csv"}))
        ->capture_default_str();
    app->add_option("--p", p, "Exponent of the superellipsoid norm")->capture_default_str();
    app->add_option("--axial", axial, "Polar semi-axis of the spheroid norm (equatorial is 1)")->capture_default_str();
    app->add_option("--norm-csv", norm_csv, "Sampled norm profile, columns theta,rho (with --norm csv)");
  }

  SpaceKind make(int dim) const {
    const Geometry g = parse_geometry(space);
    switch (g) {
      case Geometry::Euclidean: return SpaceKind::euclidean(dim);
      case Geometry::Spherical: return SpaceKind::spherical(dim);
      case Geometry::Hyperbolic: return SpaceKind::hyperbolic(dim);
      case Geometry::Normed: break;
    }
    if (norm == "superellipsoid") return SpaceKind::normed(dim, NormProfile::superellipsoid(p));
    if (norm == "spheroid") return SpaceKind::normed(dim, NormProfile::spheroid(axial));
    if (norm == "sphere") return SpaceKind::normed(dim, NormProfile::sphere());
    if (norm_csv.empty()) throw UsageError("--norm csv needs --norm-csv PATH");
    return SpaceKind::normed(dim, NormProfile::from_csv(norm_csv));
  }
};

struct QuadOpts {
  QuadratureSpec spec;
  bool no_richardson = false;

  void add(CLI::App* app) {
    app->add_option("--n-theta", spec.n_theta, "Gauss-Legendre nodes in polar angle")->capture_default_str();
    app->add_option("--n-phi", spec.n_phi, "Trapezoid nodes in azimuth")->capture_default_str();
    app->add_option("--n-r", spec.n_r, "Gauss-Legendre nodes along each ray")->capture_default_str();
    app->add_flag("--no-richardson", no_richardson, "Skip the doubled-grid error estimate");
  }

  QuadratureSpec make(int jobs) const {
    QuadratureSpec s = spec;
    s.richardson = !no_richardson;
    s.jobs = jobs;
    s.validate();
    return s;
  }
};

// Bodies for centroid, equilibria and export-mesh.
struct BodyOpts {
  std::string body = "ball";
  int dim = 3;
  double R = 1.0;
  std::string axes = "2,1.5,1";
  std::uint64_t seed = 0;
  double amplitude = 0.02;
  double scale = 0.5;
  double c = 1.0;
  double d = 0.02;
  bool center_c = false;

  void add(CLI::App* app) {
    app->add_option("--body", body, "Body family")
        ->check(CLI::IsMember({"ball", "ellipsoid", "perturbed", "random", "gomboc"}))
        ->capture_default_str();
    app->add_option("--dim", dim, "Dimension")->check(CLI::IsMember({2, 3}))->capture_default_str();
    app->add_option("--R", R, "Radius (ball, gomboc)")->capture_default_str();
    app->add_option("--axes", axes, "Semi-axes a,b[,c] (ellipsoid, perturbed)")->capture_default_str();
    app->add_option("--seed", seed, "Seed (perturbed, random)")->capture_default_str();
    app->add_option("--amplitude", amplitude, "Perturbation amplitude (perturbed)")->capture_default_str();
    app->add_option("--scale", scale, "Chart scale of a random plane body (random)")->capture_default_str();
    app->add_option("--c", c, "Shape parameter (gomboc)")->capture_default_str();
    app->add_option("--d", d, "Perturbation size (gomboc)")->capture_default_str();
    app->add_flag("--center", center_c, "Replace --c by the centering parameter (gomboc)");
  }
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

json point_json(const ChartPoint& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p(i));
  return a;
}

json census_json(const EquilibriumCensus& c, int dim) {
  json pts = json::array();
  for (const auto& p : c.points) {
    json q = {{"phi", p.phi}, {"distance", p.distance_value}, {"kind", to_string(p.kind)},
              {"hessian_eigenvalues", p.hessian_eigenvalues}};
    if (dim == 3) q["theta"] = p.theta;
    pts.push_back(q);
  }
  return {{"S", c.S}, {"H", c.H}, {"U", c.U}, {"degenerate", c.degenerate},
          {"poincare_hopf", to_string(poincare_hopf_check(c, dim))}, {"points", pts}, {"warnings", c.warnings}};
}

gomboc::GombocParams gomboc_params(double c, double d, double R, const SpaceKind& space) {
  gomboc::GombocParams gp;
  gp.c = c;
  gp.d = d;
  gp.R = R;
  gp.space = space;
  return gp;
}

class Progress {
 public:
  Progress(std::ostream& err, bool quiet) : err_(err), quiet_(quiet), t0_(std::chrono::steady_clock::now()) {}
  void operator()(const std::string& msg) const {
    if (quiet_) return;
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "[%7.2fs] ", s);
    err_ << buf << msg << '\n';
  }

 private:
  std::ostream& err_;
  bool quiet_;
  std::chrono::steady_clock::time_point t0_;
};

RadialBody make_body(const BodyOpts& b, const SpaceOpts& so, const QuadratureSpec& spec, const Progress& log) {
  const SpaceKind space = so.make(b.dim);
  if (b.body == "ball") return make_ball(space, b.R);
  if (b.body == "ellipsoid") {
    const auto ax = parse_list(b.axes, "--axes");
    if (static_cast<int>(ax.size()) < b.dim) throw UsageError("--axes needs one semi-axis per dimension");
    return make_ellipsoid(space, ax[0], ax[1], ax.size() > 2 ? ax[2] : 1.0);
  }
  if (b.body == "perturbed") {
    if (b.dim != 3) throw UsageError("--body perturbed needs --dim 3");
    const auto ax = parse_list(b.axes, "--axes");
    if (ax.size() != 3) throw UsageError("--body perturbed needs three semi-axes");
    return perturbed_ellipsoid_3d({ax[0], ax[1], ax[2]}, b.seed, b.amplitude, space);
  }
  if (b.body == "random") {
    if (b.dim != 2) throw UsageError("--body random needs --dim 2");
    return random_convex_2d(space, b.seed, b.scale);
  }
  if (b.dim != 3) throw UsageError("--body gomboc needs --dim 3");
  double c = b.c;
  if (b.center_c) {
    log("centering");
    c = find_centering_c(b.d, b.R, space, std::nullopt, 1e-12, spec).c_star;
    log("c* = " + std::to_string(c));
  }
  return gomboc::build_body(gomboc_params(c, b.d, b.R, space));
}

// "--config FILE" holds key=value lines; they are placed ahead of the
// command-line flags so that later (explicit) flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file " + *path);
  std::vector<std::string> cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") + 1 - b);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto l = s.find_first_not_of(" \t"), r = s.find_last_not_of(" \t");
      return l == std::string::npos ? std::string() : s.substr(l, r + 1 - l);
    };
    cfg.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  // The sub-command name must stay first.
  if (rest.empty() || rest[0].rfind("-", 0) == 0) {
    cfg.insert(cfg.end(), rest.begin(), rest.end());
    return cfg;
  }
  std::vector<std::string> out{rest[0]};
  out.insert(out.end(), cfg.begin(), cfg.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Centroids, equilibria and mono-monostatic bodies in non-Euclidean spaces", "mono"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every sub-command");
  app.footer("Exit codes: 0 success, 1 verification failure, 2 usage error.\n"
             "--config FILE reads key=value lines (flag names without dashes); explicit flags win.");

  int jobs = 1;
  bool quiet = false;
  SpaceOpts so;
  QuadOpts qo;
  BodyOpts bo;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_flag("--quiet", quiet, "No progress on stderr");
    so.add(sub);
    qo.add(sub);
  };

  // build
  auto* build = app.add_subcommand("build", "Build K(c, d) and describe it; optional CSV dump");
  double b_c = 1.0, b_d = 0.02, b_R = 1.0;
  bool b_center = false;
  std::string b_out;
  int b_csv_theta = 64, b_csv_phi = 128;
  common(build);
  build->add_option("--c", b_c, "Shape parameter in (0, 1]")->capture_default_str();
  build->add_option("--d", b_d, "Perturbation size in [0, 1)")->capture_default_str();
  build->add_option("--R", b_R, "Radius")->capture_default_str();
  build->add_flag("--center", b_center, "Replace --c by the centering parameter c*");
  build->add_option("--out", b_out, "CSV path for theta,phi,radial");
  build->add_option("--csv-theta", b_csv_theta, "CSV polar steps")->capture_default_str();
  build->add_option("--csv-phi", b_csv_phi, "CSV azimuth steps")->capture_default_str();

  // certify
  auto* certify = app.add_subcommand("certify", "Center K(c, d) and check conditions A-E; JSON to stdout");
  double ce_d = 0.02, ce_R = 1.0, ce_eps = 0.05;
  CertifyOptions ce_opts;
  common(certify);
  certify->add_option("--d", ce_d, "Perturbation size")->capture_default_str();
  certify->add_option("--R", ce_R, "Radius")->capture_default_str();
  certify->add_option("--eps", ce_eps, "Hausdorff tolerance")->capture_default_str();
  certify->add_option("--equilibria-grid", ce_opts.equilibria_grid, "Equilibrium search grid")->capture_default_str();
  certify->add_option("--curvature-grid", ce_opts.curvature_grid, "Curvature grid")->capture_default_str();
  certify->add_option("--hausdorff-grid", ce_opts.hausdorff_grid, "Hausdorff grid")->capture_default_str();

  // centroid
  auto* cen = app.add_subcommand("centroid", "Centroid of a body; JSON to stdout");
  common(cen);
  bo.add(cen);

  // equilibria
  auto* eq = app.add_subcommand("equilibria", "Equilibrium census of a body around its centroid; JSON to stdout");
  std::string eq_at = "centroid";
  int eq_grid = 64;
  common(eq);
  bo.add(eq);
  eq->add_option("--at", eq_at, "Reference point")->check(CLI::IsMember({"centroid", "center"}))->capture_default_str();
  eq->add_option("--grid", eq_grid, "Search grid (3D band nodes, 2D nodes / 4)")->capture_default_str();

  // verify2d
  auto* v2 = app.add_subcommand("verify2d", "Four-equilibria battery on random convex plane bodies");
  int v_n = 100;
  std::uint64_t v_seed = 0;
  double v_scale = 0.5;
  int v_grid = 2048;
  common(v2);
  v2->add_option("--n", v_n, "Number of bodies")->check(CLI::PositiveNumber)->capture_default_str();
  v2->add_option("--seed", v_seed, "First seed; body i uses seed + i")->capture_default_str();
  v2->add_option("--scale", v_scale, "Chart scale of the bodies")->capture_default_str();
  v2->add_option("--grid", v_grid, "Equilibrium search grid")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "M3 over a (c, d) grid as CSV");
  std::string sw_c = "0.05,0.1,0.3,1", sw_d = "0,0.02,0.05", sw_out;
  double sw_R = 1.0;
  common(sw);
  sw->add_option("--c", sw_c, "Comma separated c values")->capture_default_str();
  sw->add_option("--d", sw_d, "Comma separated d values")->capture_default_str();
  sw->add_option("--R", sw_R, "Radius")->capture_default_str();
  sw->add_option("--out", sw_out, "CSV path (stdout when absent)");

  // export-mesh
  auto* ex = app.add_subcommand("export-mesh", "Triangulated OBJ of a 3D body");
  int ex_rings = 64, ex_segments = 128;
  std::string ex_out, ex_embedded;
  common(ex);
  bo.add(ex);
  ex->add_option("--rings", ex_rings, "Polar subdivisions")->capture_default_str();
  ex->add_option("--segments", ex_segments, "Azimuth subdivisions")->capture_default_str();
  ex->add_option("--out", ex_out, "OBJ path for the chart surface")->required();
  ex->add_option("--embedded-out", ex_embedded, "OBJ path for the embedded surface (curved spaces)");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const Progress log(err, quiet);
  try {
    const QuadratureSpec spec = qo.make(jobs);

    if (build->parsed()) {
      const SpaceKind space = so.make(3);
      double c = b_c;
      if (b_center) {
        log("centering");
        c = find_centering_c(b_d, b_R, space, std::nullopt, 1e-12, spec).c_star;
      }
      const auto gp = gomboc_params(c, b_d, b_R, space);
      gp.validate();
      const RadialBody body = gomboc::build_body(gp);
      double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
      for (int i = 0; i <= 64; ++i) {
        for (int j = 0; j < 128; ++j) {
          const double r = body.radial(-kHalfPi + kPi * i / 64, 2.0 * kPi * j / 128);
          rmin = std::min(rmin, r);
          rmax = std::max(rmax, r);
        }
      }
      if (!b_out.empty()) {
        write_body_csv(body, b_out, b_csv_theta, b_csv_phi);
        log("wrote " + b_out);
      }
      out << json{{"space", space.describe()}, {"c", c}, {"d", b_d}, {"R", b_R},
                  {"radial_min", rmin}, {"radial_max", rmax}}
                 .dump(2)
          << '\n';
      return kOk;
    }

    if (certify->parsed()) {
      ce_opts.spec = spec;
      const auto gp = gomboc_params(1.0, ce_d, ce_R, so.make(3));
      log("certifying " + gp.space.describe());
      const Certificate cert = certify_mono_monostatic(gp, ce_eps, ce_opts);
      log(cert.passed() ? "all conditions pass" : "certificate fails");
      json j = {
          {"params", {{"space", gp.space.describe()}, {"c", cert.params.c}, {"d", ce_d}, {"R", ce_R}}},
          {"eps", ce_eps},
          {"c_star", cert.c_star},
          {"M3", cert.M3},
          {"centroid_residual", cert.centroid_residual},
          {"census", {{"S", cert.census.S}, {"H", cert.census.H}, {"U", cert.census.U},
                      {"degenerate", cert.census.degenerate}}},
          {"poles_ok", cert.poles_ok},
          {"smoothness_defect", cert.smoothness_defect},
          {"min_curvature", {{"value", cert.min_curvature.value}, {"theta", cert.min_curvature.theta},
                             {"phi", cert.min_curvature.phi}}},
          {"hausdorff", {{"value", cert.hausdorff.value}, {"bound", cert.hausdorff.bound}}},
          {"pass", {{"A", cert.pass_A}, {"B", cert.pass_B}, {"C", cert.pass_C}, {"D", cert.pass_D}, {"E", cert.pass_E}}},
          {"passed", cert.passed()},
          {"errors", cert.errors}};
      out << j.dump(2) << '\n';
      return cert.passed() ? kOk : kFailed;
    }

    if (cen->parsed()) {
      const RadialBody body = make_body(bo, so, spec, log);
      const CentroidReport rep = centroid_report(body, spec);
      out << json{{"space", body.space().describe()}, {"body", bo.body}, {"centroid", point_json(rep.point)},
                  {"volume", rep.volume}}
                 .dump(2)
          << '\n';
      return kOk;
    }

    if (eq->parsed()) {
      const RadialBody body = make_body(bo, so, spec, log);
      ChartPoint ref = body.center();
      if (eq_at == "centroid") {
        log("centroid");
        ref = centroid(body, spec);
      }
      EquilibriumOptions eo;
      eo.grid = eq_grid;
      log("searching critical points");
      const EquilibriumCensus census = find_equilibria(body, ref, eo);
      out << json{{"space", body.space().describe()}, {"body", bo.body}, {"reference", point_json(ref)},
                  {"census", census_json(census, body.dim())}}
                 .dump(2)
          << '\n';
      return kOk;
    }

    if (v2->parsed()) {
      const SpaceKind space = so.make(2);
      std::vector<EquilibriumCensus> results(static_cast<std::size_t>(v_n));
      std::vector<std::string> errors(static_cast<std::size_t>(v_n));
      parallel_for(v_n, jobs, [&](int i) {
        QuadratureSpec one = spec;
        one.jobs = 1;
        try {
          results[i] = count_equilibria_2d(random_convex_2d(space, v_seed + i, v_scale), one, v_grid);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
      int bad = 0;
      json rows = json::array();
      for (int i = 0; i < v_n; ++i) {
        const auto& c = results[i];
        const bool ok = errors[i].empty() && c.degenerate == 0 && c.S >= 2 && c.U >= 2 && c.S == c.U;
        if (!ok) {
          ++bad;
          log("seed " + std::to_string(v_seed + i) + " fails" + (errors[i].empty() ? "" : ": " + errors[i]));
        }
        rows.push_back({{"seed", v_seed + i}, {"S", c.S}, {"U", c.U}, {"degenerate", c.degenerate}, {"ok", ok}});
      }
      log(std::to_string(v_n - bad) + "/" + std::to_string(v_n) + " bodies pass");
      out << json{{"space", space.describe()}, {"n", v_n}, {"failures", bad}, {"bodies", rows}}.dump(2) << '\n';
      return bad == 0 ? kOk : kFailed;
    }

    if (sw->parsed()) {
      const SpaceKind space = so.make(3);
      const auto rows = sweep_M3(parse_list(sw_c, "--c"), parse_list(sw_d, "--d"), sw_R, space, spec);
      if (sw_out.empty()) {
        write_sweep_csv(out, rows);
      } else {
        std::ofstream f(sw_out);
        if (!f) throw std::runtime_error("cannot open " + sw_out + " for writing");
        write_sweep_csv(f, rows);
        log("wrote " + sw_out);
      }
      return kOk;
    }

    if (ex->parsed()) {
      if (bo.dim != 3) throw UsageError("export-mesh needs --dim 3");
      const RadialBody body = make_body(bo, so, spec, log);
      const MeshExport m = export_mesh(body, ex_rings, ex_segments, ex_out, ex_embedded);
      log("wrote " + ex_out);
      out << json{{"vertices", m.vertices}, {"faces", m.faces}, {"out", ex_out}}.dump(2) << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace mono::cli
