#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "segmental/conditioning.hpp"
#include "segmental/csv.hpp"
#include "segmental/errors.hpp"
#include "segmental/interpolation.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace segmental;

namespace {

constexpr double kPi = std::numbers::pi;

struct Preset {
  RealFunction f;
  bool rough = false;  // kinked/discontinuous: finer composite quadrature
};

Preset parse_preset(const std::string& name) {
  if (name == "runge10")
    return {[](double x) { return 1.0 / (1.0 + 10.0 * x * x); }, false};
  if (name == "cospi") return {[](double x) { return std::cos(kPi * x); }, false};
  if (name == "sinpi") return {[](double x) { return std::sin(kPi * x); }, false};
  if (name == "abs") return {[](double x) { return std::abs(x); }, true};
  if (name == "step")
    return {[](double x) { return x < 0.0 ? -1.0 : (x > 0.0 ? 1.0 : 0.0); },
            true};
  if (name.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    for (const std::string& field : csv::split(name.substr(5), ','))
      coeffs.push_back(csv::to_double(field));
    if (coeffs.empty()) throw std::invalid_argument("poly: needs coefficients");
    MonomialPoly p{std::move(coeffs)};
    return {[p](double x) { return p(x); }, false};
  }
  throw std::invalid_argument("unknown function preset: " + name);
}

std::vector<double> cl_midpoint_taus(std::size_t r) {
  std::vector<double> taus(r);
  for (std::size_t k = 0; k < r; ++k)
    taus[k] = (2.0 * static_cast<double>(k + 1) - 1.0) * kPi /
              (2.0 * static_cast<double>(r));
  return taus;
}

SegmentSet family_set(const std::string& family, std::size_t r) {
  if (family == "eq") return make_equidistant(r);
  if (family == "cl") return make_chebyshev_lobatto(r);
  if (family == "clo") return make_cl_overlapping(r);
  throw std::invalid_argument("family must be one of eq, cl, clo for this command");
}

std::vector<double> eval_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
  return g;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot open " + (dir / name).string());
  return out;
}

void maybe_svg(bool enabled, const fs::path& dir, const std::string& name,
               const std::vector<svg::Series>& series, bool log_y) {
  if (!enabled) return;
  std::ofstream out = open_out(dir, name);
  out << svg::polyline_plot(series, log_y);
}

// shared command configuration
struct Options {
  std::string family = "eq";
  std::size_t r = 5;
  std::size_t r_min = 2, r_max = 20;
  std::vector<double> lambdas{0.3, 0.5, 0.7, 0.9};
  std::string fn = "runge10";
  std::size_t grid = 1000;
  std::string out_dir = ".";
  bool svg_flag = false;
  std::string segments_file, mu_file;
  int quad_n = 0;       // 0: preset default (64 smooth, 16 rough)
  int quad_panels = 0;  // 0: preset default (1 smooth, 32 rough)
  std::vector<std::size_t> indices;

  int resolve_quad_n(bool rough) const {
    return quad_n > 0 ? quad_n : (rough ? 16 : 64);
  }
  int resolve_quad_panels(bool rough) const {
    return quad_panels > 0 ? quad_panels : (rough ? 32 : 1);
  }
};

int cmd_interp(const Options& opt) {
  SegmentSet set = [&] {
    if (!opt.segments_file.empty()) {
      std::ifstream in(opt.segments_file);
      if (!in)
        throw std::invalid_argument("cannot read " + opt.segments_file);
      return read_segments_csv(in);
    }
    if (opt.family == "arc") {
      const double rho = 0.5 * kPi / static_cast<double>(opt.r);
      return make_arc_uniform(cl_midpoint_taus(opt.r), rho);
    }
    return family_set(opt.family, opt.r);
  }();

  std::optional<Preset> preset;
  MeasurementVector mu;
  if (!opt.mu_file.empty()) {
    std::ifstream in(opt.mu_file);
    if (!in) throw std::invalid_argument("cannot read " + opt.mu_file);
    mu = read_measurements_csv(in);
  } else {
    preset = parse_preset(opt.fn);
    mu = measure_vector(preset->f, set,
                        gauss_legendre(opt.resolve_quad_n(preset->rough)),
                        opt.resolve_quad_panels(preset->rough));
  }

  Interpolant p = interpolate(set, mu);

  {
    std::ofstream out = open_out(opt.out_dir, "segments.csv");
    write_segments_csv(out, set);
  }
  {
    std::ofstream out = open_out(opt.out_dir, "coeffs.csv");
    write_interpolant_csv(out, p);
  }
  const std::vector<double> grid = eval_grid(std::max<std::size_t>(2, opt.grid));
  std::vector<svg::Series> series;
  {
    std::ofstream out = open_out(opt.out_dir, "interpolant.csv");
    out << (preset ? "x,p,f\n" : "x,p\n");
    svg::Series sp{"p", {}, {}}, sf{"f", {}, {}};
    for (double x : grid) {
      out << csv::num(x) << ',' << csv::num(p(x));
      sp.x.push_back(x);
      sp.y.push_back(p(x));
      if (preset) {
        out << ',' << csv::num(preset->f(x));
        sf.x.push_back(x);
        sf.y.push_back(preset->f(x));
      }
      out << '\n';
    }
    series.push_back(std::move(sp));
    if (preset) series.push_back(std::move(sf));
  }
  maybe_svg(opt.svg_flag, opt.out_dir, "interpolant.svg", series, false);

  std::cout << "interp: r=" << set.size() << " path="
            << (p.path == SolvePath::c2_fast ? "c2_fast" : "vandermonde")
            << " cond=" << csv::num(p.cond_estimate)
            << " residual=" << csv::num(p.residual_inf)
            << (p.residual_warning ? " (warning: large residual)" : "") << '\n';
  return 0;
}

void report_rows(std::ostream& out, const LebesgueReport& rep) {
  for (const BoundEntry& b : rep.bounds) {
    out << rep.r << ',' << csv::num(rep.lambda_const) << ','
        << csv::num(rep.argmax_x) << ',' << csv::num(rep.op_norm) << ','
        << csv::num(rep.fill_distance_h) << ',' << b.name << ',';
    if (b.lower) out << csv::num(*b.lower);
    out << ',';
    if (b.upper) out << csv::num(*b.upper);
    out << '\n';
  }
}

int cmd_lebesgue_sweep(const Options& opt) {
  if (opt.r_min < 1 || opt.r_min > opt.r_max)
    throw std::invalid_argument("need 1 <= r-min <= r-max");
  std::ofstream out = open_out(opt.out_dir, "lebesgue_sweep.csv");
  out << "r,lambda,argmax,opnorm,h,bound_name,lower,upper\n";
  svg::Series lam{"lambda_" + opt.family, {}, {}}, nodal{"nodal_r+1", {}, {}};
  bool failed = false;
  for (std::size_t r = opt.r_min; r <= opt.r_max; ++r) {
    try {
      SegmentSet set = family_set(opt.family, r);
      LebesgueReport rep = full_report(set);
      // nodal comparison: Lambda_{r+1} on the chain endpoints
      if (set.tag() == SegmentClass::chain) {
        const double nl =
            nodal_lebesgue_constant(NodeSet(set.chain_nodes()));
        rep.bounds.push_back({"nodal-lambda-r+1", nl, nl});
        nodal.x.push_back(static_cast<double>(r));
        nodal.y.push_back(nl);
      }
      report_rows(out, rep);
      lam.x.push_back(static_cast<double>(r));
      lam.y.push_back(rep.lambda_const);
    } catch (const std::exception& e) {
      out << r << ",,,,,error,,\n";
      std::cerr << "r=" << r << ": " << e.what() << '\n';
      failed = true;
    }
  }
  maybe_svg(opt.svg_flag, opt.out_dir, "lebesgue_sweep.svg", {lam, nodal}, true);
  return failed ? 1 : 0;
}

int cmd_c2_sweep(const Options& opt) {
  if (opt.r_min < 1 || opt.r_min > opt.r_max)
    throw std::invalid_argument("need 1 <= r-min <= r-max");
  for (double l : opt.lambdas)
    if (!(l > 0.0 && l < 1.0))
      throw std::invalid_argument("lambda values must lie in (0,1)");
  std::ofstream out = open_out(opt.out_dir, "c2_sweep.csv");
  out << "lambda,r,lebesgue\n";
  std::vector<svg::Series> series;
  bool failed = false;
  // requested lambdas plus the nodal surrogate reference column; rows are
  // ordered by (lambda, r)
  std::vector<double> lambdas = opt.lambdas;
  lambdas.push_back(1e-6);
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  for (double lambda : lambdas) {
    svg::Series s{"lambda=" + csv::num(lambda), {}, {}};
    for (std::size_t r = std::max<std::size_t>(2, opt.r_min); r <= opt.r_max;
         ++r) {
      try {
        const double rho = lambda * kPi / static_cast<double>(r);
        SegmentSet set = make_arc_general(cl_midpoint_taus(r), rho);
        const double lam = lebesgue_constant(set).value;
        out << csv::num(lambda) << ',' << r << ',' << csv::num(lam) << '\n';
        s.x.push_back(static_cast<double>(r));
        s.y.push_back(lam);
      } catch (const std::exception& e) {
        out << csv::num(lambda) << ',' << r << ",error\n";
        std::cerr << "lambda=" << lambda << " r=" << r << ": " << e.what()
                  << '\n';
        failed = true;
      }
    }
    series.push_back(std::move(s));
  }
  maybe_svg(opt.svg_flag, opt.out_dir, "c2_sweep.svg", series, true);
  return failed ? 1 : 0;
}

int cmd_clo_gap(const Options& opt) {
  if (opt.r_min < 1 || opt.r_min > opt.r_max)
    throw std::invalid_argument("need 1 <= r-min <= r-max");
  std::ofstream out = open_out(opt.out_dir, "clo_gap.csv");
  out << "r,lambda_clo,opnorm_clo,gap,lambda_cl\n";
  svg::Series sl{"lambda_clo", {}, {}}, so{"opnorm_clo", {}, {}};
  bool failed = false;
  for (std::size_t r = opt.r_min; r <= opt.r_max; ++r) {
    try {
      SegmentSet clo = make_cl_overlapping(r);
      const double lam = lebesgue_constant(clo).value;
      const double op = operator_norm(clo).value;
      const double cl = lebesgue_constant(make_chebyshev_lobatto(r)).value;
      out << r << ',' << csv::num(lam) << ',' << csv::num(op) << ','
          << csv::num(lam - op) << ',' << csv::num(cl) << '\n';
      sl.x.push_back(static_cast<double>(r));
      sl.y.push_back(lam);
      so.x.push_back(static_cast<double>(r));
      so.y.push_back(op);
    } catch (const std::exception& e) {
      out << r << ",error,,,\n";
      std::cerr << "r=" << r << ": " << e.what() << '\n';
      failed = true;
    }
  }
  maybe_svg(opt.svg_flag, opt.out_dir, "clo_gap.svg", {sl, so}, true);
  return failed ? 1 : 0;
}

int cmd_runge_demo(const Options& opt) {
  const std::size_t r = opt.r;
  Preset preset = parse_preset("runge10");
  const QuadratureRule rule = gauss_legendre(opt.resolve_quad_n(false));

  SegmentSet eq = make_equidistant(r);
  SegmentSet cl = make_chebyshev_lobatto(r);
  Interpolant p_eq = interpolate(eq, measure_vector(preset.f, eq, rule));
  Interpolant p_cl = interpolate(cl, measure_vector(preset.f, cl, rule));

  // nodal companions: r equidistant nodes and r Chebyshev nodes
  std::vector<double> nodes_eq(r), nodes_cheb(r), vals(r);
  for (std::size_t i = 0; i < r; ++i) {
    nodes_eq[i] = r == 1 ? 0.0
                         : -1.0 + 2.0 * static_cast<double>(i) /
                                      static_cast<double>(r - 1);
    nodes_cheb[i] = std::cos((2.0 * static_cast<double>(i + 1) - 1.0) * kPi /
                             (2.0 * static_cast<double>(r)));
  }
  for (std::size_t i = 0; i < r; ++i) vals[i] = preset.f(nodes_eq[i]);
  ChebExpansion n_eq = nodal_interpolate_u(nodes_eq, vals);
  for (std::size_t i = 0; i < r; ++i) vals[i] = preset.f(nodes_cheb[i]);
  ChebExpansion n_cheb = nodal_interpolate_u(nodes_cheb, vals);

  const std::vector<double> grid = eval_grid(std::max<std::size_t>(2, opt.grid));
  double err_eq = 0.0, err_cl = 0.0, err_neq = 0.0, err_ncheb = 0.0;
  {
    std::ofstream out = open_out(opt.out_dir, "runge_demo.csv");
    out << "x,f,seg_eq,seg_cl,nodal_eq,nodal_cheb\n";
    for (double x : grid) {
      const double f = preset.f(x);
      out << csv::num(x) << ',' << csv::num(f) << ',' << csv::num(p_eq(x))
          << ',' << csv::num(p_cl(x)) << ',' << csv::num(n_eq(x)) << ','
          << csv::num(n_cheb(x)) << '\n';
      err_eq = std::max(err_eq, std::abs(p_eq(x) - f));
      err_cl = std::max(err_cl, std::abs(p_cl(x) - f));
      err_neq = std::max(err_neq, std::abs(n_eq(x) - f));
      err_ncheb = std::max(err_ncheb, std::abs(n_cheb(x) - f));
    }
  }
  {
    std::ofstream out = open_out(opt.out_dir, "runge_summary.csv");
    out << "curve,max_error\n";
    out << "seg_eq," << csv::num(err_eq) << '\n';
    out << "seg_cl," << csv::num(err_cl) << '\n';
    out << "nodal_eq," << csv::num(err_neq) << '\n';
    out << "nodal_cheb," << csv::num(err_ncheb) << '\n';
  }
  if (opt.svg_flag) {
    std::vector<svg::Series> series(5);
    series[0].name = "f";
    series[1].name = "seg_eq";
    series[2].name = "seg_cl";
    series[3].name = "nodal_eq";
    series[4].name = "nodal_cheb";
    for (double x : grid) {
      const double vs[] = {preset.f(x), p_eq(x), p_cl(x), n_eq(x), n_cheb(x)};
      for (int c = 0; c < 5; ++c) {
        series[c].x.push_back(x);
        series[c].y.push_back(vs[c]);
      }
    }
    maybe_svg(true, opt.out_dir, "runge_demo.svg", series, false);
  }
  std::cout << "runge demo r=" << r << ": max errors seg_eq="
            << csv::num(err_eq) << " seg_cl=" << csv::num(err_cl)
            << " nodal_eq=" << csv::num(err_neq)
            << " nodal_cheb=" << csv::num(err_ncheb) << '\n';
  return 0;
}

int cmd_basis(const Options& opt) {
  SegmentSet set = family_set(opt.family, opt.r);
  std::vector<std::size_t> indices = opt.indices;
  if (indices.empty())
    for (std::size_t j = 1; j <= opt.r; ++j) indices.push_back(j);
  for (std::size_t j : indices)
    if (j < 1 || j > opt.r)
      throw std::invalid_argument("basis index out of range 1..r");

  auto basis_at = [&](std::size_t j0, double x) {
    if (set.tag() == SegmentClass::chain) return lagrange_c1(set, j0, x);
    if (set.tag() == SegmentClass::left_anchored)
      return lagrange_c3(set, j0, x);
    return lagrange_generic(set, j0)(x);
  };

  const std::vector<double> grid = eval_grid(std::max<std::size_t>(2, opt.grid));
  std::vector<svg::Series> series;
  {
    std::ofstream out = open_out(opt.out_dir, "basis.csv");
    out << "x";
    for (std::size_t j : indices) out << ",l_" << j;
    out << '\n';
    for (std::size_t j : indices)
      series.push_back({"l_" + std::to_string(j), {}, {}});
    for (double x : grid) {
      out << csv::num(x);
      for (std::size_t c = 0; c < indices.size(); ++c) {
        const double v = basis_at(indices[c] - 1, x);
        out << ',' << csv::num(v);
        series[c].x.push_back(x);
        series[c].y.push_back(v);
      }
      out << '\n';
    }
  }
  maybe_svg(opt.svg_flag, opt.out_dir, "basis.svg", series, false);

  // duality spot check: the matrix of integrals must be the identity
  const QuadratureRule rule = gauss_legendre(32);
  double worst = 0.0;
  {
    std::ofstream out = open_out(opt.out_dir, "basis_duality.csv");
    out << "i,j,integral\n";
    for (std::size_t i = 0; i < opt.r; ++i)
      for (std::size_t j = 0; j < opt.r; ++j) {
        const double v = measure(
            [&](double x) { return basis_at(j, x); }, set[i], rule);
        out << (i + 1) << ',' << (j + 1) << ',' << csv::num(v) << '\n';
        worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
      }
  }
  std::cout << "basis: duality max deviation from identity = "
            << csv::num(worst) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial interpolation from segment averages"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "segment family")
        ->check(CLI::IsMember({"eq", "cl", "clo", "arc"}));
    cmd->add_option("--r", opt.r, "number of segments");
    cmd->add_option("--r-min", opt.r_min, "sweep start");
    cmd->add_option("--r-max", opt.r_max, "sweep end");
    cmd->add_option("--lambda", opt.lambdas, "arc-radius factors rho = lambda*pi/r")
        ->delimiter(',');
    cmd->add_option("--fn", opt.fn,
                    "preset: runge10|cospi|sinpi|abs|step|poly:c0,c1,...");
    cmd->add_option("--grid", opt.grid, "evaluation grid size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_flag("--svg", opt.svg_flag, "emit polyline SVG plots");
    cmd->add_option("--segments-file", opt.segments_file,
                    "CSV of segments i,alpha,beta");
    cmd->add_option("--mu-file", opt.mu_file, "CSV of averages i,mu");
    cmd->add_option("--quad-n", opt.quad_n,
                    "Gauss-Legendre points (0 = preset default)")
        ->check(CLI::Range(0, 512));
    cmd->add_option("--quad-panels", opt.quad_panels,
                    "composite panels (0 = preset default)");
    cmd->add_option("--indices", opt.indices, "basis indices, 1-based")
        ->delimiter(',');
  };

  CLI::App* interp = app.add_subcommand("interp", "interpolate a preset or mu file");
  CLI::App* sweep = app.add_subcommand("lebesgue-sweep",
                                       "Lebesgue constants over a range of r");
  CLI::App* c2 = app.add_subcommand("c2-sweep",
                                    "arc-uniform constants per lambda and r");
  CLI::App* gap = app.add_subcommand("clo-gap",
                                     "Lebesgue constant vs operator norm, CLO");
  CLI::App* runge = app.add_subcommand("runge-demo",
                                       "conditioning demo on the Runge function");
  CLI::App* basis = app.add_subcommand("basis", "sample segmental Lagrange bases");
  for (CLI::App* cmd : {interp, sweep, c2, gap, runge, basis}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (runge->parsed() && runge->get_option("--r")->count() == 0) opt.r = 10;

  try {
    if (interp->parsed()) return cmd_interp(opt);
    if (sweep->parsed()) return cmd_lebesgue_sweep(opt);
    if (c2->parsed()) return cmd_c2_sweep(opt);
    if (gap->parsed()) return cmd_clo_gap(opt);
    if (runge->parsed()) return cmd_runge_demo(opt);
    if (basis->parsed()) return cmd_basis(opt);
  } catch (const SingularSystem& e) {
    std::cerr << "SingularSystem: " << e.what() << '\n';
    return 1;
  } catch (const ResonantRadius& e) {
    std::cerr << "ResonantRadius: " << e.what() << '\n';
    return 1;
  } catch (const EvaluationError& e) {
    std::cerr << "EvaluationError: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
