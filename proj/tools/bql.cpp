// bql: numerical laboratory for sharp bilinear quasimode/eigenfunction
// growth laws — exponent tables, flat-model and sphere sweeps, Gram checks,
// and concentration-region floors. Exit codes: 0 all checks pass, 2 a
// verdict failed, 1 configuration or resource error.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bql/config.hpp"
#include "bql/exponents.hpp"
#include "bql/io.hpp"
#include "bql/legendre.hpp"
#include "bql/quadrature.hpp"
#include "bql/sphere.hpp"
#include "bql/sweep.hpp"
#include "json.hpp"

namespace {

using bql::Config;
using bql::format_double;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846264338328;

json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::vector<double> parse_list(const std::string& csv) {
  Config c;
  c.set("x", csv);
  return c.require_list("x");
}

void emit(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty())
    std::fputs(bytes.c_str(), stdout);
  else
    bql::atomic_write_file(out_path, bytes);
}

// ---- exponents ----

int cmd_exponents(const std::string& n_csv, const std::string& p_csv,
                  const std::string& format, const std::string& out_path) {
  std::vector<double> ps;
  if (!p_csv.empty()) ps = parse_list(p_csv);
  const std::vector<double> ns = parse_list(n_csv);

  const std::vector<std::string> cols = {
      "n",           "p",          "delta",      "G_h",      "G_sigma",
      "G_log",       "F_h",        "F_log",      "baseline_h",
      "baseline_sigma", "branch"};

  struct Row {
    int n;
    double p, delta;
    bql::ExponentPair g, f, base;
    std::string branch;
  };
  std::vector<Row> rows;
  for (double nd : ns)
    for (double p : ps) {
      const bql::ProblemIndex idx{int(nd), p};
      idx.validate();
      rows.push_back({idx.n, p, bql::sogge_delta(idx), bql::bilinear_G(idx),
                      bql::same_scale_F(idx), bql::holder_baseline_exponents(idx),
                      bql::branch_label(idx)});
    }

  std::string text;
  if (format == "json") {
    json arr = json::array();
    for (const Row& r : rows)
      arr.push_back({{"n", r.n},
                     {"p", json_real(r.p)},
                     {"delta", r.delta},
                     {"G_h", r.g.h_exp},
                     {"G_sigma", r.g.sigma_exp},
                     {"G_log", r.g.log_exp},
                     {"F_h", r.f.h_exp},
                     {"F_log", r.f.log_exp},
                     {"baseline_h", r.base.h_exp},
                     {"baseline_sigma", r.base.sigma_exp},
                     {"branch", r.branch}});
    text = arr.dump(2) + "\n";
  } else if (format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i)
      text += (i ? "," : "") + cols[i];
    text += '\n';
    for (const Row& r : rows) {
      text += std::to_string(r.n) + ',' + format_double(r.p) + ',' +
              format_double(r.delta) + ',' + format_double(r.g.h_exp) + ',' +
              format_double(r.g.sigma_exp) + ',' + format_double(r.g.log_exp) +
              ',' + format_double(r.f.h_exp) + ',' + format_double(r.f.log_exp) +
              ',' + format_double(r.base.h_exp) + ',' +
              format_double(r.base.sigma_exp) + ',' + r.branch + '\n';
    }
  } else {
    char buf[256];
    text = "  n        p    delta      G_h  G_sigma    G_log      F_h   branch\n";
    for (const Row& r : rows) {
      std::snprintf(buf, sizeof buf,
                    "%3d %8.4g %8.4g %8.4g %8.4g %8.4g %8.4g   %s\n", r.n, r.p,
                    r.delta, r.g.h_exp, r.g.sigma_exp, r.g.log_exp, r.f.h_exp,
                    r.branch.c_str());
      text += buf;
    }
  }
  emit(out_path, text);
  return 0;
}

// ---- sweeps ----

int run_sweep_command(const std::string& config_path, std::string experiment,
                      const std::string& expected_prefix,
                      const std::string& format, const std::string& out_path,
                      int jobs, double tolerance) {
  Config cfg;
  if (!config_path.empty()) cfg = Config::parse_file(config_path);
  if (experiment.empty()) experiment = cfg.require_string("experiment");
  if (experiment.rfind(expected_prefix, 0) != 0)
    throw std::invalid_argument("experiment '" + experiment +
                                "' does not belong to this subcommand");
  cfg.set("experiment", experiment);
  if (tolerance > 0.0) cfg.set("tolerance", format_double(tolerance));

  bql::SweepPlan plan = bql::plan_from_config(cfg, experiment);
  // worker count shapes execution, never results; keep it out of the echoed
  // config so reruns compare bit-for-bit
  if (jobs > 0) plan.jobs = jobs;
  const bql::ResourceEstimate est = bql::estimate_resources(plan);
  std::fprintf(stderr,
               "[bql] %s: %zu cells, worst cell ~%zu nodes, ~%.1f MiB\n",
               experiment.c_str(), est.cells, est.nodes,
               double(est.bytes) / (1024.0 * 1024.0));

  const auto cells = bql::run_sweep(plan);
  std::size_t failed = 0;
  for (const auto& c : cells)
    if (!c.ok) {
      ++failed;
      std::fprintf(stderr, "[bql] cell failed: %s\n", c.error.c_str());
    }

  const bql::ScalingFit fit = bql::fit_sweep(plan, cells);
  const auto verdicts = bql::compare_to_theory(
      experiment, plan.scalar("p", std::numeric_limits<double>::quiet_NaN()),
      fit, bql::predicted_slopes(plan), plan.tolerance);

  const std::string csv = bql::sweep_csv(plan, cells, cfg);
  const std::string js = bql::sweep_json(plan, cells, fit, verdicts, cfg);

  if (!out_path.empty()) {
    bql::atomic_write_file(out_path + ".csv", csv);
    bql::atomic_write_file(out_path + ".json", js);
  }
  if (format == "csv") {
    std::fputs(csv.c_str(), stdout);
  } else if (format == "json") {
    std::fputs(js.c_str(), stdout);
  } else {
    std::printf("experiment %s: %zu cells (%zu failed), r^2=%s\n",
                experiment.c_str(), cells.size(), failed,
                format_double(fit.r_squared).c_str());
    for (const auto& v : verdicts)
      std::printf("  %s slope: empirical %s, predicted %s, gap %s -> %s\n",
                  v.slope_name.c_str(), format_double(v.empirical).c_str(),
                  format_double(v.predicted).c_str(),
                  format_double(v.gap).c_str(), v.pass ? "PASS" : "FAIL");
  }

  bool all_pass = !verdicts.empty();
  for (const auto& v : verdicts) all_pass = all_pass && v.pass;
  return all_pass ? 0 : 2;
}

// ---- gram check ----

int cmd_gram_check(int k, double alpha, double d, const std::string& out_path) {
  const bql::GramCheck gc = bql::gram_check({k, alpha, d});
  json j = {{"k", gc.k},         {"alpha", gc.alpha},
            {"d", gc.d},         {"m", gc.m},
            {"eigen_min", gc.eigen_min}, {"eigen_max", gc.eigen_max},
            {"pass", gc.pass}};
  emit(out_path, j.dump(2) + "\n");
  return gc.pass ? 0 : 2;
}

// ---- region floors ----

int cmd_region_floor(const std::string& kind, const std::string& k_csv,
                     double alpha, double d, double eps,
                     const std::string& out_path) {
  const auto ks = parse_list(k_csv);
  std::string csv;
  bool ok = true;
  if (kind == "zonal") {
    csv = "k,eps,floor,normalized,weight,nodes\n";
    for (double kd : ks) {
      const int k = int(kd);
      // First two Gauss-Legendre colatitudes sit near 2.36/n and 5.50/n;
      // put both inside the cap of radius eps/k.
      const std::size_t n_mu =
          std::max<std::size_t>(std::size_t(k) + 1,
                                std::size_t(std::ceil(6.0 * k / eps)));
      auto quad = std::make_shared<const bql::SphereQuadrature>(
          bql::make_sphere_quadrature(n_mu, 8));
      const bql::SphericalField z = bql::zonal(k, quad);
      const double mu_min = std::cos(eps / double(k));
      const bql::RegionFloor fl = bql::region_floor(
          z, [mu_min](double, double, double x3) { return x3 > mu_min; });
      const double normalized = fl.min_abs / std::sqrt(double(k));
      csv += format_double(double(k)) + ',' + format_double(eps) + ',' +
             format_double(fl.min_abs) + ',' + format_double(normalized) + ',' +
             format_double(fl.weight) + ',' + std::to_string(fl.nodes) + '\n';
    }
  } else if (kind == "ensemble") {
    csv = "k,alpha,d,eps,floor,normalized,weight,nodes,"
          "coherence_violations,coherence_min_margin\n";
    for (double kd : ks) {
      const int k = int(kd);
      const std::size_t n_mu = std::max<std::size_t>(
          {2 * std::size_t(k) + 1,
           std::size_t(std::ceil(4.8 * std::pow(double(k), 1.0 - alpha) / eps)),
           std::size_t(std::ceil(26.0 * std::sqrt(double(k)) / eps))});
      auto quad = std::make_shared<const bql::SphereQuadrature>(
          bql::make_sphere_quadrature(n_mu, 2 * std::size_t(k) + 1));
      const bql::EnsembleField ens = bql::superpose_ensemble({k, alpha, d}, quad);
      const auto region = bql::region_S(k, alpha, eps);
      const bql::RegionFloor fl = bql::region_floor(ens.v, region);
      const bql::CoherenceReport rep = bql::phase_coherence(ens, region);
      const double normalized =
          fl.min_abs / std::pow(double(k), 0.5 * (1.0 - alpha));
      ok = ok && fl.min_abs > 0.0 && rep.violations == 0;
      csv += format_double(double(k)) + ',' + format_double(alpha) + ',' +
             format_double(d) + ',' + format_double(eps) + ',' +
             format_double(fl.min_abs) + ',' + format_double(normalized) + ',' +
             format_double(fl.weight) + ',' + std::to_string(fl.nodes) + ',' +
             std::to_string(rep.violations) + ',' +
             format_double(rep.min_margin) + '\n';
    }
  } else {
    throw std::invalid_argument("region kind must be 'zonal' or 'ensemble'");
  }
  emit(out_path, csv);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bql — bilinear quasimode laboratory.\n"
      "BQL_SEED is reserved and ignored: every computation is deterministic."};
  app.require_subcommand(1);

  std::string format = "pretty", out_path, config_path, experiment;
  int jobs = 0;
  double tolerance = 0.0;

  auto add_common = [&](CLI::App* sub, bool sweep) {
    sub->add_option("--format", format, "stdout rendering: csv|json|pretty")
        ->check(CLI::IsMember({"csv", "json", "pretty"}));
    sub->add_option("--out", out_path, "output path (sweeps write .csv and .json)");
    if (sweep) {
      sub->add_option("--config", config_path, "key=value sweep configuration");
      sub->add_option("--experiment", experiment, "registered experiment id");
      sub->add_option("--jobs", jobs, "parallel sweep cells");
      sub->add_option("--tolerance", tolerance, "slope tolerance override");
    }
  };

  std::string n_csv = "2", p_csv;
  CLI::App* exp_cmd = app.add_subcommand("exponents", "sharp exponent table");
  exp_cmd->add_option("--n", n_csv, "dimensions, comma separated");
  exp_cmd->add_option("--p", p_csv, "Lebesgue exponents, comma separated (inf ok)");
  add_common(exp_cmd, false);

  CLI::App* flat_cmd = app.add_subcommand("flat-sweep", "flat-model tube sweeps");
  add_common(flat_cmd, true);
  CLI::App* sphere_cmd =
      app.add_subcommand("sphere-sweep", "spherical-harmonic sweeps");
  add_common(sphere_cmd, true);

  int k_arg = 256;
  double alpha = 0.25, dsep = 3.0, eps = 0.05;
  CLI::App* gram_cmd =
      app.add_subcommand("gram-check", "beam Gram eigenvalue range");
  gram_cmd->add_option("--k", k_arg, "harmonic degree");
  gram_cmd->add_option("--alpha", alpha, "concentration parameter in [0, 1/2)");
  gram_cmd->add_option("--d", dsep, "pole separation constant");
  add_common(gram_cmd, false);

  std::string kind = "zonal", k_csv = "64,128,256";
  CLI::App* floor_cmd =
      app.add_subcommand("region-floor", "concentration-region amplitude floors");
  floor_cmd->add_option("--kind", kind, "zonal | ensemble");
  floor_cmd->add_option("--k", k_csv, "degrees, comma separated");
  floor_cmd->add_option("--alpha", alpha, "ensemble concentration parameter");
  floor_cmd->add_option("--d", dsep, "pole separation constant");
  floor_cmd->add_option("--eps", eps, "region size constant");
  add_common(floor_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (exp_cmd->parsed()) return cmd_exponents(n_csv, p_csv, format, out_path);
    if (flat_cmd->parsed())
      return run_sweep_command(config_path, experiment, "flat_", format,
                               out_path, jobs, tolerance);
    if (sphere_cmd->parsed())
      return run_sweep_command(config_path, experiment, "sphere_", format,
                               out_path, jobs, tolerance);
    if (gram_cmd->parsed()) return cmd_gram_check(k_arg, alpha, dsep, out_path);
    if (floor_cmd->parsed())
      return cmd_region_floor(kind, k_csv, alpha, dsep, eps, out_path);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "[bql] error: %s\n", ex.what());
    return 1;
  }
  return 1;
}
