#include "envent/analytic.hpp"
#include "envent/config_io.hpp"
#include "envent/covariance.hpp"
#include "envent/errors.hpp"
#include "envent/gaussian_cv.hpp"
#include "envent/sweep.hpp"
#include "envent/units.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using namespace envent;

namespace {

struct Options {
  std::string config;
  std::vector<std::string> vary;
  std::string out;
  unsigned threads = 0;
  std::optional<double> rtol;
  bool no_timing = false;
  bool numeric = false;
};

// stdout unless --out was given
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

QuadratureSpec quadrature(const Options& o) {
  QuadratureSpec q;
  if (o.rtol) q.rtol = *o.rtol;
  q.validate();
  return q;
}

std::vector<SweepAxis> axes(const Options& o) {
  std::vector<SweepAxis> a;
  for (const auto& v : o.vary) a.push_back(SweepAxis::parse(v));
  return a;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int cmd_point(const Options& o) {
  const PointResult p = run_point(load_config(o.config), quadrature(o));
  Output out(o.out);
  out.stream() << format_report(p.report);
  out.stream() << "quad_error = " << num(p.covariance.max_error()) << "\n";
  if (p.covariance.noise_psd_violations > 0)
    out.stream() << "noise_psd_violations = " << p.covariance.noise_psd_violations << "\n";
  if (!o.no_timing) out.stream() << "wall_ms = " << num(p.wall_ms) << "\n";
  return kExitOk;
}

int cmd_classify(const Options& o) {
  const PhysicalConfig cfg = load_config(o.config);
  if (cfg.size() != 3) throw ConfigError("classify needs exactly three oscillators");
  const DimensionlessConfig d = to_dimensionless(cfg);
  const Eigen::MatrixXd G = covariance_blocks(d, quadrature(o)).G();
  Output out(o.out);
  for (const auto& b : tripartite_bipartitions()) {
    const double nu = min_pt_symplectic_eigenvalue(G, b);
    out.stream() << "ppt." << b.label() << " = " << (nu >= 0.5 - 1e-10 ? "separable" : "entangled") << " (nu_min "
                 << num(nu) << ")\n";
  }
  const SeparabilityResult s = full_separability(G);
  out.stream() << "class = " << to_string(classify_tripartite(G)) << "\n";
  out.stream() << "full_separability = " << to_string(s.verdict) << " (iterations " << s.iterations << ", margin "
               << num(s.best_margin) << ", bound " << num(s.upper_bound) << ")\n";
  return kExitOk;
}

int cmd_covariance(const Options& o) {
  const DimensionlessConfig d = to_dimensionless(load_config(o.config));
  const CovarianceMatrix c = covariance_blocks(d, quadrature(o));
  Output out(o.out);
  write_covariance_csv(out.stream(), c.G());
  std::cerr << "quad_error = " << num(c.max_error()) << ", evaluations = " << c.evaluations << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const PhysicalConfig base = load_config(o.config);
  const auto ax = axes(o);
  if (ax.empty()) throw ConfigError("sweep needs --vary");
  SweepOptions so;
  so.threads = o.threads;
  so.quad = quadrature(o);
  so.record_timing = !o.no_timing;
  so.progress = &std::cerr;
  Output out(o.out);
  write_sweep_header(out.stream(), base, ax, so.quad);
  const SweepResult r = run_sweep(base, ax, so, [&](const SweepRow& row) { write_sweep_row(out.stream(), row); });
  if (r.failed() > 0) std::cerr << r.failed() << " of " << r.rows.size() << " points failed\n";
  return r.failed() == r.rows.size() ? kExitNumerical : kExitOk;
}

void print_analytic(std::ostream& os, const AnalyticPairResult& a) {
  os << "omega_plus = " << num(a.omega_plus) << "\n";
  os << "omega_minus = " << num(a.omega_minus) << "\n";
  os << "n_plus = " << num(a.n_plus) << "\n";
  os << "n_minus = " << num(a.n_minus) << "\n";
  os << "lhs = " << num(a.lhs) << "\n";
  os << "prediction = " << (a.entangled_prediction ? "entangled" : "separable") << "\n";
}

int cmd_analytic(const Options& o) {
  const PhysicalConfig base = load_config(o.config);
  const auto ax = axes(o);
  if (ax.size() > 1) throw ConfigError("analytic takes at most one --vary axis");
  Output out(o.out);
  if (ax.empty()) {
    const DimensionlessConfig d = to_dimensionless(base);
    print_analytic(out.stream(), entanglement_condition(d));
    if (o.numeric) out.stream() << "E_N.AB = " << num(run_point(base, quadrature(o)).report.log_negativity(0, 1)) << "\n";
    return kExitOk;
  }
  std::ostream& os = out.stream();
  os << ax[0].key << ",omega_plus,omega_minus,n_plus,n_minus,lhs,prediction" << (o.numeric ? ",E_N.AB" : "") << "\n";
  os << std::setprecision(17);
  std::size_t failed = 0;
  const auto values = ax[0].values();
  for (double v : values) {
    PhysicalConfig cfg = base;
    apply_sweep_value(cfg, ax[0].key, v);
    try {
      const AnalyticPairResult a = entanglement_condition(to_dimensionless(cfg));
      os << v << "," << a.omega_plus << "," << a.omega_minus << "," << a.n_plus << "," << a.n_minus << "," << a.lhs
         << "," << (a.entangled_prediction ? "entangled" : "separable");
      if (o.numeric) os << "," << run_point(cfg, quadrature(o)).report.log_negativity(0, 1);
      os << "\n";
    } catch (const Error& e) {
      ++failed;
      std::cerr << ax[0].key << "=" << v << " failed: " << e.what() << "\n";
    }
  }
  return failed == values.size() ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary entanglement of oscillators coupled to a common phonon bath"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool vary, bool threads) {
    sub->add_option("--config", o.config, "configuration file (flat JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--rtol", o.rtol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    if (vary)
      sub->add_option("--vary", o.vary, "KEY=START:STOP:COUNT[:log|lin], keys: R_nm r_nm temperature_ratio gamma_ghz cutoff_ghz")
          ->expected(1, 2)
          ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    if (threads) sub->add_option("--threads", o.threads, "worker threads (default: all cores)");
  };

  auto* point = app.add_subcommand("point", "entanglement report for one configuration");
  common(point, false, false);
  point->add_flag("--no-timing", o.no_timing, "omit wall time");
  auto* sweep = app.add_subcommand("sweep", "CSV over one or two swept parameters");
  common(sweep, true, true);
  sweep->add_flag("--no-timing", o.no_timing, "write wall_ms = 0 so the CSV is reproducible byte for byte");
  auto* classify = app.add_subcommand("classify", "PPT verdicts and tripartite class of three oscillators");
  common(classify, false, false);
  auto* analytic = app.add_subcommand("analytic", "weak-dissipation prediction for two identical oscillators");
  common(analytic, true, false);
  analytic->add_flag("--numeric", o.numeric, "also evaluate the full numerical E_N");
  auto* covariance = app.add_subcommand("covariance", "stationary covariance matrix as CSV");
  common(covariance, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  if (o.vary.size() > 2) {
    std::cerr << "error: at most two --vary axes\n";
    return kExitConfig;
  }

  try {
    if (point->parsed()) return cmd_point(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (classify->parsed()) return cmd_classify(o);
    if (analytic->parsed()) return cmd_analytic(o);
    if (covariance->parsed()) return cmd_covariance(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
