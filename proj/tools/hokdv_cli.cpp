// Command-line front end: simulate / resonances / decay / stationary-phase /
// profile / sweep. All outputs are deterministic for a fixed config + seed.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hokdv/decay.hpp"
#include "hokdv/evolution.hpp"
#include "hokdv/oscillatory.hpp"
#include "hokdv/profile.hpp"
#include "hokdv/resonance.hpp"
#include "hokdv/run_config.hpp"
#include "hokdv/sweep.hpp"

namespace {

using hokdv::RunConfig;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

RunConfig load_or_default(const std::string& config_path) {
  return config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  const RunConfig cfg = load_or_default(config_path);
  const auto params = cfg.equation();
  const auto grid = hokdv::make_grid(cfg.domain_length, cfg.grid_points);
  const auto u0 = hokdv::initial_data(grid, params, cfg.kind(), cfg.epsilon,
                                      cfg.data_center, cfg.data_width);
  hokdv::RunOptions opts;
  opts.dt = cfg.dt;
  opts.store_fields = false;
  const auto traj = hokdv::run(params, u0, cfg.sample_times(), opts);

  std::ostringstream text;
  text.precision(12);
  text << "t,mass,hamiltonian,x_norm,boundary_mass,spectral_tail\n";
  const auto& led = traj.ledger;
  for (std::size_t k = 0; k < led.times.size(); ++k) {
    text << led.times[k] << ',' << led.mass[k] << ',' << led.hamiltonian[k]
         << ',' << led.x_norm[k] << ',' << led.boundary_mass[k] << ','
         << led.spectral_tail[k] << '\n';
  }
  text << "# n=" << params.n << " p=" << params.p << " sign=" << params.sign
       << " eps=" << cfg.epsilon << " seed=" << cfg.seed
       << " max_mass_drift=" << traj.max_mass_drift
       << " max_hamiltonian_drift=" << traj.max_hamiltonian_drift
       << " boundary_ok=" << (traj.boundary_ok ? 1 : 0) << '\n';
  emit(text.str(), out_path);
  return traj.boundary_ok ? 0 : 1;
}

int cmd_resonances(int n, int p, double xi, const std::string& format,
                   const std::string& out_path) {
  const auto report = hokdv::resonance::classify(n, p, xi);
  emit(format == "json" ? report.to_json() : report.to_table(), out_path);
  return 0;
}

int cmd_decay(const std::string& config_path, const std::string& out_path) {
  RunConfig cfg = load_or_default(config_path);
  if (config_path.empty()) {
    cfg.domain_length = 1 << 15;
    cfg.grid_points = 1u << 16;
    cfg.t_start = 32.0;
    cfg.t_end = 512.0;
    cfg.sample_count = 9;
  }
  const auto grid = hokdv::make_grid(cfg.domain_length, cfg.grid_points);
  const auto f0 = hokdv::harness::flat_band_data(grid, 0.5, 1.0);
  const auto fj = hokdv::harness::windowed_sinc_data(
      grid, 1.0, cfg.domain_length / 16.0);
  hokdv::harness::LinearDecayOptions opts;
  opts.n = cfg.n;
  opts.times = cfg.sample_times();
  opts.beta_list = {0.0, 1.0};
  opts.elliptic_profile = &fj;
  // keep the spatial fit on the flat plateau of fhat: the stationary
  // frequency at x = n t xi^{n-1} must stay below the band edge
  const double plateau = 0.8 * cfg.n *
                         std::pow(cfg.t_end, (cfg.n - 1.0) / cfg.n) *
                         std::pow(0.5, cfg.n - 1);
  opts.z_fit_hi = std::min(200.0, plateau);
  const auto rep = hokdv::harness::check_linear_decay(f0, opts);

  std::ostringstream text;
  text.precision(12);
  text << hokdv::harness::decay_report_csv(rep);
  const double want = -1.0 / cfg.n;
  const bool ok = rep.boundary_ok &&
                  std::abs(rep.linf_time_exponent - want) < 0.05;
  text << "# expected_linf_exponent=" << want << " pass=" << (ok ? 1 : 0)
       << '\n';
  emit(text.str(), out_path);
  return ok ? 0 : 1;
}

int cmd_stationary_phase(int d, std::vector<double> lambdas,
                         const std::string& out_path) {
  if (lambdas.empty()) lambdas = {50.0, 100.0, 200.0, 400.0};
  hokdv::oscillatory::PhaseSpec spec;
  spec.dimension = d;
  spec.phase = [](const Eigen::VectorXd& e) { return 0.5 * e.squaredNorm(); };
  spec.gradient = [](const Eigen::VectorXd& e) { return e; };
  spec.hessian = [d](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(d, d).eval();
  };
  spec.amplitude = [](const Eigen::VectorXd& e) {
    return hokdv::oscillatory::Complex(std::exp(-e.squaredNorm()), 0.0);
  };
  spec.cutoff = [](const Eigen::VectorXd& e) {
    return hokdv::profile::lp_lowpass(e.norm());
  };
  spec.stationary_point = Eigen::VectorXd::Zero(d).eval();

  std::ostringstream text;
  text.precision(12);
  text << "lambda,leading_re,leading_im,quad_re,quad_im,rel_err\n";
  bool ok = true;
  for (const double lam : lambdas) {
    if (lam > hokdv::oscillatory::lambda_max(d)) {
      text << lam << ",skipped (lambda_max exceeded)\n";
      continue;
    }
    spec.lambda = lam;
    const auto lead = hokdv::oscillatory::stationary_phase_leading(spec);
    const auto quad = hokdv::oscillatory::oscillatory_quadrature(spec);
    const double rel =
        std::abs(quad.value - lead.value) / std::abs(quad.value);
    ok = ok && rel < 0.25;
    text << lam << ',' << lead.value.real() << ',' << lead.value.imag() << ','
         << quad.value.real() << ',' << quad.value.imag() << ',' << rel
         << '\n';
  }
  emit(text.str(), out_path);
  return ok ? 0 : 1;
}

int cmd_profile(const std::string& config_path, const std::string& out_path) {
  RunConfig cfg = load_or_default(config_path);
  if (config_path.empty()) {
    cfg.n = 5;
    cfg.p = 3;
    cfg.domain_length = 2048.0;
    cfg.grid_points = 1u << 13;
    cfg.t_end = 40.0;
    cfg.sample_count = 12;
  }
  const auto params = cfg.equation();
  const auto grid = hokdv::make_grid(cfg.domain_length, cfg.grid_points);
  const auto u0 = hokdv::initial_data(grid, params, cfg.kind(), cfg.epsilon,
                                      cfg.data_center, cfg.data_width);
  const auto traj = hokdv::run(params, u0, cfg.sample_times());
  const auto res = hokdv::profile::residual(traj);
  const auto coeffs = hokdv::profile::compute_coefficients(params);

  std::ostringstream text;
  text.precision(12);
  text << "j,multiplicity,d_j,re_c,im_c,signature_plus,resonant\n";
  for (const auto& c : coeffs) {
    text << c.j << ',' << c.multiplicity << ',' << c.d_j << ','
         << c.c_plus.real() << ',' << c.c_plus.imag() << ','
         << c.signature_plus << ',' << (c.resonant ? 1 : 0) << '\n';
  }
  text << "t,residual_max_abs\n";
  for (std::size_t k = 0; k < res.times.size(); ++k) {
    text << res.times[k] << ',' << res.max_abs[k] << '\n';
  }
  text << "# gauge_constant=" << hokdv::profile::gauge_constant(params)
       << " max_l1_time=" << res.max_l1_time << '\n';
  emit(text.str(), out_path);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  RunConfig cfg = load_or_default(config_path);
  if (cfg.epsilon_list.empty()) cfg.epsilon_list = {0.2, 0.3, 0.45};
  hokdv::harness::SweepOptions opts;
  opts.data_width = cfg.data_width;
  opts.t_start = cfg.t_start;
  opts.horizon = cfg.t_end;
  const auto rep =
      hokdv::harness::epsilon_sweep(cfg.equation(), cfg.epsilon_list, opts);
  emit(hokdv::harness::sweep_report_csv(rep), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order dispersive flow toolbox"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "table";
  unsigned long seed = 0;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--seed", seed, "recorded in outputs; runs are deterministic");

  auto* sim = app.add_subcommand("simulate", "nonlinear flow + invariants");
  auto* res = app.add_subcommand("resonances", "stationary-point structure");
  int n = 5, p = 3, d = 1;
  double xi = 1.0;
  res->add_option("--n", n, "dispersion order (odd)");
  res->add_option("--p", p, "nonlinearity degree");
  res->add_option("--xi", xi, "output frequency");
  auto* dec = app.add_subcommand("decay", "linear decay envelopes");
  auto* sph = app.add_subcommand("stationary-phase", "leading term vs oracle");
  std::vector<double> lambdas;
  sph->add_option("--d", d, "dimension")->check(CLI::Range(1, 3));
  sph->add_option("--lambda", lambdas, "lambda values");
  auto* prof = app.add_subcommand("profile", "interaction-picture residuals");
  auto* swp = app.add_subcommand("sweep", "epsilon sweep of breakdown times");
  for (auto* sub : {sim, res, dec, sph, prof, swp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_path);
    if (res->parsed()) return cmd_resonances(n, p, xi, format, out_path);
    if (dec->parsed()) return cmd_decay(config_path, out_path);
    if (sph->parsed()) return cmd_stationary_phase(d, lambdas, out_path);
    if (prof->parsed()) return cmd_profile(config_path, out_path);
    if (swp->parsed()) return cmd_sweep(config_path, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
