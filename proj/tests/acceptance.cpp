// Acceptance gate: one line per criterion. Criterion 9 is exploratory and
// reported but never gates the exit code.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hokdv/decay.hpp"
#include "hokdv/evolution.hpp"
#include "hokdv/operators.hpp"
#include "hokdv/oscillatory.hpp"
#include "hokdv/profile.hpp"
#include "hokdv/resonance.hpp"
#include "hokdv/run_config.hpp"
#include "hokdv/sweep.hpp"

using namespace hokdv;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail, bool advisory = false) {
  const char* tag = advisory ? (pass ? "ADVISORY PASS" : "ADVISORY FAIL")
                             : (pass ? "PASS" : "FAIL");
  std::printf("[%s] %2d. %s — %s\n", tag, id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass && !advisory) ++g_failures;
}

SpectralField gaussian_field(const Grid1D& grid, double width, double center) {
  ComplexVec v(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double z = (grid.nodes[i] - center) / width;
    v[i] = std::exp(-0.5 * z * z);
  }
  return SpectralField::from_physical(grid, std::move(v));
}

double hat_distance(const SpectralField& a, const SpectralField& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max(err, std::abs(a.fourier()[i] - b.fourier()[i]));
  return err;
}

// ---- criterion 1: spectral substrate -------------------------------------
void criterion_substrate() {
  double worst_rt = 0.0, worst_pl = 0.0, worst_un = 0.0;
  for (std::size_t n : {256u, 1024u, 4096u}) {
    const Grid1D g = make_grid(100.0, n);
    const SpectralField u = gaussian_field(g, 1.7, 3.0);
    const ComplexVec orig = u.physical();
    const SpectralField back = SpectralField::from_fourier(g, u.fourier());
    for (std::size_t i = 0; i < n; ++i)
      worst_rt = std::max(worst_rt, std::abs(back.physical()[i] - orig[i]));

    double phys = 0.0, four = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      phys += std::norm(orig[i]) * g.dx();
      four += std::norm(u.fourier()[i]) * g.dxi() / (2.0 * M_PI);
    }
    worst_pl = std::max(worst_pl, std::abs(phys - four) / phys);

    const SpectralField ut = apply_propagator(u, 5, 2.3);
    worst_un = std::max(worst_un,
                        std::abs(l2_norm(ut) - l2_norm(u)) / l2_norm(u));
    const SpectralField grp = apply_propagator(apply_propagator(u, 5, 1.1),
                                               5, 1.2);
    worst_un = std::max(worst_un,
                        hat_distance(grp, apply_propagator(u, 5, 2.3)));
    worst_un = std::max(worst_un,
                        hat_distance(apply_propagator(ut, 5, -2.3), u));
  }
  std::ostringstream d;
  d << "round-trip " << worst_rt << " (<=1e-12), Plancherel " << worst_pl
    << " (<=1e-10), unitarity/group " << worst_un << " (<=1e-12)";
  report(1, "spectral substrate", worst_rt <= 1e-12 && worst_pl <= 1e-10 &&
                                      worst_un <= 1e-12, d.str());
}

// ---- criterion 2: conservation --------------------------------------------
void criterion_conservation() {
  const Grid1D g = make_grid(512.0, 2048);
  double worst_m = 0.0, worst_h = 0.0;
  for (auto [n, p] : {std::pair{5, 2}, std::pair{5, 3}, std::pair{7, 2},
                      std::pair{7, 4}}) {
    const auto params = EquationParams::make(n, p);
    const auto u0 = initial_data(g, params, DataKind::gaussian, 0.05, 0.0, 6.0);
    RunOptions opts;
    opts.dt = 0.05;
    opts.store_fields = false;
    const Trajectory traj =
        run(params, u0, {1.0, 126.0, 251.0, 376.0, 501.0}, opts);
    worst_m = std::max(worst_m, traj.max_mass_drift);
    worst_h = std::max(worst_h, traj.max_hamiltonian_drift);
  }
  std::ostringstream d;
  d << "T=500, eps=0.05: mass drift " << worst_m
    << " (<=1e-8), Hamiltonian drift " << worst_h << " (<=1e-6)";
  report(2, "conservation", worst_m <= 1e-8 && worst_h <= 1e-6, d.str());
}

// ---- criteria 3 & 4: resonance structure ----------------------------------
void criterion_signatures() {
  bool ok = true;
  double worst_spec = 0.0;
  for (int p : {3, 5, 7, 9, 11, 13}) {
    for (int n : {5, 7, 9}) {
      for (double xi : {1.0, -1.0, 2.5, -2.5}) {
        const auto rep = resonance::classify(n, p, xi);
        int resonant = 0;
        for (const auto& fam : rep.families) {
          if (!fam.time_resonant) continue;
          ++resonant;
          if (fam.signature != 0) ok = false;
        }
        if (resonant != 2) ok = false;
      }
    }
    worst_spec = std::max(worst_spec, resonance::m1_spectrum_check(p).max_abs_error);
  }
  std::ostringstream d;
  d << "both resonant signatures 0 across the suite; M1 spectrum error "
    << worst_spec << " (<=1e-9)";
  report(3, "resonant Hessian signatures", ok && worst_spec <= 1e-9, d.str());
}

void criterion_stationary_points() {
  bool ok = true;
  double worst_grad = 0.0, worst_phase = 0.0;
  for (int p = 3; p <= 13; ++p) {
    for (int n : {5, 7, 9}) {
      for (double xi : {1.0, -1.0, 2.5, -2.5}) {
        const resonance::PhaseH H{n, p, xi};
        for (const auto& pt : resonance::stationary_points(n, p, xi)) {
          const double gscale = n * std::pow(std::abs(xi), n - 1);
          worst_grad = std::max(
              worst_grad, H.gradient(pt.coords).lpNorm<Eigen::Infinity>() / gscale);
          const double direct = H(pt.coords);
          const double closed = resonance::phase_at(n, p, pt.j, xi);
          worst_phase = std::max(
              worst_phase, std::abs(direct - closed) /
                               std::max(1.0, std::pow(std::abs(xi), n)));
          const int denom = p - 2 * pt.j - 2;
          const bool res = denom == 1 || denom == -1;
          if ((resonance::coefficient_dj(n, p, pt.j) == 0.0) != res) ok = false;
        }
      }
    }
  }
  std::ostringstream d;
  d << "|grad H| " << worst_grad << " (<=1e-10 scaled), phase closed-vs-direct "
    << worst_phase << " (<=1e-12), time-resonance iff p-2j-2=+-1";
  report(4, "stationary points", ok && worst_grad <= 1e-10 &&
                                     worst_phase <= 1e-12, d.str());
}

// ---- criterion 5: stationary-phase oracle ----------------------------------
oscillatory::PhaseSpec quadratic_spec(int d) {
  oscillatory::PhaseSpec spec;
  spec.dimension = d;
  spec.phase = [](const Eigen::VectorXd& e) { return 0.5 * e.squaredNorm(); };
  spec.gradient = [](const Eigen::VectorXd& e) { return e; };
  spec.hessian = [d](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(d, d).eval();
  };
  spec.amplitude = [](const Eigen::VectorXd& e) {
    return oscillatory::Complex(std::exp(-e.squaredNorm()), 0.0);
  };
  spec.cutoff = [](const Eigen::VectorXd& e) {
    return profile::lp_lowpass(e.norm());
  };
  spec.stationary_point = Eigen::VectorXd::Zero(d).eval();
  return spec;
}

void criterion_stationary_phase() {
  auto fresnel = quadratic_spec(1);
  fresnel.lambda = 400.0;
  const auto lead = oscillatory::stationary_phase_leading(fresnel);
  const auto quad = oscillatory::oscillatory_quadrature(fresnel);
  const std::complex<double> closed =
      std::sqrt(2.0 * M_PI / 400.0) * std::exp(std::complex<double>(0.0, M_PI / 4.0));
  const double fresnel_err =
      std::max(std::abs(lead.value - quad.value) / std::abs(quad.value),
               std::abs(lead.value - closed) / std::abs(closed));

  const auto probe1 = oscillatory::error_order_probe(
      quadratic_spec(1), {200.0, 400.0, 800.0, 1600.0, 3200.0});
  const auto probe2 = oscillatory::error_order_probe(
      quadratic_spec(2), {75.0, 150.0, 300.0, 600.0});

  std::ostringstream d;
  d << "Fresnel rel err " << fresnel_err << " (<=0.01); remainder orders d=1: "
    << probe1.fitted_order << " (>=1.35), d=2: " << probe2.fitted_order
    << " (>=1.85)";
  report(5, "stationary-phase oracle",
         fresnel_err <= 0.01 && probe1.fitted_order >= 1.35 &&
             probe2.fitted_order >= 1.85, d.str());
}

// ---- criterion 6: linear decay ----------------------------------------------
void criterion_linear_decay() {
  const Grid1D g = make_grid(65536.0, 131072);
  const SpectralField f0 = harness::flat_band_data(g, 0.5, 1.0);
  const SpectralField fj = harness::windowed_sinc_data(g, 1.0, 4096.0);
  std::vector<double> times;
  for (int k = 0; k < 9; ++k) times.push_back(16.0 * std::pow(2.0, k));

  bool ok = true;
  std::ostringstream d;
  for (int n : {5, 7}) {
    harness::LinearDecayOptions opts;
    opts.n = n;
    opts.times = times;
    opts.beta_list = {0.0, 1.0};
    opts.elliptic_profile = &fj;
    opts.z_fit_hi = std::min(
        200.0, 0.8 * n * std::pow(4096.0, (n - 1.0) / n) * std::pow(0.5, n - 1));
    const auto rep = harness::check_linear_decay(f0, opts);
    const double e_t = std::abs(rep.linf_time_exponent + 1.0 / n);
    const double e_x =
        std::abs(rep.oscillatory_spatial_exponent + (n - 2.0) / (2.0 * n - 2.0));
    const double e_e = std::abs(rep.elliptic_spatial_exponent + 1.0);
    ok = ok && rep.boundary_ok && e_t <= 0.03 && e_x <= 0.05 && e_e <= 0.07;
    d << "n=" << n << ": Linf " << rep.linf_time_exponent << " spatial "
      << rep.oscillatory_spatial_exponent << " elliptic "
      << rep.elliptic_spatial_exponent << "; ";
  }
  const auto lp = harness::check_lp_decay(f0, 5, times, 0.0, 8.0);
  ok = ok && std::abs(lp.fitted_exponent - lp.predicted_exponent) <= 0.05;
  bool rejected = false;
  try {
    harness::check_lp_decay(f0, 5, times, 0.0, 2.0);
  } catch (const std::invalid_argument&) {
    rejected = true;  // hypothesis 2*(3/8) > 1 fails, as it must
  }
  ok = ok && rejected;
  d << "lp(n=5,p=8) " << lp.fitted_exponent << " vs " << lp.predicted_exponent;
  report(6, "linear decay envelopes", ok, d.str());
}

// ---- criterion 7: profile-ODE consistency -----------------------------------
void criterion_profile_ode() {
  // (a) centered-difference order of duhamel_rhs
  const Grid1D g = make_grid(512.0, 2048);
  SimulationState base;
  base.params = EquationParams::make(5, 2);
  base.t = 1.0;
  base.epsilon = 0.3;
  base.u = initial_data(g, base.params, DataKind::gaussian, 0.3, 0.0, 4.0);
  for (int k = 0; k < 5; ++k) step(base, 0.02);
  auto fd_error = [&](double dt) {
    auto mid = base, fwd = base;
    step(mid, dt);
    step(fwd, dt);
    step(fwd, dt);
    const ComplexVec f0 = to_profile_field(base.u, 5, base.t).fourier();
    const ComplexVec f2 = to_profile_field(fwd.u, 5, fwd.t).fourier();
    const SpectralField rhs = profile::duhamel_rhs(mid);
    double err = 0.0;
    for (std::size_t i = 0; i < f0.size(); ++i)
      err = std::max(err,
                     std::abs((f2[i] - f0[i]) / (2.0 * dt) - rhs.fourier()[i]));
    return err;
  };
  const double order = std::log2(fd_error(0.04) / fd_error(0.02));

  // (b) brute-force convolution oracle at 3 probe frequencies
  const Grid1D gs = make_grid(64.0, 128);
  SimulationState s;
  s.params = EquationParams::make(5, 3);
  s.t = 1.7;
  s.epsilon = 0.3;
  s.u = initial_data(gs, s.params, DataKind::gaussian, 0.3, 0.0, 2.0);
  const SpectralField rhs = profile::duhamel_rhs(s);
  const double scale = std::max(linf_fourier(rhs), 1e-30);
  double conv_err = 0.0;
  for (long m : {3L, 7L, 11L}) {
    conv_err = std::max(
        conv_err, std::abs(profile::duhamel_convolution_probe(s, m) -
                           rhs.fourier()[gs.mode_index(m)]) / scale);
  }

  // (c) resonant coefficients purely imaginary
  double worst_re = 0.0;
  for (auto [n, p] : {std::pair{5, 3}, std::pair{7, 3}, std::pair{7, 5},
                      std::pair{9, 3}}) {
    for (const auto& c :
         profile::compute_coefficients(EquationParams::make(n, p))) {
      if (c.resonant)
        worst_re = std::max(worst_re,
                            std::abs(c.c_plus.real()) / std::abs(c.c_plus));
    }
  }
  std::ostringstream d;
  d << "FD order " << order << " (>=1.8); convolution oracle " << conv_err
    << " (<=1e-8); resonant Re(c)/|c| " << worst_re << " (<=1e-10)";
  report(7, "profile-ODE consistency",
         order >= 1.8 && conv_err <= 1e-8 && worst_re <= 1e-10, d.str());
}

// ---- criterion 8: gauge and indicator ----------------------------------------
void criterion_gauge() {
  const Grid1D g = make_grid(256.0, 512);
  SimulationState s;
  s.params = EquationParams::make(5, 3);
  s.t = 2.0;
  s.epsilon = 0.3;
  s.u = initial_data(g, s.params, DataKind::gaussian, 0.3, 0.0, 3.0);
  profile::Profile pr = profile::make_profile(s);
  for (int k = 0; k < 4; ++k) {
    for (int q = 0; q < 5; ++q) step(s, 0.02);
    profile::append_sample(pr, s);
  }
  const ComplexVec w = profile::renormalized_w(pr);
  double mod_err = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    mod_err = std::max(mod_err, std::abs(std::abs(w[i]) - std::abs(pr.fhat[i])));

  const ComplexVec rhs = profile::principal_rhs(pr, pr.t);
  const double cutoff = std::pow(pr.t, -0.2);
  bool indicator_ok = true;
  for (std::size_t i = 0; i < g.count; ++i)
    if (std::abs(g.frequencies[i]) <= cutoff && std::abs(rhs[i]) != 0.0)
      indicator_ok = false;

  // even p: the gauge constant vanishes, so B == 0 for every mode
  SimulationState se;
  se.params = EquationParams::make(5, 2);
  se.t = 2.0;
  se.epsilon = 0.3;
  se.u = initial_data(g, se.params, DataKind::gaussian, 0.3, 0.0, 3.0);
  profile::Profile pe = profile::make_profile(se);
  for (int k = 0; k < 3; ++k) {
    for (int q = 0; q < 5; ++q) step(se, 0.02);
    profile::append_sample(pe, se);
  }
  double b_even = 0.0;
  for (std::size_t i : {std::size_t{3}, std::size_t{17}, std::size_t{200}})
    b_even = std::max(b_even, std::abs(profile::compute_B(pe, i)));

  std::ostringstream d;
  d << "| |w|-|fhat| | " << mod_err << " (<=1e-14); indicator zero set "
    << (indicator_ok ? "exact" : "violated") << "; B(even p) " << b_even
    << " (==0)";
  report(8, "gauge and indicator", mod_err <= 1e-14 && indicator_ok &&
                                       b_even == 0.0, d.str());
}

// ---- criterion 9: exploratory epsilon sweep -----------------------------------
void criterion_sweep() {
  harness::SweepOptions opts;
  opts.horizon = 1000.0;
  opts.sample_spacing = 5.0;
  const auto rep = harness::epsilon_sweep(EquationParams::make(5, 2),
                                          {0.2, 0.3, 0.45}, opts);
  std::ostringstream d;
  d << "T*(eps) [";
  for (const auto& e : rep.entries)
    d << " " << e.epsilon << (e.censored ? ":censored" : ":" )
      << (e.censored ? "" : std::to_string(e.t_star));
  d << " ], uncensored " << rep.uncensored_count;
  bool pass = false;
  if (rep.uncensored_count >= 2) {
    const double rel = std::abs(rep.fitted_slope - rep.predicted_slope) /
                       rep.predicted_slope;
    d << ", slope " << rep.fitted_slope << " vs " << rep.predicted_slope
      << " (rel " << rel << ", target <=0.30)";
    pass = rel <= 0.30;
  } else {
    d << "; breakdown surrogate never fired at desk scale (|fhat| peaks at "
         "xi=0 where the integral of u is conserved) — censoring reported, "
         "no slope available";
  }
  report(9, "epsilon sweep (exploratory, non-gating)", pass, d.str(),
         /*advisory=*/true);
}

// ---- criterion 10: CLI determinism ---------------------------------------------
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_determinism() {
#ifndef HOKDV_CLI_PATH
#error "HOKDV_CLI_PATH must be defined"
#endif
  const std::string cli = HOKDV_CLI_PATH;
  RunConfig cfg;
  cfg.n = 5;
  cfg.p = 2;
  cfg.domain_length = 512.0;
  cfg.grid_points = 2048;
  cfg.t_end = 5.0;
  cfg.sample_count = 4;
  cfg.seed = 7;
  cfg.save("/tmp/hokdv_acc_cfg.json");

  bool ok = true;
  auto run_cli = [&](const std::string& args, const std::string& out) {
    const std::string cmd = cli + " " + args + " --out " + out + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  for (const std::string args :
       {std::string("resonances --n 7 --p 5 --format json"),
        std::string("simulate --config /tmp/hokdv_acc_cfg.json --seed 7"),
        std::string("stationary-phase --d 1 --lambda 100 --lambda 400")}) {
    const int rc_a = run_cli(args, "/tmp/hokdv_acc_a");
    const int rc_b = run_cli(args, "/tmp/hokdv_acc_b");
    if (rc_a != 0 || rc_b != 0) ok = false;
    const std::string a = slurp("/tmp/hokdv_acc_a");
    if (a.empty() || a != slurp("/tmp/hokdv_acc_b")) ok = false;
  }
  // exit-code contract
  const int rc_usage =
      std::system((cli + " --definitely-unknown-flag >/dev/null 2>&1").c_str());
  const int rc_missing = std::system(
      (cli + " simulate --config /tmp/does_not_exist.json >/dev/null 2>&1").c_str());
  ok = ok && WEXITSTATUS(rc_usage) == 2 && WEXITSTATUS(rc_missing) == 2;
  report(10, "CLI determinism and exit codes", ok,
         ok ? "byte-identical outputs across repeated invocations; exit codes 2 on usage/config errors"
            : "mismatch in repeated outputs or exit codes");
}

}  // namespace

int main() {
  criterion_substrate();
  criterion_conservation();
  criterion_signatures();
  criterion_stationary_points();
  criterion_stationary_phase();
  criterion_linear_decay();
  criterion_profile_ode();
  criterion_gauge();
  criterion_sweep();
  criterion_determinism();
  if (g_failures > 0) {
    std::printf("%d gating criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all gating criteria passed\n");
  return 0;
}
