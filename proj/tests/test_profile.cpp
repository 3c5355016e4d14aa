#include <cmath>
#include <complex>

#include "doctest.h"
#include "hokdv/evolution.hpp"
#include "hokdv/operators.hpp"
#include "hokdv/profile.hpp"

using namespace hokdv;
namespace prof = hokdv::profile;

namespace {

SimulationState make_state(int n, int p, const Grid1D& grid, double eps,
                           double t0 = 1.0, double width = 4.0) {
  SimulationState s;
  s.params = EquationParams::make(n, p);
  s.t = t0;
  s.epsilon = eps;
  s.u = initial_data(grid, s.params, DataKind::gaussian, eps, 0.0, width);
  return s;
}

// max_i |a_i - b_i| over Fourier coefficients
double hat_distance(const ComplexVec& a, const ComplexVec& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

ComplexVec profile_hat(const SimulationState& s) {
  return to_profile_field(s.u, s.params.n, s.t).fourier();
}

}  // namespace

TEST_CASE("duhamel_rhs matches centered differences at order >= 1.8") {
  const Grid1D g = make_grid(512.0, 2048);
  auto base = make_state(5, 2, g, 0.3);
  for (int k = 0; k < 5; ++k) step(base, 0.02);  // settle onto the attractor

  auto fd_error = [&](double dt) {
    auto mid = base, fwd = base;
    step(mid, dt);
    step(fwd, dt);
    step(fwd, dt);
    const ComplexVec f0 = profile_hat(base);
    const ComplexVec f2 = profile_hat(fwd);
    const SpectralField rhs = prof::duhamel_rhs(mid);
    ComplexVec diff(f0.size());
    for (std::size_t i = 0; i < f0.size(); ++i)
      diff[i] = (f2[i] - f0[i]) / (2.0 * dt);
    return hat_distance(diff, rhs.fourier());
  };
  const double e1 = fd_error(0.04);
  const double e2 = fd_error(0.02);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.8);
}

TEST_CASE("duhamel_rhs matches the brute-force convolution oracle") {
  const Grid1D g = make_grid(64.0, 128);
  for (auto [n, p] : {std::pair{5, 2}, std::pair{5, 3}}) {
    auto s = make_state(n, p, g, 0.3, 1.7, 2.0);
    const SpectralField rhs = prof::duhamel_rhs(s);
    double scale = linf_fourier(rhs);
    for (long m : {3L, 7L, 11L}) {
      const Complex probe = prof::duhamel_convolution_probe(s, m);
      const Complex direct = rhs.fourier()[g.mode_index(m)];
      CHECK(std::abs(probe - direct) <= 1e-8 * std::max(scale, 1e-30));
    }
  }
}

TEST_CASE("resonant principal coefficients are purely imaginary") {
  for (auto [n, p] : {std::pair{5, 3}, std::pair{7, 3}, std::pair{7, 5},
                      std::pair{9, 3}}) {
    const auto coeffs =
        prof::compute_coefficients(EquationParams::make(n, p));
    int resonant_count = 0;
    for (const auto& c : coeffs) {
      if (!c.resonant) continue;
      ++resonant_count;
      CHECK(std::abs(c.c_plus.real()) <= 1e-10 * std::abs(c.c_plus));
      CHECK(c.d_j == 0.0);
    }
    CHECK(resonant_count == 2);
  }
}

TEST_CASE("gauge constant: zero for even p, real and finite for odd p") {
  CHECK(prof::gauge_constant(EquationParams::make(5, 2)) == 0.0);
  CHECK(prof::gauge_constant(EquationParams::make(7, 4)) == 0.0);
  const double c53 = prof::gauge_constant(EquationParams::make(5, 3));
  CHECK(std::isfinite(c53));
  CHECK(c53 != 0.0);
}

TEST_CASE("renormalization is a pure phase: |w| = |fhat|") {
  const Grid1D g = make_grid(256.0, 512);
  auto s = make_state(5, 3, g, 0.3);
  prof::Profile pr = prof::make_profile(s);
  for (int k = 0; k < 6; ++k) {
    for (int q = 0; q < 5; ++q) step(s, 0.02);
    prof::append_sample(pr, s);
  }
  const ComplexVec w = prof::renormalized_w(pr);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::abs(std::abs(w[i]) - std::abs(pr.fhat[i])) <= 1e-14);
}

TEST_CASE("B reproduces the closed-form history integral (p = 3)") {
  const Grid1D g = make_grid(64.0, 128);
  const auto params = EquationParams::make(5, 3);
  prof::Profile pr;
  pr.grid = g;
  pr.params = params;
  const double amp2 = 0.49;  // constant |fhat|^2 history
  const double t_end = 3.0;
  const int rows = 600;
  for (int k = 0; k <= rows; ++k) {
    pr.history_times.push_back(1.0 + (t_end - 1.0) * k / rows);
    pr.history_modpow.emplace_back(g.count, amp2);
  }
  pr.t = t_end;
  pr.fhat.assign(g.count, Complex{0.7, 0.0});

  const double c = prof::gauge_constant(params);
  const std::size_t idx = g.mode_index(9);
  const double xi = g.frequencies[idx];
  // integral of a^2 s^{-1} ds = a^2 log t
  const double want = c * xi * std::pow(std::abs(xi), -3.0) * amp2 *
                      std::log(t_end);
  CHECK(prof::compute_B(pr, idx) == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("principal_rhs vanishes on the low-frequency indicator set") {
  const Grid1D g = make_grid(64.0, 256);
  auto s = make_state(5, 3, g, 0.3, 2.0, 2.0);
  prof::Profile pr = prof::make_profile(s);
  const ComplexVec rhs = prof::principal_rhs(pr, 2.0);
  const double cutoff = std::pow(2.0, -0.2);
  bool saw_zero = false, saw_nonzero = false;
  for (std::size_t i = 0; i < g.count; ++i) {
    if (std::abs(g.frequencies[i]) <= cutoff) {
      CHECK(std::abs(rhs[i]) == 0.0);
      saw_zero = true;
    } else if (std::abs(rhs[i]) > 0.0) {
      saw_nonzero = true;
    }
  }
  CHECK(saw_zero);
  CHECK(saw_nonzero);
  CHECK_THROWS(prof::principal_rhs(pr, 0.5));
}

TEST_CASE("littlewood-paley partition telescopes and reconstructs") {
  CHECK(prof::lp_lowpass(0.3) == 1.0);
  CHECK(prof::lp_lowpass(1.0) == 1.0);
  CHECK(prof::lp_lowpass(2.0) == 0.0);
  CHECK(prof::lp_lowpass(1.5) > 0.0);
  CHECK(prof::lp_lowpass(1.5) < 1.0);
  CHECK(prof::lp_bump(1.5) ==
        doctest::Approx(prof::lp_lowpass(1.5) - prof::lp_lowpass(3.0)));

  const Grid1D g = make_grid(256.0, 1024);
  auto s = make_state(5, 2, g, 0.3);
  const SpectralField f = to_profile_field(s.u, 5, s.t);
  SpectralField acc = prof::lp_low(f, -6);
  for (int j = -5; j <= 8; ++j) {
    const SpectralField piece = prof::lp_piece(f, j);
    ComplexVec sum = acc.fourier();
    const auto& ph = piece.fourier();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += ph[i];
    acc = SpectralField::from_fourier(g, std::move(sum));
  }
  // 2^8 far exceeds the grid's max frequency: the telescoped sum is f.
  CHECK(hat_distance(acc.fourier(), f.fourier()) <= 1e-10);
}

TEST_CASE("freqloc report rows are finite and carry the envelope") {
  const Grid1D g = make_grid(512.0, 2048);
  auto s = make_state(5, 3, g, 0.3);
  for (int k = 0; k < 20; ++k) step(s, 0.02);
  const SpectralField f = to_profile_field(s.u, 5, s.t);
  const auto rows = prof::freqloc_report(f, s.t, 5, -4, 4, 0.5);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.fhat_inf));
    CHECK(std::isfinite(r.xf_l2));
    CHECK(std::isfinite(r.f_l1));
    CHECK(r.l1_envelope > 0.0);
    CHECK(r.l1_ratio >= 0.0);
  }
}

TEST_CASE("residual accounting over a short trajectory") {
  const Grid1D g = make_grid(256.0, 1024);
  const auto params = EquationParams::make(5, 3);
  const auto u0 = initial_data(g, params, DataKind::gaussian, 0.2, 0.0, 3.0);
  const Trajectory traj = run(params, u0, {1.0, 1.5, 2.0, 2.5, 3.0});
  const auto rep = prof::residual(traj);
  REQUIRE(rep.times.size() == 5);
  for (double v : rep.max_abs) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  CHECK(rep.max_l1_time >= 0.0);
  CHECK(std::isfinite(rep.max_l1_time));
}
