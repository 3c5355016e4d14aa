#include "hokdv/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hokdv/operators.hpp"
#include "hokdv/resonance.hpp"

namespace hokdv::profile {
namespace {

constexpr double kPi = std::numbers::pi;

Complex pow_int(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::vector<double> modpow_row(const ComplexVec& fhat, int p) {
  std::vector<double> row(fhat.size());
  for (std::size_t i = 0; i < fhat.size(); ++i)
    row[i] = std::pow(std::abs(fhat[i]), p - 1);
  return row;
}

// Cubic Lagrange interpolation of fhat at an arbitrary frequency inside the
// resolved band; 0 outside. Operates on the natural (ascending-m) ordering.
class FourierInterpolator {
 public:
  FourierInterpolator(const Grid1D& grid, const ComplexVec& fhat)
      : grid_(grid), natural_(fhat.size()) {
    const std::size_t n = fhat.size();
    for (std::size_t i = 0; i < n; ++i) {
      const long m = static_cast<long>(i) < static_cast<long>(n / 2)
                         ? static_cast<long>(i)
                         : static_cast<long>(i) - static_cast<long>(n);
      natural_[m + static_cast<long>(n / 2)] = fhat[i];
    }
  }

  Complex operator()(double xi) const {
    const double dxi = grid_.dxi();
    const double pos = xi / dxi + static_cast<double>(grid_.count / 2);
    const long base = static_cast<long>(std::floor(pos)) - 1;
    if (base < 0 || base + 3 >= static_cast<long>(natural_.size()))
      return Complex{0.0, 0.0};
    const double s = pos - static_cast<double>(base + 1);
    // 4-point Lagrange weights at offset s in [0,1] from the second node.
    const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return w0 * natural_[base] + w1 * natural_[base + 1] +
           w2 * natural_[base + 2] + w3 * natural_[base + 3];
  }

 private:
  const Grid1D& grid_;
  ComplexVec natural_;
};

}  // namespace

Profile make_profile(const SimulationState& state) {
  Profile prof;
  prof.grid = state.u.grid();
  prof.params = state.params;
  prof.t = state.t;
  prof.fhat = to_profile_field(state.u, state.params.n, state.t).fourier();
  prof.history_times.push_back(state.t);
  prof.history_modpow.push_back(modpow_row(prof.fhat, state.params.p));
  return prof;
}

void append_sample(Profile& prof, const SimulationState& state) {
  if (!prof.history_times.empty() && state.t <= prof.history_times.back())
    throw std::invalid_argument("append_sample: history times must increase");
  prof.t = state.t;
  prof.fhat = to_profile_field(state.u, state.params.n, state.t).fourier();
  prof.history_times.push_back(state.t);
  prof.history_modpow.push_back(modpow_row(prof.fhat, state.params.p));
}

Profile profile_from_trajectory(const Trajectory& traj) {
  if (traj.samples.empty())
    throw std::invalid_argument("profile_from_trajectory: trajectory holds no fields");
  Profile prof;
  bool first = true;
  for (const auto& smp : traj.samples) {
    SimulationState st{traj.params, smp.t, smp.u, traj.epsilon, 0.0, 0};
    if (first) {
      prof = make_profile(st);
      first = false;
    } else {
      append_sample(prof, st);
    }
  }
  return prof;
}

SpectralField duhamel_rhs(const SimulationState& state) {
  const Grid1D& grid = state.u.grid();
  const auto& uhat = state.u.fourier();
  const auto& u = state.u.physical();

  ComplexVec dxhat(uhat.size());
  for (std::size_t i = 0; i < uhat.size(); ++i)
    dxhat[i] = Complex{0.0, grid.frequencies[i]} * uhat[i];
  const auto& ux = SpectralField::from_fourier(grid, std::move(dxhat)).physical();

  ComplexVec prod(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    prod[i] =
        static_cast<double>(state.params.sign) * pow_int(u[i], state.params.p - 1) * ux[i];
  ComplexVec nl = SpectralField::from_physical(grid, std::move(prod)).fourier();
  for (std::size_t i = 0; i < nl.size(); ++i) {
    const double phase = -state.t * std::pow(grid.frequencies[i], state.params.n);
    nl[i] *= Complex{std::cos(phase), std::sin(phase)};
  }
  return SpectralField::from_fourier(grid, std::move(nl));
}

Complex duhamel_convolution_probe(const SimulationState& state, long probe_mode) {
  const Grid1D& grid = state.u.grid();
  const int p = state.params.p;
  const int n = state.params.n;
  const std::size_t N = grid.count;
  if (std::pow(static_cast<double>(N), p - 1) > 7e7)
    throw std::invalid_argument("convolution probe: grid too large for brute force");

  const ComplexVec fhat = to_profile_field(state.u, n, state.t).fourier();
  const long half = static_cast<long>(N) / 2;
  const double xi_out = grid.dxi() * static_cast<double>(probe_mode);
  const double xin = ipow(xi_out, n);

  // Nested sum over (p-1) input modes; the last frequency is pinned by
  // momentum conservation and dropped when it falls outside the band.
  std::vector<long> modes(p - 1, -half);
  Complex acc{0.0, 0.0};
  while (true) {
    long msum = 0;
    Complex prod{1.0, 0.0};
    double xi_pow_sum = 0.0;
    for (int k = 0; k < p - 1; ++k) {
      msum += modes[k];
      const double xik = grid.dxi() * static_cast<double>(modes[k]);
      prod *= fhat[grid.mode_index(modes[k])];
      xi_pow_sum += ipow(xik, n);
    }
    const long last = probe_mode - msum;
    if (last >= -half && last < half) {
      const double xil = grid.dxi() * static_cast<double>(last);
      const double H = xin - xi_pow_sum - ipow(xil, n);
      const double ph = -state.t * H;
      acc += prod * fhat[grid.mode_index(last)] * Complex{std::cos(ph), std::sin(ph)};
    }
    int k = 0;
    for (; k < p - 1; ++k) {
      if (++modes[k] < half) break;
      modes[k] = -half;
    }
    if (k == p - 1) break;
  }

  const double cell = std::pow(grid.dxi(), p - 1);
  const double conv = std::pow(2.0 * kPi, 1 - p);
  return Complex{0.0, xi_out / p} * static_cast<double>(state.params.sign) * conv *
         cell * acc;
}

std::vector<PrincipalCoefficient> compute_coefficients(const EquationParams& params) {
  const int n = params.n;
  const int p = params.p;
  std::vector<PrincipalCoefficient> out;
  for (const auto& sp : resonance::stationary_points(n, p, 1.0)) {
    PrincipalCoefficient c;
    c.j = sp.j;
    c.multiplicity = sp.multiplicity;
    c.d_j = resonance::coefficient_dj(n, p, sp.j);
    c.resonant = std::abs(p - 2 * sp.j - 2) == 1;

    const Eigen::MatrixXd hess = resonance::hessian_at(n, p, 1.0, sp.coords);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
    double det = 1.0;
    int sig_h = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      det *= es.eigenvalues()[i];
      sig_h += es.eigenvalues()[i] > 0.0 ? 1 : -1;
    }
    c.det_unit = std::abs(det);
    c.signature_plus = -sig_h;  // phase is -H

    c.c_plus = static_cast<double>(params.sign) * Complex{0.0, 1.0 / p} *
               std::pow(2.0 * kPi, 0.5 * (1 - p)) * c.multiplicity *
               std::exp(Complex{0.0, kPi * c.signature_plus / 4.0}) /
               std::sqrt(c.det_unit);
    out.push_back(c);
  }
  return out;
}

ComplexVec principal_rhs(const Profile& prof, double t) {
  if (t < 1.0) throw std::invalid_argument("principal_rhs: t must be >= t0 = 1");
  const int n = prof.params.n;
  const int p = prof.params.p;
  const auto coeffs = compute_coefficients(prof.params);
  const FourierInterpolator interp(prof.grid, prof.fhat);

  const double cutoff = std::pow(t, -1.0 / n);
  const double tpow = std::pow(t, -0.5 * (p - 1));
  const double gamma = 0.5 * (p - 1) * (n - 2);

  ComplexVec out(prof.grid.count, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xi = prof.grid.frequencies[i];
    if (std::abs(xi) <= cutoff) continue;  // sharp indicator
    const double pref = tpow * xi / std::pow(std::abs(xi), gamma);
    Complex acc{0.0, 0.0};
    for (const auto& c : coeffs) {
      const double xjp = xi / static_cast<double>(p - 2 * c.j - 2);
      const Complex fm = interp(-xjp);
      const Complex fp = interp(xjp);
      // Signature flips with sign(xi); |det| scales as |xi|^{(n-2)(p-1)},
      // already absorbed into the |xi| prefactor.
      const double s_here = c.signature_plus * (xi > 0.0 ? 1.0 : -1.0);
      const Complex cj = static_cast<double>(prof.params.sign) *
                         Complex{0.0, 1.0 / p} *
                         std::pow(2.0 * kPi, 0.5 * (1 - p)) * c.multiplicity *
                         std::exp(Complex{0.0, kPi * s_here / 4.0}) /
                         std::sqrt(c.det_unit);
      const double phase = -c.d_j * t * std::pow(xi, n);
      acc += cj * Complex{std::cos(phase), std::sin(phase)} *
             pow_int(fm, c.j + 1) * pow_int(fp, p - c.j - 1);
    }
    out[i] = pref * acc;
  }
  return out;
}

ResidualReport residual(const Trajectory& traj) {
  if (traj.samples.size() < 2)
    throw std::invalid_argument("residual: need at least two sampled fields");
  ResidualReport rep;
  const std::size_t N = traj.grid.count;
  rep.l1_time_per_xi.assign(N, 0.0);
  std::vector<double> prev_abs(N, 0.0);
  double prev_t = 0.0;

  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const auto& smp = traj.samples[s];
    SimulationState st{traj.params, smp.t, smp.u, traj.epsilon, 0.0, 0};
    const ComplexVec duh = duhamel_rhs(st).fourier();
    Profile prof = make_profile(st);
    const ComplexVec pri = principal_rhs(prof, smp.t);

    double maxabs = 0.0;
    std::vector<double> cur(N);
    for (std::size_t i = 0; i < N; ++i) {
      cur[i] = std::abs(duh[i] - pri[i]);
      maxabs = std::max(maxabs, cur[i]);
    }
    rep.times.push_back(smp.t);
    rep.max_abs.push_back(maxabs);
    if (s > 0) {
      const double h = smp.t - prev_t;
      for (std::size_t i = 0; i < N; ++i)
        rep.l1_time_per_xi[i] += 0.5 * h * (cur[i] + prev_abs[i]);
    }
    prev_abs = std::move(cur);
    prev_t = smp.t;
  }
  rep.max_l1_time =
      *std::max_element(rep.l1_time_per_xi.begin(), rep.l1_time_per_xi.end());
  return rep;
}

double gauge_constant(const EquationParams& params) {
  if (params.p % 2 == 0) return 0.0;
  double c = 0.0;
  for (const auto& coeff : compute_coefficients(params))
    if (coeff.resonant) c += coeff.c_plus.imag();
  return c;
}

double compute_B(const Profile& prof, std::size_t xi_index) {
  if (prof.history_times.empty())
    throw std::invalid_argument("compute_B: empty history");
  const int p = prof.params.p;
  if (p % 2 == 0) return 0.0;
  const double xi = prof.grid.frequencies[xi_index];
  if (xi == 0.0) return 0.0;

  const double gamma = 0.5 * (p - 1) * (prof.params.n - 2);
  double integral = 0.0;
  for (std::size_t k = 1; k < prof.history_times.size(); ++k) {
    const double s0 = prof.history_times[k - 1];
    const double s1 = prof.history_times[k];
    const double g0 =
        prof.history_modpow[k - 1][xi_index] * std::pow(s0, -0.5 * (p - 1));
    const double g1 = prof.history_modpow[k][xi_index] * std::pow(s1, -0.5 * (p - 1));
    integral += 0.5 * (s1 - s0) * (g0 + g1);
  }
  return gauge_constant(prof.params) * xi / std::pow(std::abs(xi), gamma) * integral;
}

ComplexVec renormalized_w(const Profile& prof) {
  ComplexVec w(prof.fhat.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double b = compute_B(prof, i);
    w[i] = Complex{std::cos(b), -std::sin(b)} * prof.fhat[i];
  }
  return w;
}

double lp_lowpass(double r) {
  const double a = std::abs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  // C-infinity transition exp(-1/x) glue on [1,2].
  const double x = a - 1.0;
  const double g0 = std::exp(-1.0 / x);
  const double g1 = std::exp(-1.0 / (1.0 - x));
  return g1 / (g0 + g1);
}

double lp_bump(double r) { return lp_lowpass(r) - lp_lowpass(2.0 * r); }

SpectralField lp_piece(const SpectralField& f, int dyad_j) {
  const double scale = std::pow(2.0, -dyad_j);
  return apply_multiplier(
      f, [scale](double xi) { return Complex{lp_bump(xi * scale), 0.0}; });
}

SpectralField lp_low(const SpectralField& f, int dyad_j) {
  const double scale = std::pow(2.0, -dyad_j);
  return apply_multiplier(
      f, [scale](double xi) { return Complex{lp_lowpass(xi * scale), 0.0}; });
}

std::vector<FreqlocRow> freqloc_report(const SpectralField& f, double t, int n,
                                       int jmin, int jmax, double eps1) {
  std::vector<FreqlocRow> rows;
  const double t1n = std::pow(t, 1.0 / n);
  for (int j = jmin; j <= jmax; ++j) {
    const SpectralField fj = lp_piece(f, j);
    FreqlocRow row;
    row.dyad_j = j;
    row.fhat_inf = linf_fourier(fj);
    row.xf_l2 = weighted_x_norm(fj, false);
    row.f_l1 = lp_norm(fj, 1.0);
    row.l1_envelope = (1.0 + std::pow(std::pow(2.0, j) * t1n, 0.25)) * eps1;
    row.l1_ratio = row.l1_envelope > 0.0 ? row.f_l1 / row.l1_envelope : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hokdv::profile
