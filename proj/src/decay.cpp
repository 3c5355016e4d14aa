#include "hokdv/decay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hokdv/operators.hpp"

namespace hokdv::harness {

namespace {

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double g0 = std::exp(-1.0 / x);
  const double g1 = std::exp(-1.0 / (1.0 - x));
  return g0 / (g0 + g1);
}

// |u + i H u| pointwise: upper envelope of an oscillatory real signal.
std::vector<double> analytic_envelope(const SpectralField& u) {
  const SpectralField hu = hilbert_transform(u);
  const auto& up = u.physical();
  const auto& hp = hu.physical();
  std::vector<double> env(up.size());
  for (std::size_t k = 0; k < up.size(); ++k) {
    env[k] = std::hypot(up[k].real(), std::abs(hp[k]));
  }
  return env;
}

// Upper envelope over log-spaced z bins, then a log-log fit. side = -1
// restricts to x < 0, +1 to x > 0.
PowerFit binned_envelope_fit(const SpectralField& u, double scale, int side,
                             double z_lo, double z_hi, int bins = 24) {
  const auto env = analytic_envelope(u);
  const auto& xs = u.grid().nodes;
  std::vector<double> bin_max(static_cast<std::size_t>(bins), 0.0);
  const double log_lo = std::log(z_lo);
  const double log_hi = std::log(z_hi);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (side < 0 ? xs[k] >= 0.0 : xs[k] <= 0.0) continue;
    const double z = scale * std::abs(xs[k]);
    if (z < z_lo || z > z_hi) continue;
    const auto b = static_cast<std::size_t>(
        std::min<double>(bins - 1, (std::log(z) - log_lo) / (log_hi - log_lo) * bins));
    bin_max[b] = std::max(bin_max[b], env[k]);
  }
  std::vector<double> zc;
  std::vector<double> vals;
  for (int b = 0; b < bins; ++b) {
    if (bin_max[static_cast<std::size_t>(b)] <= 0.0) continue;
    zc.push_back(std::exp(log_lo + (b + 0.5) / bins * (log_hi - log_lo)));
    vals.push_back(bin_max[static_cast<std::size_t>(b)]);
  }
  return fit_loglog(zc, vals);
}

struct RatioPair {
  double oscillatory = 0.0;
  double elliptic = 0.0;
};

// sup_x |v(x)| / envelope(t, x) over each region, with
//   envelope = A t^{-1/n - beta/n} <t^{-1/n} x>^q,
//   q = -(n-2)/(2n-2) + beta/(n-1) oscillatory, -1 + beta/(n-1) elliptic.
RatioPair sup_ratios(const SpectralField& v, double amp, int n, double t,
                     double beta, double elliptic_constant) {
  const auto& vp = v.physical();
  const auto& xs = v.grid().nodes;
  const double tpow = std::pow(t, -1.0 / n - beta / n);
  const double scale = std::pow(t, -1.0 / n);
  const double q_osc = -(n - 2.0) / (2.0 * n - 2.0) + beta / (n - 1.0);
  const double q_ell = -1.0 + beta / (n - 1.0);
  RatioPair out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double mag = std::abs(vp[k]);
    const double zb = japanese_bracket(scale * xs[k]);
    if (xs[k] < 0.0) {
      out.oscillatory = std::max(
          out.oscillatory, mag / (amp * tpow * std::pow(zb, q_osc)));
    } else if (xs[k] >= elliptic_constant * std::pow(t, 1.0 / n)) {
      out.elliptic = std::max(out.elliptic,
                              mag / (amp * tpow * std::pow(zb, q_ell)));
    }
  }
  return out;
}

double fbd_amplitude(const SpectralField& f0, int n, double t_min) {
  return linf_fourier(f0) +
         std::pow(t_min, -0.5 / n) * weighted_x_norm(f0, false);
}

}  // namespace

PowerFit fit_loglog(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("fit_loglog: need >= 2 matched points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double lx = std::log(xs[k]);
    const double ly = std::log(ys[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(xs.size());
  PowerFit fit;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  fit.low_confidence = (*hi / *lo) < 10.0;
  return fit;
}

SpectralField flat_band_data(const Grid1D& grid, double xi_flat,
                             double xi_edge) {
  if (!(0.0 < xi_flat && xi_flat < xi_edge)) {
    throw std::invalid_argument("flat_band_data: need 0 < xi_flat < xi_edge");
  }
  ComplexVec coeffs(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double a = std::abs(grid.frequencies[k]);
    coeffs[k] = smooth_step((xi_edge - a) / (xi_edge - xi_flat));
  }
  return SpectralField::from_fourier(grid, std::move(coeffs));
}

SpectralField windowed_sinc_data(const Grid1D& grid, double xi_cut,
                                 double window) {
  ComplexVec samples(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double x = grid.nodes[k];
    const double sinc =
        x == 0.0 ? xi_cut / M_PI : std::sin(xi_cut * x) / (M_PI * x);
    samples[k] = sinc * std::exp(-(x / window) * (x / window));
  }
  return SpectralField::from_physical(grid, std::move(samples));
}

DecayReport check_linear_decay(const SpectralField& f0,
                               const LinearDecayOptions& options) {
  if (options.times.size() < 3) {
    throw std::invalid_argument("check_linear_decay: need >= 3 times");
  }
  const int n = options.n;
  DecayReport rep;
  rep.A = fbd_amplitude(f0, n, options.times.front());

  std::vector<double> linf_ts;
  std::vector<double> linf_vals;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::vector<double> base_ratios;
  for (const double t : options.times) {
    const SpectralField u = apply_propagator(f0, n, t);
    if (boundary_mass_fraction(u) > kBoundaryMassTol) rep.boundary_ok = false;
    for (const double beta : options.beta_list) {
      const SpectralField v =
          beta == 0.0 ? u : fractional_derivative(u, beta);
      const RatioPair r =
          sup_ratios(v, rep.A, n, t, beta, options.elliptic_constant);
      rep.rows.push_back({t, beta, r.oscillatory, r.elliptic});
      const double worst = std::max(r.oscillatory, r.elliptic);
      ratio_min = ratio_min == 0.0 ? worst : std::min(ratio_min, worst);
      ratio_max = std::max(ratio_max, worst);
      if (beta == 0.0) {
        base_ratios.push_back(r.oscillatory);
        linf_ts.push_back(t);
        linf_vals.push_back(linf_norm(v));
      }
    }
  }
  rep.ratio_spread = ratio_min > 0.0 ? ratio_max / ratio_min : 0.0;

  if (!base_ratios.empty()) {
    std::vector<double> sorted = base_ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t k = 0; k < base_ratios.size(); ++k) {
      if (base_ratios[k] > 2.0 * median) {
        rep.breakdown_time = linf_ts[k];
        break;
      }
    }
  }

  const PowerFit linf_fit = fit_loglog(linf_ts, linf_vals);
  rep.linf_time_exponent = linf_fit.slope;
  rep.low_confidence = linf_fit.low_confidence;

  const double t_last = options.times.back();
  const double scale = std::pow(t_last, -1.0 / n);
  const SpectralField u_last = apply_propagator(f0, n, t_last);
  rep.oscillatory_spatial_exponent =
      binned_envelope_fit(u_last, scale, -1, options.z_fit_lo,
                          options.z_fit_hi)
          .slope;

  const SpectralField& ell_src =
      options.elliptic_profile ? *options.elliptic_profile : f0;
  const SpectralField u_ell = apply_propagator(ell_src, n, t_last);
  rep.elliptic_spatial_exponent =
      binned_envelope_fit(u_ell, scale, +1, options.elliptic_z_lo,
                          options.elliptic_z_hi)
          .slope;
  return rep;
}

LpDecayReport check_lp_decay(const SpectralField& f0, int n,
                             const std::vector<double>& times, double beta,
                             double p_exponent) {
  LpDecayReport rep;
  rep.beta = beta;
  rep.p = p_exponent;
  const double tail = (n - 2.0) / (2.0 * n - 2.0) - beta / (n - 1.0);
  if (p_exponent * tail <= 1.0) {
    throw std::invalid_argument(
        "check_lp_decay: spatial tail not p-integrable for these (beta, p)");
  }
  rep.predicted_exponent = -1.0 / n - beta / n + 1.0 / (n * p_exponent);
  std::vector<double> vals;
  for (const double t : times) {
    SpectralField u = apply_propagator(f0, n, t);
    if (beta != 0.0) u = fractional_derivative(u, beta);
    vals.push_back(lp_norm(u, p_exponent));
  }
  const PowerFit fit = fit_loglog(times, vals);
  rep.fitted_exponent = fit.slope;
  rep.low_confidence = fit.low_confidence;
  return rep;
}

DecayReport check_nonlinear_decay(const Trajectory& traj,
                                  const std::vector<double>& beta_list) {
  if (traj.samples.size() < 3 || !traj.samples.front().u.has_fourier()) {
    throw std::invalid_argument(
        "check_nonlinear_decay: trajectory needs >= 3 stored fields");
  }
  const int n = traj.params.n;
  DecayReport rep;
  rep.boundary_ok = traj.boundary_ok;
  const SpectralField f_first = to_profile_field(
      traj.samples.front().u, n, traj.samples.front().t);
  rep.A = fbd_amplitude(f_first, n, std::max(1.0, traj.samples.front().t));

  std::vector<double> linf_ts;
  std::vector<double> linf_vals;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::vector<double> base_ratios;
  for (const auto& sample : traj.samples) {
    if (sample.t < 1.0) continue;  // envelope scales only make sense for t >= 1
    for (const double beta : beta_list) {
      const SpectralField v =
          beta == 0.0 ? sample.u : fractional_derivative(sample.u, beta);
      const RatioPair r = sup_ratios(v, rep.A, n, sample.t, beta, 1.0);
      rep.rows.push_back({sample.t, beta, r.oscillatory, r.elliptic});
      const double worst = std::max(r.oscillatory, r.elliptic);
      ratio_min = ratio_min == 0.0 ? worst : std::min(ratio_min, worst);
      ratio_max = std::max(ratio_max, worst);
      if (beta == 0.0) {
        base_ratios.push_back(r.oscillatory);
        linf_ts.push_back(sample.t);
        linf_vals.push_back(linf_norm(v));
      }
    }
  }
  rep.ratio_spread = ratio_min > 0.0 ? ratio_max / ratio_min : 0.0;
  if (linf_ts.size() >= 2) {
    const PowerFit fit = fit_loglog(linf_ts, linf_vals);
    rep.linf_time_exponent = fit.slope;
    rep.low_confidence = fit.low_confidence;
  }
  if (!base_ratios.empty()) {
    std::vector<double> sorted = base_ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t k = 0; k < base_ratios.size(); ++k) {
      if (base_ratios[k] > 2.0 * median) {
        rep.breakdown_time = linf_ts[k];
        break;
      }
    }
  }
  return rep;
}

std::string decay_report_csv(const DecayReport& rep) {
  std::ostringstream out;
  out.precision(12);
  out << "t,beta,sup_ratio_oscillatory,sup_ratio_elliptic\n";
  for (const auto& row : rep.rows) {
    out << row.t << ',' << row.beta << ',' << row.sup_ratio_oscillatory << ','
        << row.sup_ratio_elliptic << '\n';
  }
  out << "# A=" << rep.A << " linf_exponent=" << rep.linf_time_exponent
      << " oscillatory_spatial=" << rep.oscillatory_spatial_exponent
      << " elliptic_spatial=" << rep.elliptic_spatial_exponent
      << " ratio_spread=" << rep.ratio_spread
      << " boundary_ok=" << (rep.boundary_ok ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace hokdv::harness
