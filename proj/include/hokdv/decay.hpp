#pragma once

#include <string>
#include <vector>

#include "hokdv/evolution.hpp"
#include "hokdv/spectral_field.hpp"

namespace hokdv::harness {

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  bool low_confidence = false;  // fewer than a decade of x-coverage
};
PowerFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

inline double japanese_bracket(double z) { return std::sqrt(1.0 + z * z); }

// Reference data shapes for the linear-decay checks. The flat-top profile
// has fhat = 1 on |xi| <= xi_flat and a smooth roll-off to 0 at xi_edge;
// the windowed sharp cutoff carries the quasi-jump in fhat that saturates
// the elliptic z^{-1} envelope.
SpectralField flat_band_data(const Grid1D& grid, double xi_flat, double xi_edge);
SpectralField windowed_sinc_data(const Grid1D& grid, double xi_cut, double window);

struct EnvelopeRatioRow {
  double t = 0.0;
  double beta = 0.0;
  double sup_ratio_oscillatory = 0.0;  // sup_x |D^b u| / envelope, x < 0 side
  double sup_ratio_elliptic = 0.0;     // same with the elliptic envelope, x >= t^{1/n}
};

struct DecayReport {
  double A = 0.0;  // fbd normalization of the input profile
  std::vector<EnvelopeRatioRow> rows;
  double linf_time_exponent = 0.0;        // target -1/n (beta = 0)
  double oscillatory_spatial_exponent = 0.0;  // target -(n-2)/(2n-2)
  double elliptic_spatial_exponent = 0.0;     // target -1
  double ratio_spread = 0.0;              // max/min sup-ratio across times
  bool boundary_ok = true;
  double breakdown_time = -1.0;           // first ratio > 2x t-median, or -1
  bool low_confidence = false;
};

struct LinearDecayOptions {
  int n = 5;
  std::vector<double> times;
  std::vector<double> beta_list{0.0};
  double elliptic_constant = 1.0;  // elliptic region x >= c t^{1/n}
  double z_fit_lo = 10.0;  // self-similar asymptotics need z >> 1
  double z_fit_hi = 200.0;
  // below z ~ 5 the crossover near the wave front contaminates the fit
  double elliptic_z_lo = 5.0;
  double elliptic_z_hi = 80.0;
  // separate input for the elliptic fit (quasi-jump data); if empty, the
  // main profile is used for the ratio rows only.
  const SpectralField* elliptic_profile = nullptr;
};

DecayReport check_linear_decay(const SpectralField& f0,
                               const LinearDecayOptions& options);

struct LpDecayReport {
  double beta = 0.0;
  double p = 0.0;
  double predicted_exponent = 0.0;  // -1/n - beta/n + 1/(np)
  double fitted_exponent = 0.0;
  bool hypothesis_ok = true;
  bool low_confidence = false;
};
// Throws std::invalid_argument when p((n-2)/(2n-2) - beta/(n-1)) <= 1.
LpDecayReport check_lp_decay(const SpectralField& f0, int n,
                             const std::vector<double>& times, double beta,
                             double p_exponent);

DecayReport check_nonlinear_decay(const Trajectory& traj,
                                  const std::vector<double>& beta_list);

std::string decay_report_csv(const DecayReport& rep);

}  // namespace hokdv::harness
