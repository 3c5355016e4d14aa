#pragma once

#include <complex>
#include <vector>

#include "hokdv/equation.hpp"
#include "hokdv/evolution.hpp"
#include "hokdv/spectral_field.hpp"

namespace hokdv::profile {

// Interaction-picture unknown f = S(-t)u with the |fhat|^{p-1} history
// needed for the scattering phase B(t, xi).
struct Profile {
  Grid1D grid;
  EquationParams params;
  double t = 0.0;
  ComplexVec fhat;
  std::vector<double> history_times;                 // strictly increasing
  std::vector<std::vector<double>> history_modpow;   // |fhat(s,xi)|^{p-1}
};

Profile make_profile(const SimulationState& state);
void append_sample(Profile& prof, const SimulationState& state);
Profile profile_from_trajectory(const Trajectory& traj);

// d_t fhat evaluated spectrally: exp(-i t xi^n) F[sign u^{p-1} u_x].
SpectralField duhamel_rhs(const SimulationState& state);

// Brute-force (p-1)-fold discrete convolution oracle at one probe mode:
// (i xi sign / p) (2pi)^{1-p} dxi^{p-1} sum e^{-itH} fhat(xi_1)...fhat(xi_p).
Complex duhamel_convolution_probe(const SimulationState& state, long probe_mode);

// Principal-term coefficients from the stationary-phase leading term:
// c_j = sign * (i/p) (2pi)^{(1-p)/2} C(p-1,j) e^{i pi s_j/4} |det|^{-1/2},
// evaluated on the xi > 0 branch; the signature flips with sign(xi).
struct PrincipalCoefficient {
  int j = 0;
  double multiplicity = 0.0;
  double d_j = 0.0;          // phase coefficient, shared with resonance module
  Complex c_plus{0.0, 0.0};  // xi > 0 branch
  int signature_plus = 0;    // sign Hess(-H) at the point, xi = +1
  double det_unit = 0.0;     // |det Hess H| at xi = +1
  bool resonant = false;
};
std::vector<PrincipalCoefficient> compute_coefficients(const EquationParams& params);

// Sum over stationary families of
//   t^{-(p-1)/2} xi |xi|^{-(p-1)(n-2)/2} c_j(xi) e^{-i d_j t xi^n}
//   fhat(-xi_jp)^{j+1} fhat(xi_jp)^{p-j-1} 1_{|xi| > t^{-1/n}}.
// Off-grid arguments xi/(p-2j-2) are cubic-interpolated in xi.
ComplexVec principal_rhs(const Profile& prof, double t);

struct ResidualReport {
  std::vector<double> times;
  std::vector<double> max_abs;        // max over xi of |R| per sample
  std::vector<double> l1_time_per_xi; // trapezoidal int |R(.,xi)| dt
  double max_l1_time = 0.0;           // max over xi
};
ResidualReport residual(const Trajectory& traj);

// Gauge constant c (real) combining the two resonant c_j; 0 for even p.
double gauge_constant(const EquationParams& params);

// B(t,xi) from the trapezoidal history integral; w = exp(-iB) fhat.
double compute_B(const Profile& prof, std::size_t xi_index);
ComplexVec renormalized_w(const Profile& prof);

// Littlewood-Paley partition built from a fixed C-infinity transition:
// lp_lowpass(r) = 1 for |r| <= 1, 0 for |r| >= 2; psi_j = telescoped.
double lp_lowpass(double r);
double lp_bump(double r);  // lp_lowpass(r) - lp_lowpass(2r)
SpectralField lp_piece(const SpectralField& f, int dyad_j);
SpectralField lp_low(const SpectralField& f, int dyad_j);

struct FreqlocRow {
  int dyad_j = 0;
  double fhat_inf = 0.0;
  double xf_l2 = 0.0;
  double f_l1 = 0.0;
  double l1_envelope = 0.0;  // (1 + (2^j t^{1/n})^{1/4}) * eps1
  double l1_ratio = 0.0;
};
std::vector<FreqlocRow> freqloc_report(const SpectralField& f, double t, int n,
                                       int jmin, int jmax, double eps1);

}  // namespace hokdv::profile
