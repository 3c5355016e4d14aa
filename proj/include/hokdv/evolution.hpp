#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hokdv/equation.hpp"
#include "hokdv/operators.hpp"
#include "hokdv/spectral_field.hpp"

namespace hokdv {

enum class DataKind { gaussian, sech, custom };

// Builds initial data rescaled so that the smallness norm
// ||u||_{H^{(n-1)/2}} + ||x u||_{L2} equals eps (to 1e-6 relative).
SpectralField initial_data(
    const Grid1D& grid, const EquationParams& params, DataKind kind, double eps,
    double center = 0.0, double width = 1.0,
    const std::function<double(double)>& custom_shape = nullptr);

struct InvariantLedger {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> hamiltonian;
  std::vector<double> x_norm;
  std::vector<double> boundary_mass;
  std::vector<double> spectral_tail;
};

struct SimulationState {
  EquationParams params;
  double t = 0.0;
  SpectralField u;
  double epsilon = 0.0;
  double dt = 0.0;
  std::size_t step_count = 0;
};

double mass(const SpectralField& u);
// Conserved Hamiltonian of d_t u + (-1)^{(n+1)/2} d_x^n u = sign u^{p-1} d_x u:
//   integral of (d_x^k u)^2/2 + (sign/p) u^{p+1}/(p+1),  k = (n-1)/2.
double hamiltonian(const SpectralField& u, const EquationParams& params);

inline double mass(const SimulationState& s) { return mass(s.u); }
inline double hamiltonian(const SimulationState& s) {
  return hamiltonian(s.u, s.params);
}

// CFL bound dt_max = 0.5 dx / max|u|^{p-1}.
double cfl_dt_max(const SimulationState& s);

// Fraction of the L2 Fourier mass in |xi| >= ximax/2 (dealiasing health).
double spectral_tail_fraction(const SpectralField& u);

// One integrating-factor RK4 step (exact linear phase, RK4 nonlinearity,
// 2/3-rule dealiasing). Throws on CFL violation or NaN (blow-up guard).
void step(SimulationState& s, double dt);

// Scaling vector-field diagnostic y = S(t)(x f) + (n/p) t u^p. The direct
// route x u + (-1)^{(n-1)/2} n t d_x^{n-1} u + (n/p) t u^p must agree.
SpectralField vector_field_y(const SimulationState& s);
SpectralField vector_field_y_direct(const SimulationState& s);

// Bootstrap norm ||u||_{H^{(n-1)/2}} + t^{-1/(2n)} ||x f||_{L2} + ||fhat||_inf.
double x_norm(const SimulationState& s);

struct TrajectorySample {
  double t = 0.0;
  SpectralField u;
};

struct Trajectory {
  EquationParams params;
  Grid1D grid;
  double epsilon = 0.0;
  double dt = 0.0;
  std::vector<TrajectorySample> samples;
  InvariantLedger ledger;
  bool boundary_ok = true;   // false => run flagged invalid for decay use
  double max_mass_drift = 0.0;
  double max_hamiltonian_drift = 0.0;
};

struct RunOptions {
  double dt = 0.0;            // 0 => CFL-derived
  bool store_fields = true;   // keep full fields at sample times
  bool enforce_cfl = true;
};

// Integrates from t0 = sample_times.front() to sample_times.back(),
// landing exactly on each sample time.
Trajectory run(const EquationParams& params, const SpectralField& u0,
               const std::vector<double>& sample_times,
               const RunOptions& options = {});

// Checkpoint format: <basename>.json metadata + <basename>.bin raw
// little-endian float64 Fourier coefficients (re,im interleaved per sample).
inline constexpr const char* kTrajectoryFormat = "hokdv-trajectory-v1";
void save_trajectory(const Trajectory& traj, const std::string& basename);
Trajectory load_trajectory(const std::string& basename);

}  // namespace hokdv
