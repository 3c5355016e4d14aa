#pragma once

#include <string>
#include <vector>

#include "hokdv/evolution.hpp"

namespace hokdv::harness {

struct SweepOptions {
  double domain_length = 4096.0;
  std::size_t grid_points = 1u << 14;
  double data_width = 6.0;
  DataKind data_kind = DataKind::gaussian;
  double t_start = 1.0;
  double horizon = 4000.0;       // censor runs surviving past this time
  double sample_spacing = 5.0;   // breakdown-monitor cadence
  double growth_factor = 2.0;    // T* = first t with ||fhat||_inf > factor * initial
};

struct SweepEntry {
  double epsilon = 0.0;
  double t_star = 0.0;   // horizon when censored
  bool censored = false;
  double max_mass_drift = 0.0;
};

struct SweepReport {
  EquationParams params{};
  std::vector<SweepEntry> entries;
  double fitted_slope = 0.0;     // log T* vs log(1/eps), uncensored entries
  double predicted_slope = 0.0;  // n(p-1)/(n-p)
  int uncensored_count = 0;
  bool low_confidence = false;   // < 3 uncensored points
};

// Runs the full nonlinear flow for each epsilon and records the first time
// the profile amplitude ||fhat||_inf exceeds growth_factor x its initial
// value (breakdown surrogate for the guaranteed-existence time).
SweepReport epsilon_sweep(const EquationParams& params,
                          const std::vector<double>& eps_list,
                          const SweepOptions& options = {});

std::string sweep_report_csv(const SweepReport& rep);

}  // namespace hokdv::harness
