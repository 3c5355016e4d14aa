#pragma once

#include <string>
#include <vector>

#include "hokdv/equation.hpp"
#include "hokdv/evolution.hpp"

namespace hokdv {

// Versioned run description shared by the CLI subcommands. Serialization
// is deterministic (sorted keys, fixed precision) so identical configs
// yield byte-identical artifacts.
inline constexpr const char* kRunConfigFormat = "hokdv-config-v1";

struct RunConfig {
  int n = 5;
  int p = 2;
  int sign = 1;
  bool theorem_mode = true;

  double domain_length = 16384.0;
  std::size_t grid_points = 1u << 16;

  std::string data_kind = "gaussian";  // gaussian | sech
  double epsilon = 0.05;
  double data_center = 0.0;
  double data_width = 6.0;

  double t_start = 1.0;
  double t_end = 100.0;
  std::size_t sample_count = 20;
  double dt = 0.0;  // 0 => CFL-derived

  std::vector<double> epsilon_list;  // sweep subcommand
  unsigned long seed = 0;            // reserved; recorded in outputs

  EquationParams equation() const;
  DataKind kind() const;
  std::vector<double> sample_times() const;  // log-spaced in [t_start, t_end]

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace hokdv
