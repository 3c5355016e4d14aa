#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace hokdv::resonance {

// p-linear phase H(xi, xi_1, ..., xi_{p-1}) = xi^n - xi_1^n - ... - xi_p^n
// with xi_p = xi - xi_1 - ... - xi_{p-1}.
struct PhaseH {
  int n;
  int p;
  double output_xi;

  double operator()(const Eigen::VectorXd& inputs) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& inputs) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& inputs) const;
};

// Canonical stationary point of the phase: j copies of -xi_jp followed by
// p-j-1 copies of xi_jp, with xi_jp = xi/(p-2j-2). The C(p-1,j)
// permutations are represented by the multiplicity count.
struct StationaryPoint {
  int j;
  double xi_jp;
  Eigen::VectorXd coords;  // p-1 entries, canonical order
  double multiplicity;     // C(p-1, j)
};

struct StationaryFamily {
  StationaryPoint point;
  double phase_value;     // H at the point = d_j * xi^n
  double d_j;             // 1 - (p-2j-2)^{-(n-1)}
  bool time_resonant;     // d_j == 0, i.e. p-2j-2 = +-1
  Eigen::MatrixXd hessian;
  int signature;
  double determinant;
};

struct ResonanceReport {
  int n;
  int p;
  double xi;
  std::vector<StationaryFamily> families;
  std::vector<int> space_time_resonant;  // j values; nonempty iff p odd

  std::string to_json() const;
  std::string to_table() const;
};

std::vector<StationaryPoint> stationary_points(int n, int p, double xi);

// Closed-form phase coefficient d_j = 1 - (p-2j-2)^{-(n-1)} and the phase
// value d_j * xi^n.
double coefficient_dj(int n, int p, int j);
double phase_at(int n, int p, int j, double xi);

Eigen::MatrixXd hessian_at(int n, int p, double xi, const Eigen::VectorXd& point);

// M1/M2 closed forms of the resonant Hessians (p odd, j = (p-1)/2 or (p-3)/2).
Eigen::MatrixXd closed_form_hessian(int n, int p, int j, double xi);

// #positive - #negative eigenvalues; throws if any eigenvalue lies within
// 1e-9 * ||M|| of zero.
int signature(const Eigen::MatrixXd& m);

struct M1SpectrumReport {
  int p;
  std::vector<double> computed;  // sorted eigenvalues of the unscaled pattern
  std::vector<double> expected;  // {-1, +1 each (p-3)/2 times} + quadratic roots
  double max_abs_error;
};
M1SpectrumReport m1_spectrum_check(int p);

ResonanceReport classify(int n, int p, double xi = 1.0);

}  // namespace hokdv::resonance
