#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hokdv/spectral_field.hpp"

namespace hokdv::oscillatory {

using Complex = std::complex<double>;

// I = integral over R^d of exp(i lambda psi(eta)) F(eta) chi(eta) d eta,
// with chi supported inside the ball of radius 2.
struct PhaseSpec {
  int dimension = 1;
  std::function<double(const Eigen::VectorXd&)> phase;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  std::function<Complex(const Eigen::VectorXd&)> amplitude;
  std::function<double(const Eigen::VectorXd&)> cutoff;
  double lambda = 1.0;
  std::optional<Eigen::VectorXd> stationary_point;
};

struct OscIntegralResult {
  Complex value{0.0, 0.0};
  std::string method;
  double error_estimate = 0.0;
  int signature_used = 0;
  double det_used = 0.0;
};

// Leading term (2pi/lambda)^{d/2} e^{i pi s/4} Delta^{-1/2}
// e^{i lambda psi(eta0)} F(eta0) chi(eta0), with s = sign Hess psi(eta0)
// and Delta = |det Hess psi(eta0)|.
OscIntegralResult stationary_phase_leading(const PhaseSpec& spec);

// Composite Gauss-Legendre oracle over [-2,2]^d with lambda-adaptive panel
// density. Cost guard: lambda <= lambda_max(d).
double lambda_max(int d);
OscIntegralResult oscillatory_quadrature(const PhaseSpec& spec);

// Least-squares slope of log|I_quad - I_leading| (or log|I_quad| when no
// stationary point is supplied) against log lambda.
struct OrderProbeResult {
  double fitted_order = 0.0;          // decay order (positive)
  std::vector<double> lambdas;
  std::vector<double> errors;
};
OrderProbeResult error_order_probe(PhaseSpec spec,
                                   const std::vector<double>& lambda_list);

// Pseudo-product bound check:
// |integral m(eta) prod_j fhat_j(eta_j) fhat_{d+1}(-sum eta) d eta|
//   <= C * A * prod ||f_j||_{L^{p_j}},  A = ||F^{-1} m||_{L^1}.
struct PseudoProductReport {
  double lhs = 0.0;
  double symbol_l1 = 0.0;   // A
  double norm_product = 0.0;
  double ratio = 0.0;       // lhs / (A * norm_product), 0 if degenerate
};
PseudoProductReport pseudo_product_check(
    const std::function<double(const Eigen::VectorXd&)>& symbol,
    const std::vector<SpectralField>& functions,
    const std::vector<double>& exponents);

}  // namespace hokdv::oscillatory
