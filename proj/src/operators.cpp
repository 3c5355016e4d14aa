#include "hokdv/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hokdv {

SpectralField apply_multiplier(const SpectralField& u,
                               const std::function<Complex(double)>& symbol) {
  const auto& uhat = u.fourier();
  const auto& xi = u.grid().frequencies;
  ComplexVec out(uhat.size());
  for (std::size_t i = 0; i < uhat.size(); ++i) out[i] = symbol(xi[i]) * uhat[i];
  return SpectralField::from_fourier(u.grid(), std::move(out));
}

SpectralField apply_propagator(const SpectralField& u, int n, double t) {
  const auto& uhat = u.fourier();
  const auto& xi = u.grid().frequencies;
  ComplexVec out(uhat.size());
  for (std::size_t i = 0; i < uhat.size(); ++i) {
    const double phase = t * std::pow(xi[i], n);
    out[i] = Complex{std::cos(phase), std::sin(phase)} * uhat[i];
  }
  return SpectralField::from_fourier(u.grid(), std::move(out));
}

SpectralField fractional_derivative(const SpectralField& u, double beta,
                                    DerivativeKind kind) {
  if (beta < 0.0) throw std::invalid_argument("derivative order must be >= 0");
  if (kind == DerivativeKind::signed_integer) {
    if (beta != std::floor(beta))
      throw std::invalid_argument("signed variant requires integer order");
    const int k = static_cast<int>(beta);
    return apply_multiplier(u, [k](double xi) {
      return std::pow(Complex{0.0, xi}, k);
    });
  }
  return apply_multiplier(u, [beta](double xi) {
    if (xi == 0.0) return Complex{beta == 0.0 ? 1.0 : 0.0, 0.0};
    return Complex{std::pow(std::abs(xi), beta), 0.0};
  });
}

SpectralField hilbert_transform(const SpectralField& u) {
  return apply_multiplier(u, [](double xi) {
    if (xi == 0.0) return Complex{0.0, 0.0};
    return Complex{0.0, xi > 0.0 ? -1.0 : 1.0};
  });
}

SpectralField to_profile_field(const SpectralField& u, int n, double t) {
  return apply_propagator(u, n, -t);
}

SpectralField from_profile_field(const SpectralField& f, int n, double t) {
  return apply_propagator(f, n, t);
}

double boundary_mass_fraction(const SpectralField& u) {
  const auto& v = u.physical();
  const auto& x = u.grid().nodes;
  const double edge = 0.475 * u.grid().length;
  double outer = 0.0, total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::norm(v[i]);
    total += m;
    if (std::abs(x[i]) >= edge) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double l2_norm(const SpectralField& u) {
  const auto& v = u.physical();
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s * u.grid().dx());
}

double sobolev_norm(const SpectralField& u, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev order must be >= 0");
  const auto& uhat = u.fourier();
  const auto& xi = u.grid().frequencies;
  double acc = 0.0;
  for (std::size_t i = 0; i < uhat.size(); ++i)
    acc += std::pow(1.0 + xi[i] * xi[i], s) * std::norm(uhat[i]);
  return std::sqrt(acc / u.grid().length);
}

double linf_fourier(const SpectralField& u) {
  const auto& uhat = u.fourier();
  double m = 0.0;
  for (const auto& z : uhat) m = std::max(m, std::abs(z));
  return m;
}

double weighted_x_norm(const SpectralField& u, bool check_boundary) {
  if (check_boundary && boundary_mass_fraction(u) > kBoundaryMassTol)
    throw std::runtime_error("weighted_x_norm: boundary-mass monitor violated");
  const auto& v = u.physical();
  const auto& x = u.grid().nodes;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += x[i] * x[i] * std::norm(v[i]);
  return std::sqrt(s * u.grid().dx());
}

double linf_norm(const SpectralField& u) {
  const auto& v = u.physical();
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double lp_norm(const SpectralField& u, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) return linf_norm(u);
  const auto& v = u.physical();
  double s = 0.0;
  for (const auto& z : v) s += std::pow(std::abs(z), p);
  return std::pow(s * u.grid().dx(), 1.0 / p);
}

double conjugate_symmetry_error(const SpectralField& u) {
  const auto& uhat = u.fourier();
  const std::size_t n = uhat.size();
  double num = 0.0, den = 0.0;
  for (const auto& z : uhat) den = std::max(den, std::abs(z));
  for (std::size_t i = 1; i < n / 2; ++i)
    num = std::max(num, std::abs(uhat[n - i] - std::conj(uhat[i])));
  num = std::max(num, std::abs(uhat[0].imag()));
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace hokdv
