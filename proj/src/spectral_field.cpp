#include "hokdv/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hokdv/fft.hpp"

namespace hokdv {
namespace {

// With x_k = -L/2 + k dx and xi_m = 2pi m / L, exp(-i x_k xi_m) picks up a
// (-1)^m phase relative to the plain DFT; m and the transform index agree
// mod 2 since N is even.
void phys_to_four(const Grid1D& g, const ComplexVec& in, ComplexVec& out) {
  fft::forward(in, out);
  const double dx = g.dx();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= (i & 1) ? -dx : dx;
}

void four_to_phys(const Grid1D& g, const ComplexVec& in, ComplexVec& out) {
  ComplexVec tmp(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    tmp[i] = (i & 1) ? -in[i] : in[i];
  fft::backward(tmp, out);
  const double inv_l = 1.0 / g.length;
  for (auto& v : out) v *= inv_l;
}

}  // namespace

SpectralField::SpectralField(Grid1D grid) : grid_(std::move(grid)) {
  physical_.assign(grid_.count, Complex{0.0, 0.0});
  fourier_.assign(grid_.count, Complex{0.0, 0.0});
  phys_valid_ = four_valid_ = true;
}

SpectralField SpectralField::from_physical(Grid1D grid, ComplexVec samples) {
  if (samples.size() != grid.count)
    throw std::invalid_argument("sample count does not match grid");
  SpectralField f;
  f.grid_ = std::move(grid);
  f.physical_ = std::move(samples);
  f.phys_valid_ = true;
  return f;
}

SpectralField SpectralField::from_fourier(Grid1D grid, ComplexVec coeffs) {
  if (coeffs.size() != grid.count)
    throw std::invalid_argument("coefficient count does not match grid");
  SpectralField f;
  f.grid_ = std::move(grid);
  f.fourier_ = std::move(coeffs);
  f.four_valid_ = true;
  return f;
}

const ComplexVec& SpectralField::physical() const {
  if (!phys_valid_) {
    if (!four_valid_) throw std::logic_error("field holds no representation");
    four_to_phys(grid_, fourier_, physical_);
    phys_valid_ = true;
  }
  return physical_;
}

const ComplexVec& SpectralField::fourier() const {
  if (!four_valid_) {
    if (!phys_valid_) throw std::logic_error("field holds no representation");
    phys_to_four(grid_, physical_, fourier_);
    four_valid_ = true;
  }
  return fourier_;
}

void SpectralField::set_physical(ComplexVec samples) {
  if (samples.size() != grid_.count)
    throw std::invalid_argument("sample count does not match grid");
  physical_ = std::move(samples);
  phys_valid_ = true;
  four_valid_ = false;
}

void SpectralField::set_fourier(ComplexVec coeffs) {
  if (coeffs.size() != grid_.count)
    throw std::invalid_argument("coefficient count does not match grid");
  fourier_ = std::move(coeffs);
  four_valid_ = true;
  phys_valid_ = false;
}

double SpectralField::representation_error() const {
  if (!phys_valid_ || !four_valid_) return 0.0;
  ComplexVec check;
  four_to_phys(grid_, fourier_, check);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < check.size(); ++i) {
    num = std::max(num, std::abs(check[i] - physical_[i]));
    den = std::max(den, std::abs(physical_[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace hokdv
