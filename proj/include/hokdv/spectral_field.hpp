#pragma once

#include <complex>
#include <vector>

#include "hokdv/grid.hpp"

namespace hokdv {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

// A function on a periodic grid carried as physical samples u(x_k) and/or
// Fourier coefficients uhat(xi_m). Whichever representation was written
// last is authoritative; the other is produced on demand and cached.
//
// Transform convention (analyst):
//   uhat(xi) = integral u(x) exp(-i x xi) dx,
//   u(x)     = (1/2pi) integral uhat(xi) exp(i x xi) dxi,
// discretized with dx and dxi = 2pi/L weights.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(Grid1D grid);

  static SpectralField from_physical(Grid1D grid, ComplexVec samples);
  static SpectralField from_fourier(Grid1D grid, ComplexVec coeffs);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return grid_.count; }

  // Accessors transform lazily when the requested side is stale.
  const ComplexVec& physical() const;
  const ComplexVec& fourier() const;

  void set_physical(ComplexVec samples);
  void set_fourier(ComplexVec coeffs);

  bool has_physical() const { return phys_valid_; }
  bool has_fourier() const { return four_valid_; }

  // Max relative disagreement between the two representations when both
  // are valid (0 if only one side is held).
  double representation_error() const;

 private:
  Grid1D grid_;
  mutable ComplexVec physical_;
  mutable ComplexVec fourier_;
  mutable bool phys_valid_ = false;
  mutable bool four_valid_ = false;
};

}  // namespace hokdv
