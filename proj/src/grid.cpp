#include "hokdv/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hokdv {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double Grid1D::dxi() const { return 2.0 * std::numbers::pi / length; }

double Grid1D::max_frequency() const {
  return std::numbers::pi * static_cast<double>(count) / length;
}

std::size_t Grid1D::mode_index(long m) const {
  const long n = static_cast<long>(count);
  if (m < -n / 2 || m >= n / 2) throw std::out_of_range("mode out of band");
  return static_cast<std::size_t>(m >= 0 ? m : m + n);
}

Grid1D make_grid(double length, std::size_t count) {
  if (length <= 0.0) throw std::invalid_argument("grid length must be positive");
  if (count < 8 || !is_power_of_two(count))
    throw std::invalid_argument("grid count must be a power of two, >= 8");

  Grid1D g;
  g.length = length;
  g.count = count;
  g.nodes.resize(count);
  g.frequencies.resize(count);
  const double dx = length / static_cast<double>(count);
  const double dxi = 2.0 * std::numbers::pi / length;
  const long n = static_cast<long>(count);
  for (long i = 0; i < n; ++i) {
    g.nodes[i] = -0.5 * length + static_cast<double>(i) * dx;
    const long m = i < n / 2 ? i : i - n;
    g.frequencies[i] = dxi * static_cast<double>(m);
  }
  return g;
}

}  // namespace hokdv
