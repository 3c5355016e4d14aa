#pragma once

#include <cstddef>
#include <vector>

namespace hokdv {

// Uniform periodic grid on [-L/2, L/2) with N nodes (N a power of two).
// Frequencies are stored in transform order: xi[i] = 2*pi*m/L with
// m = i for i < N/2 and m = i - N otherwise.
struct Grid1D {
  double length = 0.0;
  std::size_t count = 0;
  std::vector<double> nodes;        // x_k = -L/2 + k*L/N
  std::vector<double> frequencies;  // transform order, see above

  double dx() const { return length / static_cast<double>(count); }
  double dxi() const;
  double max_frequency() const;  // pi*N/L

  // Index of the mode m (signed integer, -N/2 <= m < N/2) in transform order.
  std::size_t mode_index(long m) const;

  bool operator==(const Grid1D& other) const {
    return length == other.length && count == other.count;
  }
};

Grid1D make_grid(double length, std::size_t count);

bool is_power_of_two(std::size_t n);

}  // namespace hokdv
