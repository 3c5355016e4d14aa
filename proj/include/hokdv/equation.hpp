#pragma once

#include <stdexcept>

namespace hokdv {

// Parameters of  d_t u + (-1)^{(n+1)/2} d_x^n u = sign * u^{p-1} d_x u.
struct EquationParams {
  int n = 5;     // dispersion order, odd, >= 3
  int p = 2;     // nonlinearity degree, >= 2
  int sign = 1;  // +1 or -1 on the nonlinearity

  // theorem_mode additionally enforces p < n and n >= 5; comparison runs
  // may relax this up to p <= n+1.
  static EquationParams make(int n, int p, int sign = 1,
                             bool theorem_mode = true) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd, >= 3");
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    if (theorem_mode) {
      if (n < 5) throw std::invalid_argument("theorem mode requires n >= 5");
      if (p >= n) throw std::invalid_argument("theorem mode requires p < n");
    } else if (p > n + 1) {
      throw std::invalid_argument("p must satisfy p <= n+1");
    }
    return EquationParams{n, p, sign};
  }

  int half_order() const { return (n - 1) / 2; }            // k = (n-1)/2
  double decay_rate() const { return 1.0 / n; }             // t^{-1/n}
  double critical_exponent() const {                        // n(p-1)/(n-p)
    return static_cast<double>(n) * (p - 1) / static_cast<double>(n - p);
  }
};

}  // namespace hokdv
