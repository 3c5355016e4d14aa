#include "hokdv/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hokdv/fft.hpp"
#include "hokdv/operators.hpp"

namespace hokdv::oscillatory {
namespace {

constexpr double kPi = std::numbers::pi;

struct GLRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Newton iteration on Legendre polynomials.
GLRule gauss_legendre(int n) {
  GLRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GLRule& rule20() {
  static const GLRule r = gauss_legendre(20);
  return r;
}

int panels_for(double lambda) {
  return std::max(8, static_cast<int>(std::ceil(lambda / 2.0)));
}

// Composite tensor-product Gauss-Legendre over [-2,2]^d.
Complex integrate(const PhaseSpec& spec, int panels) {
  const GLRule& gl = rule20();
  const int d = spec.dimension;
  const double a = -2.0, b = 2.0;
  const double h = (b - a) / panels;
  const int nodes_per_axis = panels * static_cast<int>(gl.nodes.size());

  std::vector<double> coord(nodes_per_axis), weight(nodes_per_axis);
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      coord[p * gl.nodes.size() + q] = mid + 0.5 * h * gl.nodes[q];
      weight[p * gl.nodes.size() + q] = 0.5 * h * gl.weights[q];
    }
  }

  Eigen::VectorXd eta(d);
  Complex acc{0.0, 0.0};
  std::vector<int> idx(d, 0);
  while (true) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      eta[k] = coord[idx[k]];
      w *= weight[idx[k]];
    }
    const double chi = spec.cutoff(eta);
    if (chi != 0.0) {
      const double ph = spec.lambda * spec.phase(eta);
      acc += w * chi * spec.amplitude(eta) * Complex{std::cos(ph), std::sin(ph)};
    }
    int k = 0;
    for (; k < d; ++k) {
      if (++idx[k] < nodes_per_axis) break;
      idx[k] = 0;
    }
    if (k == d) break;
  }
  return acc;
}

}  // namespace

double lambda_max(int d) {
  switch (d) {
    case 1: return 2e4;
    case 2: return 600.0;
    case 3: return 60.0;
    default: throw std::invalid_argument("quadrature oracle supports d <= 3");
  }
}

OscIntegralResult stationary_phase_leading(const PhaseSpec& spec) {
  if (!spec.stationary_point)
    throw std::invalid_argument("leading term requires a stationary point");
  const Eigen::VectorXd& eta0 = *spec.stationary_point;
  const Eigen::MatrixXd hess = spec.hessian(eta0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
  int s = 0;
  double det = 1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    det *= ev;
    s += ev > 0.0 ? 1 : -1;
  }
  const double delta = std::abs(det);
  if (delta < 1e-12) throw std::runtime_error("degenerate Hessian");

  const int d = spec.dimension;
  const double ph = spec.lambda * spec.phase(eta0);
  OscIntegralResult res;
  res.method = "leading-term";
  res.signature_used = s;
  res.det_used = det;
  res.value = std::pow(2.0 * kPi / spec.lambda, 0.5 * d) *
              std::exp(Complex{0.0, kPi * s / 4.0}) / std::sqrt(delta) *
              std::exp(Complex{0.0, ph}) * spec.amplitude(eta0) *
              spec.cutoff(eta0);
  res.error_estimate = std::pow(spec.lambda, -0.5 * d - 1.0);
  return res;
}

OscIntegralResult oscillatory_quadrature(const PhaseSpec& spec) {
  if (spec.lambda > lambda_max(spec.dimension))
    throw std::invalid_argument("oscillatory_quadrature: lambda exceeds cost guard");
  const int panels = panels_for(std::abs(spec.lambda));
  const Complex coarse = integrate(spec, panels);
  const Complex fine = integrate(spec, panels + (panels + 1) / 2);
  OscIntegralResult res;
  res.method = "quadrature";
  res.value = fine;
  res.error_estimate = std::abs(fine - coarse);
  return res;
}

OrderProbeResult error_order_probe(PhaseSpec spec,
                                   const std::vector<double>& lambda_list) {
  if (lambda_list.size() < 4)
    throw std::invalid_argument("error_order_probe: need >= 4 lambda values");
  OrderProbeResult out;
  for (double lam : lambda_list) {
    spec.lambda = lam;
    const Complex q = oscillatory_quadrature(spec).value;
    double err;
    if (spec.stationary_point) {
      err = std::abs(q - stationary_phase_leading(spec).value);
    } else {
      err = std::abs(q);
    }
    out.lambdas.push_back(lam);
    out.errors.push_back(err);
  }
  // log-log least squares; fitted_order is the decay rate (positive).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t m = out.lambdas.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(out.lambdas[i]);
    const double y = std::log(std::max(out.errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.fitted_order = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

PseudoProductReport pseudo_product_check(
    const std::function<double(const Eigen::VectorXd&)>& symbol,
    const std::vector<SpectralField>& functions,
    const std::vector<double>& exponents) {
  const int d = static_cast<int>(functions.size()) - 1;
  if (d < 1) throw std::invalid_argument("pseudo_product_check: need >= 2 functions");
  if (exponents.size() != functions.size())
    throw std::invalid_argument("pseudo_product_check: exponent count mismatch");
  double holder = 0.0;
  for (double p : exponents) {
    if (p < 1.0) throw std::invalid_argument("pseudo_product_check: p_j >= 1 required");
    holder += std::isinf(p) ? 0.0 : 1.0 / p;
  }
  if (std::abs(holder - 1.0) > 1e-9)
    throw std::invalid_argument("pseudo_product_check: sum 1/p_j must equal 1");

  const Grid1D& grid = functions[0].grid();
  for (const auto& f : functions)
    if (!(f.grid() == grid))
      throw std::invalid_argument("pseudo_product_check: mismatched grids");
  const std::size_t n = grid.count;
  if (std::pow(static_cast<double>(n), d) > 1.6e7)
    throw std::invalid_argument("pseudo_product_check: grid too large for direct sum");

  // LHS: direct sum over the d-dimensional frequency grid. The output
  // frequency -sum(eta) is looked up on the same grid; out-of-band
  // combinations are dropped (the corpus is band-limited).
  const long half = static_cast<long>(n) / 2;
  auto mode_of = [&](std::size_t i) {
    return static_cast<long>(i) < half ? static_cast<long>(i)
                                       : static_cast<long>(i) - static_cast<long>(n);
  };
  std::vector<const ComplexVec*> hats(functions.size());
  for (std::size_t i = 0; i < functions.size(); ++i) hats[i] = &functions[i].fourier();

  Eigen::VectorXd eta(d);
  std::vector<std::size_t> idx(d, 0);
  Complex lhs{0.0, 0.0};
  const double cell = std::pow(grid.dxi(), d);
  while (true) {
    long msum = 0;
    Complex prod{1.0, 0.0};
    for (int k = 0; k < d; ++k) {
      eta[k] = grid.frequencies[idx[k]];
      msum += mode_of(idx[k]);
      prod *= (*hats[k])[idx[k]];
    }
    if (-msum >= -half && -msum < half) {
      const std::size_t last = grid.mode_index(-msum);
      lhs += cell * symbol(eta) * prod * (*hats[d])[last];
    }
    int k = 0;
    for (; k < d; ++k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
    if (k == d) break;
  }

  // A = L1 norm of the inverse transform of the symbol over the d-grid,
  // computed axis by axis with the same convention as SpectralField.
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= n;
  ComplexVec mgrid(total);
  {
    std::vector<std::size_t> id(d, 0);
    Eigen::VectorXd e(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
      for (int k = 0; k < d; ++k) e[k] = grid.frequencies[id[k]];
      mgrid[flat] = symbol(e);
      int k = 0;
      for (; k < d; ++k) {
        if (++id[k] < n) break;
        id[k] = 0;
      }
    }
  }
  // Inverse transform along each axis: scale 1/L and (-1)^i phases.
  std::size_t stride = 1;
  ComplexVec line(n), out_line(n);
  for (int axis = 0; axis < d; ++axis) {
    const std::size_t outer = total / n;
    for (std::size_t o = 0; o < outer; ++o) {
      // Decompose the flat index so that `axis` varies with `stride`.
      const std::size_t block = o / stride;
      const std::size_t rem = o % stride;
      const std::size_t base = block * stride * n + rem;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex v = mgrid[base + i * stride];
        line[i] = (i & 1) ? -v : v;
      }
      fft::backward(line, out_line);
      for (std::size_t i = 0; i < n; ++i)
        mgrid[base + i * stride] = out_line[i] / grid.length;
    }
    stride *= n;
  }
  double a_norm = 0.0;
  for (const auto& v : mgrid) a_norm += std::abs(v);
  a_norm *= std::pow(grid.dx(), d);

  PseudoProductReport rep;
  rep.lhs = std::abs(lhs);
  rep.symbol_l1 = a_norm;
  rep.norm_product = 1.0;
  for (std::size_t i = 0; i < functions.size(); ++i)
    rep.norm_product *= lp_norm(functions[i], exponents[i]);
  const double denom = rep.symbol_l1 * rep.norm_product;
  rep.ratio = denom > 0.0 ? rep.lhs / denom : 0.0;
  return rep;
}

}  // namespace hokdv::oscillatory
