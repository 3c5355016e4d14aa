#include "hokdv/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hokdv::resonance {
namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

double last_input(const PhaseH& h, const Eigen::VectorXd& inputs) {
  return h.output_xi - inputs.sum();
}

}  // namespace

double PhaseH::operator()(const Eigen::VectorXd& inputs) const {
  if (inputs.size() != p - 1) throw std::invalid_argument("phase: bad dimension");
  double v = ipow(output_xi, n);
  for (int a = 0; a < p - 1; ++a) v -= ipow(inputs[a], n);
  v -= ipow(last_input(*this, inputs), n);
  return v;
}

Eigen::VectorXd PhaseH::gradient(const Eigen::VectorXd& inputs) const {
  if (inputs.size() != p - 1) throw std::invalid_argument("phase: bad dimension");
  const double xp = last_input(*this, inputs);
  Eigen::VectorXd g(p - 1);
  for (int a = 0; a < p - 1; ++a)
    g[a] = -n * ipow(inputs[a], n - 1) + n * ipow(xp, n - 1);
  return g;
}

Eigen::MatrixXd PhaseH::hessian(const Eigen::VectorXd& inputs) const {
  if (inputs.size() != p - 1) throw std::invalid_argument("phase: bad dimension");
  const double xp = last_input(*this, inputs);
  const double c = -static_cast<double>(n) * (n - 1);
  const double off = c * ipow(xp, n - 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(p - 1, p - 1, off);
  for (int a = 0; a < p - 1; ++a) m(a, a) += c * ipow(inputs[a], n - 2);
  return m;
}

std::vector<StationaryPoint> stationary_points(int n, int p, double xi) {
  if (xi == 0.0) throw std::invalid_argument("stationary_points: xi must be nonzero");
  std::vector<StationaryPoint> pts;
  for (int j = 0; j <= p - 1; ++j) {
    const int denom = p - 2 * j - 2;
    if (denom == 0) continue;  // no stationary point at j = (p-2)/2
    StationaryPoint sp;
    sp.j = j;
    sp.xi_jp = xi / denom;
    sp.coords.resize(p - 1);
    for (int a = 0; a < p - 1; ++a) sp.coords[a] = a < j ? -sp.xi_jp : sp.xi_jp;
    sp.multiplicity = binomial(p - 1, j);
    pts.push_back(std::move(sp));
  }
  return pts;
}

double coefficient_dj(int n, int p, int j) {
  const int denom = p - 2 * j - 2;
  if (j < 0 || j > p - 1 || denom == 0)
    throw std::invalid_argument("coefficient_dj: invalid j");
  return 1.0 - 1.0 / ipow(static_cast<double>(denom), n - 1);
}

double phase_at(int n, int p, int j, double xi) {
  return coefficient_dj(n, p, j) * ipow(xi, n);
}

Eigen::MatrixXd hessian_at(int n, int p, double xi, const Eigen::VectorXd& point) {
  if (point.size() != p - 1)
    throw std::invalid_argument("hessian_at: point must have p-1 coordinates");
  return PhaseH{n, p, xi}.hessian(point);
}

Eigen::MatrixXd closed_form_hessian(int n, int p, int j, double xi) {
  if (p % 2 == 0 || (j != (p - 1) / 2 && j != (p - 3) / 2))
    throw std::invalid_argument("closed_form_hessian: j must be resonant, p odd");
  const double scale = static_cast<double>(n) * (n - 1) * ipow(xi, n - 2);
  const int dim = p - 1;
  // j = (p-1)/2: M1 = -n(n-1)xi^{n-2} [diag 2 x (p-1)/2, then 0; off-diag 1]
  // j = (p-3)/2: M2 = +n(n-1)xi^{n-2} [diag 2 x (p-3)/2, then 0; off-diag 1]
  const bool m1 = j == (p - 1) / 2;
  const int twos = m1 ? (p - 1) / 2 : (p - 3) / 2;
  const double sign = m1 ? -1.0 : 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim, dim, sign * scale);
  for (int a = 0; a < dim; ++a) m(a, a) = a < twos ? 2.0 * sign * scale : 0.0;
  return m;
}

int signature(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("signature: not square");
  if (!m.isApprox(m.transpose(), 1e-12))
    throw std::invalid_argument("signature: not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double norm = m.norm();
  int sig = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    if (std::abs(ev) <= 1e-9 * norm)
      throw std::runtime_error("signature: near-singular matrix");
    sig += ev > 0.0 ? 1 : -1;
  }
  return sig;
}

M1SpectrumReport m1_spectrum_check(int p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("m1_spectrum_check: p must be odd, >= 3");
  const int dim = p - 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim, dim, 1.0);
  for (int a = 0; a < dim; ++a) m(a, a) = a < (p - 1) / 2 ? 2.0 : 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  M1SpectrumReport rep;
  rep.p = p;
  rep.computed.assign(es.eigenvalues().data(),
                      es.eigenvalues().data() + es.eigenvalues().size());

  const double disc = std::sqrt(static_cast<double>(p - 1) * (p - 1) + 4.0);
  for (int i = 0; i < (p - 3) / 2; ++i) rep.expected.push_back(-1.0);
  for (int i = 0; i < (p - 3) / 2; ++i) rep.expected.push_back(1.0);
  rep.expected.push_back(0.5 * ((p - 1) - disc));
  rep.expected.push_back(0.5 * ((p - 1) + disc));

  std::sort(rep.computed.begin(), rep.computed.end());
  std::sort(rep.expected.begin(), rep.expected.end());
  rep.max_abs_error = 0.0;
  for (std::size_t i = 0; i < rep.computed.size(); ++i)
    rep.max_abs_error =
        std::max(rep.max_abs_error, std::abs(rep.computed[i] - rep.expected[i]));
  return rep;
}

ResonanceReport classify(int n, int p, double xi) {
  ResonanceReport rep;
  rep.n = n;
  rep.p = p;
  rep.xi = xi;
  for (auto& sp : stationary_points(n, p, xi)) {
    StationaryFamily fam;
    fam.d_j = coefficient_dj(n, p, sp.j);
    fam.phase_value = phase_at(n, p, sp.j, xi);
    fam.time_resonant = std::abs(p - 2 * sp.j - 2) == 1;
    fam.hessian = hessian_at(n, p, xi, sp.coords);
    fam.signature = signature(fam.hessian);
    fam.determinant = fam.hessian.determinant();
    fam.point = std::move(sp);
    if (fam.time_resonant) rep.space_time_resonant.push_back(fam.point.j);
    rep.families.push_back(std::move(fam));
  }
  return rep;
}

std::string ResonanceReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"n\":" << n << ",\"p\":" << p << ",\"xi\":" << xi << ",\"families\":[";
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    if (i) os << ",";
    os << "{\"j\":" << f.point.j << ",\"xi_jp\":" << f.point.xi_jp
       << ",\"multiplicity\":" << f.point.multiplicity << ",\"d_j\":" << f.d_j
       << ",\"phase\":" << f.phase_value
       << ",\"time_resonant\":" << (f.time_resonant ? "true" : "false")
       << ",\"signature\":" << f.signature
       << ",\"determinant\":" << f.determinant << "}";
  }
  os << "],\"space_time_resonant\":[";
  for (std::size_t i = 0; i < space_time_resonant.size(); ++i)
    os << (i ? "," : "") << space_time_resonant[i];
  os << "]}";
  return os.str();
}

std::string ResonanceReport::to_table() const {
  std::ostringstream os;
  os << "resonance structure for n=" << n << " p=" << p << " xi=" << xi << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%4s %14s %8s %18s %10s %5s\n", "j", "xi_jp",
                "mult", "d_j", "resonant", "sig");
  os << line;
  for (const auto& f : families) {
    std::snprintf(line, sizeof line, "%4d %14.6g %8.0f %18.12g %10s %5d\n",
                  f.point.j, f.point.xi_jp, f.point.multiplicity, f.d_j,
                  f.time_resonant ? "yes" : "no", f.signature);
    os << line;
  }
  return os.str();
}

}  // namespace hokdv::resonance
