#include "hokdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace hokdv::fft {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

// Plans are created once per size with FFTW_UNALIGNED so they can be
// executed on any buffer via fftw_execute_dft (which is thread-safe).
const PlanPair& plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
  if (in.empty()) throw std::invalid_argument("fft: empty input");
  out.resize(in.size());
  if (out.data() != in.data()) out = in;
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
  execute(plans_for(in.size()).fwd, in, out);
}

void backward(const std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out) {
  execute(plans_for(in.size()).bwd, in, out);
}

}  // namespace hokdv::fft
