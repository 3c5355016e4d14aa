#pragma once

#include <complex>
#include <vector>

namespace hokdv::fft {

// Unnormalized DFT: out[m] = sum_k in[k] exp(-2*pi*i*k*m/N).
void forward(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out);

// Unnormalized inverse DFT: out[k] = sum_m in[m] exp(+2*pi*i*k*m/N).
void backward(const std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out);

}  // namespace hokdv::fft
