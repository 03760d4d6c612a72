#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sprobe::fft {

// Real-to-complex forward transform (one-sided, length n/2+1) and its
// inverse. Backed by FFTW with cached plans; both are safe to call from
// multiple threads on distinct buffers. The inverse includes the 1/n scale.
void rfft(const double* in, std::size_t n, std::complex<double>* out);
void irfft(const std::complex<double>* in, std::size_t n, double* out);

std::vector<std::complex<double>> rfft(const std::vector<double>& x);
std::vector<double> irfft(const std::vector<std::complex<double>>& spec,
                          std::size_t n);

// Linear convolution via FFT, output length a.size()+b.size()-1.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

}  // namespace sprobe::fft
