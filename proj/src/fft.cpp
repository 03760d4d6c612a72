#include "sprobe/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "sprobe/errors.hpp"

namespace sprobe::fft {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per transform size with FFTW_UNALIGNED so they
// can run on arbitrary caller buffers.
struct PlanCache {
  std::mutex mtx;
  std::map<std::size_t, fftw_plan> fwd;
  std::map<std::size_t, fftw_plan> inv;

  fftw_plan get(std::size_t n, bool forward) {
    std::lock_guard<std::mutex> lock(mtx);
    auto& table = forward ? fwd : inv;
    auto it = table.find(n);
    if (it != table.end()) return it->second;
    std::vector<double> re(n);
    std::vector<fftw_complex> cx(n / 2 + 1);
    fftw_plan p = forward
                      ? fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(),
                                             cx.data(),
                                             FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_c2r_1d(static_cast<int>(n), cx.data(),
                                             re.data(),
                                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericError("FFTW plan creation failed");
    table.emplace(n, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

void rfft(const double* in, std::size_t n, std::complex<double>* out) {
  fftw_plan p = cache().get(n, true);
  // r2c keeps its input intact, but the API wants a non-const pointer.
  fftw_execute_dft_r2c(p, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void irfft(const std::complex<double>* in, std::size_t n, double* out) {
  fftw_plan p = cache().get(n, false);
  // c2r destroys its input; run on a scratch copy.
  std::vector<std::complex<double>> scratch(in, in + n / 2 + 1);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  std::vector<std::complex<double>> out(x.size() / 2 + 1);
  rfft(x.data(), x.size(), out.data());
  return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec,
                          std::size_t n) {
  std::vector<double> out(n);
  irfft(spec.data(), n, out.data());
  return out;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::memcpy(pa.data(), a.data(), a.size() * sizeof(double));
  std::memcpy(pb.data(), b.data(), b.size() * sizeof(double));
  auto sa = rfft(pa);
  auto sb = rfft(pb);
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] *= sb[i];
  auto full = irfft(sa, n);
  full.resize(out_len);
  return full;
}

}  // namespace sprobe::fft
