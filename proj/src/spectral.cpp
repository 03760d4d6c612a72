#include "sprobe/spectral.hpp"

#include <cmath>

#include "sprobe/errors.hpp"
#include "sprobe/fft.hpp"

namespace sprobe {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Periodic square-root Hann. Squares sum to one at 50% overlap.
std::vector<double> sqrt_hann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = std::sqrt(0.5 * (1.0 - std::cos(2.0 * kPi * i / n)));
  return w;
}

void check_framing(int frame_len, int hop) {
  if (frame_len <= 0 || hop <= 0 || hop * 2 != frame_len)
    throw DataError("invalid framing: hop must equal frame_len/2");
}

}  // namespace

int stft_frame_count(std::size_t signal_len, int hop) {
  return static_cast<int>((signal_len + hop - 1) / hop) + 1;
}

SpectralTensor stft(const MultichannelWave& wave, int frame_len, int hop,
                    exec::Policy policy) {
  check_framing(frame_len, hop);
  wave.check_rectangular();
  if (wave.length() < static_cast<std::size_t>(frame_len))
    throw DataError("wave shorter than one frame");

  const int channels = wave.channels();
  const std::size_t len = wave.length();
  const int nframes = stft_frame_count(len, hop);
  SpectralTensor out(channels, nframes, frame_len, hop, wave.sample_rate);
  const std::vector<double> window = sqrt_hann(frame_len);

  // Frame t covers signal samples [(t-1)*hop, (t-1)*hop + frame_len).
  exec::for_blocks(
      static_cast<std::size_t>(channels) * nframes, 16, policy,
      [&](std::size_t lo, std::size_t hi) {
        std::vector<double> buf(frame_len);
        for (std::size_t w = lo; w < hi; ++w) {
          const int m = static_cast<int>(w / nframes);
          const int t = static_cast<int>(w % nframes);
          const long long start = static_cast<long long>(t) * hop - hop;
          const auto& x = wave.samples[m];
          for (int i = 0; i < frame_len; ++i) {
            const long long s = start + i;
            const double v =
                (s >= 0 && s < static_cast<long long>(len)) ? x[s] : 0.0;
            buf[i] = v * window[i];
          }
          fft::rfft(buf.data(), frame_len, out.frame(m, t));
        }
      });
  return out;
}

MultichannelWave istft(const SpectralTensor& tensor, std::size_t signal_len,
                       exec::Policy policy) {
  check_framing(tensor.frame_len, tensor.hop);
  const int channels = tensor.channels;
  const int nframes = tensor.frames;
  const int frame_len = tensor.frame_len;
  const int hop = tensor.hop;
  if (nframes < stft_frame_count(signal_len, hop))
    throw DataError("tensor has too few frames for requested length");

  const std::vector<double> window = sqrt_hann(frame_len);
  MultichannelWave out(channels, signal_len, tensor.sample_rate);

  for (int m = 0; m < channels; ++m) {
    // Per-frame synthesis first (independent), then overlap-add over
    // disjoint hop-sized output blocks; each block receives exactly the
    // two frames that cover it, so the result does not depend on the
    // thread count.
    std::vector<double> synth(static_cast<std::size_t>(nframes) * frame_len);
    exec::for_blocks(nframes, 16, policy, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t t = lo; t < hi; ++t) {
        double* dst = synth.data() + t * frame_len;
        fft::irfft(tensor.frame(m, static_cast<int>(t)), frame_len, dst);
        for (int i = 0; i < frame_len; ++i) dst[i] *= window[i];
      }
    });

    double* y = out.samples[m].data();
    const std::size_t nblocks = (signal_len + hop - 1) / hop;
    exec::for_blocks(nblocks, 8, policy, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t b = lo; b < hi; ++b) {
        const std::size_t block_start = b * hop;  // in signal coordinates
        const std::size_t block_end =
            std::min(block_start + hop, signal_len);
        // Signal sample s sits in padded coordinates at s + hop and is
        // covered by frames t = b and t = b+1.
        for (std::size_t s = block_start; s < block_end; ++s) {
          const std::size_t padded = s + hop;
          double acc = 0.0;
          const int t0 = static_cast<int>(b);
          const int t1 = t0 + 1;
          if (t0 < nframes)
            acc += synth[static_cast<std::size_t>(t0) * frame_len +
                         (padded - static_cast<std::size_t>(t0) * hop)];
          if (t1 < nframes)
            acc += synth[static_cast<std::size_t>(t1) * frame_len +
                         (padded - static_cast<std::size_t>(t1) * hop)];
          y[s] = acc;
        }
      }
    });
  }
  return out;
}

std::vector<double> frame_energies(const std::vector<double>& x, int frame_len,
                                   int hop) {
  check_framing(frame_len, hop);
  const int nframes = stft_frame_count(x.size(), hop);
  std::vector<double> energy(nframes, 0.0);
  for (int t = 0; t < nframes; ++t) {
    const long long start = static_cast<long long>(t) * hop - hop;
    double e = 0.0;
    for (int i = 0; i < frame_len; ++i) {
      const long long s = start + i;
      if (s >= 0 && s < static_cast<long long>(x.size())) e += x[s] * x[s];
    }
    energy[t] = e;
  }
  return energy;
}

}  // namespace sprobe
