#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sprobe/parallel.hpp"
#include "sprobe/wave.hpp"

namespace sprobe {

// One-sided complex STFT, indexed (channel, frame, bin). Half-overlapping
// square-root Hann frames on both analysis and synthesis, so a round trip
// reconstructs the signal exactly (up to floating point).
struct SpectralTensor {
  int channels = 0;
  int frames = 0;
  int bins = 0;  // frame_len/2 + 1
  int frame_len = 1024;
  int hop = 512;
  int sample_rate = 16000;
  std::vector<std::complex<double>> data;  // [channel][frame][bin]

  SpectralTensor() = default;
  SpectralTensor(int m, int t, int frame_length, int hop_length, int fs)
      : channels(m),
        frames(t),
        bins(frame_length / 2 + 1),
        frame_len(frame_length),
        hop(hop_length),
        sample_rate(fs),
        data(static_cast<std::size_t>(m) * t * (frame_length / 2 + 1)) {}

  std::complex<double>& at(int m, int t, int f) {
    return data[(static_cast<std::size_t>(m) * frames + t) * bins + f];
  }
  const std::complex<double>& at(int m, int t, int f) const {
    return data[(static_cast<std::size_t>(m) * frames + t) * bins + f];
  }

  // Contiguous spectrum of one frame.
  std::complex<double>* frame(int m, int t) {
    return data.data() + (static_cast<std::size_t>(m) * frames + t) * bins;
  }
  const std::complex<double>* frame(int m, int t) const {
    return data.data() + (static_cast<std::size_t>(m) * frames + t) * bins;
  }
};

// Number of frames produced for a signal of the given length: the signal is
// zero-padded with hop samples at the front and enough at the back so every
// sample is covered by exactly two frames.
int stft_frame_count(std::size_t signal_len, int hop);

SpectralTensor stft(const MultichannelWave& wave, int frame_len = 1024,
                    int hop = 512,
                    exec::Policy policy = exec::default_policy());

// Inverse with overlap-add; returns signal_len samples (the length the
// tensor was produced from, which the caller supplies).
MultichannelWave istft(const SpectralTensor& tensor, std::size_t signal_len,
                       exec::Policy policy = exec::default_policy());

// Per-frame energy of a mono wave under the same framing as stft():
// sum of squares over each frame's span. Used for pause labeling.
std::vector<double> frame_energies(const std::vector<double>& x, int frame_len,
                                   int hop);

}  // namespace sprobe
