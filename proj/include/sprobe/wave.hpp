#pragma once

#include <cstddef>
#include <vector>

#include "sprobe/errors.hpp"

namespace sprobe {

// Time-domain multichannel signal, one vector per channel, equal lengths.
struct MultichannelWave {
  std::vector<std::vector<double>> samples;  // [channel][sample]
  int sample_rate = 16000;

  MultichannelWave() = default;
  MultichannelWave(int channels, std::size_t length, int fs)
      : samples(channels, std::vector<double>(length, 0.0)), sample_rate(fs) {}

  int channels() const { return static_cast<int>(samples.size()); }
  std::size_t length() const { return samples.empty() ? 0 : samples[0].size(); }

  void check_rectangular() const {
    for (const auto& ch : samples)
      if (ch.size() != length())
        throw DataError("wave channels have unequal lengths");
  }
};

// Mono convenience alias: channel 0 of a 1-channel wave.
inline MultichannelWave mono_wave(std::vector<double> x, int fs) {
  MultichannelWave w;
  w.samples.push_back(std::move(x));
  w.sample_rate = fs;
  return w;
}

}  // namespace sprobe
