#include "sprobe/beamform.hpp"

#include <cmath>

#include "sprobe/errors.hpp"

namespace sprobe {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SteeringVector steering_vector(double doa_deg, int num_mics, double spacing,
                               int bins, int frame_len, int sample_rate,
                               double speed_of_sound) {
  if (doa_deg < 0.0 || doa_deg > 180.0)
    throw DataError("steering DoA outside [0,180]");
  SteeringVector sv;
  sv.doa_deg = doa_deg;
  sv.num_mics = num_mics;
  sv.bins = bins;
  sv.phasors.resize(static_cast<std::size_t>(num_mics) * bins);
  const double cos_theta = std::cos(doa_deg * kPi / 180.0);
  for (int m = 0; m < num_mics; ++m) {
    const double tau = m * spacing * cos_theta / speed_of_sound;
    for (int f = 0; f < bins; ++f) {
      const double freq = static_cast<double>(f) * sample_rate / frame_len;
      const double phase = -2.0 * kPi * freq * tau;
      sv.phasors[static_cast<std::size_t>(m) * bins + f] =
          std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return sv;
}

SpectralTensor dsb(const SpectralTensor& tensor, double doa_deg,
                   double spacing, double speed_of_sound) {
  const int M = tensor.channels;
  if (M < 1) throw DataError("dsb: empty tensor");
  const SteeringVector sv =
      steering_vector(doa_deg, M, spacing, tensor.bins, tensor.frame_len,
                      tensor.sample_rate, speed_of_sound);
  SpectralTensor out(1, tensor.frames, tensor.frame_len, tensor.hop,
                     tensor.sample_rate);
  const double inv_m = 1.0 / M;
  exec::for_blocks(tensor.frames, 32, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      std::complex<double>* dst = out.frame(0, static_cast<int>(t));
      for (int f = 0; f < tensor.bins; ++f) {
        std::complex<double> acc{0.0, 0.0};
        for (int m = 0; m < M; ++m)
          acc += std::conj(sv.at(m, f)) * tensor.at(m, static_cast<int>(t), f);
        dst[f] = inv_m * acc;
      }
    }
  });
  return out;
}

std::vector<double> make_target(const ScenarioSpec& spec,
                                const std::vector<MultichannelWave>& images,
                                int frame_len, int hop) {
  if (images.size() != spec.sources.size())
    throw DataError("make_target: missing image for a scheduled source");
  const std::size_t n = spec.num_samples();
  std::vector<double> target(n, 0.0);
  for (std::size_t q = 0; q < images.size(); ++q) {
    const SpectralTensor spec_q = stft(images[q], frame_len, hop);
    const SpectralTensor beamformed =
        dsb(spec_q, spec.sources[q].doa_deg, spec.array.spacing,
            spec.room.speed_of_sound);
    const MultichannelWave wave = istft(beamformed, n);
    for (std::size_t i = 0; i < n; ++i) target[i] += wave.samples[0][i];
  }
  return target;
}

}  // namespace sprobe
