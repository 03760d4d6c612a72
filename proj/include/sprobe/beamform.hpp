#pragma once

#include <complex>
#include <vector>

#include "sprobe/scene.hpp"
#include "sprobe/spectral.hpp"

namespace sprobe {

// Far-field steering phasors for a uniform linear array, reference
// microphone 1: element m carries phase -2*pi*f*(m-1)*d*cos(theta)/c.
struct SteeringVector {
  double doa_deg = 0.0;
  int num_mics = 0;
  int bins = 0;
  std::vector<std::complex<double>> phasors;  // [mic][bin]

  const std::complex<double>& at(int m, int f) const {
    return phasors[static_cast<std::size_t>(m) * bins + f];
  }
};

SteeringVector steering_vector(double doa_deg, int num_mics, double spacing,
                               int bins, int frame_len, int sample_rate,
                               double speed_of_sound = 343.0);

// Delay-and-sum: out(t,f) = (1/M) * sum_m conj(steer_m(f)) * X_m(t,f).
// A plane wave from the steered DoA passes with unit gain.
SpectralTensor dsb(const SpectralTensor& tensor, double doa_deg,
                   double spacing, double speed_of_sound = 343.0);

// Training target: per source, beamform its image toward the source DoA and
// resynthesize; the per-source outputs are summed into one mono wave.
std::vector<double> make_target(const ScenarioSpec& spec,
                                const std::vector<MultichannelWave>& images,
                                int frame_len, int hop);

}  // namespace sprobe
