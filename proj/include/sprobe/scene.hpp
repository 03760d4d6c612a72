#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sprobe/parallel.hpp"
#include "sprobe/rng.hpp"
#include "sprobe/wave.hpp"

namespace sprobe {

using Vec3 = std::array<double, 3>;

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
double norm(const Vec3& a);

struct RoomSpec {
  Vec3 dimensions{6.0, 6.0, 2.5};  // meters
  double rt60 = 0.3;               // seconds
  double speed_of_sound = 343.0;   // m/s
};

// Uniform linear array in the horizontal plane. Microphone 1 sits on the
// endfire side the DoA is measured from: a source at 0 degrees lies in the
// `orientation` direction and is closest to microphone 1.
struct ArraySpec {
  int num_mics = 3;
  double spacing = 0.04;            // meters
  Vec3 center{3.0, 3.0, 1.2};
  Vec3 orientation{1.0, 0.0, 0.0};  // unit vector, horizontal
};

std::vector<Vec3> mic_positions(const ArraySpec& array);

struct SourceSpec {
  Vec3 position{0, 0, 0};
  double doa_deg = 90.0;  // [0, 180], from endfire
  std::string speaker_id;
};

struct Segment {
  int source = 0;  // index into ScenarioSpec::sources
  double start = 0.0;
  double end = 0.0;  // seconds
};

enum class DatasetKind { DS_clean, DS_WGN, DST_clean, DST_WGN, DST_1Pos, DST_1Spk };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& name);

// Full description of one acoustic scene. snr_db empty means "clean".
struct ScenarioSpec {
  RoomSpec room;
  ArraySpec array;
  std::vector<SourceSpec> sources;
  std::vector<Segment> schedule;
  std::vector<double> switch_times;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
  double duration = 7.0;
  int sample_rate = 16000;
  DatasetKind kind = DatasetKind::DST_clean;

  std::size_t num_samples() const {
    return static_cast<std::size_t>(duration * sample_rate + 0.5);
  }
};

std::string scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const std::string& text);

struct SamplerConfig {
  Vec3 room_min{4.0, 4.0, 1.0};
  Vec3 room_max{8.0, 8.0, 4.0};
  double rt60_min = 0.2;
  double rt60_max = 0.5;
  int num_mics = 3;
  double mic_spacing = 0.04;
  double min_doa_separation_deg = 20.0;
  double min_clearance = 0.3;        // source to walls and to the array
  double source_dist_min = 0.5;
  double source_dist_max = 3.0;
  // Switch-time windows as fractions of the duration; at the paper scale
  // (7 s) these give [1,3] s and [5,6] s.
  double switch1_frac_lo = 1.0 / 7.0, switch1_frac_hi = 3.0 / 7.0;
  double switch2_frac_lo = 5.0 / 7.0, switch2_frac_hi = 6.0 / 7.0;
  // Single-switch window for the one-speaker/two-position layout.
  double single_switch_frac_lo = 0.3, single_switch_frac_hi = 0.7;
  double duration = 7.0;
  int sample_rate = 16000;
  std::vector<std::string> speaker_ids;
  int max_attempts = 1000;
};

ScenarioSpec sample_scenario(DatasetKind kind, Rng& rng,
                             const SamplerConfig& config);

// Throws DataError naming the first violated ScenarioSpec invariant.
void validate_scenario(const ScenarioSpec& spec, const SamplerConfig& config);

// Wall absorption models for synth_rir. Eyring is the default: with a
// frequency-independent coefficient on all walls the measured decay of an
// image-source response follows Eyring's relation, so inverting it
// reproduces the requested rt60 (Sabine inversion yields up to ~50% shorter
// decay for large absorption).
enum class AbsorptionModel { Eyring, Sabine };

struct RirOptions {
  AbsorptionModel absorption = AbsorptionModel::Eyring;
  // Images arriving later than direct + tail_factor*rt60 carry less than
  // 1e-4 of the total energy and are skipped.
  double tail_factor = 0.70;
  int window_half_width = 40;  // 81-tap Hann-windowed sinc
};

// Image-source room impulse response; direct path has amplitude
// 1/distance and arrives at distance/c.
std::vector<double> synth_rir(const RoomSpec& room, const Vec3& src,
                              const Vec3& mic, int fs,
                              const RirOptions& opts = {},
                              exec::Policy policy = exec::default_policy());

struct RenderResult {
  MultichannelWave mixture;                 // without noise
  std::vector<MultichannelWave> images;     // per source
  std::vector<int> activity;                // per frame: 0 pause, 1..Q source
};

// Gates each dry signal by its scheduled segments, convolves with the room
// responses and sums. Frame labels use the combined gated dry signal with a
// -40 dB pause threshold relative to the loudest frame.
RenderResult render_scene(const ScenarioSpec& spec,
                          const std::vector<std::vector<double>>& dry,
                          int frame_len, int hop);

// Adds independent white Gaussian noise per channel at the requested SNR
// (mean signal power across channels over noise power per channel).
// An empty snr means clean: the input is returned unchanged.
MultichannelWave mix_noise(const MultichannelWave& wave,
                           std::optional<double> snr_db, Rng& rng);

struct SpeechlikeParts {
  std::vector<double> harmonic;
  std::vector<double> noise;
  std::vector<double> total;  // peak-normalized sum
};

// Synthetic speech-like signal: resonator-filtered pulse train with a
// drifting fundamental plus shaped noise, amplitude-modulated with pauses.
SpeechlikeParts synth_speechlike_parts(double duration, Rng& rng,
                                       int fs = 16000);
std::vector<double> synth_speechlike(double duration, Rng& rng, int fs = 16000);

}  // namespace sprobe
