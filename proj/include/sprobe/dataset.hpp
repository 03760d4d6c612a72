#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sprobe/rng.hpp"
#include "sprobe/scene.hpp"

namespace sprobe {

// Source of dry mono speech signals keyed by speaker id. load() must be
// deterministic in (speaker_id, rng state).
class Corpus {
 public:
  virtual ~Corpus() = default;
  virtual std::vector<std::string> speakers() const = 0;
  virtual std::vector<double> load(const std::string& speaker_id,
                                   double duration, int sample_rate,
                                   Rng& rng) const = 0;
};

// Directory of mono 16 kHz WAV files; the file stem is the speaker id.
// Longer files are cropped at a random offset, shorter ones are tiled.
class DirectoryCorpus : public Corpus {
 public:
  explicit DirectoryCorpus(const std::string& dir);
  std::vector<std::string> speakers() const override;
  std::vector<double> load(const std::string& speaker_id, double duration,
                           int sample_rate, Rng& rng) const override;

 private:
  std::string dir_;
  std::vector<std::string> ids_;
};

// Deterministic synthetic speakers ("synth-000", ...). Each speaker id maps
// to a fixed timbre seed; per-sequence variation comes from the caller rng.
class SyntheticCorpus : public Corpus {
 public:
  explicit SyntheticCorpus(int num_speakers = 40);
  std::vector<std::string> speakers() const override;
  std::vector<double> load(const std::string& speaker_id, double duration,
                           int sample_rate, Rng& rng) const override;

 private:
  int num_speakers_;
};

struct ManifestEntry {
  std::string scenario_file;
  std::string mixture_file;
  std::vector<std::string> image_files;  // per source
  std::string target_file;
  std::vector<int> activity;  // per frame: 0 pause, 1..Q source
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

struct DatasetManifest {
  int version = 1;
  DatasetKind kind = DatasetKind::DST_clean;
  std::uint64_t global_seed = 0;
  int frame_len = 1024;
  int hop = 512;
  int sample_rate = 16000;
  double duration = 7.0;
  std::vector<double> snr_grid;  // WGN kinds only
  std::vector<ManifestEntry> entries;
};

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);
void save_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest load_manifest(const std::string& path);

struct BuildConfig {
  SamplerConfig sampler;
  int frame_len = 1024;
  int hop = 512;
  // Test grid: the -10..50 list with a 5 dB step has 13 points; the test
  // grid default is the 8-point list used for reporting.
  std::vector<double> test_snr_grid{-10, -5, 0, 5, 10, 20, 30, 50};
  std::vector<double> train_snr_grid{-10, -5, 0,  5,  10, 15, 20,
                                     25,  30, 35, 40, 45, 50};
};

// Renders `count` scenarios into out_dir and writes manifest.json there.
// Test WGN kinds produce count * |grid| entries (one rendered scene per
// sequence, re-noised per SNR); the training WGN kind cycles the grid so the
// entry count stays equal to `count`.
DatasetManifest build_dataset(DatasetKind kind, int count, Rng rng,
                              const Corpus& corpus, const BuildConfig& config,
                              const std::string& out_dir);

}  // namespace sprobe
