#include "sprobe/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sprobe/beamform.hpp"
#include "sprobe/errors.hpp"
#include "sprobe/wav.hpp"

namespace sprobe {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Corpora

DirectoryCorpus::DirectoryCorpus(const std::string& dir) : dir_(dir) {
  if (!fs::is_directory(dir)) throw DataError("corpus directory missing: " + dir);
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".wav") ids_.push_back(e.path().stem().string());
  }
  std::sort(ids_.begin(), ids_.end());
  if (ids_.empty()) throw DataError("corpus directory has no .wav files: " + dir);
}

std::vector<std::string> DirectoryCorpus::speakers() const { return ids_; }

std::vector<double> DirectoryCorpus::load(const std::string& speaker_id,
                                          double duration, int sample_rate,
                                          Rng& rng) const {
  const std::string path = dir_ + "/" + speaker_id + ".wav";
  MultichannelWave w = read_wav(path);
  if (w.sample_rate != sample_rate)
    throw DataError("corpus file has wrong sample rate: " + path);
  const std::size_t need = static_cast<std::size_t>(duration * sample_rate + 0.5);
  const std::vector<double>& x = w.samples[0];
  std::vector<double> out(need);
  if (x.size() >= need) {
    const std::size_t offset =
        x.size() == need ? 0 : rng.uniform_index(x.size() - need);
    std::copy(x.begin() + offset, x.begin() + offset + need, out.begin());
  } else {
    for (std::size_t i = 0; i < need; ++i) out[i] = x[i % x.size()];
  }
  return out;
}

SyntheticCorpus::SyntheticCorpus(int num_speakers) : num_speakers_(num_speakers) {}

std::vector<std::string> SyntheticCorpus::speakers() const {
  std::vector<std::string> ids(num_speakers_);
  for (int i = 0; i < num_speakers_; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "synth-%03d", i);
    ids[i] = buf;
  }
  return ids;
}

std::vector<double> SyntheticCorpus::load(const std::string& speaker_id,
                                          double duration, int sample_rate,
                                          Rng& rng) const {
  // Blend the timbre seed (per speaker) with the sequence stream so the
  // same speaker varies across sequences but reproducibly.
  Rng blended = rng.child(speaker_id);
  return synth_speechlike(duration, blended, sample_rate);
}

// ---------------------------------------------------------------------------
// Manifest serialization

std::string manifest_to_json(const DatasetManifest& m) {
  json j;
  j["version"] = m.version;
  j["kind"] = to_string(m.kind);
  j["global_seed"] = m.global_seed;
  j["frame_len"] = m.frame_len;
  j["hop"] = m.hop;
  j["sample_rate"] = m.sample_rate;
  j["duration"] = m.duration;
  j["snr_grid"] = m.snr_grid;
  j["entries"] = json::array();
  for (const auto& e : m.entries) {
    json je;
    je["scenario"] = e.scenario_file;
    je["mixture"] = e.mixture_file;
    je["images"] = e.image_files;
    je["target"] = e.target_file;
    je["activity"] = e.activity;
    if (e.snr_db)
      je["snr_db"] = *e.snr_db;
    else
      je["snr_db"] = "clean";
    je["seed"] = e.seed;
    j["entries"].push_back(std::move(je));
  }
  return j.dump(1);
}

DatasetManifest manifest_from_json(const std::string& text) {
  json j = json::parse(text);
  DatasetManifest m;
  m.version = j.at("version").get<int>();
  m.kind = dataset_kind_from_string(j.at("kind").get<std::string>());
  m.global_seed = j.at("global_seed").get<std::uint64_t>();
  m.frame_len = j.at("frame_len").get<int>();
  m.hop = j.at("hop").get<int>();
  m.sample_rate = j.at("sample_rate").get<int>();
  m.duration = j.at("duration").get<double>();
  m.snr_grid = j.at("snr_grid").get<std::vector<double>>();
  for (const auto& je : j.at("entries")) {
    ManifestEntry e;
    e.scenario_file = je.at("scenario").get<std::string>();
    e.mixture_file = je.at("mixture").get<std::string>();
    e.image_files = je.at("images").get<std::vector<std::string>>();
    e.target_file = je.at("target").get<std::string>();
    e.activity = je.at("activity").get<std::vector<int>>();
    if (je.at("snr_db").is_string())
      e.snr_db = std::nullopt;
    else
      e.snr_db = je.at("snr_db").get<double>();
    e.seed = je.at("seed").get<std::uint64_t>();
    m.entries.push_back(std::move(e));
  }
  return m;
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw DataError("cannot write manifest: " + path);
  f << manifest_to_json(m) << "\n";
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read manifest: " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return manifest_from_json(text);
}

// ---------------------------------------------------------------------------
// Dataset building

namespace {

bool is_test_wgn(DatasetKind kind) { return kind == DatasetKind::DST_WGN; }
bool is_train_wgn(DatasetKind kind) { return kind == DatasetKind::DS_WGN; }

}  // namespace

DatasetManifest build_dataset(DatasetKind kind, int count, Rng rng,
                              const Corpus& corpus, const BuildConfig& config,
                              const std::string& out_dir) {
  fs::create_directories(out_dir);
  SamplerConfig sampler = config.sampler;
  if (sampler.speaker_ids.empty()) sampler.speaker_ids = corpus.speakers();
  if (sampler.speaker_ids.size() < 2 && kind != DatasetKind::DST_1Spk)
    throw DataError("corpus exhausted: need at least two speakers");

  DatasetManifest manifest;
  manifest.kind = kind;
  manifest.global_seed = rng.seed();
  manifest.frame_len = config.frame_len;
  manifest.hop = config.hop;
  manifest.sample_rate = sampler.sample_rate;
  manifest.duration = sampler.duration;
  if (is_test_wgn(kind)) manifest.snr_grid = config.test_snr_grid;
  if (is_train_wgn(kind)) manifest.snr_grid = config.train_snr_grid;

  const int per_seq = is_test_wgn(kind)
                          ? static_cast<int>(config.test_snr_grid.size())
                          : 1;
  manifest.entries.resize(static_cast<std::size_t>(count) * per_seq);

  // One independent child stream per sequence: identical output no matter
  // how the loop is scheduled.
  exec::for_blocks(static_cast<std::size_t>(count), 1, [&](std::size_t lo,
                                                           std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Rng seq_rng = rng.child(i);
      ScenarioSpec spec = sample_scenario(kind, seq_rng, sampler);

      std::vector<std::vector<double>> dry(spec.sources.size());
      for (std::size_t q = 0; q < spec.sources.size(); ++q) {
        Rng dry_rng = seq_rng.child("dry").child(q);
        dry[q] = corpus.load(spec.sources[q].speaker_id, spec.duration,
                             spec.sample_rate, dry_rng);
      }

      RenderResult rendered =
          render_scene(spec, dry, config.frame_len, config.hop);
      const std::vector<double> target =
          make_target(spec, rendered.images, config.frame_len, config.hop);

      char tag[32];
      std::snprintf(tag, sizeof(tag), "seq%04d", static_cast<int>(i));
      const std::string base = std::string(tag);

      // Persist the per-sequence artifacts shared across SNR conditions.
      const std::string target_file = base + "_target.wav";
      write_wav(out_dir + "/" + target_file,
                mono_wave(target, spec.sample_rate));
      std::vector<std::string> image_files;
      for (std::size_t q = 0; q < rendered.images.size(); ++q) {
        image_files.push_back(base + "_image" + std::to_string(q) + ".wav");
        write_wav(out_dir + "/" + image_files.back(), rendered.images[q]);
      }

      std::vector<std::optional<double>> snrs;
      if (is_test_wgn(kind)) {
        for (double s : config.test_snr_grid) snrs.push_back(s);
      } else if (is_train_wgn(kind)) {
        snrs.push_back(config.train_snr_grid[i % config.train_snr_grid.size()]);
      } else {
        snrs.push_back(std::nullopt);  // clean
      }

      for (std::size_t si = 0; si < snrs.size(); ++si) {
        ScenarioSpec entry_spec = spec;
        entry_spec.snr_db = snrs[si];
        Rng noise_rng = seq_rng.child("noise").child(si);
        MultichannelWave mixture =
            mix_noise(rendered.mixture, snrs[si], noise_rng);

        std::string suffix;
        if (snrs[si]) {
          char sbuf[32];
          std::snprintf(sbuf, sizeof(sbuf), "_snr%+03d",
                        static_cast<int>(*snrs[si]));
          suffix = sbuf;
        }
        ManifestEntry entry;
        entry.scenario_file = base + suffix + "_scenario.json";
        entry.mixture_file = base + suffix + "_mixture.wav";
        entry.image_files = image_files;
        entry.target_file = target_file;
        entry.activity = rendered.activity;
        entry.snr_db = snrs[si];
        entry.seed = seq_rng.seed();

        std::ofstream sf(out_dir + "/" + entry.scenario_file, std::ios::trunc);
        sf << scenario_to_json(entry_spec) << "\n";
        write_wav(out_dir + "/" + entry.mixture_file, mixture);

        manifest.entries[i * per_seq + si] = std::move(entry);
      }
    }
  });

  save_manifest(manifest, out_dir + "/manifest.json");
  return manifest;
}

}  // namespace sprobe
