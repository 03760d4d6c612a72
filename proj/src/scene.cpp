#include "sprobe/scene.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sprobe/errors.hpp"
#include "sprobe/fft.hpp"
#include "sprobe/spectral.hpp"

namespace sprobe {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double norm(const Vec3& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

std::vector<Vec3> mic_positions(const ArraySpec& array) {
  std::vector<Vec3> mics(array.num_mics);
  const double half = 0.5 * (array.num_mics - 1);
  for (int m = 0; m < array.num_mics; ++m) {
    // Microphone 1 (index 0) on the +orientation end.
    const double offset = (half - m) * array.spacing;
    mics[m] = array.center + offset * array.orientation;
  }
  return mics;
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::DS_clean: return "ds-clean";
    case DatasetKind::DS_WGN: return "ds-wgn";
    case DatasetKind::DST_clean: return "dst-clean";
    case DatasetKind::DST_WGN: return "dst-wgn";
    case DatasetKind::DST_1Pos: return "dst-1pos";
    case DatasetKind::DST_1Spk: return "dst-1spk";
  }
  return "unknown";
}

DatasetKind dataset_kind_from_string(const std::string& name) {
  if (name == "ds-clean") return DatasetKind::DS_clean;
  if (name == "ds-wgn") return DatasetKind::DS_WGN;
  if (name == "dst-clean") return DatasetKind::DST_clean;
  if (name == "dst-wgn") return DatasetKind::DST_WGN;
  if (name == "dst-1pos") return DatasetKind::DST_1Pos;
  if (name == "dst-1spk") return DatasetKind::DST_1Spk;
  throw ConfigError("unknown dataset kind: " + name);
}

// ---------------------------------------------------------------------------
// JSON serialization

using nlohmann::json;

static json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }
static Vec3 vec3_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  json j;
  j["version"] = 1;
  j["kind"] = to_string(spec.kind);
  j["room"] = {{"dimensions", vec3_to_json(spec.room.dimensions)},
               {"rt60", spec.room.rt60},
               {"speed_of_sound", spec.room.speed_of_sound}};
  j["array"] = {{"num_mics", spec.array.num_mics},
                {"spacing", spec.array.spacing},
                {"center", vec3_to_json(spec.array.center)},
                {"orientation", vec3_to_json(spec.array.orientation)}};
  j["sources"] = json::array();
  for (const auto& s : spec.sources)
    j["sources"].push_back({{"position", vec3_to_json(s.position)},
                            {"doa_deg", s.doa_deg},
                            {"speaker_id", s.speaker_id}});
  j["schedule"] = json::array();
  for (const auto& seg : spec.schedule)
    j["schedule"].push_back(
        {{"source", seg.source}, {"start", seg.start}, {"end", seg.end}});
  j["switch_times"] = spec.switch_times;
  if (spec.snr_db)
    j["snr_db"] = *spec.snr_db;
  else
    j["snr_db"] = "clean";
  j["seed"] = spec.seed;
  j["duration"] = spec.duration;
  j["sample_rate"] = spec.sample_rate;
  return j.dump(2);
}

ScenarioSpec scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  ScenarioSpec spec;
  spec.kind = dataset_kind_from_string(j.at("kind").get<std::string>());
  spec.room.dimensions = vec3_from_json(j.at("room").at("dimensions"));
  spec.room.rt60 = j.at("room").at("rt60").get<double>();
  spec.room.speed_of_sound = j.at("room").at("speed_of_sound").get<double>();
  spec.array.num_mics = j.at("array").at("num_mics").get<int>();
  spec.array.spacing = j.at("array").at("spacing").get<double>();
  spec.array.center = vec3_from_json(j.at("array").at("center"));
  spec.array.orientation = vec3_from_json(j.at("array").at("orientation"));
  for (const auto& s : j.at("sources"))
    spec.sources.push_back({vec3_from_json(s.at("position")),
                            s.at("doa_deg").get<double>(),
                            s.at("speaker_id").get<std::string>()});
  for (const auto& seg : j.at("schedule"))
    spec.schedule.push_back({seg.at("source").get<int>(),
                             seg.at("start").get<double>(),
                             seg.at("end").get<double>()});
  spec.switch_times = j.at("switch_times").get<std::vector<double>>();
  if (j.at("snr_db").is_string())
    spec.snr_db = std::nullopt;
  else
    spec.snr_db = j.at("snr_db").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.duration = j.at("duration").get<double>();
  spec.sample_rate = j.at("sample_rate").get<int>();
  return spec;
}

// ---------------------------------------------------------------------------
// Scenario sampling

namespace {

bool inside_room(const Vec3& p, const Vec3& dims, double margin) {
  for (int i = 0; i < 3; ++i)
    if (p[i] < margin || p[i] > dims[i] - margin) return false;
  return true;
}

// Largest distance from `from` along `dir` keeping `margin` clearance to
// every wall.
double max_range(const Vec3& from, const Vec3& dir, const Vec3& dims,
                 double margin) {
  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-12) continue;
    const double bound = dir[i] > 0 ? dims[i] - margin : margin;
    r = std::min(r, (bound - from[i]) / dir[i]);
  }
  return r;
}

struct Placement {
  Vec3 position;
  double doa_deg;
};

// Samples one source position in the array's horizontal plane at the given
// DoA window. Returns nullopt if no radius satisfies the clearances.
std::optional<Placement> place_source(Rng& rng, const ScenarioSpec& spec,
                                      const SamplerConfig& cfg,
                                      double doa_deg) {
  const Vec3& u = spec.array.orientation;
  const Vec3 v{-u[1], u[0], 0.0};  // horizontal normal
  const double theta = doa_deg * kPi / 180.0;
  const Vec3 dir = std::cos(theta) * u + std::sin(theta) * v;
  const double rmax = std::min(
      cfg.source_dist_max,
      max_range(spec.array.center, dir, spec.room.dimensions, cfg.min_clearance));
  if (rmax < cfg.source_dist_min) return std::nullopt;
  const double r = rng.uniform(cfg.source_dist_min, rmax);
  return Placement{spec.array.center + r * dir, doa_deg};
}

}  // namespace

ScenarioSpec sample_scenario(DatasetKind kind, Rng& rng,
                             const SamplerConfig& cfg) {
  if (cfg.room_min[0] >= cfg.room_max[0] || cfg.rt60_min >= cfg.rt60_max)
    throw ConfigError("degenerate sampler ranges");
  if (cfg.speaker_ids.empty())
    throw ConfigError("sampler config has no speaker ids");

  ScenarioSpec spec;
  spec.kind = kind;
  spec.duration = cfg.duration;
  spec.sample_rate = cfg.sample_rate;
  spec.seed = rng.seed();

  for (int attempt = 0;; ++attempt) {
    if (attempt >= cfg.max_attempts)
      throw ConstraintInfeasible(
          "sample_scenario: no source placement with >= " +
          std::to_string(cfg.min_clearance) + " m clearance found");

    for (int i = 0; i < 3; ++i)
      spec.room.dimensions[i] = rng.uniform(cfg.room_min[i], cfg.room_max[i]);
    spec.room.rt60 = rng.uniform(cfg.rt60_min, cfg.rt60_max);

    spec.array.num_mics = cfg.num_mics;
    spec.array.spacing = cfg.mic_spacing;
    const Vec3& dims = spec.room.dimensions;
    // Margins keep the mics inside and leave headroom for source clearance.
    const double mxy = 0.6, mz = 0.4;
    spec.array.center = {rng.uniform(mxy, dims[0] - mxy),
                         rng.uniform(mxy, dims[1] - mxy),
                         rng.uniform(mz, dims[2] - mz)};
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    spec.array.orientation = {std::cos(phi), std::sin(phi), 0.0};

    // Direction(s) of arrival.
    const bool one_position = kind == DatasetKind::DST_1Pos;
    const double doa1 = rng.uniform(0.0, 180.0);
    double doa2 = doa1;
    if (!one_position) {
      bool ok = false;
      for (int k = 0; k < 64 && !ok; ++k) {
        doa2 = rng.uniform(0.0, 180.0);
        ok = std::abs(doa2 - doa1) >= cfg.min_doa_separation_deg;
      }
      if (!ok) continue;
    }

    auto p1 = place_source(rng, spec, cfg, doa1);
    if (!p1) continue;
    std::optional<Placement> p2 =
        one_position ? p1 : place_source(rng, spec, cfg, doa2);
    if (!p2) continue;

    // Speakers.
    const std::size_t pool = cfg.speaker_ids.size();
    std::string spk1 = cfg.speaker_ids[rng.uniform_index(pool)];
    std::string spk2 = spk1;
    if (kind != DatasetKind::DST_1Spk) {
      if (pool < 2)
        throw ConstraintInfeasible("sample_scenario: need >= 2 speakers");
      while (spk2 == spk1) spk2 = cfg.speaker_ids[rng.uniform_index(pool)];
    }

    spec.sources = {{p1->position, p1->doa_deg, spk1},
                    {p2->position, p2->doa_deg, spk2}};

    // Activity schedule.
    spec.schedule.clear();
    spec.switch_times.clear();
    const double dur = cfg.duration;
    if (kind == DatasetKind::DST_1Spk) {
      const double t1 = rng.uniform(cfg.single_switch_frac_lo * dur,
                                    cfg.single_switch_frac_hi * dur);
      spec.switch_times = {t1};
      spec.schedule = {{0, 0.0, t1}, {1, t1, dur}};
    } else {
      const double t1 = rng.uniform(cfg.switch1_frac_lo * dur,
                                    cfg.switch1_frac_hi * dur);
      const double t2 = rng.uniform(cfg.switch2_frac_lo * dur,
                                    cfg.switch2_frac_hi * dur);
      spec.switch_times = {t1, t2};
      spec.schedule = {{0, 0.0, t1}, {1, t1, t2}, {0, t2, dur}};
    }
    break;
  }
  return spec;
}

void validate_scenario(const ScenarioSpec& spec, const SamplerConfig& cfg) {
  const Vec3& dims = spec.room.dimensions;
  for (int i = 0; i < 3; ++i)
    if (dims[i] < cfg.room_min[i] - 1e-9 || dims[i] > cfg.room_max[i] + 1e-9)
      throw DataError("room dimension out of range");
  if (spec.room.rt60 < cfg.rt60_min - 1e-9 || spec.room.rt60 > cfg.rt60_max + 1e-9)
    throw DataError("rt60 out of range");
  for (const Vec3& mic : mic_positions(spec.array))
    if (!inside_room(mic, dims, 0.0)) throw DataError("microphone outside room");
  for (const auto& src : spec.sources) {
    if (src.doa_deg < 0.0 || src.doa_deg > 180.0)
      throw DataError("DoA outside [0,180]");
    if (!inside_room(src.position, dims, cfg.min_clearance - 1e-9))
      throw DataError("source too close to a wall");
    if (norm(src.position - spec.array.center) < cfg.min_clearance - 1e-9)
      throw DataError("source too close to the array");
  }
  const bool one_position = spec.kind == DatasetKind::DST_1Pos;
  if (spec.sources.size() == 2 && !one_position) {
    if (std::abs(spec.sources[0].doa_deg - spec.sources[1].doa_deg) <
        cfg.min_doa_separation_deg - 1e-9)
      throw DataError("DoA separation below minimum");
  }
  // Schedule tiles [0, duration].
  double t = 0.0;
  for (const auto& seg : spec.schedule) {
    if (std::abs(seg.start - t) > 1e-9) throw DataError("schedule gap/overlap");
    if (seg.source < 0 || seg.source >= static_cast<int>(spec.sources.size()))
      throw DataError("schedule references unknown source");
    t = seg.end;
  }
  if (std::abs(t - spec.duration) > 1e-9)
    throw DataError("schedule does not cover the full duration");
}

// ---------------------------------------------------------------------------
// Image-source room impulse response

namespace {

double wall_beta(const RoomSpec& room, AbsorptionModel model) {
  if (room.rt60 <= 0.0) return 0.0;
  const Vec3& L = room.dimensions;
  const double V = L[0] * L[1] * L[2];
  const double S = 2.0 * (L[0] * L[1] + L[0] * L[2] + L[1] * L[2]);
  const double x = 24.0 * std::log(10.0) * V / (room.speed_of_sound * S * room.rt60);
  if (model == AbsorptionModel::Eyring) {
    // 1 - beta^2 = alpha = 1 - exp(-x)  =>  beta = exp(-x/2)
    return std::exp(-0.5 * x);
  }
  const double alpha = std::min(1.0, x);  // Sabine
  return std::sqrt(1.0 - alpha);
}

}  // namespace

std::vector<double> synth_rir(const RoomSpec& room, const Vec3& src,
                              const Vec3& mic, int fs, const RirOptions& opts,
                              exec::Policy policy) {
  const Vec3& L = room.dimensions;
  if (!inside_room(src, L, 0.0)) throw GeometryError("source outside room");
  if (!inside_room(mic, L, 0.0)) throw GeometryError("microphone outside room");

  const double c = room.speed_of_sound;
  const double direct = norm(src - mic) / c;
  const double t_cut = direct + std::max(0.0, opts.tail_factor * room.rt60);
  const int half = opts.window_half_width;
  const std::size_t len = static_cast<std::size_t>(
      std::max<double>(std::ceil(room.rt60 * fs),
                       std::ceil(t_cut * fs))) + 2 * half + 1;

  const double beta = wall_beta(room, opts.absorption);
  const double reach = c * t_cut;
  const int nx = static_cast<int>(std::ceil(reach / (2.0 * L[0]))) + 1;
  const int ny = static_cast<int>(std::ceil(reach / (2.0 * L[1]))) + 1;
  const int nz = static_cast<int>(std::ceil(reach / (2.0 * L[2]))) + 1;

  // Accumulate z-plane blocks into private buffers and merge them in block
  // order, so the summation order (and thus the result) is independent of
  // the thread count.
  const std::size_t zplanes = static_cast<std::size_t>(2 * nz + 1);
  const std::size_t block = 4;
  const std::size_t nblocks = (zplanes + block - 1) / block;
  std::vector<std::vector<double>> partial(nblocks);

  exec::for_blocks(zplanes, block, policy, [&](std::size_t lo, std::size_t hi) {
    std::vector<double>& h = partial[lo / block];
    h.assign(len, 0.0);
    for (std::size_t zi = lo; zi < hi; ++zi) {
      const int mz = static_cast<int>(zi) - nz;
      for (int mx = -nx; mx <= nx; ++mx) {
        for (int my = -ny; my <= ny; ++my) {
          for (int q = 0; q <= 1; ++q) {
            for (int j = 0; j <= 1; ++j) {
              for (int k = 0; k <= 1; ++k) {
                const Vec3 img{(1 - 2 * q) * src[0] + 2 * mx * L[0],
                               (1 - 2 * j) * src[1] + 2 * my * L[1],
                               (1 - 2 * k) * src[2] + 2 * mz * L[2]};
                const double dist = norm(img - mic);
                const double delay = dist / c;
                if (delay > t_cut) continue;
                const int refl = std::abs(mx - q) + std::abs(mx) +
                                 std::abs(my - j) + std::abs(my) +
                                 std::abs(mz - k) + std::abs(mz);
                if (refl > 0 && beta <= 0.0) continue;
                const double amp = std::pow(beta, refl) / std::max(dist, 1e-6);
                const double center = delay * fs;
                const int first = std::max(0, static_cast<int>(std::ceil(center)) - half);
                const int last = std::min(static_cast<int>(len) - 1,
                                          static_cast<int>(std::floor(center)) + half);
                for (int n = first; n <= last; ++n) {
                  const double x = n - center;
                  const double win = 0.5 * (1.0 + std::cos(kPi * x / half));
                  const double s =
                      x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
                  h[n] += amp * win * s;
                }
              }
            }
          }
        }
      }
    }
  });

  std::vector<double> rir(len, 0.0);
  for (const auto& h : partial) {
    if (h.empty()) continue;
    for (std::size_t i = 0; i < len; ++i) rir[i] += h[i];
  }
  return rir;
}

// ---------------------------------------------------------------------------
// Scene rendering

namespace {

// Schedule gate with short raised-cosine edges inside each segment.
std::vector<double> schedule_gate(const ScenarioSpec& spec, int source,
                                  std::size_t n) {
  std::vector<double> gate(n, 0.0);
  const double fs = spec.sample_rate;
  const std::size_t ramp = static_cast<std::size_t>(0.008 * fs);
  for (const auto& seg : spec.schedule) {
    if (seg.source != source) continue;
    const std::size_t a = static_cast<std::size_t>(std::max(0.0, seg.start * fs));
    const std::size_t b =
        std::min(n, static_cast<std::size_t>(std::max(0.0, seg.end * fs)));
    for (std::size_t i = a; i < b; ++i) {
      double g = 1.0;
      if (ramp > 0) {
        if (i - a < ramp)
          g = 0.5 * (1.0 - std::cos(kPi * (i - a) / ramp));
        else if (b - 1 - i < ramp && b < n)  // no fade at sequence end
          g = 0.5 * (1.0 - std::cos(kPi * (b - 1 - i) / ramp));
      }
      gate[i] = g;
    }
  }
  return gate;
}

}  // namespace

RenderResult render_scene(const ScenarioSpec& spec,
                          const std::vector<std::vector<double>>& dry,
                          int frame_len, int hop) {
  const int Q = static_cast<int>(spec.sources.size());
  if (static_cast<int>(dry.size()) != Q)
    throw DataError("render_scene: one dry signal per source required");
  const std::size_t n = spec.num_samples();
  for (const auto& seg : spec.schedule) {
    const std::size_t need = static_cast<std::size_t>(seg.end * spec.sample_rate);
    if (dry[seg.source].size() < need)
      throw DataError("dry signal shorter than its scheduled segment");
  }

  const int M = spec.array.num_mics;
  const std::vector<Vec3> mics = mic_positions(spec.array);

  // Gated dry signals.
  std::vector<std::vector<double>> gated(Q);
  for (int q = 0; q < Q; ++q) {
    const auto gate = schedule_gate(spec, q, n);
    gated[q].resize(n);
    for (std::size_t i = 0; i < n; ++i) gated[q][i] = dry[q][i] * gate[i];
  }

  // Room responses, then images. The RIR synthesis parallelizes internally;
  // the convolutions parallelize over (source, mic) pairs.
  std::vector<std::vector<std::vector<double>>> rirs(Q);
  for (int q = 0; q < Q; ++q) {
    rirs[q].resize(M);
    for (int m = 0; m < M; ++m)
      rirs[q][m] = synth_rir(spec.room, spec.sources[q].position, mics[m],
                             spec.sample_rate);
  }

  RenderResult result;
  result.images.assign(Q, MultichannelWave(M, n, spec.sample_rate));
  exec::for_blocks(static_cast<std::size_t>(Q) * M, 1,
                   [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t w = lo; w < hi; ++w) {
                       const int q = static_cast<int>(w) / M;
                       const int m = static_cast<int>(w) % M;
                       auto conv = fft::convolve(gated[q], rirs[q][m]);
                       conv.resize(n);
                       result.images[q].samples[m] = std::move(conv);
                     }
                   });

  result.mixture = MultichannelWave(M, n, spec.sample_rate);
  for (int m = 0; m < M; ++m)
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int q = 0; q < Q; ++q) acc += result.images[q].samples[m][i];
      result.mixture.samples[m][i] = acc;
    }

  // Ground-truth frame activity from the combined gated dry signal.
  std::vector<double> combined(n, 0.0);
  for (int q = 0; q < Q; ++q)
    for (std::size_t i = 0; i < n; ++i) combined[i] += gated[q][i];
  const std::vector<double> energy = frame_energies(combined, frame_len, hop);
  const double peak = *std::max_element(energy.begin(), energy.end());
  const double threshold = peak * 1e-4;  // -40 dB
  const int nframes = static_cast<int>(energy.size());
  result.activity.assign(nframes, 0);
  for (int t = 0; t < nframes; ++t) {
    if (peak <= 0.0 || energy[t] < threshold) continue;  // pause
    // Scheduled source at the frame center.
    const double center_s =
        std::clamp((static_cast<double>(t) - 1.0) * hop + frame_len / 2.0, 0.0,
                   static_cast<double>(n - 1));
    const double tc = center_s / spec.sample_rate;
    for (const auto& seg : spec.schedule) {
      if (tc >= seg.start && tc < seg.end + 1e-12) {
        result.activity[t] = seg.source + 1;
        break;
      }
    }
  }
  return result;
}

MultichannelWave mix_noise(const MultichannelWave& wave,
                           std::optional<double> snr_db, Rng& rng) {
  if (!snr_db) return wave;
  wave.check_rectangular();
  const int M = wave.channels();
  const std::size_t n = wave.length();
  double power = 0.0;
  for (int m = 0; m < M; ++m)
    for (std::size_t i = 0; i < n; ++i)
      power += wave.samples[m][i] * wave.samples[m][i];
  power /= static_cast<double>(M) * n;
  if (power <= 0.0)
    throw DataError("mix_noise: silent input has no defined SNR");

  const double noise_var = power * std::pow(10.0, -*snr_db / 10.0);
  const double sigma = std::sqrt(noise_var);
  MultichannelWave out = wave;
  for (int m = 0; m < M; ++m) {
    Rng ch = rng.child(static_cast<std::uint64_t>(m));
    for (std::size_t i = 0; i < n; ++i)
      out.samples[m][i] += sigma * ch.normal();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic speech-like corpus fallback

namespace {

struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;
  double z1 = 0, z2 = 0;

  static Biquad resonator(double freq, double bw, int fs) {
    Biquad f;
    const double r = std::exp(-kPi * bw / fs);
    const double w = 2.0 * kPi * freq / fs;
    f.a1 = -2.0 * r * std::cos(w);
    f.a2 = r * r;
    f.b0 = 1.0 - r;
    return f;
  }

  static Biquad lowpass(double freq, int fs) {
    // One-pole pair butterworth-ish; adequate for shaping noise.
    Biquad f;
    const double w = std::tan(kPi * freq / fs);
    const double k = 1.0 / (1.0 + std::sqrt(2.0) * w + w * w);
    f.b0 = w * w * k;
    f.b1 = 2.0 * f.b0;
    f.b2 = f.b0;
    f.a1 = 2.0 * (w * w - 1.0) * k;
    f.a2 = (1.0 - std::sqrt(2.0) * w + w * w) * k;
    return f;
  }

  static Biquad highpass(double freq, int fs) {
    Biquad f;
    const double w = std::tan(kPi * freq / fs);
    const double k = 1.0 / (1.0 + std::sqrt(2.0) * w + w * w);
    f.b0 = k;
    f.b1 = -2.0 * k;
    f.b2 = k;
    f.a1 = 2.0 * (w * w - 1.0) * k;
    f.a2 = (1.0 - std::sqrt(2.0) * w + w * w) * k;
    return f;
  }

  double step(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
};

double rms(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return std::sqrt(e / std::max<std::size_t>(1, x.size()));
}

}  // namespace

SpeechlikeParts synth_speechlike_parts(double duration, Rng& rng, int fs) {
  if (duration <= 0.0) throw DataError("synth_speechlike: duration must be > 0");
  const std::size_t n = static_cast<std::size_t>(duration * fs + 0.5);

  // Drifting fundamental, updated every 10 ms.
  const std::size_t hop = fs / 100;
  double f0 = rng.uniform(95.0, 210.0);
  std::vector<double> pulses(n, 0.0);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % hop == 0) {
      f0 *= std::exp(0.03 * rng.normal());
      f0 = std::clamp(f0, 70.0, 320.0);
    }
    phase += f0 / fs;
    if (phase >= 1.0) {
      phase -= 1.0;
      pulses[i] = 1.0;
    }
  }

  // Formant-like resonators with per-sequence variation.
  Biquad f1 = Biquad::resonator(rng.uniform(380.0, 750.0), 90.0, fs);
  Biquad f2 = Biquad::resonator(rng.uniform(1000.0, 1900.0), 130.0, fs);
  Biquad f3 = Biquad::resonator(rng.uniform(2300.0, 2900.0), 180.0, fs);
  std::vector<double> harmonic(n);
  for (std::size_t i = 0; i < n; ++i)
    harmonic[i] = f3.step(f2.step(f1.step(pulses[i])));

  // Shaped noise floor (consonant-ish hiss).
  Biquad lp = Biquad::lowpass(3600.0, fs);
  Biquad hp = Biquad::highpass(300.0, fs);
  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) noise[i] = hp.step(lp.step(rng.normal()));
  const double target = rms(harmonic) * std::pow(10.0, -13.0 / 20.0);
  const double nr = rms(noise);
  if (nr > 0)
    for (double& v : noise) v *= target / nr;

  // Syllabic amplitude modulation.
  Biquad env_lp = Biquad::lowpass(3.0, fs);
  std::vector<double> env(n);
  double env_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    env[i] = std::abs(env_lp.step(rng.normal()));
    env_max = std::max(env_max, env[i]);
  }
  for (double& e : env) e = 0.2 + 0.8 * (env_max > 0 ? e / env_max : 0.0);

  // Intra-segment pauses with 30 ms ramps.
  const std::size_t ramp = static_cast<std::size_t>(0.03 * fs);
  double t = rng.uniform(0.4, 1.2);
  while (t < duration) {
    const double plen = rng.uniform(0.15, 0.45);
    const std::size_t a = static_cast<std::size_t>(t * fs);
    const std::size_t b = std::min(n, static_cast<std::size_t>((t + plen) * fs));
    for (std::size_t i = a; i < b && i < n; ++i) {
      double g = 0.0;
      if (i - a < ramp) g = 1.0 - static_cast<double>(i - a) / ramp;
      if (b - 1 - i < ramp) g = std::max(g, 1.0 - static_cast<double>(b - 1 - i) / ramp);
      env[i] *= g;
    }
    t += plen + rng.uniform(0.6, 1.6);
  }

  SpeechlikeParts parts;
  parts.harmonic.resize(n);
  parts.noise.resize(n);
  parts.total.resize(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    parts.harmonic[i] = harmonic[i] * env[i];
    parts.noise[i] = noise[i] * env[i];
    parts.total[i] = parts.harmonic[i] + parts.noise[i];
    peak = std::max(peak, std::abs(parts.total[i]));
  }
  const double scale = peak > 0 ? 0.5 / peak : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    parts.harmonic[i] *= scale;
    parts.noise[i] *= scale;
    parts.total[i] *= scale;
  }
  return parts;
}

std::vector<double> synth_speechlike(double duration, Rng& rng, int fs) {
  return synth_speechlike_parts(duration, rng, fs).total;
}

}  // namespace sprobe
