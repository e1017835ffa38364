// tools/mcse-main.cc

// Copyright 2026  The mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcse/augment.h"
#include "mcse/config.h"
#include "mcse/error.h"
#include "mcse/features.h"
#include "mcse/harness.h"
#include "mcse/mvdr.h"
#include "mcse/sf.h"
#include "mcse/signal.h"
#include "mcse/simroom.h"
#include "mcse/tensor_file.h"
#include "mcse/wav.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mcse;

namespace {

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(what + ": cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw DataError("short write to '" + tmp + "'");
  }
  fs::rename(tmp, path);
}

std::string hash_hex(const std::string& bytes) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

// Every run leaves a sidecar recording what produced the outputs. No
// timestamps: reruns of the same command must be byte-identical.
void write_provenance(const std::string& path, const std::string& command,
                      const std::string& config_hash, uint64_t seed) {
  json doc;
  doc["tool"] = "mcse";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config_hash"] = config_hash;
  doc["seed"] = seed;
  write_text_atomic(path, doc.dump(2) + "\n");
}

std::vector<double> look_directions_of(const RunConfig& cfg) {
  return cfg.frontend.sf_directions.empty() ? default_look_directions()
                                            : cfg.frontend.sf_directions;
}

// ---------------------------------------------------------------- simulate

Waveform make_noise_source(const std::string& kind, long num_samples, int fs,
                           Rng& rng) {
  if (kind == "white") return white_noise(num_samples, fs, rng);
  if (kind == "pink") return pink_noise(num_samples, fs, rng);
  Waveform w = read_wav(kind);
  if (w.channels() != 1)
    throw DataError("simulate: noise file must be mono, got " +
                    std::to_string(w.channels()) + " channels");
  return w;
}

Tensor masks_to_tensor(const PerChannelMasks& m) {
  Tensor t;
  t.dims = {static_cast<uint64_t>(m.frames), static_cast<uint64_t>(m.bins),
            static_cast<uint64_t>(m.channels)};
  std::vector<float> values(m.v.size());
  for (size_t i = 0; i < m.v.size(); ++i)
    values[i] = static_cast<float>(m.v[i]);
  t.values = std::move(values);
  return t;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  const std::string config_text = read_file(config_path, "config");
  const RunConfig cfg = parse_run_config(config_text);
  fs::create_directories(out_dir);

  const ArrayGeometry geom = cfg.geometry();
  std::vector<Vec3> positions = cfg.simulate.source_positions;
  if (positions.empty()) positions.push_back(cfg.room.source_pos);

  SynthesisParams params;
  params.snr_db = cfg.simulate.snr_db;
  params.gain_offset_db_range = cfg.simulate.gain_offset_db_range;
  params.self_noise_db = cfg.simulate.self_noise_db;

  const long noise_len =
      static_cast<long>(cfg.simulate.utterance_s * cfg.room.fs);
  Rng master(cfg.simulate.seed);
  for (int i = 0; i < cfg.simulate.num_bundles; ++i) {
    Rng rng = master.split(i);
    RoomSpec room = cfg.room;
    room.source_pos = positions[i % positions.size()];
    validate(room);

    Waveform clean = speech_like(cfg.simulate.utterance_s, cfg.room.fs, rng);
    Waveform noise =
        make_noise_source(cfg.simulate.noise, noise_len, cfg.room.fs, rng);
    MixtureBundle bundle = synthesize(clean, room, geom, noise, params, rng);

    char name[32];
    std::snprintf(name, sizeof(name), "bundle_%03d", i);
    const std::string prefix = (fs::path(out_dir) / name).string();
    write_wav(prefix + ".mix.wav", bundle.mixture);
    write_wav(prefix + ".clean.wav", bundle.clean_image);
    write_wav(prefix + ".noise.wav", bundle.noise_image);

    auto [m_s, m_n] = oracle_masks(bundle, cfg.stft);
    write_tensor(prefix + ".mask_s.mctf", masks_to_tensor(m_s));

    json sidecar;
    sidecar["gains"] = bundle.gains;
    if (std::isfinite(bundle.snr_db))
      sidecar["snr_db"] = bundle.snr_db;
    else
      sidecar["snr_db"] = nullptr;
    sidecar["seed"] = cfg.simulate.seed;
    sidecar["bundle"] = i;
    sidecar["sample_rate"] = cfg.room.fs;
    sidecar["source_pos"] = {room.source_pos.x, room.source_pos.y,
                             room.source_pos.z};
    write_text_atomic(prefix + ".json", sidecar.dump(2) + "\n");
  }

  write_provenance((fs::path(out_dir) / "provenance.json").string(),
                   "simulate", hash_hex(config_text), cfg.simulate.seed);
  return 0;
}

// ----------------------------------------------------------------- augment

FeatureMatrix tensor_to_features(const Tensor& t) {
  if (t.dims.size() != 2)
    throw DataError("augment: feature tensor must be 2-D (frames x bands)");
  FeatureMatrix feat;
  feat.frames = static_cast<int>(t.dims[0]);
  feat.bands = static_cast<int>(t.dims[1]);
  if (const auto* f64 = std::get_if<std::vector<double>>(&t.values)) {
    feat.v = *f64;
  } else if (const auto* f32 = std::get_if<std::vector<float>>(&t.values)) {
    feat.v.assign(f32->begin(), f32->end());
  } else {
    throw DataError("augment: feature tensor must be real-valued");
  }
  return feat;
}

Tensor features_to_tensor(const FeatureMatrix& feat) {
  Tensor t;
  t.dims = {static_cast<uint64_t>(feat.frames),
            static_cast<uint64_t>(feat.bands)};
  t.values = feat.v;
  return t;
}

int run_augment(const std::string& config_path, const std::string& in_path,
                const std::string& out_path, std::optional<uint64_t> seed,
                const std::string& emit_mask) {
  const std::string config_text = read_file(config_path, "config");
  RunConfig cfg = parse_run_config(config_text);

  // Feature-domain path: SpecAugment over an MCTF feature matrix.
  if (fs::path(in_path).extension() == ".mctf") {
    if (!cfg.augment.spec)
      throw ConfigError("augment: config has no augment.spec policy");
    SpecAugmentPolicy policy = *cfg.augment.spec;
    if (seed) policy.seed = *seed;
    Rng rng(policy.seed);
    FeatureMatrix feat = tensor_to_features(read_tensor(in_path));
    FeatureMatrix out = spec_augment(feat, policy, rng);
    write_tensor(out_path, features_to_tensor(out));
    write_provenance(out_path + ".prov.json", "augment", hash_hex(config_text),
                     policy.seed);
    return 0;
  }

  if (!cfg.augment.channel)
    throw ConfigError("augment: config has no augment.channel policy");
  ChannelAugmentPolicy policy = *cfg.augment.channel;
  if (seed) policy.seed = *seed;
  Rng rng(policy.seed);

  Waveform w = read_wav(in_path);
  Tensor mask_tensor;

  switch (policy.mode) {
    case CaMode::kFreqIndependentSlice: {
      ChannelSubset z = ca_sample_subset(w.channels(), policy, rng);
      write_wav(out_path, slice_channels(w, z));
      std::vector<double> keep(w.channels(), 0.0);
      for (int c : z.kept) keep[c] = 1.0;
      mask_tensor.dims = {static_cast<uint64_t>(w.channels())};
      mask_tensor.values = keep;
      break;
    }
    case CaMode::kFreqIndependentZero: {
      ComplexSpectrum x = stft(w, cfg.stft);
      ChannelSubset z = ca_sample_subset(x.channels, policy, rng);
      write_wav(out_path, istft(ca_zero(x, z), w.num_samples()));
      std::vector<double> keep(w.channels(), 0.0);
      for (int c : z.kept) keep[c] = 1.0;
      mask_tensor.dims = {static_cast<uint64_t>(w.channels())};
      mask_tensor.values = keep;
      break;
    }
    case CaMode::kFreqDependent: {
      ComplexSpectrum x = stft(w, cfg.stft);
      auto [masked, mask] = ca_freq_dependent(x, policy.p_keep, rng);
      write_wav(out_path, istft(masked, w.num_samples()));
      std::vector<double> values(mask.keep.begin(), mask.keep.end());
      mask_tensor.dims = {static_cast<uint64_t>(mask.bins),
                          static_cast<uint64_t>(mask.channels)};
      mask_tensor.values = values;
      break;
    }
  }
  if (!emit_mask.empty()) write_tensor(emit_mask, mask_tensor);
  write_provenance(out_path + ".prov.json", "augment", hash_hex(config_text),
                   policy.seed);
  return 0;
}

// ----------------------------------------------------------------- enhance

PerChannelMasks tensor_to_masks(const Tensor& t, const ComplexSpectrum& x) {
  if (t.dims.size() != 3)
    throw DataError(
        "enhance: mask tensor must be 3-D (frames x bins x channels)");
  PerChannelMasks m;
  m.frames = static_cast<int>(t.dims[0]);
  m.bins = static_cast<int>(t.dims[1]);
  m.channels = static_cast<int>(t.dims[2]);
  if (m.frames != x.frames || m.bins != x.bins || m.channels != x.channels)
    throw DataError("enhance: mask tensor shape does not match the input stft");
  if (const auto* f32 = std::get_if<std::vector<float>>(&t.values)) {
    m.v.assign(f32->begin(), f32->end());
  } else if (const auto* f64 = std::get_if<std::vector<double>>(&t.values)) {
    m.v = *f64;
  } else {
    throw DataError("enhance: mask tensor must be real-valued");
  }
  validate(m);
  return m;
}

int run_enhance(const std::string& config_path, const std::string& frontend_arg,
                const std::string& in_path, const std::string& masks_path,
                const std::string& out_path,
                const std::string& features_path) {
  const std::string config_text = read_file(config_path, "config");
  const RunConfig cfg = parse_run_config(config_text);
  const std::string frontend =
      frontend_arg.empty() ? cfg.frontend.type : frontend_arg;
  if (frontend != "sf" && frontend != "mvdr")
    throw ConfigError("enhance: frontend must be 'sf' or 'mvdr'");
  if (out_path.empty() && features_path.empty())
    throw ConfigError("enhance: need --out and/or --features");

  Waveform w = read_wav(in_path);
  if (cfg.highpass_hz > 0.0) w = highpass(w, cfg.highpass_hz);
  ComplexSpectrum x = stft(w, cfg.stft);

  PowerSpectrum power;
  ComplexSpectrum enhanced;
  if (frontend == "mvdr") {
    PerChannelMasks m_s;
    if (!masks_path.empty()) {
      m_s = tensor_to_masks(read_tensor(masks_path), x);
    } else {
      m_s.frames = x.frames;
      m_s.bins = x.bins;
      m_s.channels = x.channels;
      m_s.v.assign(x.data.size(), 0.5);
    }
    PerChannelMasks m_n = m_s;
    for (double& v : m_n.v) v = 1.0 - v;
    MvdrResult res = mvdr_pipeline(x, m_s, m_n, cfg.frontend.mvdr);
    power = std::move(res.power);
    enhanced = std::move(res.enhanced);
  } else {
    const ArrayGeometry geom = cfg.geometry();
    if (geom.size() != x.channels)
      throw DataError("enhance: config array has " +
                      std::to_string(geom.size()) + " mics but the input has " +
                      std::to_string(x.channels) + " channels");
    SfWeights weights = sf_init_das(geom, look_directions_of(cfg), cfg.stft,
                                    w.sample_rate, cfg.frontend.c_sound);
    power = sf_pool(sf_forward(x, weights));
    // The pooled output is phase-free; resynthesis borrows channel 0's
    // phase under the pooled magnitude.
    enhanced.frames = x.frames;
    enhanced.bins = x.bins;
    enhanced.channels = 1;
    enhanced.cfg = x.cfg;
    enhanced.sample_rate = x.sample_rate;
    enhanced.data.resize(static_cast<size_t>(x.frames) * x.bins);
    for (int t = 0; t < x.frames; ++t)
      for (int f = 0; f < x.bins; ++f) {
        const Cplx ref = x.at(t, f, 0);
        const double mag = std::sqrt(power.at(t, f));
        const double ref_mag = std::abs(ref);
        enhanced.at(t, f, 0) =
            ref_mag > 0.0 ? ref * (mag / ref_mag) : Cplx(mag, 0.0);
      }
  }

  if (!out_path.empty()) {
    write_wav(out_path, istft(enhanced, w.num_samples()));
    write_provenance(out_path + ".prov.json", "enhance", hash_hex(config_text),
                     0);
  }
  if (!features_path.empty()) {
    MelFilterbank fb =
        mel_filterbank(cfg.features.n_mels, cfg.stft, w.sample_rate,
                       cfg.features.f_low, cfg.features.f_high);
    FeatureMatrix feat = cmn(log_mel(power, fb, cfg.features.floor));
    write_tensor(features_path, features_to_tensor(feat));
    if (out_path.empty())
      write_provenance(features_path + ".prov.json", "enhance",
                       hash_hex(config_text), 0);
  }
  return 0;
}

// -------------------------------------------------------------------- eval

std::vector<MixtureBundle> load_bundles(const std::string& dir) {
  if (!fs::is_directory(dir))
    throw DataError("eval: bundle_dir '" + dir + "' is not a directory");
  std::vector<std::string> prefixes;
  const std::string suffix = ".mix.wav";
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      prefixes.push_back(
          (fs::path(dir) / name.substr(0, name.size() - suffix.size()))
              .string());
  }
  std::sort(prefixes.begin(), prefixes.end());
  if (prefixes.empty())
    throw DataError("eval: no '*.mix.wav' bundles in '" + dir + "'");

  std::vector<MixtureBundle> bundles;
  for (const std::string& prefix : prefixes) {
    MixtureBundle b;
    b.mixture = read_wav(prefix + ".mix.wav");
    b.clean_image = read_wav(prefix + ".clean.wav");
    b.noise_image = read_wav(prefix + ".noise.wav");
    json sidecar;
    try {
      sidecar = json::parse(read_file(prefix + ".json", "eval"));
      b.gains = sidecar.at("gains").get<std::vector<double>>();
      b.snr_db = sidecar.at("snr_db").is_null()
                     ? std::numeric_limits<double>::infinity()
                     : sidecar.at("snr_db").get<double>();
    } catch (const json::exception& e) {
      throw DataError("eval: bad sidecar '" + prefix + ".json': " + e.what());
    }
    if (static_cast<int>(b.gains.size()) != b.mixture.channels())
      throw DataError("eval: sidecar gains disagree with '" + prefix +
                      ".mix.wav'");
    bundles.push_back(std::move(b));
  }
  return bundles;
}

int run_eval(const std::string& manifest_path, const std::string& out_path) {
  const std::string manifest_text = read_file(manifest_path, "manifest");
  const SweepManifest manifest = parse_sweep_manifest(manifest_text);
  std::vector<MixtureBundle> bundles = load_bundles(manifest.bundle_dir);

  SweepOptions opts;
  opts.stft = manifest.config.stft;
  opts.mvdr = manifest.config.frontend.mvdr;
  opts.sf_directions = manifest.config.frontend.sf_directions;
  opts.c_sound = manifest.config.frontend.c_sound;
  opts.geometry = manifest.config.geometry();
  opts.augment = manifest.config.augment.channel;
  if (!manifest.config.presets.empty())
    opts.presets = &manifest.config.presets;
  opts.seed = manifest.seed;
  opts.timings = manifest.timings;

  std::vector<EvalRecord> records =
      sweep(bundles, manifest.frontends, manifest.presets, opts);
  write_text_atomic(out_path, sweep_csv(records));
  write_provenance(out_path + ".prov.json", "eval", hash_hex(manifest_text),
                   manifest.seed);
  return 0;
}

// ------------------------------------------------------------------- bench

int run_bench(const std::string& frontend, const std::vector<int>& channels,
              int reps, int frames, int bins, uint64_t seed,
              const std::string& out_path) {
  std::vector<BenchRow> rows =
      bench_frontend(frontend, channels, reps, frames, bins, seed);
  const std::string csv = bench_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_atomic(out_path, csv);
    write_provenance(out_path + ".prov.json", "bench", hash_hex(frontend),
                     seed);
  }
  return 0;
}

void print_error(int code, const std::string& message) {
  json err;
  err["error"] = {{"code", code}, {"message", message}};
  std::cerr << err.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcse: multi-channel speech enhancement toolkit"};
  app.require_subcommand(1);

  std::string config_path, in_path, out_path, masks_path, features_path;
  std::string manifest_path, emit_mask, frontend;
  std::optional<uint64_t> seed;
  std::vector<int> channels{2, 4, 8, 16};
  int reps = 9, frames = 500, bins = 257;
  uint64_t bench_seed = 0xb5eed;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate mixture bundles and oracle masks");
  simulate->add_option("--config", config_path, "Run config JSON")->required();
  simulate->add_option("--out", out_path, "Output directory")->required();

  CLI::App* augment = app.add_subcommand(
      "augment", "Apply ChannelAugment to a WAV or SpecAugment to features");
  augment->add_option("--config", config_path, "Run config JSON")->required();
  augment->add_option("--in", in_path, "Input WAV or MCTF feature file")
      ->required();
  augment->add_option("--out", out_path, "Output file")->required();
  augment->add_option("--seed", seed, "Override the policy seed");
  augment->add_option("--emit-mask", emit_mask, "Write the drawn mask (MCTF)");

  CLI::App* enhance = app.add_subcommand(
      "enhance", "Run the sf or mvdr frontend over a multi-channel WAV");
  enhance->add_option("--config", config_path, "Run config JSON")->required();
  enhance->add_option("--frontend", frontend, "sf or mvdr (default: config)");
  enhance->add_option("--in", in_path, "Input multi-channel WAV")->required();
  enhance->add_option("--masks", masks_path, "Per-channel speech masks (MCTF)");
  enhance->add_option("--out", out_path, "Enhanced mono WAV");
  enhance->add_option("--features", features_path, "Log-mel+CMN MCTF output");

  CLI::App* eval = app.add_subcommand(
      "eval", "Sweep frontends over array presets and write a CSV");
  eval->add_option("--manifest", manifest_path, "Sweep manifest JSON")
      ->required();
  eval->add_option("--out", out_path, "Result CSV")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "Benchmark frontend wall time against the channel count");
  bench->add_option("--frontend", frontend, "sf or mvdr")->required();
  bench->add_option("--channels", channels, "Channel counts")->delimiter(',');
  bench->add_option("--reps", reps, "Timed repetitions (>= 5)");
  bench->add_option("--frames", frames, "Synthetic frame count");
  bench->add_option("--bins", bins, "Synthetic bin count");
  bench->add_option("--seed", bench_seed, "Synthetic data seed");
  bench->add_option("--out", out_path, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(config_path, out_path);
    if (augment->parsed())
      return run_augment(config_path, in_path, out_path, seed, emit_mask);
    if (enhance->parsed())
      return run_enhance(config_path, frontend, in_path, masks_path, out_path,
                         features_path);
    if (eval->parsed()) return run_eval(manifest_path, out_path);
    if (bench->parsed())
      return run_bench(frontend, channels, reps, frames, bins, bench_seed,
                       out_path);
    return 2;
  } catch (const ConfigError& e) {
    print_error(2, e.what());
    return 2;
  } catch (const InvariantError& e) {
    print_error(4, e.what());
    return 4;
  } catch (const DataError& e) {
    print_error(3, e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    print_error(3, e.what());
    return 3;
  } catch (const std::runtime_error& e) {
    print_error(3, e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error(4, e.what());
    return 4;
  }
}
