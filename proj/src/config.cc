// mcse/config.cc

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

#include "mcse/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mcse/error.h"

namespace mcse {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw ConfigError("config: '" + where + "' must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (allowed.find(it.key()) == allowed.end())
      throw ConfigError("config: unknown key '" + where + "." + it.key() + "'");
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for '" + key + "': " + e.what());
  }
}

std::optional<double> get_optional_db(const json& obj, const std::string& key,
                                      std::optional<double> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (it->is_null()) return std::nullopt;
  if (!it->is_number())
    throw ConfigError("config: '" + key + "' must be a number or null");
  return it->get<double>();
}

Vec3 parse_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number())
    throw ConfigError("config: '" + where + "' must be [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

StftConfig parse_stft(const json& obj) {
  require_keys(obj, "stft", {"fft_size", "hop", "window"});
  StftConfig cfg;
  cfg.fft_size = get_or<int>(obj, "fft_size", cfg.fft_size);
  cfg.hop = get_or<int>(obj, "hop", cfg.hop);
  const std::string window = get_or<std::string>(obj, "window", "hann");
  if (window == "hann")
    cfg.window = Window::kHann;
  else if (window == "sqrt-hann" || window == "sqrt_hann")
    cfg.window = Window::kSqrtHann;
  else
    throw ConfigError("config: stft.window must be 'hann' or 'sqrt-hann'");
  validate(cfg);
  return cfg;
}

RunConfig::Frontend parse_frontend(const json& obj) {
  require_keys(obj, "frontend",
               {"type", "eps_rel", "mask_floor", "reference", "sf_directions",
                "c_sound"});
  RunConfig::Frontend fe;
  fe.type = get_or<std::string>(obj, "type", fe.type);
  if (fe.type != "sf" && fe.type != "mvdr")
    throw ConfigError("config: frontend.type must be 'sf' or 'mvdr'");
  fe.mvdr.eps_rel = get_or<double>(obj, "eps_rel", fe.mvdr.eps_rel);
  fe.mvdr.mask_floor = get_or<double>(obj, "mask_floor", fe.mvdr.mask_floor);
  if (fe.mvdr.eps_rel < 0.0)
    throw ConfigError("config: frontend.eps_rel must be >= 0");
  if (fe.mvdr.mask_floor < 0.0 || fe.mvdr.mask_floor > 1.0)
    throw ConfigError("config: frontend.mask_floor must lie in [0, 1]");
  auto ref = obj.find("reference");
  if (ref != obj.end() && !ref->is_null()) {
    if (!ref->is_number_integer())
      throw ConfigError("config: frontend.reference must be an integer or null");
    fe.mvdr.reference = ref->get<int>();
  }
  fe.sf_directions =
      get_or<std::vector<double>>(obj, "sf_directions", fe.sf_directions);
  fe.c_sound = get_or<double>(obj, "c_sound", fe.c_sound);
  if (!(fe.c_sound > 0.0))
    throw ConfigError("config: frontend.c_sound must be > 0");
  return fe;
}

ChannelAugmentPolicy parse_channel_policy(const json& obj) {
  require_keys(obj, "augment.channel",
               {"mode", "c_min", "c_max", "p_keep", "seed"});
  ChannelAugmentPolicy p;
  const std::string mode = get_or<std::string>(obj, "mode", "slice");
  if (mode == "zero")
    p.mode = CaMode::kFreqIndependentZero;
  else if (mode == "slice")
    p.mode = CaMode::kFreqIndependentSlice;
  else if (mode == "freq_dependent")
    p.mode = CaMode::kFreqDependent;
  else
    throw ConfigError(
        "config: augment.channel.mode must be 'zero', 'slice' or "
        "'freq_dependent'");
  p.c_min = get_or<int>(obj, "c_min", 1);
  p.c_max = get_or<int>(obj, "c_max", p.c_min);
  p.p_keep = get_or<double>(obj, "p_keep", 1.0);
  p.seed = get_or<uint64_t>(obj, "seed", 0);
  if (p.mode == CaMode::kFreqDependent) {
    if (!(p.p_keep > 0.0 && p.p_keep <= 1.0))
      throw ConfigError("config: augment.channel.p_keep must lie in (0, 1]");
  } else if (p.c_min < 1 || p.c_min > p.c_max) {
    throw ConfigError("config: need 1 <= c_min <= c_max");
  }
  return p;
}

SpecAugmentPolicy parse_spec_policy(const json& obj) {
  require_keys(obj, "augment.spec", {"f_max", "m_f", "t_max", "m_t", "seed"});
  SpecAugmentPolicy p;
  p.f_max = get_or<int>(obj, "f_max", 0);
  p.m_f = get_or<int>(obj, "m_f", 0);
  p.t_max = get_or<int>(obj, "t_max", 0);
  p.m_t = get_or<int>(obj, "m_t", 0);
  p.seed = get_or<uint64_t>(obj, "seed", 0);
  if (p.f_max < 0 || p.m_f < 0 || p.t_max < 0 || p.m_t < 0)
    throw ConfigError("config: augment.spec values must be >= 0");
  return p;
}

RunConfig::Augment parse_augment(const json& obj) {
  require_keys(obj, "augment", {"channel", "spec"});
  RunConfig::Augment a;
  if (obj.contains("channel") && !obj["channel"].is_null())
    a.channel = parse_channel_policy(obj["channel"]);
  if (obj.contains("spec") && !obj["spec"].is_null())
    a.spec = parse_spec_policy(obj["spec"]);
  return a;
}

RoomSpec parse_room(const json& obj) {
  require_keys(obj, "room",
               {"dims", "reflection_coeff", "source_pos", "noise_pos",
                "noise_positions", "fs", "max_order", "rir_length", "c_sound"});
  RoomSpec room;
  if (obj.contains("dims")) room.dims = parse_vec3(obj["dims"], "room.dims");
  room.reflection_coeff =
      get_or<double>(obj, "reflection_coeff", room.reflection_coeff);
  if (obj.contains("source_pos"))
    room.source_pos = parse_vec3(obj["source_pos"], "room.source_pos");
  if (obj.contains("noise_pos"))
    room.noise_pos = parse_vec3(obj["noise_pos"], "room.noise_pos");
  if (obj.contains("noise_positions")) {
    if (!obj["noise_positions"].is_array())
      throw ConfigError("config: room.noise_positions must be an array");
    for (const auto& v : obj["noise_positions"])
      room.noise_positions.push_back(parse_vec3(v, "room.noise_positions"));
  }
  room.fs = get_or<int>(obj, "fs", room.fs);
  room.max_order = get_or<int>(obj, "max_order", room.max_order);
  room.rir_length = get_or<int>(obj, "rir_length", room.rir_length);
  room.c_sound = get_or<double>(obj, "c_sound", room.c_sound);
  validate(room);
  return room;
}

RunConfig::Array parse_array(const json& obj) {
  require_keys(obj, "array", {"n_mics", "spacing_m", "center", "axis"});
  RunConfig::Array arr;
  arr.n_mics = get_or<int>(obj, "n_mics", arr.n_mics);
  arr.spacing_m = get_or<double>(obj, "spacing_m", arr.spacing_m);
  if (obj.contains("center"))
    arr.center = parse_vec3(obj["center"], "array.center");
  if (obj.contains("axis")) arr.axis = parse_vec3(obj["axis"], "array.axis");
  if (arr.n_mics < 1) throw ConfigError("config: array.n_mics must be >= 1");
  if (!(arr.spacing_m > 0.0) && arr.n_mics > 1)
    throw ConfigError("config: array.spacing_m must be > 0");
  return arr;
}

PresetTable parse_presets(const json& obj) {
  PresetTable table;
  if (!obj.is_object())
    throw ConfigError("config: 'presets' must map names to index arrays");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it->is_array())
      throw ConfigError("config: preset '" + it.key() + "' must be an array");
    std::vector<int> indices;
    for (const auto& v : *it) {
      if (!v.is_number_integer() || v.get<int>() < 0)
        throw ConfigError("config: preset '" + it.key() +
                          "' must hold nonnegative channel indices");
      indices.push_back(v.get<int>());
    }
    table[it.key()] = std::move(indices);
  }
  return table;
}

RunConfig::Simulate parse_simulate(const json& obj) {
  require_keys(obj, "simulate",
               {"num_bundles", "utterance_s", "snr_db", "gain_offset_db_range",
                "self_noise_db", "source_positions", "noise", "seed"});
  RunConfig::Simulate sim;
  sim.num_bundles = get_or<int>(obj, "num_bundles", sim.num_bundles);
  sim.utterance_s = get_or<double>(obj, "utterance_s", sim.utterance_s);
  sim.snr_db = get_optional_db(obj, "snr_db", sim.snr_db);
  sim.gain_offset_db_range =
      get_or<double>(obj, "gain_offset_db_range", sim.gain_offset_db_range);
  sim.self_noise_db = get_optional_db(obj, "self_noise_db", sim.self_noise_db);
  if (obj.contains("source_positions")) {
    if (!obj["source_positions"].is_array())
      throw ConfigError("config: simulate.source_positions must be an array");
    for (const auto& v : obj["source_positions"])
      sim.source_positions.push_back(parse_vec3(v, "simulate.source_positions"));
  }
  sim.noise = get_or<std::string>(obj, "noise", sim.noise);
  sim.seed = get_or<uint64_t>(obj, "seed", sim.seed);
  if (sim.num_bundles < 1)
    throw ConfigError("config: simulate.num_bundles must be >= 1");
  if (!(sim.utterance_s > 0.0))
    throw ConfigError("config: simulate.utterance_s must be > 0");
  if (sim.gain_offset_db_range < 0.0)
    throw ConfigError("config: simulate.gain_offset_db_range must be >= 0");
  return sim;
}

RunConfig::Features parse_features(const json& obj) {
  require_keys(obj, "features", {"n_mels", "f_low", "f_high", "floor"});
  RunConfig::Features f;
  f.n_mels = get_or<int>(obj, "n_mels", f.n_mels);
  f.f_low = get_or<double>(obj, "f_low", f.f_low);
  f.f_high = get_or<double>(obj, "f_high", f.f_high);
  f.floor = get_or<double>(obj, "floor", f.floor);
  if (f.n_mels < 1) throw ConfigError("config: features.n_mels must be >= 1");
  if (!(f.floor > 0.0)) throw ConfigError("config: features.floor must be > 0");
  return f;
}

json parse_text(const std::string& json_text, const std::string& what) {
  try {
    return json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(what + ": invalid JSON: " + e.what());
  }
}

RunConfig parse_config_json(const json& root) {
  require_keys(root, "config",
               {"stft", "sample_rate", "highpass_hz", "frontend", "augment",
                "room", "array", "presets", "simulate", "features"});
  RunConfig cfg;
  if (root.contains("stft")) cfg.stft = parse_stft(root["stft"]);
  cfg.sample_rate = get_or<int>(root, "sample_rate", cfg.sample_rate);
  if (cfg.sample_rate <= 0)
    throw ConfigError("config: sample_rate must be > 0");
  cfg.highpass_hz = get_or<double>(root, "highpass_hz", cfg.highpass_hz);
  if (cfg.highpass_hz < 0.0 || cfg.highpass_hz >= 0.5 * cfg.sample_rate)
    throw ConfigError("config: highpass_hz must lie in [0, sample_rate/2)");
  if (root.contains("frontend")) cfg.frontend = parse_frontend(root["frontend"]);
  if (root.contains("augment")) cfg.augment = parse_augment(root["augment"]);
  if (root.contains("room")) cfg.room = parse_room(root["room"]);
  if (root.contains("array")) cfg.array = parse_array(root["array"]);
  if (root.contains("presets")) cfg.presets = parse_presets(root["presets"]);
  if (root.contains("simulate")) cfg.simulate = parse_simulate(root["simulate"]);
  if (root.contains("features")) cfg.features = parse_features(root["features"]);
  return cfg;
}

}  // namespace

ArrayGeometry RunConfig::geometry() const {
  return ula(array.n_mics, array.spacing_m, array.center, array.axis);
}

RunConfig parse_run_config(const std::string& json_text) {
  return parse_config_json(parse_text(json_text, "config"));
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

SweepManifest parse_sweep_manifest(const std::string& json_text) {
  const json root = parse_text(json_text, "manifest");
  require_keys(root, "manifest",
               {"bundle_dir", "frontends", "presets", "config", "timings",
                "seed"});
  SweepManifest m;
  m.bundle_dir = get_or<std::string>(root, "bundle_dir", "");
  if (m.bundle_dir.empty())
    throw ConfigError("manifest: bundle_dir is required");
  m.frontends = get_or<std::vector<std::string>>(root, "frontends", m.frontends);
  m.presets = get_or<std::vector<std::string>>(root, "presets", m.presets);
  if (root.contains("config")) m.config = parse_config_json(root["config"]);
  m.timings = get_or<bool>(root, "timings", false);
  m.seed = get_or<uint64_t>(root, "seed", 0);
  for (const std::string& fe : m.frontends)
    if (fe != "sf" && fe != "mvdr")
      throw ConfigError("manifest: unknown frontend '" + fe + "'");
  return m;
}

SweepManifest load_sweep_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("manifest: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_manifest(buffer.str());
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace mcse
