// mcse/config.h

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

#ifndef MCSE_CONFIG_H_
#define MCSE_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcse/augment.h"
#include "mcse/geometry.h"
#include "mcse/mvdr.h"
#include "mcse/signal.h"
#include "mcse/simroom.h"

namespace mcse {

inline constexpr char kVersion[] = "0.1.0";

// JSON run configuration. Parsing is strict: unknown keys anywhere are
// rejected with a ConfigError naming the offending key, and every value
// is range-checked before any processing starts.
struct RunConfig {
  StftConfig stft;
  int sample_rate = 16000;
  double highpass_hz = 50.0;  // 0 disables the preprocessing high-pass

  struct Frontend {
    std::string type = "mvdr";  // "sf" or "mvdr"
    MvdrOptions mvdr;
    std::vector<double> sf_directions;  // empty -> 11 evenly in [0, 180]
    double c_sound = 343.0;
  } frontend;

  struct Augment {
    std::optional<ChannelAugmentPolicy> channel;
    std::optional<SpecAugmentPolicy> spec;
  } augment;

  RoomSpec room;

  struct Array {
    int n_mics = 16;
    double spacing_m = 0.033;
    Vec3 center{3.0, 1.0, 1.2};
    Vec3 axis{1.0, 0.0, 0.0};
  } array;

  PresetTable presets;  // overrides/extends the built-in subset presets

  struct Simulate {
    int num_bundles = 20;
    double utterance_s = 3.0;
    std::optional<double> snr_db = 0.0;   // null in JSON disables noise
    double gain_offset_db_range = 3.0;
    std::optional<double> self_noise_db = 30.0;  // null disables
    std::vector<Vec3> source_positions;  // empty -> room.source_pos only
    std::string noise = "white";         // "white", "pink" or a WAV path
    uint64_t seed = 1234;
  } simulate;

  struct Features {
    int n_mels = 80;
    double f_low = 20.0;
    double f_high = 7600.0;
    double floor = 1e-10;
  } features;

  ArrayGeometry geometry() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Sweep manifest for the eval command.
struct SweepManifest {
  std::string bundle_dir;
  std::vector<std::string> frontends{"mvdr"};
  std::vector<std::string> presets{"16"};
  RunConfig config;  // stft/frontend/array/augment/presets sections apply
  bool timings = false;
  uint64_t seed = 0;
};

SweepManifest parse_sweep_manifest(const std::string& json_text);
SweepManifest load_sweep_manifest(const std::string& path);

// FNV-1a 64-bit hash, used to fingerprint config bytes in provenance
// sidecars.
uint64_t fnv1a64(const std::string& bytes);

}  // namespace mcse

#endif  // MCSE_CONFIG_H_
