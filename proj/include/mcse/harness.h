// mcse/harness.h

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

#ifndef MCSE_HARNESS_H_
#define MCSE_HARNESS_H_

#include <optional>
#include <string>
#include <vector>

#include "mcse/augment.h"
#include "mcse/geometry.h"
#include "mcse/mvdr.h"
#include "mcse/signal.h"
#include "mcse/simroom.h"

namespace mcse {

// Scale-invariant SDR in dB: the estimate is projected onto the reference
// and the energy ratio of projection to residual is reported, capped at
// 100 dB. Throws on an all-zero reference.
double si_sdr_db(const std::vector<double>& est, const std::vector<double>& ref);
double si_sdr_db(const std::vector<Cplx>& est, const std::vector<Cplx>& ref);

// Plain (scale-sensitive) SNR in dB, capped at 100 dB.
double snr_db(const std::vector<double>& est, const std::vector<double>& ref);
double snr_db(const std::vector<Cplx>& est, const std::vector<Cplx>& ref);

// Frame-wise SNR averaged over frames with signal, each frame clamped to
// [-10, 35] dB.
double segmental_snr_db(const std::vector<double>& est,
                        const std::vector<double>& ref, int frame_len = 256);

// One sweep row: a (bundle, frontend, preset) evaluation.
struct EvalRecord {
  std::string config_name;      // preset name
  std::string frontend;         // "sf" or "mvdr"
  std::string augment_policy;   // "none" or a short policy summary
  int bundle = 0;
  double input_snr_db = 0.0;    // SI-SDR of the raw reference-channel mixture
  double output_snr_db = 0.0;   // plain SNR of the enhanced output
  double si_sdr_db = 0.0;       // SI-SDR of the enhanced output
  uint64_t seed = 0;
  double wall_time_ms = 0.0;
  std::string status;           // "ok" or "error: ..."
};

struct SweepOptions {
  StftConfig stft;
  MvdrOptions mvdr;
  std::vector<double> sf_directions;  // empty -> default 11 in [0, 180] deg
  double c_sound = 343.0;
  // Full-array geometry matching the bundles; required for the sf frontend.
  ArrayGeometry geometry;
  // Optional ChannelAugment applied after preset subsetting.
  std::optional<ChannelAugmentPolicy> augment;
  const PresetTable* presets = nullptr;
  uint64_t seed = 0;
  // Wall-clock timing makes the CSV non-reproducible, so it is opt-in;
  // when false the wall_time_ms column is written as 0.
  bool timings = false;
};

// Runs every (bundle, frontend, preset) combination. A failing row is
// recorded with an error status, never dropped. Row order is sorted by
// (frontend, preset list position, bundle).
std::vector<EvalRecord> sweep(const std::vector<MixtureBundle>& bundles,
                              const std::vector<std::string>& frontends,
                              const std::vector<std::string>& presets,
                              const SweepOptions& opts);

// RFC-4180 CSV with a header row; column order is fixed.
std::string sweep_csv(const std::vector<EvalRecord>& records);

struct BenchRow {
  int channels = 0;
  double median_ms = 0.0;
  double p90_ms = 0.0;
};

// Median/p90 wall time of one full frontend pass over a synthetic
// frames x bins spectrum, per channel count. One warm-up rep is excluded;
// reps must be >= 5.
std::vector<BenchRow> bench_frontend(const std::string& frontend,
                                     const std::vector<int>& channel_counts,
                                     int reps, int frames = 500, int bins = 257,
                                     uint64_t seed = 0xb5eed);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace mcse

#endif  // MCSE_HARNESS_H_
