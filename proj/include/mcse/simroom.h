// mcse/simroom.h

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

#ifndef MCSE_SIMROOM_H_
#define MCSE_SIMROOM_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcse/augment.h"
#include "mcse/geometry.h"
#include "mcse/mvdr.h"
#include "mcse/rng.h"
#include "mcse/signal.h"

namespace mcse {

// Shoebox room for the image method. Walls share one frequency-independent
// reflection coefficient. The speech source sits at source_pos. Ambient
// noise comes from noise_positions (noise_pos alone when that list is
// empty); several spread-out sources make the noise field spatially
// diverse the way room ambience is, where a single point interferer
// would leave the noise covariance nearly rank-1.
struct RoomSpec {
  Vec3 dims{6.0, 5.0, 3.0};
  double reflection_coeff = 0.5;
  Vec3 source_pos{2.0, 3.0, 1.5};
  Vec3 noise_pos{5.0, 1.0, 1.8};
  std::vector<Vec3> noise_positions;
  int fs = 16000;
  int max_order = 6;
  int rir_length = 4096;
  double c_sound = 343.0;

  std::vector<Vec3> ambient_positions() const {
    return noise_positions.empty() ? std::vector<Vec3>{noise_pos}
                                   : noise_positions;
  }
};

void validate(const RoomSpec& room);

// Image-method room impulse response from `source` to `mic`: every image
// up to max_order total reflections contributes
// beta^order / (4 pi dist) at delay dist/c, placed with a +-8-tap
// windowed-sinc fractional-delay kernel so inter-mic phase stays accurate.
std::vector<double> image_rir(const RoomSpec& room, Vec3 mic, Vec3 source);
inline std::vector<double> image_rir(const RoomSpec& room, Vec3 mic) {
  return image_rir(room, mic, room.source_pos);
}

// Same, plus the summed squared image amplitude per reflection order.
struct RirDetail {
  std::vector<double> rir;
  std::vector<double> order_energy;
};
RirDetail image_rir_detail(const RoomSpec& room, Vec3 mic, Vec3 source);

struct SynthesisParams {
  // Ambient-noise level relative to the summed clean images; unset
  // disables the ambient noise source entirely.
  std::optional<double> snr_db = 0.0;
  // Per-mic gain offsets drawn uniformly from +-range (dB), applied last.
  double gain_offset_db_range = 0.0;
  // White mic self-noise this many dB below each channel's clean image;
  // unset disables it.
  std::optional<double> self_noise_db = 30.0;
};

// mixture = gains (*) (clean_image + noise_image), exactly, per sample.
struct MixtureBundle {
  Waveform mixture;
  Waveform clean_image;
  Waveform noise_image;
  std::vector<double> gains;
  double snr_db = 0.0;  // +inf when the ambient source was disabled
};

// Convolves the mono clean/noise sources with per-mic RIRs, scales the
// ambient noise to the requested SNR (energies summed over channels),
// adds per-channel self-noise, then applies the gain offsets.
MixtureBundle synthesize(const Waveform& clean_mono, const RoomSpec& room,
                         const ArrayGeometry& geom, const Waveform& noise_mono,
                         const SynthesisParams& params, Rng& rng);

// Ideal ratio masks per channel from the bundle's clean and noise images:
// m_s = |S|^2 / (|S|^2 + |N|^2) (0.5 where both vanish), m_n = 1 - m_s.
std::pair<PerChannelMasks, PerChannelMasks> oracle_masks(
    const MixtureBundle& bundle, const StftConfig& cfg);

// Named channel subsets of the 16-mic ULA: 2, 4, 4S1, 4S3, 7, 7S1, 16.
// "SkK" keeps every (k+1)-th mic, widening the aperture at a fixed count.
// A custom table overrides or extends the built-ins.
using PresetTable = std::map<std::string, std::vector<int>>;
const PresetTable& default_presets();
ChannelSubset array_subset(int num_channels, const std::string& preset,
                           const PresetTable* custom = nullptr);

// Deterministic test/demo sources.
Waveform white_noise(long num_samples, int sample_rate, Rng& rng);
Waveform pink_noise(long num_samples, int sample_rate, Rng& rng);
// Harmonic voiced bursts with noise onsets and pauses; broadband enough
// to exercise beamforming across the band.
Waveform speech_like(double duration_s, int sample_rate, Rng& rng);

}  // namespace mcse

#endif  // MCSE_SIMROOM_H_
