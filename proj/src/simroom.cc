// mcse/simroom.cc

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

#include "mcse/simroom.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mcse/error.h"
#include "mcse/fft.h"

namespace mcse {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kSincHalfWidth = 8;

bool strictly_inside(Vec3 p, Vec3 dims) {
  return p.x > 0.0 && p.x < dims.x && p.y > 0.0 && p.y < dims.y && p.z > 0.0 &&
         p.z < dims.z;
}

double energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

// Hann-windowed sinc kernel value at fractional offset x, |x| <= half width.
double windowed_sinc(double x) {
  if (std::abs(x) >= kSincHalfWidth) return 0.0;
  const double win = 0.5 * (1.0 + std::cos(kPi * x / kSincHalfWidth));
  if (x == 0.0) return win;
  return win * std::sin(kPi * x) / (kPi * x);
}
}  // namespace

void validate(const RoomSpec& room) {
  if (!(room.dims.x > 0 && room.dims.y > 0 && room.dims.z > 0))
    throw ConfigError("room: dimensions must be positive");
  if (!(room.reflection_coeff >= 0.0 && room.reflection_coeff < 1.0))
    throw ConfigError("room: reflection coefficient must lie in [0, 1)");
  if (!strictly_inside(room.source_pos, room.dims))
    throw ConfigError("room: source position not strictly inside the room");
  for (const Vec3& p : room.ambient_positions())
    if (!strictly_inside(p, room.dims))
      throw ConfigError("room: noise position not strictly inside the room");
  if (room.fs <= 0) throw ConfigError("room: sample rate must be > 0");
  if (room.max_order < 0) throw ConfigError("room: max_order must be >= 0");
  if (room.rir_length < 1) throw ConfigError("room: rir_length must be >= 1");
  if (!(room.c_sound > 0.0)) throw ConfigError("room: sound speed must be > 0");
}

RirDetail image_rir_detail(const RoomSpec& room, Vec3 mic, Vec3 source) {
  validate(room);
  if (!strictly_inside(mic, room.dims))
    throw DataError("image_rir: microphone not strictly inside the room");
  if (!strictly_inside(source, room.dims))
    throw DataError("image_rir: source not strictly inside the room");

  const double direct = distance(source, mic);
  if (direct < 1e-6)
    throw DataError("image_rir: source and microphone coincide");
  if (room.fs * direct / room.c_sound >= room.rir_length)
    throw DataError("image_rir: rir_length shorter than the direct-path delay");

  RirDetail out;
  out.rir.assign(room.rir_length, 0.0);
  out.order_energy.assign(room.max_order + 1, 0.0);

  // Along each axis the image coordinate is 2 n L + (1 - 2p) s with
  // |2n - p| reflections against that wall pair; total order is the sum
  // over axes and images above max_order are skipped.
  const int n_range = room.max_order / 2 + 1;
  const double dims[3] = {room.dims.x, room.dims.y, room.dims.z};
  const double src[3] = {source.x, source.y, source.z};
  const double mic_p[3] = {mic.x, mic.y, mic.z};

  for (int nx = -n_range; nx <= n_range; ++nx)
    for (int px = 0; px <= 1; ++px) {
      const int rx = std::abs(2 * nx - px);
      if (rx > room.max_order) continue;
      const double ix = 2.0 * nx * dims[0] + (1 - 2 * px) * src[0];
      for (int ny = -n_range; ny <= n_range; ++ny)
        for (int py = 0; py <= 1; ++py) {
          const int ry = std::abs(2 * ny - py);
          if (rx + ry > room.max_order) continue;
          const double iy = 2.0 * ny * dims[1] + (1 - 2 * py) * src[1];
          for (int nz = -n_range; nz <= n_range; ++nz)
            for (int pz = 0; pz <= 1; ++pz) {
              const int order = rx + ry + std::abs(2 * nz - pz);
              if (order > room.max_order) continue;
              const double iz = 2.0 * nz * dims[2] + (1 - 2 * pz) * src[2];

              const double dx = ix - mic_p[0], dy = iy - mic_p[1],
                           dz = iz - mic_p[2];
              const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
              if (dist < 1e-6) continue;
              const double amp = std::pow(room.reflection_coeff, order) /
                                 (4.0 * kPi * dist);
              const double delay = room.fs * dist / room.c_sound;
              if (delay >= room.rir_length + kSincHalfWidth) continue;

              out.order_energy[order] += amp * amp;
              const int lo = std::max(
                  0, static_cast<int>(std::ceil(delay)) - kSincHalfWidth);
              const int hi = std::min(
                  room.rir_length - 1,
                  static_cast<int>(std::floor(delay)) + kSincHalfWidth);
              for (int k = lo; k <= hi; ++k)
                out.rir[k] += amp * windowed_sinc(k - delay);
            }
        }
    }
  return out;
}

std::vector<double> image_rir(const RoomSpec& room, Vec3 mic, Vec3 source) {
  return image_rir_detail(room, mic, source).rir;
}

namespace {

// Per-mic convolution of a mono source with its room response, truncated
// to the source length so every image shares the mixture's extent.
std::vector<std::vector<double>> project_to_array(
    const std::vector<double>& mono, const RoomSpec& room,
    const ArrayGeometry& geom, Vec3 source) {
  std::vector<std::vector<double>> images;
  images.reserve(geom.size());
  for (const Vec3& mic : geom.mics) {
    std::vector<double> rir = image_rir(room, mic, source);
    std::vector<double> img = fft_convolve(mono, rir);
    img.resize(mono.size());
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace

MixtureBundle synthesize(const Waveform& clean_mono, const RoomSpec& room,
                         const ArrayGeometry& geom, const Waveform& noise_mono,
                         const SynthesisParams& params, Rng& rng) {
  validate(room);
  validate(geom);
  validate(clean_mono);
  if (clean_mono.channels() != 1)
    throw std::invalid_argument("synthesize: clean source must be mono");
  if (clean_mono.sample_rate != room.fs)
    throw DataError("synthesize: clean sample rate differs from room.fs");
  const std::vector<double>& clean = clean_mono.samples[0];
  if (energy(clean) == 0.0)
    throw DataError("synthesize: clean source has zero energy");

  const long n = static_cast<long>(clean.size());
  const int channels = geom.size();

  MixtureBundle bundle;
  bundle.clean_image.sample_rate = room.fs;
  bundle.clean_image.samples = project_to_array(clean, room, geom,
                                                room.source_pos);
  bundle.noise_image.sample_rate = room.fs;
  bundle.noise_image.samples.assign(channels, std::vector<double>(n, 0.0));

  double clean_energy = 0.0;
  for (const auto& ch : bundle.clean_image.samples) clean_energy += energy(ch);

  if (params.snr_db.has_value() && std::isfinite(*params.snr_db)) {
    validate(noise_mono);
    if (noise_mono.channels() != 1)
      throw std::invalid_argument("synthesize: noise source must be mono");
    if (noise_mono.sample_rate != room.fs)
      throw DataError("synthesize: noise sample rate differs from room.fs");
    const std::vector<double>& noise_src = noise_mono.samples[0];
    if (energy(noise_src) == 0.0)
      throw DataError("synthesize: noise source has zero energy");

    // Tile or trim the noise to the utterance length before projection.
    std::vector<double> tiled(n);
    for (long i = 0; i < n; ++i) tiled[i] = noise_src[i % noise_src.size()];

    // Each ambient source plays a circularly shifted copy of the noise;
    // shifts of a fraction of the utterance decorrelate the sources.
    const std::vector<Vec3> positions = room.ambient_positions();
    const long num_sources = static_cast<long>(positions.size());
    std::vector<std::vector<double>> ambient(
        channels, std::vector<double>(n, 0.0));
    for (long k = 0; k < num_sources; ++k) {
      std::vector<double> shifted(n);
      const long shift = (k * n) / num_sources;
      for (long i = 0; i < n; ++i) shifted[i] = tiled[(i + shift) % n];
      auto images = project_to_array(shifted, room, geom, positions[k]);
      for (int c = 0; c < channels; ++c)
        for (long i = 0; i < n; ++i) ambient[c][i] += images[c][i];
    }
    double noise_energy = 0.0;
    for (const auto& ch : ambient) noise_energy += energy(ch);
    if (noise_energy == 0.0)
      throw DataError("synthesize: projected noise has zero energy");
    const double scale = std::sqrt(
        clean_energy / (noise_energy * std::pow(10.0, *params.snr_db / 10.0)));
    for (int c = 0; c < channels; ++c)
      for (long i = 0; i < n; ++i)
        bundle.noise_image.samples[c][i] = scale * ambient[c][i];
    bundle.snr_db = *params.snr_db;
  } else {
    bundle.snr_db = std::numeric_limits<double>::infinity();
  }

  if (params.self_noise_db.has_value() && std::isfinite(*params.self_noise_db)) {
    for (int c = 0; c < channels; ++c) {
      const double level = energy(bundle.clean_image.samples[c]) / n;
      const double sigma =
          std::sqrt(level / std::pow(10.0, *params.self_noise_db / 10.0));
      for (long i = 0; i < n; ++i)
        bundle.noise_image.samples[c][i] += sigma * rng.next_gaussian();
    }
  }

  bundle.gains.resize(channels);
  const double r = params.gain_offset_db_range;
  if (r < 0.0)
    throw std::invalid_argument("synthesize: gain offset range must be >= 0");
  for (int c = 0; c < channels; ++c) {
    const double offset_db = -r + 2.0 * r * rng.next_double();
    bundle.gains[c] = std::pow(10.0, offset_db / 20.0);
  }

  bundle.mixture.sample_rate = room.fs;
  bundle.mixture.samples.assign(channels, std::vector<double>(n, 0.0));
  for (int c = 0; c < channels; ++c)
    for (long i = 0; i < n; ++i)
      bundle.mixture.samples[c][i] =
          bundle.gains[c] *
          (bundle.clean_image.samples[c][i] + bundle.noise_image.samples[c][i]);
  return bundle;
}

std::pair<PerChannelMasks, PerChannelMasks> oracle_masks(
    const MixtureBundle& bundle, const StftConfig& cfg) {
  const ComplexSpectrum speech = stft(bundle.clean_image, cfg);
  const ComplexSpectrum noise = stft(bundle.noise_image, cfg);

  PerChannelMasks m_s, m_n;
  m_s.frames = m_n.frames = speech.frames;
  m_s.bins = m_n.bins = speech.bins;
  m_s.channels = m_n.channels = speech.channels;
  m_s.v.resize(speech.data.size());
  m_n.v.resize(speech.data.size());
  for (size_t i = 0; i < speech.data.size(); ++i) {
    const double ps = std::norm(speech.data[i]);
    const double pn = std::norm(noise.data[i]);
    const double m = (ps + pn > 0.0) ? ps / (ps + pn) : 0.5;
    m_s.v[i] = m;
    m_n.v[i] = 1.0 - m;
  }
  return {std::move(m_s), std::move(m_n)};
}

const PresetTable& default_presets() {
  static const PresetTable presets = {
      {"2", {7, 8}},
      {"4", {6, 7, 8, 9}},
      {"4S1", {4, 6, 8, 10}},
      {"4S3", {2, 6, 10, 14}},
      {"7", {4, 5, 6, 7, 8, 9, 10}},
      {"7S1", {2, 4, 6, 8, 10, 12, 14}},
      {"16", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
  };
  return presets;
}

ChannelSubset array_subset(int num_channels, const std::string& preset,
                           const PresetTable* custom) {
  const std::vector<int>* indices = nullptr;
  if (custom != nullptr) {
    auto it = custom->find(preset);
    if (it != custom->end()) indices = &it->second;
  }
  if (indices == nullptr) {
    auto it = default_presets().find(preset);
    if (it == default_presets().end())
      throw ConfigError("array_subset: unknown preset '" + preset + "'");
    indices = &it->second;
  }
  ChannelSubset z;
  z.original_c = num_channels;
  z.kept = *indices;
  for (int c : z.kept)
    if (c >= num_channels)
      throw ConfigError("array_subset: preset '" + preset +
                        "' is not defined for " +
                        std::to_string(num_channels) + " channels");
  validate(z);
  return z;
}

Waveform white_noise(long num_samples, int sample_rate, Rng& rng) {
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(1, std::vector<double>(num_samples));
  for (auto& v : w.samples[0]) v = rng.next_gaussian();
  return w;
}

Waveform pink_noise(long num_samples, int sample_rate, Rng& rng) {
  // Kellet's three-pole pinking filter over white noise.
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(1, std::vector<double>(num_samples));
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (auto& v : w.samples[0]) {
    const double white = rng.next_gaussian();
    b0 = 0.99765 * b0 + white * 0.0990460;
    b1 = 0.96300 * b1 + white * 0.2965164;
    b2 = 0.57000 * b2 + white * 1.0526913;
    v = 0.25 * (b0 + b1 + b2 + white * 0.1848);
  }
  return w;
}

Waveform speech_like(double duration_s, int sample_rate, Rng& rng) {
  if (!(duration_s > 0.0) || sample_rate <= 0)
    throw std::invalid_argument("speech_like: bad duration or sample rate");
  const long n = static_cast<long>(duration_s * sample_rate);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(1, std::vector<double>(n, 0.0));
  std::vector<double>& x = w.samples[0];

  const double f0_base = 90.0 + 190.0 * rng.next_double();
  const int harmonics = 12 + static_cast<int>(rng.next_int(0, 8));
  std::vector<double> h_amp(harmonics), h_phase(harmonics);
  for (int k = 0; k < harmonics; ++k) {
    // Rough spectral tilt with two formant-ish bumps.
    const double f = f0_base * (k + 1);
    const double bump = std::exp(-std::pow((f - 700.0) / 400.0, 2)) +
                        0.6 * std::exp(-std::pow((f - 1800.0) / 600.0, 2));
    h_amp[k] = (0.3 + bump) / (k + 1);
    h_phase[k] = 2.0 * kPi * rng.next_double();
  }

  // Syllabic on/off bursts around 3-5 Hz with noisy onsets.
  const double syllable_hz = 3.0 + 2.0 * rng.next_double();
  const double vibrato_hz = 4.0 + 2.0 * rng.next_double();
  double noise_state = 0.0;
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double gate =
        0.5 * (1.0 + std::sin(2.0 * kPi * syllable_hz * t +
                              2.5 * std::sin(2.0 * kPi * 0.31 * t)));
    const double env = gate * gate;
    const double f0 = f0_base * (1.0 + 0.02 * std::sin(2.0 * kPi * vibrato_hz * t));
    double s = 0.0;
    for (int k = 0; k < harmonics; ++k)
      s += h_amp[k] * std::sin(2.0 * kPi * f0 * (k + 1) * t + h_phase[k]);
    // First-order high-passed noise as a consonant-like component.
    const double white = rng.next_gaussian();
    const double hf = white - noise_state;
    noise_state = 0.7 * noise_state + 0.3 * white;
    x[i] = env * (0.8 * s + 0.15 * hf);
  }
  return w;
}

}  // namespace mcse
