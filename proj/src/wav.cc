// mcse/wav.cc

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

#include "mcse/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "mcse/error.h"

namespace mcse {

namespace {

// All RIFF fields are little-endian; this code assumes a little-endian
// host (checked once at file open).
bool host_is_little_endian() {
  const uint16_t probe = 1;
  uint8_t byte;
  std::memcpy(&byte, &probe, 1);
  return byte == 1;
}

template <typename T>
T read_le(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

Waveform read_wav(const std::string& path) {
  if (!host_is_little_endian())
    throw DataError("wav: big-endian hosts are not supported");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("wav: cannot open '" + path + "'");

  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0)
    throw DataError("wav: '" + path + "' is not a RIFF file");
  read_le<uint32_t>(in);  // riff size, unused
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0)
    throw DataError("wav: '" + path + "' is not a WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::vector<char> payload;

  while (in.read(tag, 4)) {
    const uint32_t chunk_size = read_le<uint32_t>(in);
    if (!in) break;
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_le<uint16_t>(in);
      channels = read_le<uint16_t>(in);
      sample_rate = read_le<uint32_t>(in);
      read_le<uint32_t>(in);  // byte rate
      read_le<uint16_t>(in);  // block align
      bits = read_le<uint16_t>(in);
      if (chunk_size > 16) in.ignore(chunk_size - 16);
      if (format == kFormatExtensible)
        // The sub-format GUID's first two bytes hold the real format code,
        // already skipped above; reject rather than guess.
        throw DataError("wav: WAVE_FORMAT_EXTENSIBLE is not supported");
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      payload.resize(chunk_size);
      in.read(payload.data(), chunk_size);
      if (static_cast<uint32_t>(in.gcount()) != chunk_size)
        throw DataError("wav: truncated data chunk in '" + path + "'");
      break;
    } else {
      in.ignore(chunk_size + (chunk_size & 1));
    }
  }

  if (!have_fmt || payload.empty())
    throw DataError("wav: missing fmt or data chunk in '" + path + "'");
  if (channels < 1 || channels > 16)
    throw DataError("wav: unsupported channel count " + std::to_string(channels));
  if (sample_rate == 0) throw DataError("wav: zero sample rate");

  const bool is_float = (format == kFormatFloat && bits == 32);
  const bool is_pcm16 = (format == kFormatPcm && bits == 16);
  if (!is_float && !is_pcm16)
    throw DataError("wav: only PCM16 and float32 are supported (format=" +
                    std::to_string(format) + ", bits=" + std::to_string(bits) +
                    ")");

  const size_t bytes_per_sample = is_float ? 4 : 2;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t num_frames = payload.size() / frame_bytes;

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.assign(channels, std::vector<double>(num_frames));
  const char* p = payload.data();
  for (size_t i = 0; i < num_frames; ++i)
    for (int c = 0; c < channels; ++c) {
      if (is_float) {
        float v;
        std::memcpy(&v, p, 4);
        w.samples[c][i] = v;
        p += 4;
      } else {
        int16_t v;
        std::memcpy(&v, p, 2);
        w.samples[c][i] = v / 32768.0;
        p += 2;
      }
    }
  return w;
}

void write_wav(const std::string& path, const Waveform& w, WavFormat format) {
  if (!host_is_little_endian())
    throw DataError("wav: big-endian hosts are not supported");
  validate(w);
  const int channels = w.channels();
  if (channels < 1 || channels > 16)
    throw DataError("wav: unsupported channel count " + std::to_string(channels));
  const long num_frames = w.num_samples();

  const bool is_float = format == WavFormat::kFloat32;
  const uint16_t bits = is_float ? 32 : 16;
  const uint32_t data_bytes =
      static_cast<uint32_t>(num_frames * channels * (bits / 8));

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("wav: cannot write '" + tmp + "'");

    out.write("RIFF", 4);
    write_le<uint32_t>(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_le<uint32_t>(out, 16);
    write_le<uint16_t>(out, is_float ? kFormatFloat : kFormatPcm);
    write_le<uint16_t>(out, static_cast<uint16_t>(channels));
    write_le<uint32_t>(out, static_cast<uint32_t>(w.sample_rate));
    write_le<uint32_t>(out,
                       static_cast<uint32_t>(w.sample_rate * channels * (bits / 8)));
    write_le<uint16_t>(out, static_cast<uint16_t>(channels * (bits / 8)));
    write_le<uint16_t>(out, bits);
    out.write("data", 4);
    write_le<uint32_t>(out, data_bytes);

    for (long i = 0; i < num_frames; ++i)
      for (int c = 0; c < channels; ++c) {
        if (is_float) {
          write_le<float>(out, static_cast<float>(w.samples[c][i]));
        } else {
          const double scaled =
              std::round(std::clamp(w.samples[c][i], -1.0, 1.0) * 32768.0);
          write_le<int16_t>(out, static_cast<int16_t>(
                                     std::clamp(scaled, -32768.0, 32767.0)));
        }
      }
    if (!out) throw DataError("wav: short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mcse
