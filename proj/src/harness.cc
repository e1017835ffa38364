// mcse/harness.cc

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

#include "mcse/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mcse/error.h"
#include "mcse/sf.h"

namespace mcse {

namespace {

constexpr double kSdrCapDb = 100.0;

double ratio_to_db(double num, double den) {
  if (den <= 0.0) return kSdrCapDb;
  const double db = 10.0 * std::log10(num / den);
  return std::min(db, kSdrCapDb);
}

template <typename T>
double energy_of(const std::vector<T>& x) {
  double e = 0.0;
  for (const T& v : x) e += std::norm(Cplx(v));
  return e;
}

}  // namespace

double si_sdr_db(const std::vector<double>& est,
                 const std::vector<double>& ref) {
  if (est.size() != ref.size())
    throw std::invalid_argument("si_sdr: length mismatch");
  double rr = 0.0, re = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    rr += ref[i] * ref[i];
    re += ref[i] * est[i];
  }
  if (rr == 0.0) throw std::invalid_argument("si_sdr: zero reference");
  const double alpha = re / rr;
  double target = 0.0, resid = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    const double t = alpha * ref[i];
    const double r = est[i] - t;
    target += t * t;
    resid += r * r;
  }
  return ratio_to_db(target, resid);
}

double si_sdr_db(const std::vector<Cplx>& est, const std::vector<Cplx>& ref) {
  if (est.size() != ref.size())
    throw std::invalid_argument("si_sdr: length mismatch");
  double rr = 0.0;
  Cplx re(0, 0);
  for (size_t i = 0; i < ref.size(); ++i) {
    rr += std::norm(ref[i]);
    re += std::conj(ref[i]) * est[i];
  }
  if (rr == 0.0) throw std::invalid_argument("si_sdr: zero reference");
  const Cplx alpha = re / rr;
  double target = 0.0, resid = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    const Cplx t = alpha * ref[i];
    target += std::norm(t);
    resid += std::norm(est[i] - t);
  }
  return ratio_to_db(target, resid);
}

double snr_db(const std::vector<double>& est, const std::vector<double>& ref) {
  if (est.size() != ref.size())
    throw std::invalid_argument("snr: length mismatch");
  const double rr = energy_of(ref);
  if (rr == 0.0) throw std::invalid_argument("snr: zero reference");
  double resid = 0.0;
  for (size_t i = 0; i < ref.size(); ++i)
    resid += (est[i] - ref[i]) * (est[i] - ref[i]);
  return ratio_to_db(rr, resid);
}

double snr_db(const std::vector<Cplx>& est, const std::vector<Cplx>& ref) {
  if (est.size() != ref.size())
    throw std::invalid_argument("snr: length mismatch");
  const double rr = energy_of(ref);
  if (rr == 0.0) throw std::invalid_argument("snr: zero reference");
  double resid = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) resid += std::norm(est[i] - ref[i]);
  return ratio_to_db(rr, resid);
}

double segmental_snr_db(const std::vector<double>& est,
                        const std::vector<double>& ref, int frame_len) {
  if (est.size() != ref.size())
    throw std::invalid_argument("segmental_snr: length mismatch");
  if (frame_len < 1) throw std::invalid_argument("segmental_snr: bad frame length");
  if (energy_of(ref) == 0.0)
    throw std::invalid_argument("segmental_snr: zero reference");
  double sum = 0.0;
  int count = 0;
  for (size_t start = 0; start + frame_len <= ref.size(); start += frame_len) {
    double rr = 0.0, resid = 0.0;
    for (int i = 0; i < frame_len; ++i) {
      const double r = ref[start + i];
      const double d = est[start + i] - r;
      rr += r * r;
      resid += d * d;
    }
    if (rr == 0.0) continue;
    double db = (resid == 0.0) ? 35.0 : 10.0 * std::log10(rr / resid);
    sum += std::clamp(db, -10.0, 35.0);
    ++count;
  }
  if (count == 0) throw DataError("segmental_snr: no frames with signal");
  return sum / count;
}

namespace {

std::string augment_summary(const std::optional<ChannelAugmentPolicy>& policy) {
  if (!policy) return "none";
  std::ostringstream os;
  switch (policy->mode) {
    case CaMode::kFreqIndependentZero:
      os << "zero(c_min=" << policy->c_min << ",c_max=" << policy->c_max << ")";
      break;
    case CaMode::kFreqIndependentSlice:
      os << "slice(c_min=" << policy->c_min << ",c_max=" << policy->c_max << ")";
      break;
    case CaMode::kFreqDependent:
      os << "fd(p_keep=" << policy->p_keep << ")";
      break;
  }
  return os.str();
}

// Spectrum of one original channel of a multi-channel spectrum, flattened.
std::vector<Cplx> channel_of(const ComplexSpectrum& spec, int channel) {
  std::vector<Cplx> out(static_cast<size_t>(spec.frames) * spec.bins);
  for (int t = 0; t < spec.frames; ++t)
    for (int f = 0; f < spec.bins; ++f)
      out[static_cast<size_t>(t) * spec.bins + f] = spec.at(t, f, channel);
  return out;
}

std::vector<double> power_flat(const PowerSpectrum& p) { return p.v; }

std::vector<double> magnitude_power_of(const std::vector<Cplx>& spec) {
  std::vector<double> out(spec.size());
  for (size_t i = 0; i < spec.size(); ++i) out[i] = std::norm(spec[i]);
  return out;
}

struct RowResult {
  double input_snr = 0.0, output_snr = 0.0, si_sdr = 0.0, wall_ms = 0.0;
};

}  // namespace

std::vector<EvalRecord> sweep(const std::vector<MixtureBundle>& bundles,
                              const std::vector<std::string>& frontends,
                              const std::vector<std::string>& presets,
                              const SweepOptions& opts) {
  validate(opts.stft);
  std::vector<std::string> frontends_sorted = frontends;
  std::sort(frontends_sorted.begin(), frontends_sorted.end());

  const std::vector<double> directions =
      opts.sf_directions.empty() ? default_look_directions()
                                 : opts.sf_directions;

  std::vector<EvalRecord> records;
  uint64_t row_counter = 0;
  for (const std::string& frontend : frontends_sorted) {
    for (size_t preset_idx = 0; preset_idx < presets.size(); ++preset_idx) {
      const std::string& preset = presets[preset_idx];
      for (size_t b = 0; b < bundles.size(); ++b, ++row_counter) {
        const MixtureBundle& bundle = bundles[b];
        EvalRecord rec;
        rec.config_name = preset;
        rec.frontend = frontend;
        rec.augment_policy = augment_summary(opts.augment);
        rec.bundle = static_cast<int>(b);
        rec.seed = opts.seed;
        rec.status = "ok";
        try {
          const int total_c = bundle.mixture.channels();
          ChannelSubset subset = array_subset(total_c, preset, opts.presets);

          ComplexSpectrum x_full = stft(bundle.mixture, opts.stft);
          ComplexSpectrum x = ca_slice(x_full, subset);
          auto [mask_s_full, mask_n_full] = oracle_masks(bundle, opts.stft);
          PerChannelMasks mask_s = slice_masks(mask_s_full, subset);
          PerChannelMasks mask_n = slice_masks(mask_n_full, subset);
          // Original channel index per column of x.
          std::vector<int> orig = subset.kept;

          if (opts.augment) {
            Rng row_rng = Rng(opts.augment->seed).split(row_counter);
            switch (opts.augment->mode) {
              case CaMode::kFreqDependent: {
                auto [xa, mask] =
                    ca_freq_dependent(x, opts.augment->p_keep, row_rng);
                x = std::move(xa);
                break;
              }
              case CaMode::kFreqIndependentSlice: {
                ChannelSubset z =
                    ca_sample_subset(x.channels, *opts.augment, row_rng);
                x = ca_slice(x, z);
                mask_s = slice_masks(mask_s, z);
                mask_n = slice_masks(mask_n, z);
                std::vector<int> orig2;
                for (int k : z.kept) orig2.push_back(orig[k]);
                orig = std::move(orig2);
                break;
              }
              case CaMode::kFreqIndependentZero: {
                if (frontend == "mvdr")
                  throw DataError(
                      "zeroed channels make the noise PSD singular; use "
                      "slice mode with mvdr");
                ChannelSubset z =
                    ca_sample_subset(x.channels, *opts.augment, row_rng);
                x = ca_zero(x, z);
                std::vector<int> orig2;
                for (int k : z.kept) orig2.push_back(orig[k]);
                orig = std::move(orig2);
                break;
              }
            }
          }

          const ComplexSpectrum clean_spec = stft(bundle.clean_image, opts.stft);
          RowResult row;
          const auto t0 = std::chrono::steady_clock::now();
          if (frontend == "mvdr") {
            MvdrResult res = mvdr_pipeline(x, mask_s, mask_n, opts.mvdr);
            const auto t1 = std::chrono::steady_clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

            const int ref_orig = orig[res.coeffs.reference];
            std::vector<Cplx> reference = channel_of(clean_spec, ref_orig);
            for (Cplx& v : reference) v *= bundle.gains[ref_orig];
            const std::vector<Cplx> enhanced = res.enhanced.data;
            row.input_snr = si_sdr_db(channel_of(x_full, ref_orig), reference);
            row.output_snr = snr_db(enhanced, reference);
            row.si_sdr = si_sdr_db(enhanced, reference);
          } else if (frontend == "sf") {
            if (opts.geometry.mics.empty())
              throw DataError("sf frontend needs the array geometry");
            // Zero mode keeps the tensor width, so the filter stays full
            // width too (zeroed channels contribute nothing); slice mode
            // narrows both.
            const std::vector<int>& weight_channels =
                (static_cast<int>(orig.size()) != x.channels) ? subset.kept
                                                              : orig;
            ArrayGeometry sub_geom = subset_geometry(opts.geometry, weight_channels);
            SfWeights w = sf_init_das(sub_geom, directions, opts.stft,
                                      bundle.mixture.sample_rate, opts.c_sound);
            PowerSpectrum pooled = sf_pool(sf_forward(x, w));
            const auto t1 = std::chrono::steady_clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

            const int ref_orig = orig[0];
            std::vector<Cplx> reference = channel_of(clean_spec, ref_orig);
            for (Cplx& v : reference) v *= bundle.gains[ref_orig];
            const std::vector<double> ref_power = magnitude_power_of(reference);
            row.input_snr = si_sdr_db(
                magnitude_power_of(channel_of(x_full, ref_orig)), ref_power);
            row.output_snr = snr_db(power_flat(pooled), ref_power);
            row.si_sdr = si_sdr_db(power_flat(pooled), ref_power);
          } else {
            throw ConfigError("unknown frontend '" + frontend + "'");
          }
          rec.input_snr_db = row.input_snr;
          rec.output_snr_db = row.output_snr;
          rec.si_sdr_db = row.si_sdr;
          rec.wall_time_ms = opts.timings ? row.wall_ms : 0.0;
        } catch (const std::exception& e) {
          rec.status = std::string("error: ") + e.what();
          rec.input_snr_db = rec.output_snr_db = rec.si_sdr_db = 0.0;
          rec.wall_time_ms = 0.0;
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string fmt_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<EvalRecord>& records) {
  std::ostringstream os;
  os << "config_name,frontend,augment_policy,bundle,input_snr_db,"
        "output_snr_db,si_sdr_db,seed,wall_time_ms,status\n";
  for (const EvalRecord& r : records) {
    os << csv_quote(r.config_name) << ',' << csv_quote(r.frontend) << ','
       << csv_quote(r.augment_policy) << ',' << r.bundle << ','
       << fmt_db(r.input_snr_db) << ',' << fmt_db(r.output_snr_db) << ','
       << fmt_db(r.si_sdr_db) << ',' << r.seed << ',' << fmt_db(r.wall_time_ms)
       << ',' << csv_quote(r.status) << '\n';
  }
  return os.str();
}

std::vector<BenchRow> bench_frontend(const std::string& frontend,
                                     const std::vector<int>& channel_counts,
                                     int reps, int frames, int bins,
                                     uint64_t seed) {
  if (reps < 5) throw std::invalid_argument("bench_frontend: need reps >= 5");
  if (frontend != "mvdr" && frontend != "sf")
    throw ConfigError("bench_frontend: unknown frontend '" + frontend + "'");
  if (frames < 1 || bins < 1)
    throw std::invalid_argument("bench_frontend: bad shape");

  std::vector<BenchRow> rows;
  for (int channels : channel_counts) {
    if (channels < 1)
      throw std::invalid_argument("bench_frontend: bad channel count");
    Rng rng(seed);
    ComplexSpectrum x;
    x.frames = frames;
    x.bins = bins;
    x.channels = channels;
    x.sample_rate = 16000;
    x.data.resize(static_cast<size_t>(frames) * bins * channels);
    for (Cplx& v : x.data)
      v = Cplx(rng.next_gaussian(), rng.next_gaussian());

    PerChannelMasks mask_s;
    mask_s.frames = frames;
    mask_s.bins = bins;
    mask_s.channels = channels;
    mask_s.v.resize(x.data.size());
    for (double& v : mask_s.v) v = rng.next_double();
    PerChannelMasks mask_n = mask_s;
    for (double& v : mask_n.v) v = 1.0 - v;

    SfWeights w;
    PowerSpectrum target;
    if (frontend == "sf") {
      w = sf_init_random(bins, 11, channels, rng);
      target.frames = frames;
      target.bins = bins;
      target.v.resize(static_cast<size_t>(frames) * bins);
      for (double& v : target.v) v = rng.next_double();
    }

    std::vector<double> times_ms;
    times_ms.reserve(reps);
    for (int rep = 0; rep <= reps; ++rep) {  // rep 0 is the warm-up
      const auto t0 = std::chrono::steady_clock::now();
      if (frontend == "mvdr") {
        MvdrOptions opts;
        MvdrResult res = mvdr_pipeline(x, mask_s, mask_n, opts);
        if (res.power.v.empty()) throw InvariantError("bench: empty output");
      } else {
        SfGradient g = sf_grad_mse(x, w, target);
        if (g.grad_w.empty()) throw InvariantError("bench: empty gradient");
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (rep > 0)
        times_ms.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times_ms.begin(), times_ms.end());
    BenchRow row;
    row.channels = channels;
    row.median_ms = times_ms[times_ms.size() / 2];
    row.p90_ms = times_ms[std::min(times_ms.size() - 1,
                                   static_cast<size_t>(std::ceil(
                                       0.9 * times_ms.size())) )];
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "channels,median_ms,p90_ms\n";
  for (const BenchRow& r : rows)
    os << r.channels << ',' << fmt_db(r.median_ms) << ',' << fmt_db(r.p90_ms)
       << '\n';
  return os.str();
}

}  // namespace mcse
