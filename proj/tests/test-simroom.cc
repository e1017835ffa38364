// tests/test-simroom.cc

#include <doctest.h>

#include <cmath>

#include "mcse/error.h"
#include "mcse/simroom.h"
#include "test-util.h"

using namespace mcse;
using namespace mcse::test;

namespace {

RoomSpec small_room() {
  RoomSpec room;
  room.dims = {6.0, 5.0, 3.0};
  room.reflection_coeff = 0.6;
  room.source_pos = {2.0, 3.0, 1.5};
  room.noise_pos = {5.0, 1.2, 1.8};
  room.fs = 16000;
  room.max_order = 4;
  room.rir_length = 2048;
  return room;
}

double total_energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double total_energy(const Waveform& w) {
  double e = 0.0;
  for (const auto& ch : w.samples) e += total_energy(ch);
  return e;
}

}  // namespace

TEST_CASE("ula geometry") {
  ArrayGeometry one = ula(1, 0.033, {1, 2, 3});
  REQUIRE(one.size() == 1);
  CHECK(one.mics[0].x == doctest::Approx(1.0));
  CHECK(one.mics[0].y == doctest::Approx(2.0));

  ArrayGeometry arr = ula(16, 0.033);
  REQUIRE(arr.size() == 16);
  CHECK(distance(arr.mics[0], arr.mics[15]) == doctest::Approx(15 * 0.033));
  for (int i = 0; i + 1 < 16; ++i)
    CHECK(distance(arr.mics[i], arr.mics[i + 1]) == doctest::Approx(0.033));
  const Vec3 c = arr.centroid();
  CHECK(std::abs(c.x) < 1e-12);
}

TEST_CASE("direct path arrives at distance/c within a sample") {
  RoomSpec room = small_room();
  room.max_order = 0;
  const Vec3 mic{4.0, 2.0, 1.2};
  std::vector<double> rir = image_rir(room, mic);

  int peak = 0;
  double best = 0.0;
  for (int i = 0; i < room.rir_length; ++i)
    if (std::abs(rir[i]) > best) {
      best = std::abs(rir[i]);
      peak = i;
    }
  const double expect = room.fs * distance(room.source_pos, mic) / room.c_sound;
  CHECK(std::abs(peak - expect) <= 1.0);

  // Direct amplitude is 1 / (4 pi d) at the peak (within the sinc kernel).
  const double amp = 1.0 / (4.0 * kPi * distance(room.source_pos, mic));
  CHECK(best == doctest::Approx(amp).epsilon(0.05));
}

TEST_CASE("zero reflection coefficient equals max_order zero") {
  RoomSpec direct_only = small_room();
  direct_only.max_order = 0;
  RoomSpec absorbing = small_room();
  absorbing.reflection_coeff = 0.0;
  absorbing.max_order = 5;

  const Vec3 mic{3.5, 2.0, 1.4};
  std::vector<double> a = image_rir(direct_only, mic);
  std::vector<double> b = image_rir(absorbing, mic);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}

TEST_CASE("per-order image energy decays monotonically") {
  RoomSpec room = small_room();
  room.max_order = 6;
  room.rir_length = 4096;
  RirDetail detail = image_rir_detail(room, {4.0, 2.0, 1.2}, room.source_pos);
  REQUIRE(detail.order_energy.size() == 7);
  for (size_t k = 0; k + 1 < detail.order_energy.size(); ++k)
    CHECK(detail.order_energy[k] > detail.order_energy[k + 1]);
}

TEST_CASE("rir energy grows with the reflection coefficient") {
  const Vec3 mic{4.0, 2.0, 1.2};
  double previous = -1.0;
  for (double beta : {0.0, 0.3, 0.6, 0.9}) {
    RoomSpec room = small_room();
    room.reflection_coeff = beta;
    const double e = total_energy(image_rir(room, mic));
    CHECK(e > previous);
    previous = e;
  }
}

TEST_CASE("image_rir validates its geometry") {
  RoomSpec room = small_room();
  CHECK_THROWS_AS(image_rir(room, {7.0, 1.0, 1.0}), DataError);  // outside
  room.rir_length = 10;  // shorter than the direct delay
  CHECK_THROWS_AS(image_rir(room, {5.9, 4.9, 2.9}), DataError);
  RoomSpec bad = small_room();
  bad.source_pos = {-1.0, 1.0, 1.0};
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("synthesize without noise or gains returns the clean image") {
  Rng rng(81);
  Waveform clean = speech_like(0.5, 16000, rng);
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(4, 0.033, {3.0, 1.0, 1.2});

  SynthesisParams params;
  params.snr_db.reset();
  params.self_noise_db.reset();
  params.gain_offset_db_range = 0.0;
  Waveform unused;  // noise source ignored when disabled
  MixtureBundle bundle = synthesize(clean, room, geom, unused, params, rng);

  CHECK(std::isinf(bundle.snr_db));
  REQUIRE(bundle.mixture.channels() == 4);
  for (int c = 0; c < 4; ++c) {
    CHECK(bundle.gains[c] == 1.0);
    for (long i = 0; i < bundle.mixture.num_samples(); ++i) {
      CHECK(bundle.mixture.samples[c][i] == bundle.clean_image.samples[c][i]);
      CHECK(bundle.noise_image.samples[c][i] == 0.0);
    }
  }
}

TEST_CASE("synthesize hits the requested SNR") {
  Rng rng(82);
  Waveform clean = speech_like(0.5, 16000, rng);
  Waveform noise = white_noise(4000, 16000, rng);
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(4, 0.033, {3.0, 1.0, 1.2});

  SynthesisParams params;
  params.snr_db = 0.0;
  params.self_noise_db.reset();
  params.gain_offset_db_range = 0.0;
  MixtureBundle bundle = synthesize(clean, room, geom, noise, params, rng);

  const double ce = total_energy(bundle.clean_image);
  const double ne = total_energy(bundle.noise_image);
  CHECK(std::abs(ce - ne) <= 1e-6 * ce);
}

TEST_CASE("synthesize upholds the mixture identity bit-exactly") {
  Rng rng(83);
  Waveform clean = speech_like(0.4, 16000, rng);
  Waveform noise = pink_noise(3000, 16000, rng);
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(3, 0.033, {3.0, 1.0, 1.2});

  SynthesisParams params;
  params.snr_db = 5.0;
  params.self_noise_db = 25.0;
  params.gain_offset_db_range = 3.0;
  MixtureBundle b = synthesize(clean, room, geom, noise, params, rng);
  for (int c = 0; c < 3; ++c)
    for (long i = 0; i < b.mixture.num_samples(); ++i)
      CHECK(b.mixture.samples[c][i] ==
            b.gains[c] * (b.clean_image.samples[c][i] +
                          b.noise_image.samples[c][i]));
}

TEST_CASE("synthesize is deterministic given the seed") {
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(3, 0.033, {3.0, 1.0, 1.2});
  SynthesisParams params;
  params.snr_db = 3.0;
  params.self_noise_db = 30.0;
  params.gain_offset_db_range = 2.0;

  auto run = [&]() {
    Rng rng(4242);
    Waveform clean = speech_like(0.4, 16000, rng);
    Waveform noise = white_noise(3000, 16000, rng);
    return synthesize(clean, room, geom, noise, params, rng);
  };
  MixtureBundle a = run(), b = run();
  CHECK(a.gains == b.gains);
  for (int c = 0; c < 3; ++c)
    CHECK(a.mixture.samples[c] == b.mixture.samples[c]);
}

TEST_CASE("synthesize scales linearly in the clean source") {
  Rng rng_src(84);
  Waveform clean = speech_like(0.3, 16000, rng_src);
  Waveform doubled = clean;
  for (double& v : doubled.samples[0]) v *= 2.0;
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(2, 0.033, {3.0, 1.0, 1.2});

  SynthesisParams params;
  params.snr_db.reset();
  params.self_noise_db.reset();
  Waveform unused;
  Rng rng_a(1), rng_b(1);
  MixtureBundle a = synthesize(clean, room, geom, unused, params, rng_a);
  MixtureBundle b = synthesize(doubled, room, geom, unused, params, rng_b);
  for (int c = 0; c < 2; ++c)
    for (long i = 0; i < a.mixture.num_samples(); ++i)
      CHECK(std::abs(b.clean_image.samples[c][i] -
                     2.0 * a.clean_image.samples[c][i]) <=
            1e-12 * std::abs(b.clean_image.samples[c][i]) + 1e-300);
}

TEST_CASE("synthesize rejects degenerate sources") {
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(2, 0.033, {3.0, 1.0, 1.2});
  Rng rng(85);
  Waveform silent;
  silent.samples.assign(1, std::vector<double>(1000, 0.0));
  SynthesisParams params;
  CHECK_THROWS_AS(synthesize(silent, room, geom, silent, params, rng),
                  DataError);
}

TEST_CASE("oracle_masks are complementary ratio masks") {
  Rng rng(86);
  Waveform clean = speech_like(0.4, 16000, rng);
  Waveform noise = white_noise(3000, 16000, rng);
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(2, 0.033, {3.0, 1.0, 1.2});
  SynthesisParams params;
  params.snr_db = 0.0;
  MixtureBundle bundle = synthesize(clean, room, geom, noise, params, rng);

  StftConfig cfg;
  auto [m_s, m_n] = oracle_masks(bundle, cfg);
  REQUIRE(m_s.v.size() == m_n.v.size());
  for (size_t i = 0; i < m_s.v.size(); ++i) {
    CHECK(m_s.v[i] >= 0.0);
    CHECK(m_s.v[i] <= 1.0);
    CHECK(m_s.v[i] + m_n.v[i] == 1.0);
  }
}

TEST_CASE("oracle_masks saturate when the noise image vanishes") {
  Rng rng(87);
  Waveform clean = speech_like(0.4, 16000, rng);
  RoomSpec room = small_room();
  ArrayGeometry geom = ula(2, 0.033, {3.0, 1.0, 1.2});
  SynthesisParams params;
  params.snr_db.reset();
  params.self_noise_db.reset();
  Waveform unused;
  MixtureBundle bundle = synthesize(clean, room, geom, unused, params, rng);

  StftConfig cfg;
  auto [m_s, m_n] = oracle_masks(bundle, cfg);
  const ComplexSpectrum speech = stft(bundle.clean_image, cfg);
  for (size_t i = 0; i < m_s.v.size(); ++i) {
    if (std::norm(speech.data[i]) > 0.0)
      CHECK(m_s.v[i] == 1.0);
    else
      CHECK(m_s.v[i] == 0.5);
  }
}

TEST_CASE("array_subset presets") {
  ChannelSubset all = array_subset(16, "16");
  CHECK(all.kept.size() == 16);

  ChannelSubset four = array_subset(16, "4");
  CHECK(four.kept == std::vector<int>{6, 7, 8, 9});

  ChannelSubset spread = array_subset(16, "4S3");
  CHECK(spread.kept == std::vector<int>{2, 6, 10, 14});

  ChannelSubset seven = array_subset(16, "7");
  CHECK(seven.kept == std::vector<int>{4, 5, 6, 7, 8, 9, 10});

  CHECK_THROWS_AS(array_subset(16, "13"), ConfigError);
  CHECK_THROWS_AS(array_subset(8, "16"), ConfigError);  // too few channels

  PresetTable custom = {{"pair", {0, 15}}};
  ChannelSubset pair = array_subset(16, "pair", &custom);
  CHECK(pair.kept == std::vector<int>{0, 15});
}

TEST_CASE("synthetic sources are sane and deterministic") {
  Rng a(99), b(99);
  Waveform wa = speech_like(0.25, 16000, a);
  Waveform wb = speech_like(0.25, 16000, b);
  CHECK(wa.samples[0] == wb.samples[0]);
  CHECK(total_energy(wa) > 0.0);

  Rng c(1);
  Waveform pink = pink_noise(2000, 16000, c);
  CHECK(total_energy(pink) > 0.0);
  for (double v : pink.samples[0]) CHECK(std::isfinite(v));
}
