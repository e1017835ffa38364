// tests/test-features.cc

#include <doctest.h>

#include <cmath>

#include "mcse/features.h"
#include "test-util.h"

using namespace mcse;
using namespace mcse::test;

TEST_CASE("mel_filterbank with one filter spans the band") {
  StftConfig cfg;
  MelFilterbank fb = mel_filterbank(1, cfg, 16000, 100.0, 4000.0);
  CHECK(fb.n_mels == 1);
  double sum = 0.0;
  for (int f = 0; f < fb.bins; ++f) {
    const double hz = static_cast<double>(f) * 16000 / cfg.fft_size;
    if (hz <= 100.0 || hz >= 4000.0) CHECK(fb.at(0, f) == 0.0);
    sum += fb.at(0, f);
  }
  CHECK(sum > 0.0);
}

TEST_CASE("adjacent filters meet at each other's centers") {
  StftConfig cfg;
  const int n_mels = 12;
  MelFilterbank fb = mel_filterbank(n_mels, cfg, 16000, 50.0, 7000.0);

  // Recompute the edge grid and probe the triangles on a fine frequency
  // grid: filter m must vanish at and beyond its neighbors' peaks.
  const double mel_lo = hz_to_mel(50.0), mel_hi = hz_to_mel(7000.0);
  auto edge = [&](int i) {
    return mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));
  };
  for (int m = 0; m + 1 < n_mels; ++m) {
    const double center_next = edge(m + 2);
    const double center_this = edge(m + 1);
    for (int f = 0; f < fb.bins; ++f) {
      const double hz = static_cast<double>(f) * 16000 / cfg.fft_size;
      if (hz >= center_next) CHECK(fb.at(m, f) == 0.0);   // beyond next center
      if (hz <= center_this) CHECK(fb.at(m + 1, f) == 0.0);  // before own start
    }
  }
}

TEST_CASE("80-band filterbank responds to a flat spectrum in every band") {
  StftConfig cfg;
  MelFilterbank fb = mel_filterbank(80, cfg, 16000);
  CHECK(fb.bins == 257);
  PowerSpectrum flat;
  flat.frames = 1;
  flat.bins = 257;
  flat.v.assign(257, 1.0);
  FeatureMatrix feat = log_mel(flat, fb, 1e-10);
  for (int m = 0; m < 80; ++m) CHECK(feat.at(0, m) > std::log(1e-10));
  // Rows are nonnegative with positive mass.
  for (int m = 0; m < 80; ++m) {
    double sum = 0.0;
    for (int f = 0; f < 257; ++f) {
      CHECK(fb.at(m, f) >= 0.0);
      sum += fb.at(m, f);
    }
    CHECK(sum > 0.0);
  }
}

TEST_CASE("mel_filterbank rejects bad band edges") {
  StftConfig cfg;
  CHECK_THROWS_AS(mel_filterbank(10, cfg, 16000, 4000.0, 100.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mel_filterbank(10, cfg, 16000, 20.0, 9000.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mel_filterbank(0, cfg, 16000), std::invalid_argument);
}

TEST_CASE("log_mel floor, log-doubling and loop oracle") {
  StftConfig cfg;
  MelFilterbank fb = mel_filterbank(8, cfg, 16000, 100.0, 7000.0);

  PowerSpectrum zero;
  zero.frames = 2;
  zero.bins = fb.bins;
  zero.v.assign(static_cast<size_t>(2) * fb.bins, 0.0);
  FeatureMatrix silent = log_mel(zero, fb, 1e-10);
  for (double v : silent.v) CHECK(v == doctest::Approx(std::log(1e-10)));

  Rng rng(71);
  PowerSpectrum p;
  p.frames = 3;
  p.bins = fb.bins;
  p.v.resize(static_cast<size_t>(3) * fb.bins);
  for (double& v : p.v) v = 0.5 + rng.next_double();

  FeatureMatrix feat = log_mel(p, fb, 1e-10);
  for (int t = 0; t < 3; ++t)
    for (int m = 0; m < 8; ++m) {
      double acc = 0.0;
      for (int f = 0; f < fb.bins; ++f) acc += fb.at(m, f) * p.at(t, f);
      CHECK(feat.at(t, m) == doctest::Approx(std::log(std::max(acc, 1e-10))));
    }

  PowerSpectrum doubled = p;
  for (double& v : doubled.v) v *= 2.0;
  FeatureMatrix feat2 = log_mel(doubled, fb, 1e-10);
  for (size_t i = 0; i < feat.v.size(); ++i)
    CHECK(feat2.v[i] - feat.v[i] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("cmn zeroes column means, idempotent, hand instance") {
  FeatureMatrix constant;
  constant.frames = 4;
  constant.bands = 3;
  constant.v.assign(12, 2.5);
  FeatureMatrix zeroed = cmn(constant);
  for (double v : zeroed.v) CHECK(v == doctest::Approx(0.0));

  // Hand 2x2: means are (2, 3) per band.
  FeatureMatrix hand;
  hand.frames = 2;
  hand.bands = 2;
  hand.v = {1.0, 2.0, 3.0, 4.0};
  FeatureMatrix out = cmn(hand);
  CHECK(out.at(0, 0) == doctest::Approx(-1.0));
  CHECK(out.at(0, 1) == doctest::Approx(-1.0));
  CHECK(out.at(1, 0) == doctest::Approx(1.0));
  CHECK(out.at(1, 1) == doctest::Approx(1.0));

  Rng rng(72);
  FeatureMatrix feat;
  feat.frames = 9;
  feat.bands = 5;
  feat.v.resize(45);
  for (double& v : feat.v) v = rng.next_gaussian() * 3.0 + 1.0;
  FeatureMatrix once = cmn(feat);
  for (int m = 0; m < 5; ++m) {
    double mean = 0.0;
    for (int t = 0; t < 9; ++t) mean += once.at(t, m);
    CHECK(std::abs(mean / 9) <= 1e-10);
  }
  FeatureMatrix twice = cmn(once);
  for (size_t i = 0; i < once.v.size(); ++i)
    CHECK(std::abs(twice.v[i] - once.v[i]) <= 1e-12);
}
