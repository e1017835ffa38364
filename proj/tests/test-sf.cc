// tests/test-sf.cc

#include <doctest.h>

#include <cmath>

#include "mcse/augment.h"
#include "mcse/sf.h"
#include "test-util.h"

using namespace mcse;
using namespace mcse::test;

namespace {

SfWeights random_weights(int bins, int dirs, int channels, Rng& rng,
                         bool with_bias = true) {
  SfWeights w;
  w.bins = bins;
  w.dirs = dirs;
  w.channels = channels;
  w.w.resize(static_cast<size_t>(bins) * dirs * channels);
  w.b.assign(static_cast<size_t>(bins) * dirs, Cplx(0, 0));
  for (auto& v : w.w) v = Cplx(rng.next_gaussian(), rng.next_gaussian());
  if (with_bias)
    for (auto& v : w.b)
      v = 0.3 * Cplx(rng.next_gaussian(), rng.next_gaussian());
  return w;
}

// Independent triple-loop evaluation of the layer and the pooling.
LookDirectionTensor oracle_forward(const ComplexSpectrum& x, const SfWeights& w) {
  LookDirectionTensor y;
  y.frames = x.frames;
  y.bins = x.bins;
  y.dirs = w.dirs;
  y.y.assign(static_cast<size_t>(x.frames) * x.bins * w.dirs, Cplx(0, 0));
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f)
      for (int d = 0; d < w.dirs; ++d) {
        Cplx acc = w.bias(f, d);
        for (int c = 0; c < x.channels; ++c)
          acc += w.weight(f, d, c) * x.at(t, f, c);
        y.at(t, f, d) = acc;
      }
  return y;
}

PowerSpectrum oracle_pool(const LookDirectionTensor& y) {
  PowerSpectrum p;
  p.frames = y.frames;
  p.bins = y.bins;
  p.v.assign(static_cast<size_t>(y.frames) * y.bins, 0.0);
  for (int t = 0; t < y.frames; ++t)
    for (int f = 0; f < y.bins; ++f) {
      double acc = 0.0;
      for (int d = 0; d < y.dirs; ++d) acc += std::norm(y.at(t, f, d));
      p.at(t, f) = acc / y.dirs;
    }
  return p;
}

}  // namespace

TEST_CASE("sf_forward with one-hot selector weights copies channel 0") {
  Rng rng(21);
  ComplexSpectrum x = random_spectrum(3, 5, 4, rng);
  SfWeights w;
  w.bins = 5;
  w.dirs = 2;
  w.channels = 4;
  w.w.assign(static_cast<size_t>(5) * 2 * 4, Cplx(0, 0));
  w.b.assign(static_cast<size_t>(5) * 2, Cplx(0, 0));
  for (int f = 0; f < 5; ++f)
    for (int d = 0; d < 2; ++d) w.weight(f, d, 0) = Cplx(1, 0);

  LookDirectionTensor y = sf_forward(x, w);
  for (int t = 0; t < 3; ++t)
    for (int f = 0; f < 5; ++f)
      for (int d = 0; d < 2; ++d)
        CHECK(std::abs(y.at(t, f, d) - x.at(t, f, 0)) == 0.0);
}

TEST_CASE("sf_forward and sf_pool match the triple-loop oracles") {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const int t_count = 1 + static_cast<int>(rng.next_int(0, 3));
    const int bins = 1 + static_cast<int>(rng.next_int(0, 3));
    const int channels = 1 + static_cast<int>(rng.next_int(0, 3));
    const int dirs = 1 + static_cast<int>(rng.next_int(0, 3));
    ComplexSpectrum x = random_spectrum(t_count, bins, channels, rng);
    SfWeights w = random_weights(bins, dirs, channels, rng);

    LookDirectionTensor y = sf_forward(x, w);
    LookDirectionTensor y_oracle = oracle_forward(x, w);
    for (size_t i = 0; i < y.y.size(); ++i)
      CHECK(std::abs(y.y[i] - y_oracle.y[i]) <= 1e-12);

    PowerSpectrum p = sf_pool(y);
    PowerSpectrum p_oracle = oracle_pool(y_oracle);
    for (size_t i = 0; i < p.v.size(); ++i)
      CHECK(std::abs(p.v[i] - p_oracle.v[i]) <= 1e-12);
  }
}

TEST_CASE("sf_forward shape mismatch errors") {
  Rng rng(23);
  ComplexSpectrum x = random_spectrum(2, 4, 3, rng);
  SfWeights w = random_weights(4, 2, 2, rng);  // wrong channel count
  CHECK_THROWS_AS(sf_forward(x, w), std::invalid_argument);
}

TEST_CASE("sf_pool basics") {
  LookDirectionTensor y;
  y.frames = 2;
  y.bins = 3;
  y.dirs = 11;
  y.y.assign(static_cast<size_t>(2) * 3 * 11, Cplx(1, 0));
  PowerSpectrum p = sf_pool(y);
  for (double v : p.v) CHECK(v == doctest::Approx(1.0));

  y.dirs = 1;
  y.y.assign(static_cast<size_t>(2) * 3, Cplx(3, 4));
  p = sf_pool(y);
  for (double v : p.v) CHECK(v == doctest::Approx(25.0));
}

TEST_CASE("sf_pool output is nonnegative") {
  Rng rng(24);
  ComplexSpectrum x = random_spectrum(4, 6, 3, rng);
  SfWeights w = random_weights(6, 5, 3, rng);
  PowerSpectrum p = sf_pool(sf_forward(x, w));
  for (double v : p.v) CHECK(v >= 0.0);
}

TEST_CASE("sf_init_das single mic and broadside are flat") {
  StftConfig cfg;
  ArrayGeometry one = ula(1, 0.033);
  SfWeights w1 = sf_init_das(one, {37.0}, cfg, 16000);
  for (const Cplx& v : w1.w) CHECK(std::abs(v - Cplx(1, 0)) < 1e-12);

  ArrayGeometry two = ula(2, 0.033);
  SfWeights wb = sf_init_das(two, {90.0}, cfg, 16000);  // broadside
  for (const Cplx& v : wb.w) CHECK(std::abs(v - Cplx(0.5, 0)) < 1e-9);
}

TEST_CASE("sf_init_das endfire phase at 1 kHz") {
  StftConfig cfg;
  const int fs = 16000;
  ArrayGeometry two = ula(2, 0.033);
  SfWeights w = sf_init_das(two, {0.0}, cfg, fs);

  // Bin nearest to 1 kHz is exactly 1000 Hz for 512/16k (bin 32).
  const int f = 32;
  CHECK(static_cast<double>(f) * fs / cfg.fft_size == doctest::Approx(1000.0));
  const Cplx w0 = w.weight(f, 0, 0), w1 = w.weight(f, 0, 1);
  const double phase_diff = std::arg(w0 / w1);
  const double expect = 2.0 * kPi * 1000.0 * 0.033 / 343.0;  // ~0.6045 rad
  CHECK(std::abs(std::abs(phase_diff) - expect) < 1e-9);
  CHECK(std::abs(std::abs(w0) - 0.5) < 1e-12);
}

TEST_CASE("delay-and-sum gain on a steered plane wave") {
  StftConfig cfg;
  const int fs = 16000;
  ArrayGeometry geom = ula(8, 0.033);
  const std::vector<double> look = {60.0};
  SfWeights w = sf_init_das(geom, look, cfg, fs);

  // Plane wave from the look direction: x_c = s * exp(+j 2 pi f tau_c).
  Rng rng(25);
  ComplexSpectrum x;
  x.frames = 2;
  x.bins = cfg.bins();
  x.channels = 8;
  x.cfg = cfg;
  x.sample_rate = fs;
  x.data.resize(static_cast<size_t>(2) * x.bins * 8);
  const Vec3 centroid = geom.centroid();
  const double theta = 60.0 * kPi / 180.0;
  const Vec3 dir{std::cos(theta), std::sin(theta), 0.0};
  for (int t = 0; t < 2; ++t)
    for (int f = 0; f < x.bins; ++f) {
      const double f_hz = static_cast<double>(f) * fs / cfg.fft_size;
      const Cplx s(rng.next_gaussian(), rng.next_gaussian());
      for (int c = 0; c < 8; ++c) {
        const double tau = dot(geom.mics[c] - centroid, dir) / 343.0;
        const double phase = 2.0 * kPi * f_hz * tau;
        x.at(t, f, c) = s * Cplx(std::cos(phase), std::sin(phase));
      }
    }

  LookDirectionTensor y = sf_forward(x, w);
  for (int t = 0; t < 2; ++t)
    for (int f = 0; f < x.bins; ++f)
      CHECK(std::abs(y.at(t, f, 0)) ==
            doctest::Approx(std::abs(x.at(t, f, 0))).epsilon(1e-6));
}

TEST_CASE("zeroing equals the reduced filter-and-sum, exactly") {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const int channels = 2 + static_cast<int>(rng.next_int(0, 4));
    ComplexSpectrum x = random_spectrum(3, 4, channels, rng);
    SfWeights w = random_weights(4, 3, channels, rng);

    ChannelAugmentPolicy policy;
    policy.c_min = 1;
    policy.c_max = channels;
    ChannelSubset z = ca_sample_subset(channels, policy, rng);

    LookDirectionTensor zeroed = sf_forward(ca_zero(x, z), w);
    LookDirectionTensor sliced =
        sf_forward(ca_slice(x, z), restrict_channels(w, z.kept));
    REQUIRE(zeroed.y.size() == sliced.y.size());
    for (size_t i = 0; i < zeroed.y.size(); ++i)
      CHECK(std::abs(zeroed.y[i] - sliced.y[i]) <= 1e-12);
  }
}

TEST_CASE("sf_grad_mse is zero at the optimum") {
  Rng rng(27);
  ComplexSpectrum x = random_spectrum(3, 4, 2, rng);
  SfWeights w = random_weights(4, 2, 2, rng);
  PowerSpectrum target = sf_pool(sf_forward(x, w));
  SfGradient g = sf_grad_mse(x, w, target);
  CHECK(g.loss == doctest::Approx(0.0).epsilon(1e-12));
  for (const Cplx& v : g.grad_w) CHECK(std::abs(v) < 1e-12);
  for (const Cplx& v : g.grad_b) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("sf_grad_mse matches central finite differences") {
  Rng rng(28);
  for (int trial = 0; trial < 5; ++trial) {
    const int t_count = 2, bins = 3, channels = 2, dirs = 2;
    ComplexSpectrum x = random_spectrum(t_count, bins, channels, rng);
    SfWeights w = random_weights(bins, dirs, channels, rng);
    PowerSpectrum target;
    target.frames = t_count;
    target.bins = bins;
    target.v.resize(static_cast<size_t>(t_count) * bins);
    for (double& v : target.v) v = std::abs(rng.next_gaussian());

    SfGradient g = sf_grad_mse(x, w, target);
    const double h = 1e-4;
    auto loss_of = [&](const SfWeights& probe) {
      return sf_grad_mse(x, probe, target).loss;
    };

    double worst_rel = 0.0;
    for (size_t i = 0; i < w.w.size(); ++i) {
      for (int part = 0; part < 2; ++part) {
        SfWeights plus = w, minus = w;
        const Cplx delta = part == 0 ? Cplx(h, 0) : Cplx(0, h);
        plus.w[i] += delta;
        minus.w[i] -= delta;
        const double fd = (loss_of(plus) - loss_of(minus)) / (2 * h);
        const double an = part == 0 ? g.grad_w[i].real() : g.grad_w[i].imag();
        worst_rel = std::max(
            worst_rel, std::abs(fd - an) / std::max(1e-8, std::abs(fd)));
      }
    }
    for (size_t i = 0; i < w.b.size(); ++i) {
      for (int part = 0; part < 2; ++part) {
        SfWeights plus = w, minus = w;
        const Cplx delta = part == 0 ? Cplx(h, 0) : Cplx(0, h);
        plus.b[i] += delta;
        minus.b[i] -= delta;
        const double fd = (loss_of(plus) - loss_of(minus)) / (2 * h);
        const double an = part == 0 ? g.grad_b[i].real() : g.grad_b[i].imag();
        worst_rel = std::max(
            worst_rel, std::abs(fd - an) / std::max(1e-8, std::abs(fd)));
      }
    }
    CHECK(worst_rel <= 1e-5);
  }
}

TEST_CASE("sf_grad_mse with zero input only moves the bias") {
  Rng rng(29);
  ComplexSpectrum x = random_spectrum(2, 3, 2, rng);
  for (Cplx& v : x.data) v = Cplx(0, 0);
  SfWeights w = random_weights(3, 2, 2, rng);  // nonzero bias

  PowerSpectrum mismatch;
  mismatch.frames = 2;
  mismatch.bins = 3;
  mismatch.v.assign(static_cast<size_t>(2) * 3, 5.0);
  SfGradient g = sf_grad_mse(x, w, mismatch);
  for (const Cplx& v : g.grad_w) CHECK(std::abs(v) == 0.0);
  double bias_grad = 0.0;
  for (const Cplx& v : g.grad_b) bias_grad += std::abs(v);
  CHECK(bias_grad > 0.0);

  // Matching target: bias gradient vanishes too.
  PowerSpectrum match = sf_pool(sf_forward(x, w));
  SfGradient g2 = sf_grad_mse(x, w, match);
  for (const Cplx& v : g2.grad_b) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("gradient descent halves the loss within 50 steps") {
  Rng rng(30);
  ComplexSpectrum x = random_spectrum(4, 5, 3, rng);
  SfWeights w = random_weights(5, 2, 3, rng);

  // Target from perturbed weights so a better solution exists nearby.
  SfWeights w_target = w;
  for (Cplx& v : w_target.w)
    v += 0.4 * Cplx(rng.next_gaussian(), rng.next_gaussian());
  PowerSpectrum target = sf_pool(sf_forward(x, w_target));

  const double eta = 1e-2;
  double first_loss = sf_grad_mse(x, w, target).loss;
  double last_loss = first_loss;
  for (int step = 0; step < 50; ++step) {
    SfGradient g = sf_grad_mse(x, w, target);
    CHECK(g.loss <= last_loss * (1 + 1e-12));  // monotone
    last_loss = g.loss;
    for (size_t i = 0; i < w.w.size(); ++i) w.w[i] -= eta * g.grad_w[i];
    for (size_t i = 0; i < w.b.size(); ++i) w.b[i] -= eta * g.grad_b[i];
  }
  CHECK(last_loss <= 0.5 * first_loss);
}
