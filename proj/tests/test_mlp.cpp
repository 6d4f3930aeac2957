#include "doctest.h"
#include "trsc/mac.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

// End-to-end check: a small MLP classifier run once with exact integer MACs
// and once with the TR-assisted counting MACs, on the same quantized weights.
// The counting path loses at most a bounded amount per product, so the
// classification accuracy must stay within a pinned distance of the exact
// path. Thresholds are regression values from the first measured run.

using namespace trsc;

namespace {

constexpr int kIn = 64, kHidden = 16, kOut = 10, kClasses = 10;
constexpr int kTrain = 600, kTest = 200;

struct Dataset {
  std::vector<std::vector<float>> x;
  std::vector<int> y;
};

Dataset make_dataset(int count, std::mt19937_64& rng,
                     const std::vector<std::vector<float>>& protos) {
  std::normal_distribution<float> noise(0.0f, 0.25f);
  std::uniform_int_distribution<int> cls(0, kClasses - 1);
  Dataset d;
  for (int i = 0; i < count; ++i) {
    const int c = cls(rng);
    std::vector<float> v(kIn);
    for (int j = 0; j < kIn; ++j)
      v[j] = std::clamp(protos[c][j] + noise(rng), 0.0f, 1.0f);
    d.x.push_back(std::move(v));
    d.y.push_back(c);
  }
  return d;
}

struct Mlp {
  std::vector<float> w1;  // kHidden x kIn
  std::vector<float> w2;  // kOut x kHidden
};

Mlp train(const Dataset& data, std::mt19937_64& rng) {
  Mlp m;
  std::normal_distribution<float> init(0.0f, 0.1f);
  m.w1.resize(kHidden * kIn);
  m.w2.resize(kOut * kHidden);
  for (float& w : m.w1) w = init(rng);
  for (float& w : m.w2) w = init(rng);

  const float lr = 0.05f;
  for (int epoch = 0; epoch < 25; ++epoch)
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      const auto& x = data.x[i];
      std::vector<float> h(kHidden), z(kOut), p(kOut);
      for (int j = 0; j < kHidden; ++j) {
        float s = 0;
        for (int k = 0; k < kIn; ++k) s += m.w1[j * kIn + k] * x[k];
        h[j] = std::max(0.0f, s);
      }
      float zmax = -1e9f;
      for (int o = 0; o < kOut; ++o) {
        float s = 0;
        for (int j = 0; j < kHidden; ++j) s += m.w2[o * kHidden + j] * h[j];
        z[o] = s;
        zmax = std::max(zmax, s);
      }
      float denom = 0;
      for (int o = 0; o < kOut; ++o) denom += p[o] = std::exp(z[o] - zmax);
      for (int o = 0; o < kOut; ++o) p[o] /= denom;

      std::vector<float> dz(kOut), dh(kHidden, 0.0f);
      for (int o = 0; o < kOut; ++o) dz[o] = p[o] - (o == data.y[i] ? 1.0f : 0.0f);
      for (int o = 0; o < kOut; ++o)
        for (int j = 0; j < kHidden; ++j) {
          dh[j] += dz[o] * m.w2[o * kHidden + j];
          m.w2[o * kHidden + j] -= lr * dz[o] * h[j];
        }
      for (int j = 0; j < kHidden; ++j) {
        if (h[j] <= 0.0f) continue;
        for (int k = 0; k < kIn; ++k) m.w1[j * kIn + k] -= lr * dh[j] * x[k];
      }
    }
  return m;
}

struct QuantLayer {
  std::vector<std::uint32_t> mag;  // |w| scaled to [0,255]
  std::vector<int> sign;
};

QuantLayer quantize(const std::vector<float>& w) {
  float wmax = 1e-9f;
  for (float v : w) wmax = std::max(wmax, std::abs(v));
  QuantLayer q;
  for (float v : w) {
    q.mag.push_back(static_cast<std::uint32_t>(std::lround(std::abs(v) / wmax * 255.0f)));
    q.sign.push_back(v < 0 ? -1 : 1);
  }
  return q;
}

// One quantized layer, either with exact integer products or with the
// TR-assisted counting engine. Outputs are re-quantized to 8 bits so the next
// layer sees valid operands.
std::vector<std::uint32_t> run_layer(const QuantLayer& q, const std::vector<std::uint32_t>& act,
                                     int rows, int cols, bool relu, bool counting,
                                     const MacConfig& cfg, std::vector<long long>* raw_out) {
  std::vector<long long> z(rows, 0);
  for (int r = 0; r < rows; ++r) {
    if (counting) {
      std::vector<SignedPair> pairs;
      for (int c = 0; c < cols; ++c)
        pairs.push_back({BinaryOperand(q.mag[r * cols + c], 8), BinaryOperand(act[c], 8),
                         q.sign[r * cols + c]});
      z[r] = dot_product(pairs, cfg).value;
    } else {
      long long s = 0;
      for (int c = 0; c < cols; ++c)
        s += static_cast<long long>(q.sign[r * cols + c]) * q.mag[r * cols + c] * act[c];
      // The counting path works at 1/256 scale; match it so both paths
      // quantize identically.
      z[r] = s / 256;
    }
    if (relu) z[r] = std::max<long long>(z[r], 0);
  }
  if (raw_out) *raw_out = z;
  long long zmax = 1;
  for (long long v : z) zmax = std::max(zmax, v);
  std::vector<std::uint32_t> out(rows);
  for (int r = 0; r < rows; ++r)
    out[r] = static_cast<std::uint32_t>(z[r] * 255 / zmax);
  return out;
}

int classify(const Mlp& m, const QuantLayer& q1, const QuantLayer& q2,
             const std::vector<float>& x, bool counting, const MacConfig& cfg) {
  (void)m;
  std::vector<std::uint32_t> act(kIn);
  for (int k = 0; k < kIn; ++k)
    act[k] = static_cast<std::uint32_t>(std::lround(x[k] * 255.0f));
  const auto hidden = run_layer(q1, act, kHidden, kIn, true, counting, cfg, nullptr);
  std::vector<long long> scores;
  run_layer(q2, hidden, kOut, kHidden, false, counting, cfg, &scores);
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

}  // namespace

TEST_CASE("counting MACs preserve MLP classification accuracy") {
  std::mt19937_64 rng(20260824);
  std::vector<std::vector<float>> protos(kClasses, std::vector<float>(kIn));
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (auto& p : protos)
    for (float& v : p) v = u(rng);
  const Dataset train_set = make_dataset(kTrain, rng, protos);
  const Dataset test_set = make_dataset(kTest, rng, protos);

  const Mlp m = train(train_set, rng);
  const QuantLayer q1 = quantize(m.w1), q2 = quantize(m.w2);
  MacConfig cfg;

  int exact_hits = 0, sc_hits = 0, agree = 0;
  for (int i = 0; i < kTest; ++i) {
    const int e = classify(m, q1, q2, test_set.x[i], false, cfg);
    const int s = classify(m, q1, q2, test_set.x[i], true, cfg);
    exact_hits += e == test_set.y[i] ? 1 : 0;
    sc_hits += s == test_set.y[i] ? 1 : 0;
    agree += e == s ? 1 : 0;
  }
  const double exact_acc = static_cast<double>(exact_hits) / kTest;
  const double sc_acc = static_cast<double>(sc_hits) / kTest;
  MESSAGE("exact=" << exact_acc << " counting=" << sc_acc << " agree="
                   << static_cast<double>(agree) / kTest);
  // Regression thresholds pinned at the first measured run.
  CHECK(exact_acc >= 0.95);
  CHECK(sc_acc >= 0.95);
  CHECK(exact_acc - sc_acc <= 0.02);
  CHECK(static_cast<double>(agree) / kTest >= 0.95);
}
