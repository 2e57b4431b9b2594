// Copyright 2026 The quht-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "quht/hypothesis.hpp"
#include "quht/parallel.hpp"
#include "test_util.hpp"

namespace quht {
namespace {

using testing::bloch;
using testing::ket0;
using testing::ket1;
using testing::ket_plus;
using testing::mixed2;

TomographyEstimate exact_estimate(const DensityOperator& rho, Scheme s = Scheme::PauliQubit) {
  return {rho.hermitian(), s, 300, true};
}

TEST(Decide, TiesGoToH0) {
  EXPECT_EQ(decide(0.5, 0.5).decision, Decision::H0);
  EXPECT_EQ(decide(std::nextafter(0.5, 1.0), 0.5).decision, Decision::H1);
}

TEST(PureStateTest, AlwaysAcceptsNominal) {
  const Povm p = nominal_projector_povm(ket0());
  Stream s(4);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(pure_state_test(ket0(), sample(p, ket0(), 50, s)).decision, Decision::H0);
  }
  OutcomeRecord miss{kNominalProjectorId, {1.0, 0.0}, {9, 1}, 10};
  const TestVerdict v = pure_state_test(ket0(), miss);
  EXPECT_EQ(v.decision, Decision::H1);
  EXPECT_EQ(v.statistic, 1.0);
  EXPECT_THROW(pure_state_test(mixed2(), miss), std::invalid_argument);
  EXPECT_THROW(TestConfig::pure_state(mixed2(), 10), std::invalid_argument);
}

TEST(PureStateTest, ExactBeta) {
  EXPECT_NEAR(pure_state_beta_exact(ket0(), ket_plus(), 10), std::ldexp(1.0, -10), 1e-16);
  EXPECT_NEAR(pure_state_beta_exact(ket0(), mixed2(), 20), std::ldexp(1.0, -20), 1e-19);
  EXPECT_NEAR(pure_state_beta_exact(ket0(), ket0(), 50), 1.0, 1e-12);
}

TEST(PureStateTest, MonteCarloMatchesFidelityPower) {
  const Povm p = nominal_projector_povm(ket0());
  const OutcomeSampler sampler(p, mixed2());
  const std::uint64_t trials = 100000;
  const std::uint64_t misses = count_trials(trials, 1, [&](std::uint64_t t) {
    Stream s = Stream::derive(31, {t});
    return pure_state_test(ket0(), sampler.draw(5, s)).decision == Decision::H0;
  });
  const double beta = 1.0 / 32.0;
  EXPECT_NEAR(static_cast<double>(misses) / trials, beta, 4.0 * testing::binomial_se(beta, trials));
}

TEST(OneSampleTest, StatisticAndBoundary) {
  const TestConfig cfg = TestConfig::one_sample(mixed2(), bound_pauli_qubit(), 5400, 0.05);
  EXPECT_NEAR(cfg.threshold, oracle::kPauliQubitC5400, 1e-15);
  const TestVerdict same = one_sample_test(mixed2(), exact_estimate(mixed2()), cfg);
  EXPECT_EQ(same.decision, Decision::H0);
  EXPECT_EQ(same.statistic, 0.0);
  TestConfig at = cfg;
  const TestVerdict far = one_sample_test(mixed2(), exact_estimate(bloch(0.8, 0, 0)), cfg);
  EXPECT_NEAR(far.statistic, 0.8, 1e-15);
  EXPECT_EQ(far.decision, Decision::H1);
  at.threshold = far.statistic;
  EXPECT_EQ(one_sample_test(mixed2(), exact_estimate(bloch(0.8, 0, 0)), at).decision, Decision::H0);
}

TEST(OneSampleTest, RejectsMismatches) {
  const TestConfig cfg = TestConfig::one_sample(mixed2(), bound_pauli_qubit(), 300, 0.05);
  EXPECT_THROW(one_sample_test(mixed2(), exact_estimate(mixed2(), Scheme::PauliString), cfg), std::invalid_argument);
  const TomographyEstimate big{maximally_mixed(4).hermitian(), Scheme::PauliQubit, 300, true};
  EXPECT_THROW(one_sample_test(mixed2(), big, cfg), std::invalid_argument);
  const TestConfig two = TestConfig::two_sample(bound_pauli_qubit(), 300, 300, 0.05);
  EXPECT_THROW(one_sample_test(mixed2(), exact_estimate(mixed2()), two), std::invalid_argument);
}

TEST(OneSampleTest, PowerAtSeparationPointEight) {
  const TestConfig cfg = TestConfig::one_sample(mixed2(), bound_pauli_qubit(), 5400, 0.05);
  const PauliTomographer tomo(bloch(0.8, 0, 0), Scheme::PauliQubit);
  const std::uint64_t rejections = count_trials(2000, 1, [&](std::uint64_t t) {
    Stream s = Stream::derive(5, {t});
    return one_sample_test(mixed2(), tomo.estimate(5400, s), cfg).decision == Decision::H1;
  });
  EXPECT_GE(rejections, 1998U);
}

TEST(TwoSampleTest, SymmetricAndThreshold) {
  const TestConfig cfg = TestConfig::two_sample(bound_pauli_qubit(), 5400, 5400, 0.05);
  EXPECT_NEAR(cfg.threshold, oracle::kPauliQubitCk5400, 1e-15);
  const TomographyEstimate a = exact_estimate(bloch(0.1, 0.2, 0.0));
  const TomographyEstimate b = exact_estimate(bloch(0.1, 0.0, 0.3));
  const TestVerdict ab = two_sample_test(a, b, cfg);
  const TestVerdict ba = two_sample_test(b, a, cfg);
  EXPECT_EQ(ab.statistic, ba.statistic);
  EXPECT_EQ(ab.decision, ba.decision);
  EXPECT_EQ(two_sample_test(a, a, cfg).decision, Decision::H0);
  EXPECT_EQ(two_sample_test(exact_estimate(ket0()), exact_estimate(ket1()), cfg).decision, Decision::H1);
  const TestConfig uneven = TestConfig::two_sample(bound_pauli_qubit(), 600, 6000, 0.05);
  EXPECT_NEAR(uneven.threshold, std::sqrt(4.0 * 54.0 * std::log(12.0 / 0.05) / 600.0), 1e-14);
}

TEST(TypeTwoEnvelope, OneSample) {
  const ConcentrationBound b = bound_pauli_qubit();
  EXPECT_NEAR(type2_envelope_one_sample(b, 5400, 0.05, 0.8), oracle::kType2OneSample, 1e-27);
  EXPECT_EQ(type2_envelope_one_sample(b, 5400, 0.05, 0.2), 1.0);
  double prev = 1.0;
  for (std::uint64_t m = 6000; m <= 48000; m *= 2) {
    const double e = type2_envelope_one_sample(b, m, 0.05, 0.4);
    EXPECT_LE(e, prev);
    prev = e;
  }
  EXPECT_LT(prev, 1.0);
}

TEST(TypeTwoEnvelope, TwoSample) {
  const ConcentrationBound b = bound_pauli_qubit();
  EXPECT_NEAR(type2_envelope_two_sample(b, 5400, 5400, 0.05, 2.0), oracle::kType2TwoSample, 1e-45);
  EXPECT_LE(type2_envelope_two_sample(b, 5400, 5400, 0.05, 2.0),
            12.0 * std::exp(-5400.0 * (4.0 - 2.0 * 0.46837) / 216.0));
  EXPECT_EQ(type2_envelope_two_sample(b, 5400, 5400, 0.05, 0.9), 1.0);
}

TEST(SyntheticEstimate, TailMatchesEnvelope) {
  const ConcentrationBound b = bound_entangled(2, 2);
  const DensityOperator truth = bloch(0.2, 0.1, 0.0);
  const std::uint64_t m = 2000;
  const double t = 0.305;
  const double expected = std::min(1.0, b.evaluate(m, t));
  const std::uint64_t trials = 20000;
  const std::uint64_t hits = count_trials(trials, 1, [&](std::uint64_t i) {
    Stream s = Stream::derive(9, {i});
    const TomographyEstimate e = synthetic_estimate(truth, b, m, s);
    return trace_norm(e.estimate - truth.hermitian()) >= t;
  });
  EXPECT_NEAR(static_cast<double>(hits) / trials, expected, 4.0 * testing::binomial_se(expected, trials) + 1e-4);
  Stream s(1);
  const TomographyEstimate e = synthetic_estimate(truth, b, m, s);
  EXPECT_EQ(e.scheme, Scheme::Entangled);
  EXPECT_NEAR(e.estimate.trace(), 1.0, 1e-12);
}

}  // namespace
}  // namespace quht
