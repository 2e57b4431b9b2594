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
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "quht/experiments.hpp"
#include "test_util.hpp"

namespace quht {
namespace {

using testing::bloch;
using testing::ket0;
using testing::ket_plus;
using testing::mixed2;

TEST(Wilson, ContainsEstimateAndShrinks) {
  for (std::uint64_t k : {0ULL, 1ULL, 50ULL, 999ULL, 1000ULL}) {
    const Interval ci = wilson_interval(k, 1000);
    const double p = static_cast<double>(k) / 1000.0;
    EXPECT_LE(ci.lo, p);
    EXPECT_GE(ci.hi, p);
    EXPECT_GE(ci.lo, 0.0);
    EXPECT_LE(ci.hi, 1.0);
  }
  EXPECT_GT(wilson_interval(0, 1000).hi, 0.0);
  const Interval wide = wilson_interval(50, 100), narrow = wilson_interval(5000, 10000);
  EXPECT_LT(narrow.hi - narrow.lo, wide.hi - wide.lo);
  // 50/100: textbook Wilson interval (0.4038, 0.5962).
  EXPECT_NEAR(wide.lo, 0.40383, 1e-5);
  EXPECT_NEAR(wide.hi, 0.59617, 1e-5);
}

TEST(FitExponent, ExactLines) {
  std::vector<ExponentPoint> pts;
  for (int m = 1; m <= 10; ++m) pts.push_back({double(m), std::ldexp(1.0, -m)});
  const ExponentFit f = fit_exponent(pts);
  EXPECT_NEAR(f.slope, std::log(2.0), 1e-9);
  EXPECT_NEAR(f.intercept, 0.0, 1e-9);
  EXPECT_EQ(f.points_used, 10U);

  pts.clear();
  const double c = 1.0 / 54.0, s = 0.8, g = 6.0;
  for (double m : {600.0, 1200.0, 2400.0, 4800.0}) pts.push_back({m, g * std::exp(-m * c * s * s) / 10.0});
  const ExponentFit f2 = fit_exponent(pts);
  EXPECT_NEAR(f2.slope, c * s * s, 1e-9);
  EXPECT_NEAR(f2.intercept, -std::log(g / 10.0), 1e-8);
  EXPECT_LT(f2.rms_residual, 1e-9);
}

TEST(FitExponent, ExcludesZerosAndNeedsThreePoints) {
  std::vector<ExponentPoint> pts = {{1, 0.5}, {2, 0.25}, {3, 0.0}, {4, 1.0}};
  EXPECT_THROW(fit_exponent(pts), std::domain_error);
  pts.push_back({5, 1.0 / 32.0});
  const ExponentFit f = fit_exponent(pts);
  EXPECT_EQ(f.points_used, 3U);
  EXPECT_NEAR(f.slope, std::log(2.0), 1e-12);
}

TEST(ExactOracle, FrozenSmallCase) {
  const ExactErrors e = exact_qubit_pauli_errors(ket0(), mixed2(), 6, 1.0);
  EXPECT_NEAR(e.alpha, oracle::kExactAlphaM6, 1e-14);
  EXPECT_NEAR(e.beta, oracle::kExactBetaM6, 1e-14);
  EXPECT_EQ(exact_qubit_pauli_errors(mixed2(), mixed2(), 6, 2.0).alpha, 0.0);
}

TEST(ExactOracle, Preconditions) {
  EXPECT_THROW(exact_qubit_pauli_errors(ket0(), mixed2(), 7, 1.0), std::invalid_argument);
  EXPECT_THROW(exact_qubit_pauli_errors(ket0(), mixed2(), 1203, 1.0), std::length_error);
  EXPECT_NO_THROW(exact_qubit_pauli_errors(ket0(), mixed2(), 1200, 1.0));
  EXPECT_THROW(exact_qubit_pauli_errors(maximally_mixed(3), maximally_mixed(3), 6, 1.0), std::invalid_argument);
}

TEST(ExactOracle, BetaSweepFrozen) {
  const ConcentrationBound b = bound_pauli_qubit();
  for (const auto& pt : oracle::kBetaSweep) {
    const double c = threshold_one_sample(b, pt.m, 0.05);
    const ExactErrors e = exact_qubit_pauli_errors(mixed2(), bloch(0.8, 0, 0), pt.m, c);
    EXPECT_NEAR(e.beta, pt.beta, 5e-4 * pt.beta) << "m=" << pt.m;
    EXPECT_LT(e.alpha, 1e-12);
  }
}

TEST(ExactOracle, MonteCarloAgreesSmallCase) {
  const ErrorCounts mc = monte_carlo_qubit_pauli_errors(ket0(), mixed2(), 6, 1.0, 200000, 17);
  const double n = 200000.0;
  EXPECT_NEAR(mc.type1 / n, 0.25, 4.0 * testing::binomial_se(0.25, n));
  EXPECT_NEAR(mc.type2 / n, 0.3125, 4.0 * testing::binomial_se(0.3125, n));
}

ExperimentPlan pure_plan(bool beta) {
  ExperimentPlan plan(ket0());
  plan.kind = TestKind::PureStateOneSample;
  if (beta) plan.true_state = ket_plus();
  plan.m_grid = {5, 10, 15};
  plan.trials = 20000;
  plan.master_seed = 2026;
  return plan;
}

TEST(RunExperiment, PureStateAlphaIsZero) {
  const ExperimentResult r = run_experiment(pure_plan(false));
  for (const auto& p : r.points) {
    EXPECT_EQ(p.errors, 0U);
    EXPECT_EQ(p.rate, 0.0);
    EXPECT_DOUBLE_EQ(p.rule_of_three, 3.0 / 20000.0);
  }
  EXPECT_FALSE(r.fit.has_value());
}

TEST(RunExperiment, PureStateBetaMatchesFidelityPower) {
  const ExperimentResult r = run_experiment(pure_plan(true));
  ASSERT_EQ(r.points.size(), 3U);
  for (const auto& p : r.points) {
    const double beta = std::ldexp(1.0, -static_cast<int>(p.m));
    EXPECT_NEAR(p.envelope, beta, 1e-15);
    EXPECT_NEAR(p.rate, beta, 4.0 * testing::binomial_se(beta, 20000.0) + 1e-12);
  }
  ASSERT_TRUE(r.theoretical_exponent.has_value());
  EXPECT_NEAR(*r.theoretical_exponent, std::log(2.0), 1e-13);
}

TEST(RunExperiment, DeterministicAcrossThreadCounts) {
  ExperimentPlan plan(mixed2());
  plan.kind = TestKind::OneSample;
  plan.bound = bound_pauli_qubit();
  plan.true_state = bloch(0.8, 0, 0);
  plan.m_grid = {360, 450, 540};
  plan.trials = 3000;
  plan.master_seed = 99;
  plan.threads = 1;
  const ExperimentResult one = run_experiment(plan);
  plan.threads = 4;
  const ExperimentResult four = run_experiment(plan);
  plan.threads = 7;
  const ExperimentResult seven = run_experiment(plan);
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    EXPECT_EQ(one.points[i].errors, four.points[i].errors);
    EXPECT_EQ(one.points[i].errors, seven.points[i].errors);
    EXPECT_EQ(one.points[i].ci.lo, four.points[i].ci.lo);
  }
  ASSERT_TRUE(one.fit && four.fit);
  EXPECT_EQ(one.fit->slope, four.fit->slope);
}

TEST(RunExperiment, MonteCarloMatchesExactBeta) {
  ExperimentPlan plan(mixed2());
  plan.kind = TestKind::OneSample;
  plan.bound = bound_pauli_qubit();
  plan.true_state = bloch(0.8, 0, 0);
  plan.m_grid = {390, 450};
  plan.trials = 10000;
  plan.master_seed = 5;
  const ExperimentResult r = run_experiment(plan);
  for (const auto& p : r.points) {
    const ExactErrors e = exact_qubit_pauli_errors(mixed2(), *plan.true_state, p.m, p.threshold);
    EXPECT_NEAR(p.rate, e.beta, 4.0 * testing::binomial_se(e.beta, 1e4) + 0.5 / 1e4) << "m=" << p.m;
  }
}

TEST(RunExperiment, TwoSampleAndSyntheticModes) {
  ExperimentPlan plan(ket0());
  plan.kind = TestKind::TwoSample;
  plan.bound = bound_pauli_qubit();
  plan.true_state = testing::ket1();
  plan.m_grid = {540};
  plan.trials = 200;
  const ExperimentResult r = run_experiment(plan);
  EXPECT_EQ(r.points[0].errors, 0U);
  EXPECT_EQ(r.points[0].n, 540U);

  ExperimentPlan syn(mixed2());
  syn.kind = TestKind::OneSample;
  syn.bound = bound_entangled(2, 2);
  syn.synthetic = true;
  syn.true_state = bloch(0.6, 0, 0);
  syn.m_grid = {2000, 4000, 8000};
  syn.trials = 1000;
  const ExperimentResult rs = run_experiment(syn);
  for (const auto& p : rs.points) {
    EXPECT_LE(p.rate, p.envelope + 3.0 * testing::binomial_se(p.envelope, 1000.0));
  }
}

TEST(ValidatePlan, Rejections) {
  ExperimentPlan plan = pure_plan(true);
  plan.trials = 99;
  EXPECT_THROW(validate_plan(plan), std::invalid_argument);
  plan = pure_plan(true);
  plan.m_grid = {5, 5};
  EXPECT_THROW(validate_plan(plan), std::invalid_argument);
  plan.m_grid = {};
  EXPECT_THROW(validate_plan(plan), std::invalid_argument);

  ExperimentPlan pauli(mixed2());
  pauli.bound = bound_pauli_qubit();
  pauli.m_grid = {301};
  pauli.trials = 100;
  EXPECT_THROW(validate_plan(pauli), std::invalid_argument);
  pauli.m_grid = {300};
  EXPECT_NO_THROW(validate_plan(pauli));
  pauli.bound = bound_entangled(2, 2);
  EXPECT_THROW(validate_plan(pauli), std::invalid_argument);
  pauli.synthetic = true;
  EXPECT_NO_THROW(validate_plan(pauli));

  ExperimentPlan mixed_pure(mixed2());
  mixed_pure.kind = TestKind::PureStateOneSample;
  mixed_pure.m_grid = {5};
  mixed_pure.trials = 100;
  EXPECT_THROW(validate_plan(mixed_pure), std::invalid_argument);
}

TEST(ValidatePlan, BudgetReportsCost) {
  ExperimentPlan plan = pure_plan(true);
  plan.shot_budget = 1000;
  try {
    validate_plan(plan);
    FAIL() << "expected length_error";
  } catch (const std::length_error& e) {
    EXPECT_NE(std::string(e.what()).find("600000"), std::string::npos) << e.what();
  }
}

TEST(Pinsker, RatioValues) {
  const ClassicalDistribution p({0.5, 0.5});
  EXPECT_NEAR(pinsker_ratio(p, ClassicalDistribution({0.51, 0.49})), oracle::kPinskerRatio051, 1e-13);
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {0.1, 0.01, 0.001}) {
    const double r = pinsker_ratio(p, ClassicalDistribution({0.5 + t, 0.5 - t}));
    EXPECT_GE(r, 0.5);
    EXPECT_LT(r, prev);
    // Series: 1/2 + t^2 + 8 t^4 / 3 + O(t^6).
    EXPECT_NEAR(r, 0.5 + t * t + 8.0 / 3.0 * t * t * t * t, 10.0 * std::pow(t, 6) + 1e-12);
    prev = r;
  }
  EXPECT_THROW(pinsker_ratio(p, p), std::invalid_argument);
  EXPECT_THROW(pinsker_ratio(p, ClassicalDistribution({1.0, 0.0})), std::invalid_argument);
  EXPECT_THROW(ClassicalDistribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(ClassicalDistribution({1.5, -0.5}), std::invalid_argument);
}

TEST(Pinsker, SharpnessScan) {
  const SharpnessWitness w = pinsker_sharpness_scan(0.01);
  EXPECT_LE(w.t, 0.1);
  EXPECT_LE(w.ratio, 0.51);
  EXPECT_EQ(pinsker_ratio(w.p, w.q), w.ratio);
  EXPECT_EQ(pinsker_sharpness_scan(1.0).t, 0.25);
  EXPECT_THROW(pinsker_sharpness_scan(0.0), std::invalid_argument);
  EXPECT_LE(pinsker_sharpness_scan(1e-6).ratio, 0.5 + 1e-6);
}

TEST(InequalitySuite, NoViolations) {
  for (std::size_t d : {2, 3, 4}) {
    const InequalityReport rep = quantum_inequality_suite(1, 200, d);
    EXPECT_TRUE(rep.passed()) << "d=" << d;
    EXPECT_GE(rep.min_fvdg_slack, -kInequalitySlack);
    EXPECT_GE(rep.min_pinsker_slack, -kInequalitySlack);
  }
}

TEST(InequalitySuite, DiagonalPairsMatchClassicalPinsker) {
  const DensityOperator a = bloch(0, 0, 0.4), b = bloch(0, 0, -0.2);
  const ClassicalDistribution p({0.7, 0.3}), q({0.4, 0.6});
  const double norm = trace_norm(a.hermitian() - b.hermitian());
  EXPECT_NEAR(relative_entropy(a, b) / (norm * norm), pinsker_ratio(p, q), 1e-13);
}

}  // namespace
}  // namespace quht
