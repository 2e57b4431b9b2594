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

#pragma once

// Decision rules for universal state testing. The one- and two-sample rules
// accept H0 when the trace-norm statistic is at most the calibrated
// threshold; the pure-state rule accepts only if every shot lands on the
// nominal projector.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "quht/linalg.hpp"
#include "quht/measurement.hpp"
#include "quht/rng.hpp"
#include "quht/states.hpp"
#include "quht/tomography.hpp"

namespace quht {

enum class TestKind { PureStateOneSample, OneSample, TwoSample };
enum class Decision { H0, H1 };

inline const char* decision_name(Decision d) { return d == Decision::H0 ? "H0" : "H1"; }

inline const char* test_kind_name(TestKind k) {
  switch (k) {
    case TestKind::PureStateOneSample: return "pure-state";
    case TestKind::OneSample: return "one-sample";
    case TestKind::TwoSample: return "two-sample";
  }
  return "unknown";
}

struct TestConfig {
  TestKind kind = TestKind::OneSample;
  std::optional<DensityOperator> nominal;  // absent for two-sample
  std::optional<ConcentrationBound> bound;  // absent for the pure-state rule
  std::uint64_t m = 0;
  std::uint64_t n = 0;  // two-sample only
  double alpha = 0.0;
  double threshold = 0.0;

  static TestConfig pure_state(DensityOperator nominal, std::uint64_t m) {
    if (!nominal.is_pure()) {
      throw std::invalid_argument("pure-state test needs a rank-1 nominal, got rank " +
                                  std::to_string(nominal.rank()));
    }
    detail::require_shots(m, "pure-state test");
    return TestConfig{TestKind::PureStateOneSample, std::move(nominal), std::nullopt, m, 0, 0.0, 0.0};
  }

  static TestConfig one_sample(DensityOperator nominal, const ConcentrationBound& bound, std::uint64_t m,
                               double alpha) {
    const double c = threshold_one_sample(bound, m, alpha);
    return TestConfig{TestKind::OneSample, std::move(nominal), bound, m, 0, alpha, c};
  }

  static TestConfig two_sample(const ConcentrationBound& bound, std::uint64_t m, std::uint64_t n, double alpha) {
    const double c = threshold_two_sample(bound, m, n, alpha);
    return TestConfig{TestKind::TwoSample, std::nullopt, bound, m, n, alpha, c};
  }

  Scheme scheme() const { return bound ? bound->label : Scheme::Generic; }
};

struct TestVerdict {
  Decision decision = Decision::H0;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> type2_envelope;
};

inline TestVerdict decide(double statistic, double threshold) {
  // Ties go to H0.
  return {statistic <= threshold ? Decision::H0 : Decision::H1, statistic, threshold, std::nullopt};
}

/// Accept H0 iff all shots of {|phi><phi|, I - |phi><phi|} hit the nominal
/// projector. The statistic is the number of misses; the threshold is 0.
inline TestVerdict pure_state_test(const DensityOperator& nominal, const OutcomeRecord& record) {
  if (!nominal.is_pure()) {
    throw std::invalid_argument("pure_state_test: nominal state has rank " + std::to_string(nominal.rank()));
  }
  if (record.povm_id != kNominalProjectorId || record.labels.size() != 2) {
    throw std::invalid_argument("pure_state_test: record '" + record.povm_id +
                                "' is not a nominal-projector measurement");
  }
  const auto hit = static_cast<std::size_t>(std::find(record.labels.begin(), record.labels.end(), 1.0) -
                                            record.labels.begin());
  const double misses = static_cast<double>(record.shots - record.counts.at(hit));
  return decide(misses, 0.0);
}

/// beta = F(nominal, truth)^m for the pure-state rule.
inline double pure_state_beta_exact(const DensityOperator& nominal, const DensityOperator& truth, std::uint64_t m) {
  if (!nominal.is_pure()) {
    throw std::invalid_argument("pure_state_beta_exact: nominal state has rank " +
                                std::to_string(nominal.rank()));
  }
  return std::pow(fidelity(nominal, truth), static_cast<double>(m));
}

namespace detail {
inline void require_scheme(const TomographyEstimate& e, const TestConfig& config, const char* what) {
  if (!config.bound || e.scheme != config.bound->label) {
    throw std::invalid_argument(std::string(what) + ": estimate scheme '" + std::string(scheme_name(e.scheme)) +
                                "' does not match the configured scheme '" +
                                std::string(scheme_name(config.scheme())) + "'");
  }
}
}  // namespace detail

/// H0 iff ||estimate - nominal||_1 <= c_m.
inline TestVerdict one_sample_test(const DensityOperator& nominal, const TomographyEstimate& estimate,
                                   const TestConfig& config) {
  if (config.kind != TestKind::OneSample) throw std::invalid_argument("one_sample_test: config is not one-sample");
  detail::require_scheme(estimate, config, "one_sample_test");
  detail::require_same_dim(estimate.estimate.dim(), nominal.dim(), "one_sample_test");
  return decide(trace_norm(estimate.estimate - nominal.hermitian()), config.threshold);
}

/// H0 iff ||sigma_hat - rho_hat||_1 <= c_k.
inline TestVerdict two_sample_test(const TomographyEstimate& estimate_sigma, const TomographyEstimate& estimate_rho,
                                   const TestConfig& config) {
  if (config.kind != TestKind::TwoSample) throw std::invalid_argument("two_sample_test: config is not two-sample");
  detail::require_scheme(estimate_sigma, config, "two_sample_test");
  detail::require_scheme(estimate_rho, config, "two_sample_test");
  detail::require_same_dim(estimate_sigma.estimate.dim(), estimate_rho.estimate.dim(), "two_sample_test");
  return decide(trace_norm(estimate_sigma.estimate - estimate_rho.estimate), config.threshold);
}

/// g(m) exp(-m C (s - c_m)^2), or 1 when s <= c_m.
inline double type2_envelope_one_sample(const ConcentrationBound& bound, std::uint64_t m, double alpha,
                                        double separation) {
  const double c = threshold_one_sample(bound, m, alpha);
  if (separation <= c) return 1.0;
  const double gap = separation - c;
  const double v = std::exp(bound.log_prefactor(m) - static_cast<double>(m) * bound.exponent_C * gap * gap);
  return std::clamp(v, 0.0, 1.0);
}

/// (g(n) + g(m)) exp(-k C (s^2 - 2 c_k) / 4), or 1 when s^2 <= 2 c_k.
inline double type2_envelope_two_sample(const ConcentrationBound& bound, std::uint64_t m, std::uint64_t n,
                                        double alpha, double separation) {
  const double c = threshold_two_sample(bound, m, n, alpha);
  const double reach = separation * separation - 2.0 * c;
  if (reach <= 0.0) return 1.0;
  const double k = static_cast<double>(std::min(m, n));
  const double v = std::exp(detail::log_prefactor_sum(bound, m, n) - k * bound.exponent_C * reach / 4.0);
  return std::clamp(v, 0.0, 1.0);
}

/// Estimate whose error ||est - truth||_1 = T has tail exactly
/// min(1, g(m) exp(-m C t^2)), along a uniformly random traceless direction.
/// Stands in for measurement schemes that are not simulated.
inline TomographyEstimate synthetic_estimate(const DensityOperator& truth, const ConcentrationBound& bound,
                                             std::uint64_t m, Stream& stream) {
  detail::require_shots(m, "synthetic_estimate");
  const double u = 1.0 - stream.uniform();  // (0, 1]
  const double excess = std::max(0.0, bound.log_prefactor(m) - std::log(u));
  const double radius = std::sqrt(excess / (static_cast<double>(m) * bound.exponent_C));
  const HermitianMatrix direction = random_traceless_direction(truth.dim(), stream);
  HermitianMatrix est = truth.hermitian() + radius * direction;
  const bool physical = is_psd(est);
  return {std::move(est), bound.label, m, physical};
}

}  // namespace quht
