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

// Monte Carlo harness for the decision rules, the exact enumeration oracle
// for the qubit Pauli test, error-exponent fitting, and the classical and
// quantum inequality checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quht/hypothesis.hpp"
#include "quht/linalg.hpp"
#include "quht/measurement.hpp"
#include "quht/parallel.hpp"
#include "quht/rng.hpp"
#include "quht/states.hpp"
#include "quht/tomography.hpp"

namespace quht {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  // Clamp so the interval always contains p despite rounding at p = 0 or 1.
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

// ---------------------------------------------------------------------------
// Exponent fitting

struct ExponentPoint {
  double m = 0.0;
  double beta_hat = 0.0;
};

struct ExponentFit {
  double slope = 0.0;      // fitted rate of -ln(beta) per copy
  double intercept = 0.0;  // absorbs -ln g
  double rms_residual = 0.0;
  double max_abs_residual = 0.0;
  std::size_t points_used = 0;
};

/// Unweighted least-squares line through (m, -ln beta_hat). Points with
/// beta_hat outside (0, 1) are excluded; fewer than three remaining points
/// is an error.
inline ExponentFit fit_exponent(std::span<const ExponentPoint> points) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) {
    if (p.beta_hat > 0.0 && p.beta_hat < 1.0) xy.emplace_back(p.m, -std::log(p.beta_hat));
  }
  if (xy.size() < 3) {
    throw std::domain_error("fit_exponent: insufficient data (" + std::to_string(xy.size()) +
                            " usable points, need 3)");
  }
  const double n = static_cast<double>(xy.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0.0) throw std::domain_error("fit_exponent: all usable points share the same m");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& [x, y] : xy) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss += r * r;
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.points_used = xy.size();
  return fit;
}

// ---------------------------------------------------------------------------
// Experiment plans

struct ExperimentPlan {
  explicit ExperimentPlan(DensityOperator nominal_state) : nominal(std::move(nominal_state)) {}

  TestKind kind = TestKind::OneSample;
  std::optional<ConcentrationBound> bound;  // required except for the pure-state rule
  bool synthetic = false;  // draw envelope-saturating synthetic estimates instead of simulating measurements
  /// One-sample nominal; for two-sample runs, the state supplying the n-copy reference sample.
  DensityOperator nominal;
  /// Present for type II runs; absent means the data come from the nominal (type I run).
  std::optional<DensityOperator> true_state;
  double alpha = 0.05;
  std::vector<std::uint64_t> m_grid;
  std::vector<std::uint64_t> n_grid;  // two-sample only; empty means n = m
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  double shot_budget = 2e10;  // cap on trials * sum(m + n)

  bool beta_run() const { return true_state.has_value(); }
  std::uint64_t n_at(std::size_t i) const { return n_grid.empty() ? m_grid[i] : n_grid[i]; }
};

inline bool scheme_is_simulable(Scheme s) { return s == Scheme::PauliQubit || s == Scheme::PauliString; }

/// trials * sum over the grid of the shots each trial consumes.
inline double plan_cost(const ExperimentPlan& plan) {
  double per_trial = 0.0;
  for (std::size_t i = 0; i < plan.m_grid.size(); ++i) {
    per_trial += static_cast<double>(plan.m_grid[i]);
    if (plan.kind == TestKind::TwoSample) per_trial += static_cast<double>(plan.n_at(i));
  }
  return per_trial * static_cast<double>(plan.trials);
}

inline void validate_plan(const ExperimentPlan& plan) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("experiment plan: " + msg); };
  if (plan.trials < 100) fail("trials must be at least 100, got " + std::to_string(plan.trials));
  if (plan.m_grid.empty()) fail("m_grid is empty");
  for (std::size_t i = 0; i < plan.m_grid.size(); ++i) {
    if (plan.m_grid[i] == 0) fail("m_grid entries must be positive");
    if (i > 0 && plan.m_grid[i] <= plan.m_grid[i - 1]) fail("m_grid must be strictly increasing");
  }
  if (!plan.n_grid.empty()) {
    if (plan.kind != TestKind::TwoSample) fail("n_grid is only meaningful for two-sample runs");
    if (plan.n_grid.size() != plan.m_grid.size()) fail("n_grid must have the same length as m_grid");
    for (auto n : plan.n_grid) {
      if (n == 0) fail("n_grid entries must be positive");
    }
  }
  if (plan.true_state) detail::require_same_dim(plan.true_state->dim(), plan.nominal.dim(), "experiment plan");
  if (plan.kind == TestKind::PureStateOneSample) {
    if (!plan.nominal.is_pure()) fail("pure-state runs need a rank-1 nominal");
    if (plan.synthetic) fail("the pure-state rule has no synthetic mode");
  } else {
    detail::require_alpha(plan.alpha);
    if (!plan.bound) fail("a concentration scheme is required");
    const Scheme s = plan.bound->label;
    if (!plan.synthetic && !scheme_is_simulable(s)) {
      fail("scheme '" + std::string(scheme_name(s)) + "' cannot be simulated; enable synthetic mode");
    }
    if (plan.bound->label != Scheme::Generic && plan.bound->dim != plan.nominal.dim()) {
      fail("scheme dimension " + std::to_string(plan.bound->dim) + " does not match the state dimension " +
           std::to_string(plan.nominal.dim()));
    }
    if (!plan.synthetic) {
      const std::uint64_t settings = s == Scheme::PauliQubit ? 3 : cached_pauli_basis(plan.bound->qubits).size();
      for (std::size_t i = 0; i < plan.m_grid.size(); ++i) {
        const bool n_used = plan.kind == TestKind::TwoSample;
        if (plan.m_grid[i] % settings != 0 || (n_used && plan.n_at(i) % settings != 0)) {
          fail("shot counts must be multiples of the " + std::to_string(settings) + " measurement settings");
        }
      }
    }
  }
  const double cost = plan_cost(plan);
  if (cost > plan.shot_budget) {
    throw std::length_error("experiment plan: estimated cost " + std::to_string(cost) +
                            " shots exceeds the budget of " + std::to_string(plan.shot_budget));
  }
}

struct GridPointResult {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double rate = 0.0;  // alpha_hat for type I runs, beta_hat for type II runs
  Interval ci;
  double envelope = 0.0;  // certified bound on the rate at this point
  double threshold = 0.0;
  bool vacuous = false;  // the certified envelope is 1 (no guarantee yet)
  double rule_of_three = 0.0;  // 3/trials when no errors were observed, else 0
};

struct ExperimentResult {
  TestKind kind = TestKind::OneSample;
  std::optional<Scheme> scheme;
  bool beta_run = false;
  bool synthetic = false;
  double alpha = 0.0;
  std::uint64_t master_seed = 0;
  double separation = 0.0;  // ||nominal - true||_1 for type II runs
  std::vector<GridPointResult> points;
  std::optional<ExponentFit> fit;
  std::string fit_note;
  std::optional<double> theoretical_exponent;
};

inline constexpr std::uint64_t kMinErrorsForFit = 10;

namespace detail {

/// Draws one estimate of `state` under the plan's scheme.
class EstimateSource {
 public:
  EstimateSource(const ExperimentPlan& plan, const DensityOperator& state) : state_(state), bound_(*plan.bound) {
    if (!plan.synthetic) tomographer_.emplace(state, bound_.label, bound_.qubits);
  }
  TomographyEstimate draw(std::uint64_t m, Stream& stream) const {
    return tomographer_ ? tomographer_->estimate(m, stream) : synthetic_estimate(state_, bound_, m, stream);
  }

 private:
  const DensityOperator& state_;
  ConcentrationBound bound_;
  std::optional<PauliTomographer> tomographer_;
};

}  // namespace detail

/// Runs every grid point of the plan. Trial t at grid index g draws from
/// Stream::derive(master_seed, {g, t}), so results do not depend on the
/// thread count.
inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
  validate_plan(plan);
  const DensityOperator& data_state = plan.true_state ? *plan.true_state : plan.nominal;
  const bool beta_run = plan.beta_run();

  ExperimentResult result;
  result.kind = plan.kind;
  if (plan.bound) result.scheme = plan.bound->label;
  result.beta_run = beta_run;
  result.synthetic = plan.synthetic;
  result.alpha = plan.kind == TestKind::PureStateOneSample ? 0.0 : plan.alpha;
  result.master_seed = plan.master_seed;
  if (beta_run) result.separation = trace_norm(plan.nominal.hermitian() - plan.true_state->hermitian());

  std::optional<Povm> projector;
  std::optional<OutcomeSampler> projector_sampler;
  std::optional<detail::EstimateSource> data_source, reference_source;
  if (plan.kind == TestKind::PureStateOneSample) {
    projector.emplace(nominal_projector_povm(plan.nominal));
    projector_sampler.emplace(*projector, data_state);
  } else {
    data_source.emplace(plan, data_state);
    if (plan.kind == TestKind::TwoSample) reference_source.emplace(plan, plan.nominal);
  }

  for (std::size_t g = 0; g < plan.m_grid.size(); ++g) {
    const std::uint64_t m = plan.m_grid[g];
    const std::uint64_t n = plan.kind == TestKind::TwoSample ? plan.n_at(g) : 0;
    GridPointResult point;
    point.m = m;
    point.n = n;
    point.trials = plan.trials;
    const Decision wrong = beta_run ? Decision::H0 : Decision::H1;

    switch (plan.kind) {
      case TestKind::PureStateOneSample: {
        point.threshold = 0.0;
        point.errors = count_trials(plan.trials, plan.threads, [&](std::uint64_t t) {
          Stream stream = Stream::derive(plan.master_seed, {g, t});
          return pure_state_test(plan.nominal, projector_sampler->draw(m, stream)).decision == wrong;
        });
        point.envelope = beta_run ? pure_state_beta_exact(plan.nominal, *plan.true_state, m) : 0.0;
        point.vacuous = false;
        break;
      }
      case TestKind::OneSample: {
        const TestConfig config = TestConfig::one_sample(plan.nominal, *plan.bound, m, plan.alpha);
        point.threshold = config.threshold;
        point.errors = count_trials(plan.trials, plan.threads, [&](std::uint64_t t) {
          Stream stream = Stream::derive(plan.master_seed, {g, t});
          return one_sample_test(plan.nominal, data_source->draw(m, stream), config).decision == wrong;
        });
        point.envelope =
            beta_run ? type2_envelope_one_sample(*plan.bound, m, plan.alpha, result.separation) : plan.alpha;
        point.vacuous = beta_run && point.envelope >= 1.0;
        break;
      }
      case TestKind::TwoSample: {
        const TestConfig config = TestConfig::two_sample(*plan.bound, m, n, plan.alpha);
        point.threshold = config.threshold;
        point.errors = count_trials(plan.trials, plan.threads, [&](std::uint64_t t) {
          Stream stream = Stream::derive(plan.master_seed, {g, t});
          const TomographyEstimate sigma_hat = data_source->draw(m, stream);
          const TomographyEstimate rho_hat = reference_source->draw(n, stream);
          return two_sample_test(sigma_hat, rho_hat, config).decision == wrong;
        });
        point.envelope =
            beta_run ? type2_envelope_two_sample(*plan.bound, m, n, plan.alpha, result.separation) : plan.alpha;
        point.vacuous = beta_run && point.envelope >= 1.0;
        break;
      }
    }
    point.rate = static_cast<double>(point.errors) / static_cast<double>(plan.trials);
    point.ci = wilson_interval(point.errors, plan.trials);
    if (point.errors == 0) point.rule_of_three = 3.0 / static_cast<double>(plan.trials);
    result.points.push_back(point);
  }

  if (beta_run) {
    if (plan.kind == TestKind::PureStateOneSample) {
      result.theoretical_exponent = sandwiched_renyi_half(plan.nominal, *plan.true_state);
    } else {
      const double s2 = result.separation * result.separation;
      result.theoretical_exponent =
          plan.bound->exponent_C * s2 / (plan.kind == TestKind::TwoSample ? 4.0 : 1.0);
    }
    std::vector<ExponentPoint> usable;
    for (const auto& p : result.points) {
      if (p.errors >= kMinErrorsForFit && p.errors < p.trials) {
        usable.push_back({static_cast<double>(p.m), p.rate});
      }
    }
    try {
      result.fit = fit_exponent(usable);
    } catch (const std::domain_error& e) {
      result.fit_note = e.what();
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Qubit Pauli oracle

struct ExactErrors {
  double alpha = 0.0;  // Pr[H1 | data from nominal]
  double beta = 0.0;   // Pr[H0 | data from true_state]
};

inline constexpr std::uint64_t kEnumerationBudget = 400;  // max shots per axis

namespace detail {
inline std::vector<double> binomial_pmf(std::uint64_t trials, double p) {
  std::vector<double> pmf(trials + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[trials] = 1.0;
    return pmf;
  }
  const double n = static_cast<double>(trials);
  for (std::uint64_t k = 0; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) +
                           kk * std::log(p) + (n - kk) * std::log1p(-p);
    pmf[k] = std::exp(log_pmf);
  }
  return pmf;
}
}  // namespace detail

/// Exact type I and II errors of the qubit Pauli one-sample test with
/// threshold c, by enumerating every (k_X, k_Y, k_Z) tally of +1 outcomes.
/// For qubits the statistic reduces to |r_hat - r_nominal| (Euclidean).
inline ExactErrors exact_qubit_pauli_errors(const DensityOperator& nominal, const DensityOperator& true_state,
                                            std::uint64_t m, double c) {
  if (nominal.dim() != 2 || true_state.dim() != 2) {
    throw std::invalid_argument("exact_qubit_pauli_errors: qubit states required");
  }
  if (m == 0 || m % 3 != 0) throw std::invalid_argument("exact_qubit_pauli_errors: m must be a positive multiple of 3");
  const std::uint64_t per = m / 3;
  if (per > kEnumerationBudget) {
    throw std::length_error("exact_qubit_pauli_errors: m/3 = " + std::to_string(per) +
                            " exceeds the enumeration budget of " + std::to_string(kEnumerationBudget));
  }
  const BlochVector r_nom = bloch_from_density(nominal);
  const BlochVector r_true = bloch_from_density(true_state);
  std::vector<double> pmf_nom[3], pmf_true[3], dev2[3];
  for (std::size_t a = 0; a < 3; ++a) {
    pmf_nom[a] = detail::binomial_pmf(per, (1.0 + r_nom[a]) / 2.0);
    pmf_true[a] = detail::binomial_pmf(per, (1.0 + r_true[a]) / 2.0);
    dev2[a].resize(per + 1);
    for (std::uint64_t k = 0; k <= per; ++k) {
      const double r_hat = (2.0 * static_cast<double>(k) - static_cast<double>(per)) / static_cast<double>(per);
      dev2[a][k] = (r_hat - r_nom[a]) * (r_hat - r_nom[a]);
    }
  }
  double accept_nom = 0.0, accept_true = 0.0;
  for (std::uint64_t kx = 0; kx <= per; ++kx) {
    for (std::uint64_t ky = 0; ky <= per; ++ky) {
      const double pxy_nom = pmf_nom[0][kx] * pmf_nom[1][ky];
      const double pxy_true = pmf_true[0][kx] * pmf_true[1][ky];
      const double dxy = dev2[0][kx] + dev2[1][ky];
      for (std::uint64_t kz = 0; kz <= per; ++kz) {
        if (std::sqrt(dxy + dev2[2][kz]) <= c) {
          accept_nom += pxy_nom * pmf_nom[2][kz];
          accept_true += pxy_true * pmf_true[2][kz];
        }
      }
    }
  }
  return {std::clamp(1.0 - accept_nom, 0.0, 1.0), std::clamp(accept_true, 0.0, 1.0)};
}

struct ErrorCounts {
  std::uint64_t type1 = 0;
  std::uint64_t type2 = 0;
  std::uint64_t trials = 0;
};

/// Monte Carlo counterpart of exact_qubit_pauli_errors: the full sampling,
/// estimation and one-sample statistic pipeline, with the calibrated
/// threshold replaced by c.
inline ErrorCounts monte_carlo_qubit_pauli_errors(const DensityOperator& nominal, const DensityOperator& true_state,
                                                  std::uint64_t m, double c, std::uint64_t trials,
                                                  std::uint64_t seed, unsigned threads = 1) {
  TestConfig config = TestConfig::one_sample(nominal, bound_pauli_qubit(), m, 0.05);
  config.threshold = c;
  const PauliTomographer from_nominal(nominal, Scheme::PauliQubit);
  const PauliTomographer from_true(true_state, Scheme::PauliQubit);
  ErrorCounts out;
  out.trials = trials;
  out.type1 = count_trials(trials, threads, [&](std::uint64_t t) {
    Stream s = Stream::derive(seed, {0, t});
    return one_sample_test(nominal, from_nominal.estimate(m, s), config).decision == Decision::H1;
  });
  out.type2 = count_trials(trials, threads, [&](std::uint64_t t) {
    Stream s = Stream::derive(seed, {1, t});
    return one_sample_test(nominal, from_true.estimate(m, s), config).decision == Decision::H0;
  });
  return out;
}

/// For each t, the number of trials with ||estimate - state||_1 >= t.
inline std::vector<std::uint64_t> estimation_tail_counts(const DensityOperator& state, Scheme scheme,
                                                         std::size_t qubits, std::uint64_t m,
                                                         std::span<const double> t_values, std::uint64_t trials,
                                                         std::uint64_t seed, unsigned threads = 1) {
  const PauliTomographer tomographer(state, scheme, qubits);
  const std::vector<double> ts(t_values.begin(), t_values.end());
  return parallel_trials(
      trials, threads, std::vector<std::uint64_t>(ts.size(), 0),
      [&](std::uint64_t t, std::vector<std::uint64_t>& acc) {
        Stream s = Stream::derive(seed, {m, t});
        const double err = trace_norm(tomographer.estimate(m, s).estimate - state.hermitian());
        for (std::size_t k = 0; k < ts.size(); ++k) acc[k] += err >= ts[k] ? 1 : 0;
      },
      [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
        for (std::size_t k = 0; k < into.size(); ++k) into[k] += from[k];
      });
}

// ---------------------------------------------------------------------------
// Classical Pinsker sharpness

/// Probability vector over a finite alphabet.
class ClassicalDistribution {
 public:
  explicit ClassicalDistribution(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("ClassicalDistribution: empty alphabet");
    double total = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0)) throw std::invalid_argument("ClassicalDistribution: negative probability");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("ClassicalDistribution: probabilities sum to " + std::to_string(total));
    }
  }
  const std::vector<double>& probs() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// D_KL(P||Q) (nats) / ||P - Q||_1^2.
inline double pinsker_ratio(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("pinsker_ratio: alphabet sizes differ");
  double kl = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    l1 += std::abs(p[i] - q[i]);
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw std::invalid_argument("pinsker_ratio: support of P is not contained in support of Q");
    // p ln(p/q) = -p ln(1 + (q - p)/p), accurate when q is close to p.
    kl -= p[i] * std::log1p((q[i] - p[i]) / p[i]);
  }
  if (l1 == 0.0) throw std::invalid_argument("pinsker_ratio: P = Q gives 0/0");
  return kl / (l1 * l1);
}

struct SharpnessWitness {
  ClassicalDistribution p;
  ClassicalDistribution q;
  double t = 0.0;
  double ratio = 0.0;
};

/// Finds binary P = (1/2, 1/2), Q = (1/2 + t, 1/2 - t) with
/// D(P||Q)/||P-Q||_1^2 <= 1/2 + epsilon, halving t from 1/4.
inline SharpnessWitness pinsker_sharpness_scan(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("pinsker_sharpness_scan: epsilon must be positive");
  for (double t = 0.25; t >= 1e-8; t /= 2.0) {
    ClassicalDistribution p({0.5, 0.5});
    ClassicalDistribution q({0.5 + t, 0.5 - t});
    const double ratio = pinsker_ratio(p, q);
    if (ratio <= 0.5 + epsilon) return {std::move(p), std::move(q), t, ratio};
  }
  throw std::runtime_error("pinsker_sharpness_scan: no witness found for epsilon = " + std::to_string(epsilon));
}

// ---------------------------------------------------------------------------
// Quantum inequality suite

struct InequalityViolation {
  std::size_t pair_index = 0;
  std::string inequality;  // "fuchs-van-de-graaf" or "quantum-pinsker"
  double slack = 0.0;
  DensityOperator rho;
  DensityOperator sigma;
};

struct InequalityReport {
  std::size_t dim = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  std::size_t fvdg_violations = 0;
  std::size_t pinsker_violations = 0;
  double min_fvdg_slack = std::numeric_limits<double>::infinity();
  double min_pinsker_slack = std::numeric_limits<double>::infinity();
  std::vector<InequalityViolation> violations;

  bool passed() const { return fvdg_violations == 0 && pinsker_violations == 0; }
};

inline constexpr double kInequalitySlack = 1e-9;

/// Checks 1/2||rho - sigma||_1 <= sqrt(1 - F) and D(rho||sigma) >= 1/2||rho - sigma||_1^2
/// on seeded random pairs: rho of random rank, sigma of full rank.
inline InequalityReport quantum_inequality_suite(std::uint64_t seed, std::size_t pairs, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("quantum_inequality_suite: dimension must be at least 2");
  InequalityReport report;
  report.dim = dim;
  report.pairs = pairs;
  report.seed = seed;
  for (std::size_t i = 0; i < pairs; ++i) {
    Stream stream = Stream::derive(seed, {dim, i});
    const std::size_t rho_rank = 1 + static_cast<std::size_t>(stream() % dim);
    const DensityOperator rho = random_density(dim, rho_rank, stream);
    const DensityOperator sigma = random_density(dim, dim, stream);
    const double norm = trace_norm(rho.hermitian() - sigma.hermitian());
    const double fvdg = std::sqrt(std::max(0.0, 1.0 - fidelity(rho, sigma))) - 0.5 * norm;
    const double pinsker = relative_entropy(rho, sigma) - 0.5 * norm * norm;
    report.min_fvdg_slack = std::min(report.min_fvdg_slack, fvdg);
    report.min_pinsker_slack = std::min(report.min_pinsker_slack, pinsker);
    if (fvdg < -kInequalitySlack) {
      ++report.fvdg_violations;
      report.violations.push_back({i, "fuchs-van-de-graaf", fvdg, rho, sigma});
    }
    if (pinsker < -kInequalitySlack) {
      ++report.pinsker_violations;
      report.violations.push_back({i, "quantum-pinsker", pinsker, rho, sigma});
    }
  }
  return report;
}

}  // namespace quht
