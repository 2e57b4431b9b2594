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

// Linear-inversion tomography from Pauli measurement records, and the
// concentration envelopes Pr[||est - state||_1 >= t] <= g(m) exp(-m C t^2)
// that calibrate the test thresholds.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quht/linalg.hpp"
#include "quht/measurement.hpp"
#include "quht/rng.hpp"
#include "quht/states.hpp"

namespace quht {

enum class Scheme { PauliQubit, PauliString, IndepTwoDesign, Entangled, Generic };

inline std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::PauliQubit: return "pauli-qubit";
    case Scheme::PauliString: return "pauli-string";
    case Scheme::IndepTwoDesign: return "two-design";
    case Scheme::Entangled: return "entangled";
    case Scheme::Generic: return "generic";
  }
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::PauliQubit, Scheme::PauliString, Scheme::IndepTwoDesign, Scheme::Entangled,
                   Scheme::Generic}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Certified tail envelope g(m) exp(-m C t^2) for a tomography scheme.
///
/// The prefactor is stored in log form, g(m) = exp(log_g0) * (m + 1)^g_power,
/// which covers the constant prefactors of the independent schemes and the
/// polynomial prefactor of the entangled scheme without overflow.
struct ConcentrationBound {
  Scheme label = Scheme::Generic;
  double exponent_C = 1.0;
  double log_g0 = 0.0;
  double g_power = 0.0;
  std::size_t dim = 2;
  std::size_t rank = 1;
  std::size_t qubits = 0;  // Pauli schemes only
  bool weakened = false;
  /// Upper end of the t-range the source result is stated for, if any.
  std::optional<double> t_limit;

  double log_prefactor(std::uint64_t m) const {
    return log_g0 + g_power * std::log(static_cast<double>(m) + 1.0);
  }
  double prefactor(std::uint64_t m) const { return std::exp(log_prefactor(m)); }
  double evaluate(std::uint64_t m, double t) const {
    return std::exp(log_prefactor(m) - static_cast<double>(m) * exponent_C * t * t);
  }
  bool within_validity(double t) const { return !t_limit || t < *t_limit; }

  /// Entangled scheme only: the fidelity-form tail Pr[F <= 1 - delta] <= g(m) exp(-2 m delta).
  double evaluate_fidelity_form(std::uint64_t m, double delta) const {
    if (label != Scheme::Entangled) {
      throw std::logic_error("evaluate_fidelity_form: only defined for the entangled scheme");
    }
    return std::exp(log_prefactor(m) - 2.0 * static_cast<double>(m) * delta);
  }
};

inline ConcentrationBound bound_pauli_qubit() {
  ConcentrationBound b;
  b.label = Scheme::PauliQubit;
  b.exponent_C = 1.0 / 54.0;
  b.log_g0 = std::log(6.0);
  b.dim = 2;
  b.rank = 2;
  b.qubits = 1;
  return b;
}

/// g = 2(d^2 - 1), C = 1 / (2 (d^2 - 1)^3), d = 2^b.
inline ConcentrationBound bound_pauli_string(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxPauliQubits) {
    throw std::invalid_argument("bound_pauli_string: qubit count must be in [1, 5]");
  }
  const double d = std::ldexp(1.0, static_cast<int>(qubits));
  const double settings = d * d - 1.0;
  ConcentrationBound b;
  b.label = Scheme::PauliString;
  b.exponent_C = 1.0 / (2.0 * settings * settings * settings);
  b.log_g0 = std::log(2.0 * settings);
  b.dim = static_cast<std::size_t>(d);
  b.rank = b.dim;
  b.qubits = qubits;
  return b;
}

namespace detail {
inline void require_rank(std::size_t dim, std::size_t rank, const char* what) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw std::invalid_argument(std::string(what) + ": need 1 <= r <= d, got r = " + std::to_string(rank) +
                                ", d = " + std::to_string(dim));
  }
}
}  // namespace detail

/// g = d, C = 1 / (86 r^2 d); the weakened form uses r = d, C = 1 / (86 d^3).
/// Stated for t in (0, 1).
inline ConcentrationBound bound_indep_two_design(std::size_t dim, std::size_t rank, bool weakened = false) {
  detail::require_rank(dim, rank, "bound_indep_two_design");
  const double d = static_cast<double>(dim);
  const double r = weakened ? d : static_cast<double>(rank);
  ConcentrationBound b;
  b.label = Scheme::IndepTwoDesign;
  b.exponent_C = 1.0 / (86.0 * r * r * d);
  b.log_g0 = std::log(d);
  b.dim = dim;
  b.rank = rank;
  b.weakened = weakened;
  b.t_limit = 1.0;
  return b;
}

/// Trace-norm form of the entangled-measurement bound: g(m) = (m+1)^{3rd}
/// (weakened: (m+1)^{3d^2}), C = 1/2. The fidelity statement holds for
/// delta in (0, 1), i.e. t = 2 sqrt(delta) in (0, 2).
inline ConcentrationBound bound_entangled(std::size_t dim, std::size_t rank, bool weakened = false) {
  detail::require_rank(dim, rank, "bound_entangled");
  const double d = static_cast<double>(dim);
  ConcentrationBound b;
  b.label = Scheme::Entangled;
  b.exponent_C = 0.5;
  b.log_g0 = 0.0;
  b.g_power = weakened ? 3.0 * d * d : 3.0 * static_cast<double>(rank) * d;
  b.dim = dim;
  b.rank = rank;
  b.weakened = weakened;
  b.t_limit = 2.0;
  return b;
}

/// Externally supplied envelope with constant prefactor g.
inline ConcentrationBound bound_generic(double g, double exponent_C) {
  if (!(g > 0.0) || !(exponent_C > 0.0)) {
    throw std::invalid_argument("bound_generic: g and C must be positive");
  }
  ConcentrationBound b;
  b.label = Scheme::Generic;
  b.exponent_C = exponent_C;
  b.log_g0 = std::log(g);
  return b;
}

namespace detail {
inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}
inline void require_shots(std::uint64_t m, const char* what) {
  if (m == 0) throw std::invalid_argument(std::string(what) + ": shot count must be positive");
}
/// ln(g(n) + g(m))
inline double log_prefactor_sum(const ConcentrationBound& b, std::uint64_t m, std::uint64_t n) {
  const double lm = b.log_prefactor(m);
  const double ln = b.log_prefactor(n);
  const double hi = std::max(lm, ln);
  return hi + std::log1p(std::exp(std::min(lm, ln) - hi));
}
}  // namespace detail

/// c_m = sqrt(ln(g(m)/alpha) / (C m)); zero when g(m) <= alpha.
inline double threshold_one_sample(const ConcentrationBound& bound, std::uint64_t m, double alpha) {
  detail::require_alpha(alpha);
  detail::require_shots(m, "threshold_one_sample");
  const double log_ratio = bound.log_prefactor(m) - std::log(alpha);
  if (log_ratio <= 0.0) return 0.0;
  return std::sqrt(log_ratio / (bound.exponent_C * static_cast<double>(m)));
}

/// (g(n) + g(m)) exp(-k C t^2 / 4), k = min(m, n): the two-sample type I envelope.
inline double two_sample_envelope(const ConcentrationBound& bound, std::uint64_t m, std::uint64_t n, double t) {
  const double k = static_cast<double>(std::min(m, n));
  return std::exp(detail::log_prefactor_sum(bound, m, n) - k * bound.exponent_C * t * t / 4.0);
}

/// c_k = sqrt(4 ln((g(n) + g(m))/alpha) / (C k)), k = min(m, n).
inline double threshold_two_sample(const ConcentrationBound& bound, std::uint64_t m, std::uint64_t n,
                                   double alpha) {
  detail::require_alpha(alpha);
  detail::require_shots(m, "threshold_two_sample");
  detail::require_shots(n, "threshold_two_sample");
  const double log_ratio = detail::log_prefactor_sum(bound, m, n) - std::log(alpha);
  if (log_ratio <= 0.0) return 0.0;
  const double k = static_cast<double>(std::min(m, n));
  return std::sqrt(4.0 * log_ratio / (bound.exponent_C * k));
}

/// Reconstructed operator; unit trace, possibly outside the state set.
struct TomographyEstimate {
  HermitianMatrix estimate;
  Scheme scheme = Scheme::Generic;
  std::uint64_t shots_used = 0;
  bool physical = true;
};

inline bool is_psd(const HermitianMatrix& a) { return eigenvalues(a).minCoeff() >= -tol::kPsdSlack; }

namespace detail {
inline std::uint64_t common_shots(std::span<const OutcomeRecord> records, const char* what) {
  const std::uint64_t shots = records.front().shots;
  for (const auto& r : records) {
    if (r.shots != shots) {
      throw std::invalid_argument(std::string(what) + ": records must have equal shot counts (" +
                                  std::to_string(r.shots) + " vs " + std::to_string(shots) + ")");
    }
    std::uint64_t total = 0;
    for (auto c : r.counts) total += c;
    if (total != r.shots || r.counts.size() != r.labels.size()) {
      throw std::invalid_argument(std::string(what) + ": record '" + r.povm_id + "' is inconsistent");
    }
  }
  if (shots == 0) throw std::invalid_argument(std::string(what) + ": records have zero shots");
  return shots;
}
}  // namespace detail

/// Bloch estimate from X, Y, Z records of m/3 shots each:
/// r_axis = (sum of +-1 outcomes) / (m/3), estimate = 1/2 (I + r . sigma).
inline TomographyEstimate qubit_pauli_estimate(std::span<const OutcomeRecord> records) {
  if (records.size() != 3) {
    throw std::invalid_argument("qubit_pauli_estimate: expected X, Y, Z records, got " +
                                std::to_string(records.size()));
  }
  static constexpr const char* kIds[3] = {"X", "Y", "Z"};
  for (std::size_t k = 0; k < 3; ++k) {
    if (records[k].povm_id != kIds[k]) {
      throw std::invalid_argument("qubit_pauli_estimate: record " + std::to_string(k) + " is '" +
                                  records[k].povm_id + "', expected '" + kIds[k] + "'");
    }
  }
  const std::uint64_t per_axis = detail::common_shots(records, "qubit_pauli_estimate");
  const BlochVector r{records[0].labeled_mean(), records[1].labeled_mean(), records[2].labeled_mean()};
  return {hermitian_from_bloch(r), Scheme::PauliQubit, 3 * per_axis, r.is_physical()};
}

/// Process-wide cache of Pauli-string bases, built on first use.
inline const PauliStringBasis& cached_pauli_basis(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxPauliQubits) {
    throw std::invalid_argument("cached_pauli_basis: qubit count must be in [1, 5]");
  }
  static std::array<std::once_flag, kMaxPauliQubits + 1> flags;
  static std::array<PauliStringBasis, kMaxPauliQubits + 1> bases;
  std::call_once(flags[qubits], [qubits] { bases[qubits] = pauli_string_basis(qubits); });
  return bases[qubits];
}

/// estimate = (I + sum_i c_i P_i) / d, c_i the +-1 empirical mean of P_i.
inline TomographyEstimate pauli_string_estimate(std::span<const OutcomeRecord> records, std::size_t qubits) {
  const PauliStringBasis& basis = cached_pauli_basis(qubits);
  if (records.size() != basis.size()) {
    throw std::invalid_argument("pauli_string_estimate: expected " + std::to_string(basis.size()) +
                                " records for " + std::to_string(qubits) + " qubits, got " +
                                std::to_string(records.size()));
  }
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (records[k].povm_id != basis.names[k]) {
      throw std::invalid_argument("pauli_string_estimate: record " + std::to_string(k) + " is '" +
                                  records[k].povm_id + "', expected '" + basis.names[k] + "'");
    }
  }
  const std::uint64_t per = detail::common_shots(records, "pauli_string_estimate");
  std::vector<double> coeffs;
  coeffs.reserve(records.size());
  for (const auto& r : records) coeffs.push_back(r.labeled_mean());
  HermitianMatrix est = detail::pauli_expansion(coeffs, basis.operators, basis.dim());
  const bool physical = is_psd(est);
  return {std::move(est), Scheme::PauliString, per * records.size(), physical};
}

/// Precomputed samplers for repeated Pauli tomography of one state.
class PauliTomographer {
 public:
  PauliTomographer(const DensityOperator& state, Scheme scheme, std::size_t qubits = 1)
      : scheme_(scheme), qubits_(qubits) {
    if (scheme == Scheme::PauliQubit) {
      if (qubits != 1 || state.dim() != 2) {
        throw std::invalid_argument("PauliTomographer: pauli-qubit scheme needs a qubit state");
      }
      for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        samplers_.emplace_back(pauli_eigenbasis_povm(axis), state);
      }
    } else if (scheme == Scheme::PauliString) {
      const PauliStringBasis& basis = cached_pauli_basis(qubits);
      if (state.dim() != basis.dim()) {
        throw std::invalid_argument("PauliTomographer: state dimension " + std::to_string(state.dim()) +
                                    " does not match " + std::to_string(qubits) + " qubits");
      }
      for (std::size_t k = 0; k < basis.size(); ++k) {
        samplers_.emplace_back(pauli_string_povm(basis.names[k], basis.operators[k]), state);
      }
    } else {
      throw std::invalid_argument("PauliTomographer: scheme '" + std::string(scheme_name(scheme)) +
                                  "' has no simulated measurement");
    }
  }

  std::size_t settings() const { return samplers_.size(); }

  /// Shots per measurement setting for a total budget m. The pauli-qubit
  /// scheme needs m divisible by 3; pauli-string drops the remainder.
  std::uint64_t shots_per_setting(std::uint64_t m) const {
    if (scheme_ == Scheme::PauliQubit && m % 3 != 0) {
      throw std::invalid_argument("pauli-qubit tomography needs m divisible by 3, got " + std::to_string(m));
    }
    const std::uint64_t per = m / settings();
    if (per == 0) {
      throw std::invalid_argument("shot budget " + std::to_string(m) + " is smaller than the " +
                                  std::to_string(settings()) + " measurement settings");
    }
    return per;
  }

  std::vector<OutcomeRecord> records(std::uint64_t m, Stream& stream) const {
    const std::uint64_t per = shots_per_setting(m);
    std::vector<OutcomeRecord> out;
    out.reserve(samplers_.size());
    for (const auto& s : samplers_) out.push_back(s.draw(per, stream));
    return out;
  }

  TomographyEstimate estimate(std::uint64_t m, Stream& stream) const {
    const auto recs = records(m, stream);
    return scheme_ == Scheme::PauliQubit ? qubit_pauli_estimate(recs) : pauli_string_estimate(recs, qubits_);
  }

 private:
  Scheme scheme_;
  std::size_t qubits_;
  std::vector<OutcomeSampler> samplers_;
};

inline std::vector<OutcomeRecord> collect_qubit_pauli_records(const DensityOperator& state, std::uint64_t m,
                                                              Stream& stream) {
  return PauliTomographer(state, Scheme::PauliQubit).records(m, stream);
}

inline std::vector<OutcomeRecord> collect_pauli_string_records(const DensityOperator& state, std::size_t qubits,
                                                               std::uint64_t m, Stream& stream) {
  return PauliTomographer(state, Scheme::PauliString, qubits).records(m, stream);
}

}  // namespace quht
