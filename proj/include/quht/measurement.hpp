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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quht/linalg.hpp"
#include "quht/rng.hpp"
#include "quht/states.hpp"

namespace quht {

/// A labelled POVM: PSD effects summing to the identity.
class Povm {
 public:
  Povm(std::string id, std::vector<HermitianMatrix> effects, std::vector<double> labels)
      : id_(std::move(id)), effects_(std::move(effects)), labels_(std::move(labels)) {
    if (effects_.empty()) throw std::invalid_argument("Povm '" + id_ + "': no effects");
    if (effects_.size() != labels_.size()) {
      throw std::invalid_argument("Povm '" + id_ + "': one label per effect is required");
    }
    const std::size_t d = effects_.front().dim();
    ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& e : effects_) {
      detail::require_same_dim(e.dim(), d, "Povm");
      if (eigenvalues(e).minCoeff() < -tol::kPsdSlack) {
        throw std::invalid_argument("Povm '" + id_ + "': effect is not positive semidefinite");
      }
      total += e.matrix();
    }
    const double defect =
        (total - ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)))
            .cwiseAbs()
            .maxCoeff();
    if (defect > tol::kReconstruction) {
      throw std::invalid_argument("Povm '" + id_ + "': effects do not sum to the identity (defect " +
                                  std::to_string(defect) + ")");
    }
  }

  const std::string& id() const { return id_; }
  const std::vector<HermitianMatrix>& effects() const { return effects_; }
  const std::vector<double>& labels() const { return labels_; }
  std::size_t size() const { return effects_.size(); }
  std::size_t dim() const { return effects_.front().dim(); }

 private:
  std::string id_;
  std::vector<HermitianMatrix> effects_;
  std::vector<double> labels_;
};

/// Tallied outcomes of `shots` independent measurements with one POVM.
struct OutcomeRecord {
  std::string povm_id;
  std::vector<double> labels;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;

  /// sum_k label_k * count_k
  double labeled_sum() const {
    double s = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) s += labels[k] * static_cast<double>(counts[k]);
    return s;
  }
  double labeled_mean() const { return labeled_sum() / static_cast<double>(shots); }

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

/// Tr[E_i rho], clamped to [0, 1].
inline std::vector<double> born_probabilities(const Povm& povm, const DensityOperator& rho) {
  detail::require_same_dim(povm.dim(), rho.dim(), "born_probabilities");
  std::vector<double> p;
  p.reserve(povm.size());
  for (const auto& e : povm.effects()) {
    const double v = (e.matrix().cwiseProduct(rho.matrix().transpose())).sum().real();
    p.push_back(std::clamp(v, 0.0, 1.0));
  }
  return p;
}

/// Projective measurement in the eigenbasis of a Pauli operator; label +1
/// for the +1 eigenspace, -1 for the other.
inline Povm pauli_eigenbasis_povm(PauliAxis axis) {
  const HermitianMatrix id = HermitianMatrix::identity(2);
  const HermitianMatrix& p = pauli(axis);
  return Povm(std::string(1, axis_name(axis)), {0.5 * (id + p), 0.5 * (id - p)}, {1.0, -1.0});
}

/// Two-outcome measurement of a Pauli string P: effects (I +- P)/2, labels +-1.
inline Povm pauli_string_povm(const std::string& name, const HermitianMatrix& op) {
  const HermitianMatrix id = HermitianMatrix::identity(op.dim());
  return Povm(name, {0.5 * (id + op), 0.5 * (id - op)}, {1.0, -1.0});
}

inline constexpr const char* kNominalProjectorId = "nominal-projector";

/// {|phi><phi|, I - |phi><phi|} for a pure nominal state; label 1 marks
/// the outcome that lands on the nominal projector.
inline Povm nominal_projector_povm(const DensityOperator& nominal) {
  if (!nominal.is_pure()) {
    throw std::invalid_argument("nominal_projector_povm: nominal state has rank " +
                                std::to_string(nominal.rank()) + ", expected a pure state");
  }
  const Spectrum s = eig_hermitian(nominal.hermitian());
  const ComplexVector phi = s.eigenvectors.col(0);
  ComplexMatrix proj = phi * phi.adjoint();
  proj = 0.5 * (proj + proj.adjoint()).eval();
  const HermitianMatrix p = make_hermitian_unchecked(std::move(proj));
  return Povm(kNominalProjectorId, {p, HermitianMatrix::identity(nominal.dim()) - p}, {1.0, 0.0});
}

/// Inverse-CDF sampler for a fixed (POVM, state) pair. Outcomes are visited
/// in descending probability order (ties by effect index).
class OutcomeSampler {
 public:
  OutcomeSampler(const Povm& povm, const DensityOperator& rho)
      : OutcomeSampler(povm.id(), povm.labels(), born_probabilities(povm, rho)) {}

  OutcomeSampler(std::string povm_id, std::vector<double> labels, const std::vector<double>& probabilities)
      : povm_id_(std::move(povm_id)), labels_(std::move(labels)) {
    order_.resize(probabilities.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return probabilities[a] > probabilities[b]; });
    double acc = 0.0;
    for (std::size_t k : order_) {
      acc += probabilities[k];
      cdf_.push_back(acc);
      if (probabilities[k] > 0.0) fallback_ = k;
    }
  }

  std::size_t draw_one(Stream& stream) const {
    const double u = stream.uniform();
    for (std::size_t j = 0; j < cdf_.size(); ++j) {
      if (u < cdf_[j]) return order_[j];
    }
    return fallback_;  // u landed in the rounding gap above the last partial sum
  }

  OutcomeRecord draw(std::uint64_t shots, Stream& stream) const {
    OutcomeRecord rec{povm_id_, labels_, std::vector<std::uint64_t>(labels_.size(), 0), shots};
    for (std::uint64_t s = 0; s < shots; ++s) ++rec.counts[draw_one(stream)];
    return rec;
  }

 private:
  std::string povm_id_;
  std::vector<double> labels_;
  std::vector<std::size_t> order_;
  std::vector<double> cdf_;
  std::size_t fallback_ = 0;
};

inline OutcomeRecord sample(const Povm& povm, const DensityOperator& rho, std::uint64_t shots, Stream& stream) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be positive");
  return OutcomeSampler(povm, rho).draw(shots, stream);
}

}  // namespace quht
