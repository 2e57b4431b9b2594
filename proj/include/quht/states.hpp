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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quht/linalg.hpp"
#include "quht/rng.hpp"

namespace quht {

enum class PauliAxis { X, Y, Z };

inline char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

inline const HermitianMatrix& pauli(PauliAxis axis) {
  static const std::array<HermitianMatrix, 3> ops = [] {
    const Complex i{0.0, 1.0};
    ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return std::array<HermitianMatrix, 3>{HermitianMatrix(x), HermitianMatrix(y), HermitianMatrix(z)};
  }();
  return ops[static_cast<std::size_t>(axis)];
}

/// Bloch coordinates of a qubit operator. Estimates may leave the unit ball.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool is_physical(double slack = 1e-12) const { return norm() <= 1.0 + slack; }
  double operator[](std::size_t k) const { return k == 0 ? x : (k == 1 ? y : z); }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

namespace detail {
/// (I + sum_i c_i P_i) / d. Shared by every linear-inversion path so that
/// equivalent inputs produce bit-identical matrices.
inline HermitianMatrix pauli_expansion(std::span<const double> coeffs, std::span<const HermitianMatrix> ops,
                                       std::size_t dim) {
  if (coeffs.size() != ops.size()) {
    throw std::invalid_argument("pauli_expansion: coefficient count does not match operator count");
  }
  ComplexMatrix acc = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < ops.size(); ++i) acc += coeffs[i] * ops[i].matrix();
  acc /= static_cast<double>(dim);
  return make_hermitian_unchecked(std::move(acc));
}

inline const std::array<HermitianMatrix, 3>& qubit_paulis() {
  static const std::array<HermitianMatrix, 3> ops{pauli(PauliAxis::X), pauli(PauliAxis::Y),
                                                  pauli(PauliAxis::Z)};
  return ops;
}
}  // namespace detail

/// 1/2 (I + r . sigma); unit trace and Hermitian, not necessarily PSD.
inline HermitianMatrix hermitian_from_bloch(const BlochVector& r) {
  const std::array<double, 3> c{r.x, r.y, r.z};
  return detail::pauli_expansion(c, detail::qubit_paulis(), 2);
}

inline DensityOperator density_from_bloch(const BlochVector& r) {
  if (!r.is_physical()) {
    throw std::invalid_argument("density_from_bloch: |r| = " + std::to_string(r.norm()) +
                                " exceeds 1; use hermitian_from_bloch for estimates");
  }
  return DensityOperator(hermitian_from_bloch(r));
}

/// (Tr[A X], Tr[A Y], Tr[A Z]) for a 2x2 Hermitian A.
inline BlochVector bloch_of_hermitian(const HermitianMatrix& a) {
  if (a.dim() != 2) {
    throw std::invalid_argument("bloch_of_hermitian: expected a qubit operator, got dimension " +
                                std::to_string(a.dim()));
  }
  const Complex off = a(0, 1);
  return {2.0 * off.real(), -2.0 * off.imag(), a(0, 0).real() - a(1, 1).real()};
}

inline BlochVector bloch_from_density(const DensityOperator& rho) { return bloch_of_hermitian(rho.hermitian()); }

/// |phi><phi| from amplitudes. Inputs off the unit sphere by more than 1e-10
/// are renormalized and reported through `renormalized`.
inline DensityOperator pure_state(const ComplexVector& amplitudes, bool* renormalized = nullptr) {
  const double n = amplitudes.norm();
  if (amplitudes.size() == 0 || n == 0.0) throw std::invalid_argument("pure_state: zero vector");
  const bool off = std::abs(n - 1.0) > 1e-10;
  if (renormalized) *renormalized = off;
  const ComplexVector ket = amplitudes / n;
  ComplexMatrix projector = ket * ket.adjoint();
  projector = 0.5 * (projector + projector.adjoint()).eval();
  return DensityOperator(make_hermitian_unchecked(std::move(projector)));
}

inline DensityOperator maximally_mixed(std::size_t dim) {
  return DensityOperator(1.0 / static_cast<double>(dim) * HermitianMatrix::identity(dim));
}

/// Computational basis state |index>.
inline DensityOperator basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis_state: index out of range");
  ComplexVector ket = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  ket(static_cast<Eigen::Index>(index)) = 1.0;
  return pure_state(ket);
}

/// Ginibre-induced random state G G^dagger / Tr[G G^dagger], G of size d x rank.
inline DensityOperator random_density(std::size_t dim, std::size_t rank, Stream& stream) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw std::invalid_argument("random_density: need 1 <= rank <= d, got rank " + std::to_string(rank) +
                                " for d = " + std::to_string(dim));
  }
  ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = stream.complex_normal();
  }
  ComplexMatrix w = g * g.adjoint();
  w = 0.5 * (w + w.adjoint()).eval();
  w /= w.trace().real();
  return DensityOperator(make_hermitian_unchecked(std::move(w)));
}

inline DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Stream stream(seed);
  return random_density(dim, rank, stream);
}

/// Random traceless Hermitian direction with unit trace norm.
inline HermitianMatrix random_traceless_direction(std::size_t dim, Stream& stream) {
  const auto n = static_cast<Eigen::Index>(dim);
  for (;;) {
    ComplexMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) a(i, j) = stream.complex_normal();
    }
    ComplexMatrix h = 0.5 * (a + a.adjoint());
    h -= (h.trace() / static_cast<double>(dim)) * ComplexMatrix::Identity(n, n);
    h = 0.5 * (h + h.adjoint()).eval();
    HermitianMatrix herm = make_hermitian_unchecked(std::move(h));
    const double norm = trace_norm(herm);
    if (norm > 1e-12) return (1.0 / norm) * herm;
  }
}

/// Clamp negative eigenvalues to zero and renormalize the trace.
inline DensityOperator project_to_physical(const HermitianMatrix& a) {
  const Spectrum s = eig_hermitian(a);
  double mass = 0.0;
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) mass += std::max(s.eigenvalues(k), 0.0);
  if (!(mass > 0.0)) throw std::domain_error("project_to_physical: operator has no positive part");
  return DensityOperator(apply_spectral(s, [mass](double x) { return std::max(x, 0.0) / mass; }));
}

/// Non-identity Pauli strings on b qubits, lexicographic over I < X < Y < Z
/// with the first character acting on the most significant tensor factor.
struct PauliStringBasis {
  std::size_t qubit_count = 0;
  std::vector<std::string> names;
  std::vector<HermitianMatrix> operators;

  std::size_t dim() const { return std::size_t{1} << qubit_count; }
  std::size_t size() const { return operators.size(); }
};

inline constexpr std::size_t kMaxPauliQubits = 5;

inline PauliStringBasis pauli_string_basis(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxPauliQubits) {
    throw std::invalid_argument("pauli_string_basis: qubit count must be in [1, 5], got " +
                                std::to_string(qubits));
  }
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  const HermitianMatrix factors[4] = {HermitianMatrix::identity(2), pauli(PauliAxis::X), pauli(PauliAxis::Y),
                                      pauli(PauliAxis::Z)};
  PauliStringBasis basis;
  basis.qubit_count = qubits;
  const std::size_t total = std::size_t{1} << (2 * qubits);
  for (std::size_t code = 1; code < total; ++code) {
    std::string name(qubits, 'I');
    ComplexMatrix op = ComplexMatrix::Ones(1, 1);
    for (std::size_t q = 0; q < qubits; ++q) {
      const std::size_t digit = (code >> (2 * (qubits - 1 - q))) & 3U;
      name[q] = kLetters[digit];
      op = detail::kron(op, factors[digit].matrix());
    }
    basis.names.push_back(std::move(name));
    basis.operators.push_back(make_hermitian_unchecked(std::move(op)));
  }
  return basis;
}

}  // namespace quht
