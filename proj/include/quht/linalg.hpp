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

// Dense Hermitian matrix algebra and the quantum-information metrics built
// on top of it: trace norm, trace distance, fidelity, relative entropy,
// tensor powers and the Helstrom symmetric-error bound.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace quht {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kRank = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kReconstruction = 1e-9;
}  // namespace tol

inline constexpr std::size_t kDefaultTensorCap = 1024;

/// Largest entrywise violation of A(i,j) == conj(A(j,i)).
inline double hermiticity_defect(const ComplexMatrix& a) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j; i < a.rows(); ++i) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

/// A square complex matrix that is Hermitian to within tol::kHermitian.
///
/// Construction from raw entries validates the symmetry; arithmetic between
/// Hermitian matrices (sums, differences, real scaling) preserves it exactly
/// and skips the check.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
      throw std::invalid_argument("HermitianMatrix: expected a non-empty square matrix, got " +
                                  std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    const double defect = hermiticity_defect(m_);
    if (!(defect <= tol::kHermitian)) {
      throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian (max asymmetry " +
                                  std::to_string(defect) + ")");
    }
  }

  static HermitianMatrix zero(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::Zero(as_index(dim), as_index(dim)), Trusted{});
  }
  static HermitianMatrix identity(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::Identity(as_index(dim), as_index(dim)), Trusted{});
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(as_index(i), as_index(j)); }
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    return HermitianMatrix(a.m_ + b.m_, Trusted{});
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    return HermitianMatrix(a.m_ - b.m_, Trusted{});
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(s * a.m_, Trusted{});
  }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix entries, Trusted) : m_(std::move(entries)) {}

  static Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }
  static void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
      throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                  std::to_string(b.dim()));
    }
  }

  friend HermitianMatrix make_hermitian_unchecked(ComplexMatrix entries);

  ComplexMatrix m_;
};

/// Wraps a matrix whose Hermitian symmetry holds by construction
/// (e.g. V diag(x) V^dagger, or a Kronecker product of Hermitian factors).
inline HermitianMatrix make_hermitian_unchecked(ComplexMatrix entries) {
  return HermitianMatrix(std::move(entries), HermitianMatrix::Trusted{});
}

/// Eigendecomposition with eigenvalues sorted in descending order.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // columns, unitary
};

inline Spectrum eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  // Eigen reports ascending order.
  const Eigen::Index n = a.matrix().rows();
  Spectrum s{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    s.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return s;
}

/// Eigenvalues only, descending.
inline RealVector eigenvalues(const HermitianMatrix& a) {
  const Eigen::Index n = a.matrix().rows();
  if (n == 2) {
    // Closed form keeps the qubit hot paths free of the iterative solver.
    const double p = a.matrix()(0, 0).real();
    const double q = a.matrix()(1, 1).real();
    const double radius = std::hypot(0.5 * (p - q), std::abs(a.matrix()(0, 1)));
    RealVector ev(2);
    ev << 0.5 * (p + q) + radius, 0.5 * (p + q) - radius;
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: eigensolver failed to converge");
  }
  return solver.eigenvalues().reverse();
}

/// V diag(f(lambda)) V^dagger for a spectrum.
template <typename Fn>
HermitianMatrix apply_spectral(const Spectrum& s, Fn&& fn) {
  RealVector mapped(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < mapped.size(); ++k) mapped(k) = fn(s.eigenvalues(k));
  ComplexMatrix out = s.eigenvectors * mapped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
  // Round-off can leave O(eps) asymmetry; restore exact conjugate symmetry.
  ComplexMatrix sym = 0.5 * (out + out.adjoint());
  return make_hermitian_unchecked(std::move(sym));
}

inline double trace_norm(const HermitianMatrix& a) {
  return eigenvalues(a).cwiseAbs().sum();
}

/// A unit-trace positive semidefinite matrix.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianMatrix m) : m_(std::move(m)) {
    const double tr = m_.trace();
    if (!(std::abs(tr - 1.0) <= tol::kTrace)) {
      throw std::invalid_argument("DensityOperator: trace is " + std::to_string(tr) + ", expected 1");
    }
    const RealVector ev = eigenvalues(m_);
    if (!(ev.minCoeff() >= -tol::kPsdSlack)) {
      throw std::invalid_argument("DensityOperator: not positive semidefinite (min eigenvalue " +
                                  std::to_string(ev.minCoeff()) + ")");
    }
    rank_ = count_above(ev, tol::kRank);
  }
  explicit DensityOperator(ComplexMatrix entries) : DensityOperator(HermitianMatrix(std::move(entries))) {}

  std::size_t dim() const { return m_.dim(); }
  std::size_t rank() const { return rank_; }
  bool is_pure() const { return rank_ == 1; }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }

  static std::size_t count_above(const RealVector& ev, double threshold) {
    return static_cast<std::size_t>((ev.array() > threshold).count());
  }

 private:
  DensityOperator(HermitianMatrix m, std::size_t rank) : m_(std::move(m)), rank_(rank) {}
  friend DensityOperator tensor_power(const DensityOperator&, std::size_t, std::size_t);

  HermitianMatrix m_;
  std::size_t rank_ = 0;
};

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}
}  // namespace detail

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return make_hermitian_unchecked(detail::kron(a.matrix(), b.matrix()));
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  return std::clamp(0.5 * trace_norm(rho.hermitian() - sigma.hermitian()), 0.0, 1.0);
}

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// clamped to zero; anything more negative is rejected.
inline HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const Spectrum s = eig_hermitian(a);
  const double lowest = s.eigenvalues(s.eigenvalues.size() - 1);
  if (lowest < -tol::kPsdSlack) {
    throw std::domain_error("psd_sqrt: matrix has eigenvalue " + std::to_string(lowest) +
                            " below the PSD slack");
  }
  return apply_spectral(s, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

namespace detail {
/// Square root of a density operator with round-off eigenvalues (below
/// 64 eps) set to zero, so they do not turn into O(sqrt(eps)) noise.
inline ComplexMatrix density_sqrt(const DensityOperator& rho) {
  const Spectrum s = eig_hermitian(rho.hermitian());
  const double cutoff = 64.0 * std::numeric_limits<double>::epsilon();
  return apply_spectral(s, [cutoff](double x) { return x > cutoff ? std::sqrt(x) : 0.0; }).matrix();
}
}  // namespace detail

/// F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1^2 via the singular values of
/// sqrt(rho) sqrt(sigma), which stay accurate for rank-deficient inputs.
/// When either state is pure this reduces to Tr[rho sigma].
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_dim(rho.dim(), sigma.dim(), "fidelity");
  if (rho.is_pure() || sigma.is_pure()) {
    const double overlap = rho.matrix().cwiseProduct(sigma.matrix().transpose()).sum().real();
    return std::clamp(overlap, 0.0, 1.0);
  }
  const ComplexMatrix product = detail::density_sqrt(rho) * detail::density_sqrt(sigma);
  const double nuclear = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

/// D(rho||sigma) in nats; +infinity when supp(rho) is not contained in supp(sigma).
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  const RealVector rho_ev = eigenvalues(rho.hermitian());
  double entropy_term = 0.0;
  for (Eigen::Index k = 0; k < rho_ev.size(); ++k) {
    if (rho_ev(k) > tol::kRank) entropy_term += rho_ev(k) * std::log(rho_ev(k));
  }
  const Spectrum sig = eig_hermitian(sigma.hermitian());
  double cross_term = 0.0;
  for (Eigen::Index j = 0; j < sig.eigenvalues.size(); ++j) {
    const auto v = sig.eigenvectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (sig.eigenvalues(j) <= tol::kRank) {
      if (weight > tol::kRank) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross_term += weight * std::log(sig.eigenvalues(j));
  }
  return std::max(0.0, entropy_term - cross_term);
}

/// Sandwiched Renyi divergence of order 1/2, equal to -ln F.
inline double sandwiched_renyi_half(const DensityOperator& rho, const DensityOperator& sigma) {
  const double f = fidelity(rho, sigma);
  if (f <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log(f));
}

inline DensityOperator tensor_power(const DensityOperator& rho, std::size_t copies,
                                    std::size_t cap = kDefaultTensorCap) {
  if (copies == 0) throw std::invalid_argument("tensor_power: copies must be positive");
  double required = 1.0;
  for (std::size_t k = 0; k < copies; ++k) required *= static_cast<double>(rho.dim());
  if (required > static_cast<double>(cap)) {
    throw std::length_error("tensor_power: dimension " + std::to_string(rho.dim()) + "^" +
                            std::to_string(copies) + " exceeds the cap " + std::to_string(cap) +
                            "; a cap of at least " + std::to_string(static_cast<long long>(required)) +
                            " is required");
  }
  ComplexMatrix acc = rho.matrix();
  for (std::size_t k = 1; k < copies; ++k) acc = detail::kron(acc, rho.matrix());

  // Eigenvalues of the power are all products of the factor's eigenvalues.
  const RealVector ev = eigenvalues(rho.hermitian());
  std::vector<double> products{1.0};
  for (std::size_t k = 0; k < copies; ++k) {
    std::vector<double> next;
    next.reserve(products.size() * static_cast<std::size_t>(ev.size()));
    for (double p : products) {
      for (Eigen::Index i = 0; i < ev.size(); ++i) next.push_back(p * ev(i));
    }
    products = std::move(next);
  }
  const auto rank = static_cast<std::size_t>(
      std::count_if(products.begin(), products.end(), [](double x) { return x > tol::kRank; }));
  return DensityOperator(make_hermitian_unchecked(std::move(acc)), rank);
}

/// Minimum symmetric error 1/2 (1 - 1/2 ||rho0^{(x)m} - rho1^{(x)m}||_1).
inline double helstrom_bound(const DensityOperator& rho0, const DensityOperator& rho1, std::size_t copies,
                             std::size_t cap = kDefaultTensorCap) {
  detail::require_same_dim(rho0.dim(), rho1.dim(), "helstrom_bound");
  const DensityOperator a = tensor_power(rho0, copies, cap);
  const DensityOperator b = tensor_power(rho1, copies, cap);
  const double half_norm = 0.5 * trace_norm(a.hermitian() - b.hermitian());
  return std::clamp(0.5 * (1.0 - half_norm), 0.0, 0.5);
}

}  // namespace quht
