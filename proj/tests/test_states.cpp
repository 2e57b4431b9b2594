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
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "quht/linalg.hpp"
#include "quht/rng.hpp"
#include "quht/states.hpp"
#include "test_util.hpp"

namespace quht {
namespace {

TEST(Stream, DeterministicAndDistinct) {
  Stream a(7), b(7), c(8);
  for (int i = 0; i < 5; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  Stream d1 = Stream::derive(1, {0, 5});
  Stream d2 = Stream::derive(1, {0, 5});
  Stream d3 = Stream::derive(1, {5, 0});
  EXPECT_EQ(d1(), d2());
  EXPECT_NE(Stream::derive(1, {0, 5})(), d3());
}

TEST(Stream, UniformMoments) {
  Stream s(3);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.005);
}

TEST(Stream, ComplexNormalUnitVariance) {
  Stream s(4);
  double acc = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) acc += std::norm(s.complex_normal());
  EXPECT_NEAR(acc / n, 1.0, 0.02);
}

TEST(Bloch, RoundTrip) {
  const BlochVector r{0.3, -0.4, 0.5};
  const BlochVector back = bloch_from_density(density_from_bloch(r));
  EXPECT_NEAR(back.x, r.x, 1e-15);
  EXPECT_NEAR(back.y, r.y, 1e-15);
  EXPECT_NEAR(back.z, r.z, 1e-15);
}

TEST(Bloch, RejectsOutsideBall) {
  EXPECT_THROW(density_from_bloch({0.8, 0.8, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(density_from_bloch({0.0, 0.0, 1.0}));
  EXPECT_NO_THROW(hermitian_from_bloch({2.0, 0.0, 0.0}));
}

TEST(Bloch, PauliExpectation) {
  const DensityOperator rho = density_from_bloch({0.1, 0.2, 0.3});
  const double ex = (pauli(PauliAxis::X).matrix() * rho.matrix()).trace().real();
  const double ey = (pauli(PauliAxis::Y).matrix() * rho.matrix()).trace().real();
  const double ez = (pauli(PauliAxis::Z).matrix() * rho.matrix()).trace().real();
  EXPECT_NEAR(ex, 0.1, 1e-15);
  EXPECT_NEAR(ey, 0.2, 1e-15);
  EXPECT_NEAR(ez, 0.3, 1e-15);
}

TEST(PureState, NormalizesAndFlags) {
  ComplexVector v(2);
  v << 3.0, Complex(0.0, 4.0);
  bool renorm = false;
  const DensityOperator rho = pure_state(v, &renorm);
  EXPECT_TRUE(renorm);
  EXPECT_TRUE(rho.is_pure());
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 9.0 / 25.0, 1e-15);
  const BlochVector r = bloch_from_density(rho);
  EXPECT_NEAR(r.norm(), 1.0, 1e-14);
  EXPECT_THROW(pure_state(ComplexVector::Zero(2)), std::invalid_argument);
  ComplexVector unit(2);
  unit << std::sqrt(0.5), std::sqrt(0.5);
  pure_state(unit, &renorm);
  EXPECT_FALSE(renorm);
}

TEST(RandomDensity, RankTraceAndDeterminism) {
  for (std::size_t d : {2, 3, 4, 8}) {
    for (std::size_t r = 1; r <= d; ++r) {
      const DensityOperator rho = random_density(d, r, 99);
      EXPECT_EQ(rho.rank(), r);
      EXPECT_NEAR(rho.hermitian().trace(), 1.0, 1e-12);
    }
  }
  EXPECT_EQ(random_density(3, 2, 5).hermitian(), random_density(3, 2, 5).hermitian());
  EXPECT_THROW(random_density(2, 3, 1), std::invalid_argument);
}

TEST(TracelessDirection, UnitTraceNormAndTraceless) {
  Stream s(21);
  for (std::size_t d : {2, 3, 5}) {
    const HermitianMatrix h = random_traceless_direction(d, s);
    EXPECT_NEAR(trace_norm(h), 1.0, 1e-12);
    EXPECT_NEAR(h.trace(), 0.0, 1e-12);
  }
}

TEST(ProjectToPhysical, ClipsNegativeEigenvalues) {
  const HermitianMatrix outside = hermitian_from_bloch({1.5, 0.0, 0.0});
  const DensityOperator rho = project_to_physical(outside);
  EXPECT_TRUE(rho.is_pure());
  EXPECT_NEAR(bloch_from_density(rho).x, 1.0, 1e-12);
}

TEST(PauliStringBasis, OrderAndOrthogonality) {
  const PauliStringBasis b = pauli_string_basis(2);
  ASSERT_EQ(b.size(), 15U);
  EXPECT_EQ(b.names.front(), "IX");
  EXPECT_EQ(b.names[3], "XI");
  EXPECT_EQ(b.names.back(), "ZZ");
  std::set<std::string> unique(b.names.begin(), b.names.end());
  EXPECT_EQ(unique.size(), 15U);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double tr = (b.operators[i].matrix() * b.operators[j].matrix()).trace().real();
      EXPECT_NEAR(tr, i == j ? 4.0 : 0.0, 1e-14);
    }
  }
  // First letter acts on the most significant factor: ZI = diag(1, 1, -1, -1).
  const auto& zi = b.operators[11].matrix();
  EXPECT_EQ(b.names[11], "ZI");
  EXPECT_DOUBLE_EQ(zi(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(zi(2, 2).real(), -1.0);
  EXPECT_THROW(pauli_string_basis(0), std::invalid_argument);
  EXPECT_THROW(pauli_string_basis(6), std::invalid_argument);
}

TEST(PauliStringBasis, SingleQubitMatchesPauliMatrices) {
  const PauliStringBasis b = pauli_string_basis(1);
  ASSERT_EQ(b.size(), 3U);
  EXPECT_EQ(b.operators[0], pauli(PauliAxis::X));
  EXPECT_EQ(b.operators[1], pauli(PauliAxis::Y));
  EXPECT_EQ(b.operators[2], pauli(PauliAxis::Z));
}

}  // namespace
}  // namespace quht
