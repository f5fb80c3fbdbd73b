// Copyright 2026 The flagqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <memory>
#include <random>

#include "flagqec/metrics.hpp"
#include "flagqec/protocols.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

DenseState random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> amp(std::size_t{1} << n);
  for (auto& a : amp) a = cplx(g(rng), g(rng));
  return DenseState::from_amplitudes(std::move(amp));
}

TEST(Metrics, IdealMinusHasUnitFidelity) {
  auto s = prepare_logical<DenseState>(LogicalState::kMinus, 5);
  EXPECT_NEAR(logical_fidelity(s), 1.0, 1e-12);
  EXPECT_NEAR(logical_fidelity_raised(s), 1.0, 1e-12);
  EXPECT_NEAR(s.expectation(PauliString::parse("XXXXX")), -1.0, 1e-12);
}

TEST(Metrics, ClosedFormsMatchProjectorSums) {
  std::mt19937_64 rng(99);
  const auto e = single_qubit_errors();
  const auto ep = e_prime_errors();
  for (int i = 0; i < 100; ++i) {
    DenseState s = random_state(5, rng);
    EXPECT_NEAR(logical_fidelity(s), projector_sum_fidelity(s, e), 1e-10);
    EXPECT_NEAR(logical_fidelity_raised(s), projector_sum_fidelity(s, ep), 1e-10);
    EXPECT_NEAR(fidelity_over(s, std::span<const PauliString>(e)), logical_fidelity(s), 1e-10);
  }
}

TEST(Metrics, CosetProjectorsSumToIdentity) {
  Matrix sum = coset_projector_sum();
  EXPECT_LT(distance_up_to_global_phase(sum, Matrix::identity(32)), 1e-12);
  // Pairwise orthogonal: traces of products vanish.
  auto a = coset_projector(PauliString::parse("XIIII"), -1);
  auto b = coset_projector(PauliString::parse("IIIIZ"), +1);
  Matrix ab = a * b;
  double norm = 0.0;
  for (const auto& x : ab.a) norm += std::norm(x);
  EXPECT_LT(norm, 1e-20);
}

TEST(Metrics, OverlapDistributions) {
  auto minus = prepare_logical<DenseState>(LogicalState::kMinus, 5);
  auto d = overlap_distribution(minus);
  EXPECT_NEAR(d.p0_minus, 1.0, 1e-12);
  EXPECT_NEAR(d.p1_minus + d.p0_plus + d.p1_plus, 0.0, 1e-12);

  auto plus = prepare_logical<DenseState>(LogicalState::kPlus, 5);
  plus.apply_pauli(PauliString::parse("IYIII"));
  d = overlap_distribution(plus);
  EXPECT_NEAR(d.p1_plus, 1.0, 1e-12);
  EXPECT_NEAR(d.total(), 1.0, 1e-12);

  std::mt19937_64 rng(5);
  EXPECT_NEAR(overlap_distribution(random_state(5, rng)).total(), 1.0, 1e-12);
}

TEST(Metrics, ConsistentWithLogicalClassOnAll1024Paulis) {
  const auto base = prepare_logical<StabilizerState>(LogicalState::kMinus, 5);
  for (unsigned code = 0; code < 1024; ++code) {
    PauliString p(5);
    for (std::size_t q = 0; q < 5; ++q) p.set(q, static_cast<Pauli>((code >> (2 * q)) & 3u));
    StabilizerState s = base;
    s.apply_pauli(p);
    ClassResult c = logical_class(p);
    // X_L only rephases |->_L, so classes I and X stay in the target coset.
    bool in_coset = c.cls == LogicalClass::kI || c.cls == LogicalClass::kX;
    EXPECT_DOUBLE_EQ(logical_fidelity(s), in_coset ? 1.0 : 0.0) << p.letters();
  }
}

TEST(Metrics, GhzFidelity) {
  DenseState s(4);
  EXPECT_NEAR(ghz_fidelity(s), 0.5, 1e-12);
  s.apply(GateSpec::one(GateKind::kH, 0));
  for (int q = 1; q < 4; ++q) s.apply(GateSpec::two(GateKind::kCX, 0, q));
  EXPECT_NEAR(ghz_fidelity(s), 1.0, 1e-12);
  s.apply(GateSpec::one(GateKind::kZ, 0));
  // (|0000> - |1111>)/sqrt2 is orthogonal to the target.
  EXPECT_NEAR(ghz_fidelity(s), 0.0, 1e-12);
  EXPECT_EQ(ghz_operators().size(), 15u);
}

TEST(Metrics, CombinationRules) {
  EXPECT_DOUBLE_EQ(combined_fidelity(0.0, 0.3, 0.9), 0.9);
  EXPECT_DOUBLE_EQ(combined_fidelity(1.0, 0.3, 0.9), 0.3);
  EXPECT_NEAR(combined_fidelity(0.5, 0.8, 0.6), 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(fidelity_vs_pe(0.0, 0.9, 0.1), 0.9);
  EXPECT_DOUBLE_EQ(fidelity_vs_pe(1.0, 0.9, 0.1), 0.1);
  EXPECT_NEAR(fidelity_vs_pe(0.5, 0.9, 0.1), 0.5, 1e-15);
}

TEST(Metrics, MonteCarloEstimator) {
  std::unique_ptr<bool[]> buf(new bool[100]);
  for (int i = 0; i < 100; ++i) buf[i] = true;
  Estimate e = mc_fidelity(std::span<const bool>(buf.get(), 100));
  EXPECT_DOUBLE_EQ(e.value, 1.0);
  EXPECT_DOUBLE_EQ(e.stderr_, 0.0);
  for (int i = 0; i < 100; ++i) buf[i] = i % 2 == 0;
  e = mc_fidelity(std::span<const bool>(buf.get(), 100));
  EXPECT_DOUBLE_EQ(e.value, 0.5);
  EXPECT_NEAR(e.stderr_, 0.05, 1e-12);
  EXPECT_EQ(mc_fidelity({}).n, 0u);
}

TEST(Metrics, ReportJson) {
  FidelityReport r;
  r.f_l = 0.75;
  r.mode = FidelityMode::kTableauExact;
  auto j = to_json(r);
  EXPECT_EQ(j["mode"], "tableau_exact");
  EXPECT_DOUBLE_EQ(j["f_l"].get<double>(), 0.75);
}

}  // namespace
}  // namespace flagqec
