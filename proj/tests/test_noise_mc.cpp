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

#include "flagqec/noise_mc.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

TEST(Noise, ZeroRatesDrawNothing) {
  Circuit c = encoding_circuit(true);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(sample_faults(c, NoiseModel{}, rng).empty());
}

TEST(Noise, CertainTwoQubitFaultsOnly) {
  Circuit c = encoding_circuit(true);
  NoiseModel nm;
  nm.p2 = 1.0;
  std::size_t n2 = 0;
  for (std::size_t i = 0; i < c.size(); ++i) n2 += c[i].kind == LocKind::kGate2;
  std::mt19937_64 rng(4);
  auto f = sample_faults(c, nm, rng);
  EXPECT_EQ(f.size(), n2);
  for (const auto& x : f) {
    EXPECT_EQ(c[x.location].kind, LocKind::kGate2);
    EXPECT_FALSE(x.error.is_identity());
  }
}

TEST(Noise, FiringFrequency) {
  Circuit c(1, "one_gate");
  c.gate(GateSpec::one(GateKind::kH, 0));
  NoiseModel nm;
  nm.p1 = 0.3;
  std::mt19937_64 rng(11);
  int hits = 0;
  std::array<int, 4> kinds{};
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto f = sample_faults(c, nm, rng);
    if (!f.empty()) {
      ++hits;
      ++kinds[static_cast<int>(f[0].error.get(0))];
    }
  }
  EXPECT_NEAR(hits / double(n), 0.3, 0.02);
  EXPECT_EQ(kinds[0], 0);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(kinds[k] / double(hits), 1.0 / 3, 0.03);
}

TEST(Noise, JsonRejectsUnknownKeys) {
  EXPECT_THROW(noise_from_json({{"p3", 0.1}}), std::invalid_argument);
  EXPECT_THROW(noise_from_json({{"p2", 1.5}}), std::invalid_argument);
  NoiseModel n = NoiseModel::depolarizing(1e-3);
  EXPECT_EQ(noise_from_json(to_json(n)), n);
  EXPECT_DOUBLE_EQ(n.p1, 1e-4);
  EXPECT_DOUBLE_EQ(n.p_idle, 1e-4);
}

TEST(Noise, ProtocolNames) {
  for (auto p : {Protocol::kEncodingFt, Protocol::kEncodingNonFt, Protocol::kGhz, Protocol::kFlaggedS1,
                 Protocol::kQecCycle}) {
    EXPECT_EQ(protocol_from_name(protocol_name(p)), p);
  }
  EXPECT_THROW(protocol_from_name("nope"), std::invalid_argument);
}

TEST(MonteCarlo, ExactModeIsIdeal) {
  for (auto p : {Protocol::kEncodingFt, Protocol::kEncodingNonFt, Protocol::kGhz, Protocol::kQecCycle}) {
    ExperimentConfig cfg;
    cfg.protocol = p;
    auto r = run_experiment(cfg);
    EXPECT_EQ(r.fidelity.mode, FidelityMode::kExactDense);
    EXPECT_NEAR(r.fidelity.f_l, 1.0, 1e-10) << protocol_name(p);
  }
  ExperimentConfig cfg;
  cfg.noise.p2 = 1e-3;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(MonteCarlo, ExactEncodingAcceptance) {
  ExperimentConfig cfg;
  auto r = run_experiment(cfg);
  EXPECT_NEAR(r.acceptance_rate, 1.0, 1e-12);
  cfg.policy = Policy::kHeraldPlus;
  r = run_experiment(cfg);
  EXPECT_NEAR(r.acceptance_rate, 0.125, 1e-12);
}

TEST(MonteCarlo, FlaggedS1VersusInjectionProbability) {
  ExperimentConfig cfg;
  cfg.protocol = Protocol::kFlaggedS1;
  for (double pe : {0.0, 0.25, 1.0}) {
    cfg.p_e = pe;
    auto r = run_experiment(cfg);
    EXPECT_NEAR(r.fidelity.p_flag, pe, 1e-12);
    EXPECT_NEAR(r.fidelity.f_l, 1.0, 1e-12);
    EXPECT_NEAR(r.fidelity.f_l_flag_ignored, fidelity_vs_pe(pe, 1.0, 0.0), 1e-12);
  }
}

TEST(MonteCarlo, NoiselessShotsAlwaysSucceed) {
  ExperimentConfig cfg;
  cfg.shots = 200;
  cfg.seed = 17;
  auto r = run_experiment(cfg);
  EXPECT_EQ(r.fidelity.mode, FidelityMode::kMonteCarlo);
  EXPECT_EQ(r.accepted, 200u);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_DOUBLE_EQ(r.fidelity.f_l, 1.0);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  ExperimentConfig cfg;
  cfg.protocol = Protocol::kEncodingNonFt;
  cfg.noise = NoiseModel::depolarizing(0.02);
  cfg.shots = 3000;
  cfg.seed = 2026;
  cfg.threads = 1;
  auto a = run_experiment(cfg);
  cfg.threads = 4;
  auto b = run_experiment(cfg);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_DOUBLE_EQ(a.fidelity.f_l, b.fidelity.f_l);
  cfg.seed = 2027;
  auto c = run_experiment(cfg);
  EXPECT_NE(a.failures * 100000 + a.accepted, c.failures * 100000 + c.accepted);
}

TEST(MonteCarlo, NoiseLowersFidelity) {
  ExperimentConfig cfg;
  cfg.protocol = Protocol::kGhz;
  cfg.noise = NoiseModel::depolarizing(0.05);
  cfg.shots = 4000;
  cfg.seed = 8;
  auto r = run_experiment(cfg);
  EXPECT_LT(r.fidelity.f_l, 0.99);
  EXPECT_GT(r.fidelity.f_l, 0.5);
  EXPECT_GT(r.fidelity.f_l_stderr, 0.0);
}

TEST(MonteCarlo, ReadoutErrorsAreCaughtByConsistencyChecks) {
  // Only readout noise. A single misread herald breaks T1 = m4 m5 or
  // T2 = m3 m5, so the shot is rejected; hardware rates leave no failures.
  ExperimentConfig cfg;
  cfg.policy = Policy::kHeraldPlus;
  cfg.noise = NoiseModel::hardware_readout();
  cfg.shots = 20000;
  cfg.seed = 5;
  auto r = run_experiment(cfg);
  EXPECT_LT(r.acceptance_rate, 0.125);
  EXPECT_GT(r.accepted, 0u);
}

TEST(MonteCarlo, DoubleMisreadsCauseFalseAcceptance) {
  // Two or more misreads can keep the checks consistent and accept a shot
  // whose state is off by a frame correction.
  ExperimentConfig cfg;
  cfg.policy = Policy::kHeraldPlus;
  cfg.noise.eps1 = 0.4;
  cfg.shots = 20000;
  cfg.seed = 5;
  auto r = run_experiment(cfg);
  EXPECT_GT(r.failures, 0u);
  EXPECT_LT(r.fidelity.f_l, 1.0);
}

TEST(Sweep, GridShapes) {
  ExperimentConfig cfg;
  cfg.shots = 100;
  cfg.seed = 1;
  EXPECT_TRUE(sweep(cfg, "p2", {}).empty());
  auto rows = sweep(cfg, "p2_scaled", {0.0});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].result.fidelity.f_l, 1.0);
  std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rate,f_l,stderr,acceptance,shots");
  auto j = sweep_json("p2_scaled", rows);
  EXPECT_EQ(j["points"].size(), 1u);
  EXPECT_THROW(sweep(cfg, "bogus", {0.1}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(with_rate({}, "p2_scaled", 1e-3).p1, 1e-4);
}

TEST(Sweep, CompareRatesUsesFloor) {
  ExperimentResult a, b;
  a.accepted = 1000;
  a.failures = 0;
  b.accepted = 1000;
  b.failures = 100;
  auto c = compare_rates(a, b);
  EXPECT_DOUBLE_EQ(c.rate_a, 0.0);
  EXPECT_GT(c.stderr_a, 0.0);
  EXPECT_GT(c.sigma, 5.0);
}

}  // namespace
}  // namespace flagqec
