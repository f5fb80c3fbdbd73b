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

#include "flagqec/metrics.hpp"
#include "flagqec/protocols.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

template <class State>
void check_noiseless_encoding(bool ft) {
  double total = 0.0;
  std::size_t branches = 0;
  for_each_branch([&](BranchCursor& cur) { return run_encoding<State>(ft, Policy::kGeneral, cur); },
                  [&](const BranchCursor& cur, const flagqec::Run<State>& run) {
                    ++branches;
                    EXPECT_TRUE(run.record.accepted);
                    EXPECT_FALSE(run.record.flag_raised);
                    EXPECT_DOUBLE_EQ(cur.probability, 0.125);
                    total += cur.probability;
                    EXPECT_TRUE(residual(run.state, LogicalState::kMinus).exact);
                    EXPECT_NEAR(logical_fidelity(run.state), 1.0, 1e-12);
                  });
  EXPECT_EQ(branches, 8u);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Encoding, NoiselessAllBranchesGiveMinusL) {
  check_noiseless_encoding<StabilizerState>(true);
  check_noiseless_encoding<StabilizerState>(false);
  check_noiseless_encoding<DenseState>(true);
}

TEST(Encoding, HeraldPlusKeepsOnlyAllPlusBranch) {
  double accepted = 0.0;
  for_each_branch([&](BranchCursor& cur) { return run_encoding<DenseState>(true, Policy::kHeraldPlus, cur); },
                  [&](const BranchCursor& cur, const flagqec::Run<DenseState>& run) {
                    if (run.record.accepted) {
                      accepted += cur.probability;
                      EXPECT_TRUE(run.record.pauli_frame.is_identity());
                    }
                  });
  EXPECT_NEAR(accepted, 0.125, 1e-12);
}

TEST(Encoding, AcceptanceRule) {
  RunRecord r;
  r.outcomes = {{"m3", -1}, {"m4", +1}, {"m5", -1}, {"T1", -1}, {"T2", +1}, {"flag", +1}};
  Acceptance a = encoding_acceptance(r, Policy::kGeneral);
  EXPECT_TRUE(a.accepted);
  EXPECT_EQ(compact_name(a.frame), "X5");
  EXPECT_FALSE(encoding_acceptance(r, Policy::kHeraldPlus).accepted);
  r.outcomes.back().second = -1;
  EXPECT_FALSE(encoding_acceptance(r, Policy::kGeneral).accepted);
  EXPECT_TRUE(encoding_acceptance(r, Policy::kGeneral).flag_raised);
  r.outcomes = {{"m3", +1}, {"m4", -1}, {"m5", +1}, {"T1", +1}, {"T2", +1}, {"flag", +1}};
  EXPECT_FALSE(encoding_acceptance(r, Policy::kGeneral).accepted);
}

TEST(Encoding, InjectedDataErrorIsOrthogonal) {
  BranchCursor cur;
  cur.prefix = {+1, +1, +1};
  auto clean = run_encoding<DenseState>(false, Policy::kGeneral, cur);
  DenseState faulty = clean.state;
  faulty.apply_pauli(PauliString::parse("IIYIYII"));
  EXPECT_NEAR(state_fidelity(clean.state, faulty), 0.0, 1e-12);
}

TEST(FlaggedS1, InjectedYRaisesFlag) {
  BranchCursor cur;
  auto run = run_flagged_s1<DenseState>(LogicalState::kMinus, true, cur);
  EXPECT_EQ(run.record.value("s1"), -1);
  EXPECT_TRUE(run.record.flag_raised);
  EXPECT_EQ(run.record.data_error.letters(), "IIYIY");
  EXPECT_EQ(syndrome_of(run.record.data_error), (Syndrome{+1, -1, -1, -1}));
  EXPECT_NEAR(logical_fidelity(run.state), 0.0, 1e-12);
  EXPECT_NEAR(logical_fidelity_raised(run.state), 1.0, 1e-12);
}

TEST(FlaggedS1, CleanRunLeavesStateAlone) {
  BranchCursor cur;
  auto run = run_flagged_s1<StabilizerState>(LogicalState::kMinus, false, cur);
  EXPECT_EQ(run.record.value("s1"), 1);
  EXPECT_FALSE(run.record.flag_raised);
  EXPECT_TRUE(residual(run.state, LogicalState::kMinus).exact);
}

TEST(QecCycle, RemovesEverySingleQubitError) {
  for (LogicalState l : {LogicalState::kZero, LogicalState::kMinus, LogicalState::kPlusI}) {
    for (const auto& e : single_qubit_errors()) {
      auto s = prepare_logical<DenseState>(l);
      s.apply_pauli(e.extended(7));
      BranchCursor cur;
      CycleResult r = run_qec_cycle(s, cur);
      EXPECT_TRUE(residual(s, l).exact) << e.letters();
      EXPECT_EQ(r.trigger == 0, e.is_identity());
      EXPECT_EQ(r.record.recovery.letters(), e.letters());
    }
  }
}

TEST(QecCycle, CleanTraceIsFourFlaggedBlocks) {
  auto s = prepare_logical<StabilizerState>(LogicalState::kZero);
  EXPECT_EQ(clean_cycle_trace(s).size(), 4u);
  s.apply_pauli(PauliString::parse("XIIII").extended(7));
  auto trace = clean_cycle_trace(s);
  EXPECT_EQ(trace.back(), &CycleCircuits::get().unflagged);
}

TEST(Ghz, BothBranchesGivePsiPlus) {
  for (int m : {+1, -1}) {
    BranchCursor cur;
    cur.prefix = {m};
    auto run = run_ghz<DenseState>(cur);
    EXPECT_NEAR(ghz_fidelity(run.state), 1.0, 1e-12);
    EXPECT_NEAR(cur.probability, 0.5, 1e-12);
  }
}

TEST(PrepareLogical, EigenstatesOfTheirOperators) {
  for (LogicalState l : {LogicalState::kZero, LogicalState::kOne, LogicalState::kPlus, LogicalState::kMinus,
                         LogicalState::kPlusI, LogicalState::kMinusI}) {
    auto t = prepare_logical<StabilizerState>(l);
    auto d = prepare_logical<DenseState>(l);
    EXPECT_EQ(t.expectation(logical_state_operator(l).extended(7)), 1);
    EXPECT_NEAR(d.expectation(logical_state_operator(l).extended(7)), 1.0, 1e-12);
    EXPECT_TRUE(residual(d, l).exact);
  }
}

TEST(Transversal, FoundPermutations) {
  EXPECT_EQ(find_permutation(LogicalGate::kX), identity_permutation());
  EXPECT_EQ(find_permutation(LogicalGate::kY), identity_permutation());
  EXPECT_EQ(find_permutation(LogicalGate::kH), (Permutation{0, 2, 4, 1, 3}));
  EXPECT_EQ(find_permutation(LogicalGate::kS), (Permutation{0, 2, 4, 1, 3}));
  EXPECT_FALSE(is_valid_transversal(LogicalGate::kH, identity_permutation()));
}

TEST(Transversal, LogicalActionOnCodeStates) {
  struct Case {
    LogicalGate g;
    LogicalState in, out;
  };
  const Case cases[] = {{LogicalGate::kX, LogicalState::kZero, LogicalState::kOne},
                        {LogicalGate::kH, LogicalState::kZero, LogicalState::kPlus},
                        {LogicalGate::kH, LogicalState::kMinus, LogicalState::kOne},
                        {LogicalGate::kS, LogicalState::kPlus, LogicalState::kPlusI},
                        {LogicalGate::kY, LogicalState::kPlus, LogicalState::kMinus}};
  for (const auto& c : cases) {
    auto s = prepare_logical<DenseState>(c.in);
    apply_logical_gate(s, c.g, true);
    EXPECT_TRUE(residual(s, c.out).exact) << logical_gate_name(c.g);
  }
}

TEST(Transversal, VirtualMatchesPhysical) {
  const PauliString obs[] = {FiveQubitCode::x_logical(), FiveQubitCode::z_logical(),
                             FiveQubitCode::y_logical(), FiveQubitCode::stabilizers()[2]};
  const LogicalGate seq[] = {LogicalGate::kH, LogicalGate::kS, LogicalGate::kX, LogicalGate::kH};
  auto phys = prepare_logical<StabilizerState>(LogicalState::kZero);
  auto virt = phys;
  LogicalFrame frame;
  for (LogicalGate g : seq) {
    apply_logical_gate(phys, g, true);
    apply_logical_gate(virt, g, false, &frame);
  }
  for (const auto& o : obs) {
    EXPECT_EQ(static_cast<double>(phys.expectation(o.extended(7))), logical_expectation(virt, o, frame));
  }
  EXPECT_THROW(apply_logical_gate(virt, LogicalGate::kH, false), std::invalid_argument);
}

}  // namespace
}  // namespace flagqec
