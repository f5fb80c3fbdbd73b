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

#include <random>

#include "flagqec/compile.hpp"
#include "flagqec/equivalence.hpp"
#include "flagqec/executor.hpp"
#include "flagqec/fault.hpp"
#include "flagqec/protocol_circuits.hpp"
#include "flagqec/protocols.hpp"

#include <gtest/gtest.h>

namespace flagqec {
namespace {

std::vector<Circuit> protocol_circuits() { return all_protocol_circuits(); }

TEST(CircuitIR, TextRoundTrip) {
  for (const auto& c : protocol_circuits()) {
    Circuit back = from_text(to_text(c));
    EXPECT_EQ(to_text(back), to_text(c)) << c.name();
    EXPECT_EQ(back.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back[i], c[i]) << c.name() << " @" << i;
  }
}

TEST(CircuitIR, JsonRoundTrip) {
  for (const auto& c : protocol_circuits()) {
    Circuit back = circuit_from_json(to_json(c));
    EXPECT_EQ(to_text(back), to_text(c)) << c.name();
  }
}

TEST(CircuitIR, MalformedTextRejected) {
  EXPECT_THROW(from_text("gate H 0\n"), CircuitFormatError);
  EXPECT_THROW(from_text("circuit x 2\ngate FOO 0\n"), CircuitFormatError);
  EXPECT_THROW(from_text("circuit x 2\ngate CX 0\n"), CircuitFormatError);
  EXPECT_THROW(from_text("circuit x 2\nmeasure 0 I m\n"), CircuitFormatError);
  EXPECT_THROW(from_text("circuit x 2\nprep 5 0\n"), std::out_of_range);
}

TEST(CircuitIR, GhzShape) {
  Circuit c = ghz_circuit();
  EXPECT_EQ(c.num_qubits(), 5u);
  EXPECT_EQ(c.measurement_labels(), std::vector<std::string>{"m"});
  ASSERT_TRUE(c[c.size() - 1].condition.has_value());
  EXPECT_EQ(c[c.size() - 1].condition->label, "m");
}

TEST(CircuitIR, EncodingLabels) {
  EXPECT_EQ(encoding_circuit(false).measurement_labels(), (std::vector<std::string>{"m3", "m4", "m5"}));
  EXPECT_EQ(encoding_circuit(true).measurement_labels(),
            (std::vector<std::string>{"m3", "m4", "m5", "T1", "T2", "flag"}));
}

TEST(CircuitIR, FlaggedS1GateOrder) {
  Circuit c = flagged_s1_circuit(false);
  std::vector<std::string> seq;
  for (const auto& l : c.locations()) {
    if (l.kind == LocKind::kGate2) seq.push_back(gate_to_string(l.gate) + " " + std::to_string(l.gate.qubits[0]) + " " + std::to_string(l.gate.qubits[1]) +
                    (l.tag.empty() ? "" : " " + l.tag));
  }
  EXPECT_EQ(seq, (std::vector<std::string>{"CX 5 0 s1", "CX 5 6 s1/(a)", "CX 5 1 s1/(b)", "CY 5 2 s1/(c)",
                                            "CX 5 6 s1/(d)", "CY 5 4 s1"}));
}

TEST(CircuitIR, LocationsAreIndexedInOrder) {
  Circuit c = encoding_circuit(true);
  const auto& locs = enumerate_locations(c);
  for (std::size_t i = 0; i < locs.size(); ++i) EXPECT_EQ(locs[i].index, i);
}

TEST(Faults, CountsPerLocation) {
  Circuit c = ghz_circuit();
  std::size_t expect = 0;
  for (const auto& l : c.locations()) expect += l.kind == LocKind::kMeasureReset ? 1 : l.arity() == 2 ? 15 : 3;
  EXPECT_EQ(enumerate_faults(c).size(), expect);
  EXPECT_EQ(nontrivial_paulis(2).front().letters(), "IX");
  EXPECT_EQ(nontrivial_paulis(2).back().letters(), "ZZ");
}

TEST(Faults, PropagationMatchesSimulation) {
  // Frame propagation agrees with running the faulty circuit on the tableau.
  Circuit c = flagged_s1_circuit(false);
  auto input = prepare_logical<StabilizerState>(LogicalState::kMinus);
  for (const auto& f : enumerate_faults(c)) {
    Propagation p = propagate_fault(c, f);
    StabilizerState s = input;
    std::vector<Fault> one{f};
    FaultSchedule sched(one);
    ExecOptions opt;
    opt.faults = &sched;
    BranchCursor cur;
    ExecResult r = execute(c, s, cur, opt);
    EXPECT_EQ(r.value("s1") == -1, p.flipped.count("s1") > 0) << fault_to_string(f);
    EXPECT_EQ(r.value("flag") == -1, p.flipped.count("flag") > 0) << fault_to_string(f);
    StabilizerState clean = input;
    BranchCursor cc;
    execute(c, clean, cc);
    s.apply_pauli(p.frame);
    for (const auto& g : clean.stabilizers()) EXPECT_EQ(s.expectation(g), 1) << fault_to_string(f);
  }
}

TEST(Executor, ConditionalFeedforward) {
  for (int outcome : {+1, -1}) {
    StabilizerState s(5);
    BranchCursor cur;
    cur.prefix = {outcome};
    ExecResult r = execute(ghz_circuit(), s, cur);
    EXPECT_EQ(r.value("m"), outcome);
    EXPECT_EQ(s.expectation(PauliString::parse("XXXXI")), 1);
  }
}

TEST(Executor, BranchEnumerationVisitsAllOutcomes) {
  std::size_t leaves = 0;
  for_each_branch([&](BranchCursor& cur) { return run_encoding<StabilizerState>(false, Policy::kGeneral, cur); },
                  [&](const BranchCursor& cur, const flagqec::Run<StabilizerState>&) {
                    EXPECT_EQ(cur.taken.size(), 3u);
                    EXPECT_DOUBLE_EQ(cur.probability, 0.125);
                    ++leaves;
                  });
  EXPECT_EQ(leaves, 8u);
}

TEST(Compile, NativeGateSetOnly) {
  for (const auto& c : protocol_circuits()) {
    for (const auto& l : compile_to_native(c).locations()) {
      if (l.kind != LocKind::kGate1 && l.kind != LocKind::kGate2) continue;
      GateKind k = l.gate.kind;
      EXPECT_TRUE(k == GateKind::kRx || k == GateKind::kRy || k == GateKind::kRz || k == GateKind::kCRxPM)
          << c.name() << ": " << gate_to_string(l.gate);
    }
  }
}

TEST(Compile, ProtocolCircuitsEquivalent) {
  for (const auto& c : protocol_circuits()) {
    auto r = check_compiled(c, compile_to_native(c));
    EXPECT_TRUE(r.equivalent) << c.name() << " distance " << r.max_distance;
  }
}

TEST(Compile, CompiledCircuitsBehaveTheSameOnEveryBranch) {
  for (const auto& c : protocol_circuits()) {
    Circuit n = compile_to_native(c);
    for_each_branch(
        [&](BranchCursor& cur) {
          DenseState s(c.num_qubits());
          ExecResult r = execute(c, s, cur);
          return std::make_pair(std::move(s), std::move(r));
        },
        [&](const BranchCursor& cur, const std::pair<DenseState, ExecResult>& want) {
          DenseState s(c.num_qubits());
          BranchCursor nc;
          nc.prefix = cur.taken;
          ExecResult r = execute(n, s, nc);
          EXPECT_NEAR(state_fidelity(s, want.first), 1.0, 1e-10) << c.name();
          for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
            EXPECT_EQ(r.outcomes[i].value, want.second.outcomes[i].value);
          }
        });
  }
}

TEST(Compile, CxDecompositionUpToPhase) {
  Circuit c(2, "cx");
  c.gate(GateSpec::two(GateKind::kCX, 0, 1));
  Circuit n = compile_to_native(c);
  EXPECT_LT(distance_up_to_global_phase(unitary_of_circuit(c), unitary_of_circuit(n)), 1e-12);
}

TEST(Compile, RandomCircuitsWithoutMeasurements) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    Circuit c = random_clifford_circuit(1 + rng() % 4, 20, rng, false);
    Circuit body = c.filtered([](const Location& l) { return l.kind == LocKind::kPrepare; });
    auto r = check_compiled(body, compile_to_native(body));
    EXPECT_TRUE(r.equivalent) << to_text(body);
  }
}

TEST(Compile, EmptyCircuitIsIdentity) {
  Circuit c(2, "empty");
  EXPECT_LT(distance_up_to_global_phase(unitary_of_circuit(c), Matrix::identity(4)), 1e-15);
  Circuit m(1, "m");
  m.measure_reset(0, Pauli::Z, "x");
  EXPECT_THROW(unitary_of_circuit(m), std::invalid_argument);
}

}  // namespace
}  // namespace flagqec
