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

#ifndef FLAGQEC_PROTOCOL_CIRCUITS_HPP_
#define FLAGQEC_PROTOCOL_CIRCUITS_HPP_

#include <array>
#include <string>
#include <vector>

#include "flagqec/circuit.hpp"
#include "flagqec/code.hpp"
#include "flagqec/gate.hpp"

namespace flagqec {

/// Register layout shared by the 5-qubit-code circuits.
namespace layout {
inline constexpr int kAncilla = 5;
inline constexpr int kFlag = 6;
inline constexpr std::size_t kRegister = 7;
inline constexpr std::size_t kData = 5;
inline constexpr int kGhzAncilla = 4;
inline constexpr std::size_t kGhzRegister = 5;

inline std::vector<std::string> roles() { return {"d1", "d2", "d3", "d4", "d5", "a", "f"}; }
}  // namespace layout

/// One time step of a parity-measurement block.
struct ParityStep {
  enum Kind { kData, kFlagCoupling, kAncillaPauli } kind = kData;
  int data = -1;            // data qubit for kData
  Pauli pauli = Pauli::I;   // kAncillaPauli: deliberately injected error
  std::string tag;

  static ParityStep on(int d, std::string tag = {}) { return {kData, d, Pauli::I, std::move(tag)}; }
  static ParityStep flag(std::string tag = {}) { return {kFlagCoupling, -1, Pauli::I, std::move(tag)}; }
  static ParityStep inject(Pauli p) { return {kAncillaPauli, -1, p, "inject"}; }
};

/// Ancilla-mediated measurement of `p` (on the data qubits 0..4). The ancilla
/// is prepared in |+>, controls one C-P gate per letter, and is read out in
/// the X basis; with a flag, CX(ancilla -> flag) couplings sit where `steps`
/// places them and the flag is read out in Z. Untouched data qubits get one
/// idle location.
inline void add_parity_block(Circuit& c, const PauliString& p, const std::vector<ParityStep>& steps,
                             const std::string& label, const std::string& flag_label = {}) {
  const int a = layout::kAncilla, f = layout::kFlag;
  const bool flagged = !flag_label.empty();
  auto tagged = [&](const std::string& t) { return t.empty() ? label : label + "/" + t; };
  c.prepare(a, BasisLabel::kPlus, tagged("prep"));
  if (flagged) c.prepare(f, BasisLabel::kZero, tagged("prep"));
  std::uint64_t touched = 0;
  for (const auto& st : steps) {
    switch (st.kind) {
      case ParityStep::kData: {
        Pauli letter = p.get(static_cast<std::size_t>(st.data));
        c.gate(controlled_pauli(letter, a, st.data), tagged(st.tag));
        touched |= std::uint64_t{1} << st.data;
        break;
      }
      case ParityStep::kFlagCoupling:
        if (!flagged) throw std::invalid_argument("flag coupling in an unflagged block");
        c.gate(GateSpec::two(GateKind::kCX, a, f), tagged(st.tag));
        break;
      case ParityStep::kAncillaPauli:
        c.gate(GateSpec::one(gate_of_pauli(st.pauli), a), tagged(st.tag));
        break;
    }
  }
  if (touched != p.support()) throw std::invalid_argument("parity steps do not cover " + p.str());
  for (int d = 0; d < static_cast<int>(layout::kData); ++d) {
    if (!(touched >> d & 1u)) c.idle(d, tagged("idle"));
  }
  c.measure_reset(a, Pauli::X, label, tagged("meas"));
  if (flagged) c.measure_reset(f, Pauli::Z, flag_label, tagged("meas"));
}

/// Left-to-right couplings over the support of p.
inline std::vector<ParityStep> left_to_right(const PauliString& p) {
  std::vector<ParityStep> out;
  for (int d = 0; d < static_cast<int>(p.size()); ++d) {
    if (p.get(static_cast<std::size_t>(d)) != Pauli::I) out.push_back(ParityStep::on(d));
  }
  return out;
}

/// Flagged measurement of s_k (k = 1..4): the s_1 schedule shifted cyclically
/// by k-1. Gate tags (a)..(d) name the two flag couplings and the two data
/// couplings between them.
inline std::vector<ParityStep> flagged_stabilizer_steps(int k, bool inject_y = false) {
  auto d = [k](int q) { return (q + k - 1) % 5; };
  std::vector<ParityStep> s = {ParityStep::on(d(0)), ParityStep::flag("(a)"), ParityStep::on(d(1), "(b)")};
  if (inject_y) s.push_back(ParityStep::inject(Pauli::Y));
  s.push_back(ParityStep::on(d(2), "(c)"));
  s.push_back(ParityStep::flag("(d)"));
  s.push_back(ParityStep::on(d(4)));
  return s;
}

inline Circuit ghz_circuit() {
  Circuit c(layout::kGhzRegister, "ghz", {"d1", "d2", "d3", "d4", "a"});
  c.set_description("XXXX parity measurement on |0000> with Z_1 feedforward on outcome -1");
  const int a = layout::kGhzAncilla;
  for (int q = 0; q < 4; ++q) c.prepare(q, BasisLabel::kZero);
  c.prepare(a, BasisLabel::kPlus);
  for (int q = 0; q < 4; ++q) c.gate(GateSpec::two(GateKind::kCX, a, q));
  c.measure_reset(a, Pauli::X, "m");
  c.gate(GateSpec::one(GateKind::kZ, 0), "feedforward", Condition{"m", -1});
  return c;
}

/// Heralded |->_L preparation. Labels: m3, m4, m5 (p_3..p_5), T1, T2, flag.
inline Circuit encoding_circuit(bool ft) {
  Circuit c(layout::kRegister, ft ? "encoding_ft" : "encoding_nonft", layout::roles());
  c.set_description(
      "prepare |00+0+>, measure p3,p4,p5" +
      std::string(ft ? "; verify T1=IXIYY then flagged T2=XIYYI (CX d1, flag, CY d3, flag, CY d4)"
                     : ""));
  const std::array<BasisLabel, 5> start = {BasisLabel::kZero, BasisLabel::kZero, BasisLabel::kPlus,
                                           BasisLabel::kZero, BasisLabel::kPlus};
  for (int q = 0; q < 5; ++q) c.prepare(q, start[q], "init");
  const auto& p = FiveQubitCode::p_ops();
  for (int i = 2; i < 5; ++i) {
    std::string label = "m" + std::to_string(i + 1);
    add_parity_block(c, p[i], left_to_right(p[i]), label);
  }
  if (ft) {
    add_parity_block(c, FiveQubitCode::t1(), left_to_right(FiveQubitCode::t1()), "T1");
    std::vector<ParityStep> t2 = {ParityStep::on(0), ParityStep::flag("flag1"), ParityStep::on(2, "mid"),
                                  ParityStep::flag("flag2"), ParityStep::on(3)};
    add_parity_block(c, FiveQubitCode::t2(), t2, "T2", "flag");
  }
  return c;
}

/// Flagged s_1 = XXYIY measurement; labels "s1" (ancilla) and "flag".
inline Circuit flagged_s1_circuit(bool inject_y) {
  Circuit c(layout::kRegister, inject_y ? "flagged_s1_inject_y" : "flagged_s1", layout::roles());
  c.set_description("CX d1, CX flag (a), CX d2 (b), CY d3 (c), CX flag (d), CY d5");
  add_parity_block(c, FiveQubitCode::stabilizers()[0], flagged_stabilizer_steps(1, inject_y), "s1",
                   "flag");
  return c;
}

/// Flagged s_k block for the correction cycle; labels "s<k>" and "f<k>".
inline Circuit flagged_stabilizer_circuit(int k) {
  if (k < 1 || k > 4) throw std::out_of_range("stabilizer index must be 1..4");
  Circuit c(layout::kRegister, "flagged_s" + std::to_string(k), layout::roles());
  add_parity_block(c, FiveQubitCode::stabilizers()[k - 1], flagged_stabilizer_steps(k),
                   "s" + std::to_string(k), "f" + std::to_string(k));
  return c;
}

/// One unflagged round of s_1..s_4; labels "u1".."u4".
inline Circuit unflagged_round_circuit() {
  Circuit c(layout::kRegister, "unflagged_round", layout::roles());
  for (int k = 0; k < 4; ++k) {
    const auto& s = FiveQubitCode::stabilizers()[k];
    std::vector<ParityStep> steps;
    for (int j = 0; j < 5; ++j) {
      int q = (j + k) % 5;
      if (s.get(static_cast<std::size_t>(q)) != Pauli::I) steps.push_back(ParityStep::on(q));
    }
    add_parity_block(c, s, steps, "u" + std::to_string(k + 1));
  }
  return c;
}

}  // namespace flagqec

#endif  // FLAGQEC_PROTOCOL_CIRCUITS_HPP_
