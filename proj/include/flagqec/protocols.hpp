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

#ifndef FLAGQEC_PROTOCOLS_HPP_
#define FLAGQEC_PROTOCOLS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flagqec/circuit.hpp"
#include "flagqec/code.hpp"
#include "flagqec/code_tables.hpp"
#include "flagqec/executor.hpp"
#include "flagqec/protocol_circuits.hpp"

namespace flagqec {

enum class Policy { kGeneral, kHeraldPlus };

inline std::string_view policy_name(Policy p) { return p == Policy::kGeneral ? "general" : "herald_plus"; }

inline Policy policy_from_name(std::string_view s) {
  if (s == "general") return Policy::kGeneral;
  if (s == "herald_plus") return Policy::kHeraldPlus;
  throw std::invalid_argument("unknown policy: " + std::string(s));
}

struct RunRecord {
  std::string protocol;
  std::vector<std::pair<std::string, int>> outcomes;
  bool accepted = true;
  bool flag_raised = false;
  PauliString pauli_frame{5};  // applied to the returned state
  PauliString recovery{5};     // decoder output (correction cycle)
  PauliString data_error{5};   // propagated data error, when known
  std::uint64_t seed = 0;
  double probability = 1.0;  // product of Born probabilities of random outcomes
  std::vector<int> branch;   // the random outcomes taken

  std::optional<int> find(std::string_view label) const {
    for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it) {
      if (it->first == label) return it->second;
    }
    return std::nullopt;
  }
  int value(std::string_view label) const {
    auto v = find(label);
    if (!v) throw std::out_of_range("no outcome labelled " + std::string(label));
    return *v;
  }
};

inline nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& [l, v] : r.outcomes) outs.push_back({{"label", l}, {"value", v}});
  return {{"protocol", r.protocol},        {"outcomes", outs},
          {"accepted", r.accepted},        {"flag_raised", r.flag_raised},
          {"pauli_frame", r.pauli_frame.letters()}, {"recovery", r.recovery.letters()},
          {"data_error", r.data_error.letters()},   {"seed", r.seed},
          {"probability", r.probability},  {"branch", r.branch}};
}

template <class State>
struct Run {
  RunRecord record;
  State state;
};

inline void append_outcomes(RunRecord& r, const ExecResult& res, const BranchCursor& cur) {
  r.outcomes.clear();
  for (const auto& o : res.outcomes) r.outcomes.emplace_back(o.label, o.value);
  r.probability = cur.probability;
  r.branch = cur.taken;
}

// ---------------------------------------------------------------------------
// Code-state preparation and residual analysis.

namespace detail {

template <class State>
int sign_of(const State& s, const PauliString& p) {
  double v = static_cast<double>(s.expectation(p));
  if (v > 1.0 - 1e-9) return +1;
  if (v < -1.0 + 1e-9) return -1;
  return 0;
}

}  // namespace detail

/// Projects the data block (qubits 0..4) onto the joint +1 eigenspace of the
/// signed commuting `generators`. Deterministic -1 values are fixed with a
/// Pauli that flips only that generator.
template <class State>
void project_data(State& s, std::span<const PauliString> generators) {
  const std::size_t n = s.num_qubits();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    PauliString g = generators[k].extended(n);
    if (!detail::is_deterministic(s, g)) {
      s.measure(g, +1);
      continue;
    }
    if (detail::sign_of(s, g) > 0) continue;
    std::optional<PauliString> fix;
    for (const auto& cand : nontrivial_paulis(5)) {
      bool ok = !cand.commutes(generators[k]);
      for (std::size_t j = 0; j < k && ok; ++j) ok = cand.commutes(generators[j]);
      if (ok) {
        fix = cand;
        break;
      }
    }
    if (!fix) throw std::logic_error("project_data: generators are dependent");
    s.apply_pauli(fix->extended(n));
  }
}

/// |L>_L on the data block of an n-qubit register, other qubits in |0>.
template <class State>
State prepare_logical(LogicalState l, std::size_t n = layout::kRegister, std::uint64_t seed = 0) {
  State s(n, seed);
  auto gens = logical_state_generators(l);
  project_data(s, std::span<const PauliString>(gens));
  return s;
}

/// Where a Pauli-times-codeword data state sits relative to |psi>_L.
struct Residual {
  bool definite = false;  // all five generator values are +-1
  Syndrome syndrome{};
  int logical_sign = 0;   // value of the target's logical generator
  PauliString error{5};   // weight <= 1 error matching the syndrome
  bool logical_ok = false;  // state == error |psi>_L up to phase
  bool exact = false;       // state == |psi>_L up to phase
};

template <class State>
Residual residual(const State& s, LogicalState target) {
  Residual r;
  const std::size_t n = s.num_qubits();
  r.definite = true;
  for (int k = 0; k < 4; ++k) {
    int v = detail::sign_of(s, FiveQubitCode::stabilizers()[static_cast<std::size_t>(k)].extended(n));
    r.syndrome[static_cast<std::size_t>(k)] = v;
    r.definite = r.definite && v != 0;
  }
  const PauliString lop = logical_state_operator(target);
  r.logical_sign = detail::sign_of(s, lop.extended(n));
  r.definite = r.definite && r.logical_sign != 0;
  if (!r.definite) return r;
  r.error = DecodeTables::standard().decode(r.syndrome, false);
  int expected = r.error.commutes(lop) ? +1 : -1;
  r.logical_ok = expected == r.logical_sign;
  r.exact = r.logical_ok && r.error.is_identity();
  return r;
}

// ---------------------------------------------------------------------------
// Heralded encoding.

struct Acceptance {
  bool accepted = false;
  bool flag_raised = false;
  PauliString frame{5};
};

/// Acceptance as a pure function of recorded outcomes. m_1 = m_2 = +1 are
/// fixed by the product-state preparation; missing labels count as +1.
inline Acceptance encoding_acceptance(const RunRecord& r, Policy policy) {
  auto get = [&](const char* l) { return r.find(l).value_or(+1); };
  const int m3 = get("m3"), m4 = get("m4"), m5 = get("m5");
  Acceptance a;
  a.flag_raised = get("flag") < 0;
  bool ok = !a.flag_raised;
  if (r.find("T1")) ok = ok && get("T1") == m4 * m5;
  if (r.find("T2")) ok = ok && get("T2") == m3 * m5;
  if (policy == Policy::kHeraldPlus) {
    ok = ok && m3 > 0 && m4 > 0 && m5 > 0 && get("T1") > 0 && get("T2") > 0;
  }
  a.accepted = ok;
  a.frame = DecodeTables::standard().frame_correction(m3, m4, m5);
  return a;
}

/// Runs an encoding circuit (normally encoding_circuit(ft)); the frame of
/// the general policy is applied to the returned state.
template <class State>
Run<State> run_encoding(const Circuit& c, Policy policy, BranchCursor& cursor, const ExecOptions& opt = {},
                        std::uint64_t seed = 0) {
  Run<State> run{RunRecord{}, State(c.num_qubits(), seed)};
  ExecResult res = execute(c, run.state, cursor, opt);
  RunRecord& r = run.record;
  r.protocol = c.name();
  r.seed = seed;
  append_outcomes(r, res, cursor);
  Acceptance a = encoding_acceptance(r, policy);
  r.accepted = a.accepted;
  r.flag_raised = a.flag_raised;
  r.pauli_frame = a.frame;
  run.state.apply_pauli(a.frame.extended(c.num_qubits()));
  return run;
}

template <class State>
Run<State> run_encoding(bool ft, Policy policy, BranchCursor& cursor, const ExecOptions& opt = {},
                        std::uint64_t seed = 0) {
  return run_encoding<State>(encoding_circuit(ft), policy, cursor, opt, seed);
}

// ---------------------------------------------------------------------------
// Flagged s_1 measurement.

/// Location of the coupling tagged "(b)" in the flagged s_1 circuit.
inline std::size_t gate_b_location(const Circuit& c) {
  for (const auto& l : c.locations()) {
    if (l.tag == "s1/(b)") return l.index;
  }
  throw std::logic_error("flagged s1 circuit has no (b) gate");
}

/// Measures s_1 with a flag on |input>_L. No recovery is applied.
template <class State>
Run<State> run_flagged_s1(LogicalState input, bool inject_y, BranchCursor& cursor, const ExecOptions& opt = {},
                          std::uint64_t seed = 0) {
  const Circuit c = flagged_s1_circuit(inject_y);
  Run<State> run{RunRecord{}, prepare_logical<State>(input, layout::kRegister, seed)};
  ExecResult res = execute(c, run.state, cursor, opt);
  RunRecord& r = run.record;
  r.protocol = c.name();
  r.seed = seed;
  append_outcomes(r, res, cursor);
  r.flag_raised = r.value("flag") < 0;
  if (inject_y) {
    const Circuit plain = flagged_s1_circuit(false);
    Fault y = Fault::pauli(gate_b_location(plain), PauliString::parse("YI"));
    r.data_error = propagate_fault(plain, y).frame.truncated(layout::kData);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Flag correction cycle.

struct CycleCircuits {
  std::array<Circuit, 4> flagged;
  Circuit unflagged;

  /// The s_1 block rebuilt from custom steps (mutation experiments).
  static CycleCircuits with_s1_steps(const std::vector<ParityStep>& steps) {
    CycleCircuits out = get();
    Circuit c(layout::kRegister, "flagged_s1_custom", layout::roles());
    add_parity_block(c, FiveQubitCode::stabilizers()[0], steps, "s1", "f1");
    out.flagged[0] = std::move(c);
    return out;
  }

  static const CycleCircuits& get() {
    static const CycleCircuits c = [] {
      CycleCircuits out;
      for (int k = 1; k <= 4; ++k) out.flagged[static_cast<std::size_t>(k - 1)] = flagged_stabilizer_circuit(k);
      out.unflagged = unflagged_round_circuit();
      return out;
    }();
    return c;
  }
};

struct CycleResult {
  RunRecord record;
  std::vector<const Circuit*> trace;  // circuits executed, in order
  int trigger = 0;                    // k of the s_k block that triggered, 0 if none
};

/// One correction cycle on the data block of `state`: flagged s_1..s_4 in
/// order, stopping at the first raised flag or -1 outcome; then one
/// unflagged round whose syndrome is decoded with E'_k (flag raised on s_k)
/// or E. Fault locations are global over the executed trace; `noise`
/// supplies readout flips and per-location faults.
template <class State>
CycleResult run_qec_cycle(State& state, BranchCursor& cursor, const FaultSchedule* faults = nullptr,
                          ExecOptions noise = {}, const CycleCircuits& cc = CycleCircuits::get()) {
  CycleResult out;
  ExecResult res;
  ExecOptions opt = std::move(noise);
  opt.faults = faults;
  std::size_t offset = 0;
  bool flag = false;
  for (int k = 1; k <= 4; ++k) {
    const Circuit& c = cc.flagged[static_cast<std::size_t>(k - 1)];
    opt.location_offset = offset;
    res = execute(c, state, cursor, opt, std::move(res));
    out.trace.push_back(&c);
    offset += c.size();
    const int s = res.value("s" + std::to_string(k));
    flag = res.value("f" + std::to_string(k)) < 0;
    if (flag || s < 0) {
      out.trigger = k;
      break;
    }
  }
  PauliString recovery(5);
  if (out.trigger) {
    opt.location_offset = offset;
    res = execute(cc.unflagged, state, cursor, opt, std::move(res));
    out.trace.push_back(&cc.unflagged);
    Syndrome syn{};
    for (int k = 0; k < 4; ++k) syn[static_cast<std::size_t>(k)] = res.value("u" + std::to_string(k + 1));
    recovery = DecodeTables::standard().decode(syn, flag, out.trigger);
    state.apply_pauli(recovery.extended(state.num_qubits()));
  }
  RunRecord& r = out.record;
  r.protocol = "qec_cycle";
  append_outcomes(r, res, cursor);
  r.flag_raised = flag;
  r.recovery = recovery;
  return out;
}

/// Circuits of the fault-free cycle on a given input state.
template <class State>
std::vector<const Circuit*> clean_cycle_trace(const State& input, const CycleCircuits& cc = CycleCircuits::get()) {
  State s = input;
  BranchCursor cur;
  return run_qec_cycle(s, cur, nullptr, {}, cc).trace;
}

// ---------------------------------------------------------------------------
// GHZ.

template <class State>
Run<State> run_ghz(BranchCursor& cursor, const ExecOptions& opt = {}, std::uint64_t seed = 0) {
  const Circuit c = ghz_circuit();
  Run<State> run{RunRecord{}, State(c.num_qubits(), seed)};
  ExecResult res = execute(c, run.state, cursor, opt);
  run.record.protocol = "ghz";
  run.record.seed = seed;
  append_outcomes(run.record, res, cursor);
  return run;
}

// ---------------------------------------------------------------------------
// Transversal logical gates.

enum class LogicalGate { kX, kY, kZ, kH, kS };

inline std::string_view logical_gate_name(LogicalGate g) {
  switch (g) {
    case LogicalGate::kX: return "X";
    case LogicalGate::kY: return "Y";
    case LogicalGate::kZ: return "Z";
    case LogicalGate::kH: return "H";
    case LogicalGate::kS: return "S";
  }
  return "?";
}

inline LogicalGate logical_gate_from_name(std::string_view s) {
  for (LogicalGate g : {LogicalGate::kX, LogicalGate::kY, LogicalGate::kZ, LogicalGate::kH, LogicalGate::kS}) {
    if (logical_gate_name(g) == s) return g;
  }
  throw std::invalid_argument("unknown logical gate: " + std::string(s));
}

inline GateKind physical_gate_kind(LogicalGate g) {
  switch (g) {
    case LogicalGate::kX: return GateKind::kX;
    case LogicalGate::kY: return GateKind::kY;
    case LogicalGate::kZ: return GateKind::kZ;
    case LogicalGate::kH: return GateKind::kH;
    case LogicalGate::kS: return GateKind::kS;
  }
  return GateKind::kI;
}

using Permutation = std::array<int, 5>;

inline Permutation identity_permutation() { return {0, 1, 2, 3, 4}; }

/// P_pi (g on every data qubit) P applied to a data operator.
inline PauliString conjugate_transversal(const PauliString& p, LogicalGate g, const Permutation& perm) {
  PauliString out = p;
  for (int q = 0; q < 5; ++q) out = conjugate_by_gate(out, GateSpec::one(physical_gate_kind(g), q));
  return permuted(out, perm);
}

/// The inverse map: what to measure before the gate to get p after it.
inline PauliString heisenberg_transversal(const PauliString& p, LogicalGate g, const Permutation& perm) {
  Permutation inv{};
  for (int j = 0; j < 5; ++j) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = j;
  PauliString out = permuted(p, inv);
  GateKind k = physical_gate_kind(g) == GateKind::kS ? GateKind::kSdg : physical_gate_kind(g);
  for (int q = 0; q < 5; ++q) out = conjugate_by_gate(out, GateSpec::one(k, q));
  return out;
}

inline bool in_stabilizer_group(const PauliString& p) {
  for (const auto& s : FiveQubitCode::group()) {
    if (s == p) return true;
  }
  return false;
}

/// Stabilizer group preserved with signs and logicals mapped as required.
inline bool is_valid_transversal(LogicalGate g, const Permutation& perm) {
  for (const auto& s : FiveQubitCode::stabilizers()) {
    if (!in_stabilizer_group(conjugate_transversal(s, g, perm))) return false;
  }
  auto exact_class = [](const PauliString& p) -> std::optional<LogicalClass> {
    ClassResult c = logical_class(p);
    if (!c.rep.is_identity()) return std::nullopt;
    return c.cls;
  };
  auto x = exact_class(conjugate_transversal(FiveQubitCode::x_logical(), g, perm));
  auto z = exact_class(conjugate_transversal(FiveQubitCode::z_logical(), g, perm));
  if (!x || !z) return false;
  switch (g) {
    case LogicalGate::kX:
    case LogicalGate::kY:
    case LogicalGate::kZ: return *x == LogicalClass::kX && *z == LogicalClass::kZ;
    case LogicalGate::kH: return *x == LogicalClass::kZ && *z == LogicalClass::kX;
    case LogicalGate::kS: return *x == LogicalClass::kY && *z == LogicalClass::kZ;
  }
  return false;
}

/// First valid relabelling in lexicographic order.
inline Permutation find_permutation(LogicalGate g) {
  Permutation p = identity_permutation();
  do {
    if (is_valid_transversal(g, p)) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  throw std::logic_error("no permutation makes " + std::string(logical_gate_name(g)) + " transversal");
}

struct TransversalGate {
  LogicalGate gate = LogicalGate::kX;
  bool physical = true;
  Circuit circuit;  // five single-qubit gates, or empty when virtual
  Permutation perm = identity_permutation();
};

inline TransversalGate transversal_gate_circuit(LogicalGate g, bool physical,
                                                std::size_t n = layout::kRegister) {
  TransversalGate t;
  t.gate = g;
  t.physical = physical;
  t.perm = find_permutation(g);
  t.circuit = Circuit(n, std::string(physical ? "" : "virtual_") + std::string(logical_gate_name(g)) + "_L",
                      n == layout::kRegister ? layout::roles() : std::vector<std::string>{});
  if (physical) {
    for (int q = 0; q < 5; ++q) t.circuit.gate(GateSpec::one(physical_gate_kind(g), q), "transversal");
  }
  return t;
}

template <class State>
void relabel_data(State& s, const Permutation& perm) {
  std::vector<int> full(s.num_qubits());
  std::iota(full.begin(), full.end(), 0);
  for (int j = 0; j < 5; ++j) full[static_cast<std::size_t>(j)] = perm[static_cast<std::size_t>(j)];
  s.permute(full);
}

/// Tracks virtually applied transversal gates; observables are rewritten
/// instead of touching the state.
class LogicalFrame {
 public:
  void push(LogicalGate g) { gates_.push_back(g); }
  bool empty() const { return gates_.empty(); }
  std::size_t size() const { return gates_.size(); }

  /// Operator whose value on the untouched state equals that of `p` after
  /// the recorded gates.
  PauliString rewrite(const PauliString& p) const {
    PauliString out = p;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      out = heisenberg_transversal(out, *it, find_permutation(*it));
    }
    return out;
  }

 private:
  std::vector<LogicalGate> gates_;
};

/// Physical: applies the five gates and the relabelling. Virtual: records
/// the gate in `frame` and leaves the state alone.
template <class State>
void apply_logical_gate(State& s, LogicalGate g, bool physical, LogicalFrame* frame = nullptr) {
  if (!physical) {
    if (!frame) throw std::invalid_argument("virtual logical gate needs a frame");
    frame->push(g);
    return;
  }
  const Permutation perm = find_permutation(g);
  for (int q = 0; q < 5; ++q) s.apply(GateSpec::one(physical_gate_kind(g), q));
  relabel_data(s, perm);
}

/// Data-block expectation of p, read through a virtual frame.
template <class State>
double logical_expectation(const State& s, const PauliString& p, const LogicalFrame& frame) {
  return static_cast<double>(s.expectation(frame.rewrite(p).extended(s.num_qubits())));
}

/// Every fixed circuit the protocols execute, plus the physical transversal
/// gates.
inline std::vector<Circuit> all_protocol_circuits() {
  std::vector<Circuit> cs = {ghz_circuit(),          encoding_circuit(true),       encoding_circuit(false),
                             flagged_s1_circuit(true), flagged_s1_circuit(false), unflagged_round_circuit()};
  for (int k = 1; k <= 4; ++k) cs.push_back(flagged_stabilizer_circuit(k));
  for (LogicalGate g : {LogicalGate::kX, LogicalGate::kY, LogicalGate::kH, LogicalGate::kS}) {
    cs.push_back(transversal_gate_circuit(g, true).circuit);
  }
  return cs;
}

}  // namespace flagqec

#endif  // FLAGQEC_PROTOCOLS_HPP_
