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

#ifndef FLAGQEC_FAULT_INJECTION_HPP_
#define FLAGQEC_FAULT_INJECTION_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagqec/code_tables.hpp"
#include "flagqec/executor.hpp"
#include "flagqec/metrics.hpp"
#include "flagqec/parallel.hpp"
#include "flagqec/protocols.hpp"

namespace flagqec {

/// Runs `c` from `initial` with the single fault `f` on the chosen branch.
template <class State>
std::pair<ExecResult, State> inject_and_run(const Circuit& c, const Fault& f, const State& initial,
                                            BranchCursor& cursor) {
  if (!f.flip && f.error.is_identity()) throw std::invalid_argument("identity fault");
  State s = initial;
  std::vector<Fault> one{f};
  FaultSchedule sched(one);
  ExecOptions opt;
  opt.faults = &sched;
  ExecResult res = execute(c, s, cursor, opt);
  return {std::move(res), std::move(s)};
}

/// One fault and what it did on every random-outcome branch.
struct FaultRecord {
  Fault fault;
  std::string tag;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t violations = 0;
  std::vector<std::string> residuals;  // per accepted branch: error letters, "+L" if logical flip
  std::vector<int> counterexample_branch;
};

inline nlohmann::json to_json(const FaultRecord& r) {
  return {{"fault", fault_to_string(r.fault)}, {"tag", r.tag},
          {"accepted_branches", r.accepted},   {"rejected_branches", r.rejected},
          {"violations", r.violations},        {"residuals", r.residuals},
          {"counterexample_branch", r.counterexample_branch}};
}

struct FtReport {
  std::string name;
  std::size_t faults = 0;
  std::size_t branches = 0;
  std::size_t accepted = 0;
  std::size_t violations = 0;
  std::vector<FaultRecord> records;

  bool ok() const { return violations == 0; }
  std::vector<const FaultRecord*> counterexamples() const {
    std::vector<const FaultRecord*> out;
    for (const auto& r : records) {
      if (r.violations) out.push_back(&r);
    }
    return out;
  }
};

inline nlohmann::json to_json(const FtReport& r, bool with_records = true) {
  nlohmann::json j = {{"name", r.name},         {"faults", r.faults},
                      {"branches", r.branches}, {"accepted_branches", r.accepted},
                      {"violations", r.violations}, {"ok", r.ok()}};
  if (with_records) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    j["records"] = recs;
  }
  return j;
}

inline void tally(FtReport& rep) {
  for (const auto& r : rep.records) {
    rep.branches += r.accepted + r.rejected;
    rep.accepted += r.accepted;
    rep.violations += r.violations;
  }
}

// ---------------------------------------------------------------------------
// Encoding.

/// Every single fault of `c`, every branch: an accepted output (after the
/// frame) must be |->_L up to one single-qubit error.
inline FtReport verify_encoding(const Circuit& c, Policy policy = Policy::kGeneral, unsigned threads = 0) {
  FtReport rep;
  rep.name = c.name() + "/" + std::string(policy_name(policy));
  const std::vector<Fault> faults = enumerate_faults(c);
  rep.faults = faults.size();
  rep.records.resize(faults.size());
  parallel_for(faults.size(), threads, [&](std::size_t i) {
    FaultRecord& rec = rep.records[i];
    rec.fault = faults[i];
    rec.tag = c[faults[i].location].tag;
    std::vector<Fault> one{faults[i]};
    FaultSchedule sched(one);
    ExecOptions opt;
    opt.faults = &sched;
    for_each_branch(
        [&](BranchCursor& cur) { return run_encoding<StabilizerState>(c, policy, cur, opt); },
        [&](const BranchCursor& cur, const Run<StabilizerState>& run) {
          if (!run.record.accepted) {
            ++rec.rejected;
            return;
          }
          ++rec.accepted;
          Residual r = residual(run.state, LogicalState::kMinus);
          bool good = r.definite && r.logical_ok;
          rec.residuals.push_back(r.definite ? r.error.letters() + (r.logical_ok ? "" : "+L") : "indefinite");
          if (!good) {
            if (!rec.violations) rec.counterexample_branch = cur.taken;
            ++rec.violations;
          }
        });
  });
  tally(rep);
  return rep;
}

/// The FT circuit without its flag readout.
inline Circuit drop_flag(const Circuit& c) {
  Circuit out = c.filtered([](const Location& l) { return l.kind == LocKind::kMeasureReset && l.label == "flag"; });
  return out;
}

struct EncodingVerification {
  FtReport ft;
  FtReport ft_herald_plus;
  FtReport non_ft;     // expected to fail
  FtReport dropped;    // expected to fail
  bool ok() const { return ft.ok() && ft_herald_plus.ok() && !non_ft.ok() && !dropped.ok(); }
};

inline EncodingVerification verify_ft_encoding(unsigned threads = 0) {
  EncodingVerification v;
  const Circuit ft = encoding_circuit(true);
  v.ft = verify_encoding(ft, Policy::kGeneral, threads);
  v.ft_herald_plus = verify_encoding(ft, Policy::kHeraldPlus, threads);
  v.non_ft = verify_encoding(encoding_circuit(false), Policy::kGeneral, threads);
  Circuit d = drop_flag(ft);
  v.dropped = verify_encoding(d, Policy::kGeneral, threads);
  v.dropped.name = "drop_flag/general";
  return v;
}

// ---------------------------------------------------------------------------
// Flagged s_1 fault table.

/// Minimum weight over e times {stabilizer group} x {I, X_L}.
inline PauliString min_weight_mod_x(const PauliString& e) {
  PauliString best = e.unsigned_copy();
  for (const auto& s : FiveQubitCode::group()) {
    for (const PauliString* l : {&logical_operator(LogicalClass::kI), &FiveQubitCode::x_logical()}) {
      PauliString c = (e * s * *l).unsigned_copy();
      if (c.weight() < best.weight()) best = c;
    }
  }
  return best;
}

/// Equal up to a stabilizer (phase ignored).
inline bool stabilizer_equivalent(const PauliString& a, const PauliString& b) {
  ClassResult c = logical_class(a * b);
  return c.cls == LogicalClass::kI && c.rep.is_identity();
}

inline std::optional<Fault> find_fault(const Circuit& c, const std::string& tag, const std::string& letters) {
  for (const auto& l : c.locations()) {
    if (l.tag == tag && l.kind == LocKind::kGate2) return Fault::pauli(l.index, PauliString::parse(letters));
  }
  return std::nullopt;
}

inline CheckReport verify_flagged_s1() {
  CheckReport rep;
  const Circuit c = flagged_s1_circuit(false);
  const PauliString& s1 = FiveQubitCode::stabilizers()[0];

  // (i) table rows.
  for (const auto& row : reference::flag_fault_rows()) {
    for (const char* letters : {row.fault, row.alt}) {
      std::string name = std::string(row.gate) + " " + letters;
      auto f = find_fault(c, std::string("s1/") + row.gate, letters);
      if (!f) {
        rep.add("row " + name, false, "no such gate");
        continue;
      }
      Propagation p = propagate_fault(c, *f);
      PauliString err = p.frame.truncated(layout::kData);
      bool raised = p.flipped.count("flag") > 0;
      PauliString want = PauliString::parse(row.error);
      PauliString reduced = PauliString::parse(row.reduced);
      bool ok = raised && err.letters() == row.error && reduce_by(err, s1).letters() == row.reduced &&
                stabilizer_equivalent(err, reduced);
      if (reduced.weight() <= 1) {
        ClassResult cr = logical_class(err);
        ok = ok && cr.cls == LogicalClass::kI && cr.rep.letters() == reduced.letters();
      }
      rep.add("row " + name, ok,
              "got " + err.letters() + (raised ? " (flag)" : " (no flag)") + ", want " + want.letters());
    }
  }

  // Every flag-raising coupling fault is covered by a row.
  std::size_t covered = 0, nontrivial = 0;
  bool all_rows = true;
  for (const auto& rec : flag_raising_faults(c, "s1", "flag")) {
    if (rec.data_error.is_identity()) continue;
    ++nontrivial;
    bool found = false;
    for (const auto& row : reference::flag_fault_rows()) {
      std::string tag = std::string("s1/") + row.gate;
      std::string letters = rec.fault.error.letters();
      found = found || (rec.tag == tag && (letters == row.fault || letters == row.alt));
    }
    covered += found;
    all_rows = all_rows && found;
  }
  rep.add("flag-raising faults with data errors all listed", all_rows,
          std::to_string(covered) + "/" + std::to_string(nontrivial));

  // (ii) unflagged faults leave at most a single-qubit error.
  bool unflagged_ok = true;
  std::string bad;
  for (const auto& f : enumerate_faults(c)) {
    Propagation p = propagate_fault(c, f);
    if (p.flipped.count("flag")) continue;
    ClassResult cr = logical_class(p.frame.truncated(layout::kData));
    if (cr.cls != LogicalClass::kI) {
      unflagged_ok = false;
      bad += " " + fault_to_string(f);
    }
  }
  rep.add("flag down: at most a single-qubit error", unflagged_ok, bad);

  // (iii) flagged errors are corrected exactly by the E' table.
  bool flagged_ok = true;
  bad.clear();
  for (const auto& rec : flag_raising_faults(c, "s1", "flag")) {
    const PauliString& e = rec.data_error;
    PauliString r = DecodeTables::standard().decode(syndrome_of(e), true);
    if (!stabilizer_equivalent(r, e)) {
      flagged_ok = false;
      bad += " " + fault_to_string(rec.fault);
    }
  }
  rep.add("flag up: E' recovery removes the error", flagged_ok, bad);

  // Injected Y after (b).
  Propagation y = propagate_fault(c, Fault::pauli(gate_b_location(c), PauliString::parse("YI")));
  PauliString ye = y.frame.truncated(layout::kData);
  rep.add("injected Y -> Y3Y5, flag and s1 flipped",
          ye.letters() == "IIYIY" && y.flipped.count("flag") && y.flipped.count("s1") &&
              syndrome_to_string(syndrome_of(ye)) == "[+1,-1,-1,-1]",
          ye.letters());
  PauliString after_z4 = (DecodeTables::standard().decode(syndrome_of(ye), false) * ye).unsigned_copy();
  rep.add("without flag the recovery leaves a logical Z", logical_class(after_z4).cls == LogicalClass::kZ,
          after_z4.letters());
  return rep;
}

// ---------------------------------------------------------------------------
// Case B: bad states out of the non-FT stage.

using PSigns = std::array<int, 5>;

template <class State>
PSigns p_signs(const State& s) {
  PSigns m{};
  for (std::size_t i = 0; i < 5; ++i) m[i] = detail::sign_of(s, FiveQubitCode::p_ops()[i].extended(s.num_qubits()));
  return m;
}

inline std::string block_of(const Location& l) { return l.tag.substr(0, l.tag.find('/')); }

inline CheckReport verify_case_b_tables(unsigned threads = 0) {
  CheckReport rep;
  const PauliString& t1 = FiveQubitCode::t1();
  const PauliString& t2 = FiveQubitCode::t2();

  // Single-qubit errors on |+>_L that pass both checks, by simulation.
  std::vector<std::string> passing;
  std::vector<PSigns> bad_signs;
  for (const auto& e : single_qubit_errors(false)) {
    auto s = prepare_logical<StabilizerState>(LogicalState::kPlus);
    s.apply_pauli(e.extended(s.num_qubits()));
    if (data_expectation(s, t1) > 0 && data_expectation(s, t2) > 0) {
      passing.push_back(e.letters());
      bad_signs.push_back(p_signs(s));
    }
  }
  rep.add("only X4 and Z4 pass verification on |+>_L",
          passing == std::vector<std::string>{"IIIXI", "IIIZI"}, [&] {
            std::string s;
            for (const auto& p : passing) s += " " + p;
            return s;
          }());
  const PSigns want_x4{+1, +1, -1, -1, -1}, want_z4{-1, -1, -1, -1, +1};
  rep.add("X4|+>_L: M3=M4=M5=-1, M1=M2=+1", bad_signs.size() == 2 && bad_signs[0] == want_x4);
  rep.add("Z4|+>_L: M1..M4=-1, M5=+1", bad_signs.size() == 2 && bad_signs[1] == want_z4);

  // No single fault in the non-FT stage produces either state (after the frame).
  const Circuit c = encoding_circuit(false);
  const auto faults = enumerate_faults(c);
  std::vector<int> produced(faults.size(), 0), sub1(faults.size(), 1), sub2(faults.size(), 1);
  parallel_for(faults.size(), threads, [&](std::size_t i) {
    std::vector<Fault> one{faults[i]};
    FaultSchedule sched(one);
    ExecOptions opt;
    opt.faults = &sched;
    const std::string blk = block_of(c[faults[i].location]);
    for_each_branch(
        [&](BranchCursor& cur) { return run_encoding<StabilizerState>(c, Policy::kGeneral, cur, opt); },
        [&](const BranchCursor&, const Run<StabilizerState>& run) {
          PSigns m = p_signs(run.state);
          if (m == want_x4 || m == want_z4) produced[i] = 1;
          if ((blk == "init" || blk == "m3") && (m[3] != 1 || m[4] != 1)) sub1[i] = 0;
          if (blk == "m4" && m[4] != 1) sub2[i] = 0;
        });
  });
  std::string bad;
  bool none = true, s1ok = true, s2ok = true;
  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (produced[i]) {
      none = false;
      bad += " " + fault_to_string(faults[i]);
    }
    s1ok = s1ok && sub1[i];
    s2ok = s2ok && sub2[i];
  }
  rep.add("no single preparation fault yields X4|+>_L or Z4|+>_L", none, bad);
  rep.add("faults before p4: M4 = M5 = +1", s1ok);
  rep.add("faults while measuring p4: M5 = +1", s2ok);

  // Middle-coupling hooks in the p4 and p5 blocks.
  auto hooks = [&](const std::string& blk, const std::vector<std::string>& want, const PauliString& pa,
                   const PauliString& pb) {
    std::vector<const Location*> gates;
    for (const auto& l : c.locations()) {
      if (block_of(l) == blk && l.kind == LocKind::kGate2) gates.push_back(&l);
    }
    std::vector<std::string> got;
    bool others_single = true, commute = true;
    for (const auto& f : faults) {
      const Location& l = c[f.location];
      if (block_of(l) != blk) continue;
      PauliString e = min_weight_mod_x(propagate_fault(c, f).frame.truncated(layout::kData));
      bool middle = gates.size() == 3 && &l == gates[1];
      if (e.weight() >= 2) {
        if (!middle) others_single = false;
        if (std::find(got.begin(), got.end(), e.letters()) == got.end()) got.push_back(e.letters());
        commute = commute && e.commutes(pa) && e.commutes(pb);
      }
    }
    std::sort(got.begin(), got.end());
    std::vector<std::string> w = want;
    std::sort(w.begin(), w.end());
    std::string detail;
    for (const auto& g : got) detail += " " + g;
    rep.add(blk + ": two-qubit hooks only from the middle coupling", others_single && got == w, detail);
    rep.add(blk + ": hook errors commute with the protected p_i", commute);
  };
  const auto& p = FiveQubitCode::p_ops();
  hooks("m4", {"IZZII", "IYZII"}, p[1], p[1]);
  hooks("m5", {"IIIZZ", "IIIYZ"}, p[2], p[3]);
  return rep;
}

// ---------------------------------------------------------------------------
// Correction-cycle criteria.

struct CriteriaReport {
  CheckReport checks;
  FtReport clean_input;   // criterion 2
  FtReport noisy_input;   // criterion 3
  std::size_t criterion1_cases = 0;
  bool ok() const { return checks.ok(); }
};

/// Runs the cycle from `input` with each fault of its clean trace.
inline FtReport cycle_fault_sweep(const StabilizerState& input, LogicalState target, bool require_logical,
                                  const CycleCircuits& cc, unsigned threads) {
  FtReport rep;
  std::vector<std::pair<Fault, std::string>> faults;
  std::size_t offset = 0;
  for (const Circuit* c : clean_cycle_trace(input, cc)) {
    for (Fault f : enumerate_faults(*c)) {
      std::string tag = (*c)[f.location].tag;
      f.location += offset;
      faults.emplace_back(f, tag);
    }
    offset += c->size();
  }
  rep.faults = faults.size();
  rep.records.resize(faults.size());
  parallel_for(faults.size(), threads, [&](std::size_t i) {
    FaultRecord& rec = rep.records[i];
    rec.fault = faults[i].first;
    rec.tag = faults[i].second;
    std::vector<Fault> one{faults[i].first};
    FaultSchedule sched(one);
    for_each_branch(
        [&](BranchCursor& cur) {
          StabilizerState s = input;
          run_qec_cycle(s, cur, &sched, {}, cc);
          return s;
        },
        [&](const BranchCursor& cur, const StabilizerState& s) {
          ++rec.accepted;
          Residual r = residual(s, target);
          bool good = r.definite && (!require_logical || r.logical_ok);
          rec.residuals.push_back(r.definite ? r.error.letters() + (r.logical_ok ? "" : "+L") : "indefinite");
          if (!good) {
            if (!rec.violations) rec.counterexample_branch = cur.taken;
            ++rec.violations;
          }
        });
  });
  tally(rep);
  return rep;
}

/// The three distance-3 criteria for the correction cycle:
/// (1) no faults: any single-qubit input error is removed exactly;
/// (2) one fault, clean input: output within one single-qubit error of the input;
/// (3) one fault, single-qubit input error: output is a codeword up to one
///     single-qubit error (definite syndrome).
inline CriteriaReport verify_ft_criteria(const CycleCircuits& cc = CycleCircuits::get(), unsigned threads = 0,
                                         std::vector<LogicalState> inputs = {
                                             LogicalState::kZero, LogicalState::kOne, LogicalState::kPlus,
                                             LogicalState::kMinus, LogicalState::kPlusI, LogicalState::kMinusI}) {
  CriteriaReport out;
  out.clean_input.name = "criterion2";
  out.noisy_input.name = "criterion3";
  bool c1 = true;
  std::string bad1;
  for (LogicalState l : inputs) {
    const auto base = prepare_logical<StabilizerState>(l);
    for (const auto& e : single_qubit_errors()) {
      StabilizerState s = base;
      s.apply_pauli(e.extended(s.num_qubits()));
      BranchCursor cur;
      run_qec_cycle(s, cur, nullptr, {}, cc);
      ++out.criterion1_cases;
      if (!residual(s, l).exact) {
        c1 = false;
        bad1 += " " + std::string(logical_state_name(l)) + ":" + e.letters();
      }
    }
    FtReport r2 = cycle_fault_sweep(base, l, true, cc, threads);
    out.clean_input.faults += r2.faults;
    for (auto& rec : r2.records) out.clean_input.records.push_back(std::move(rec));
    for (const auto& e : single_qubit_errors(false)) {
      StabilizerState s = base;
      s.apply_pauli(e.extended(s.num_qubits()));
      FtReport r3 = cycle_fault_sweep(s, l, false, cc, threads);
      out.noisy_input.faults += r3.faults;
      for (auto& rec : r3.records) out.noisy_input.records.push_back(std::move(rec));
    }
  }
  tally(out.clean_input);
  tally(out.noisy_input);
  out.checks.add("criterion 1: single-qubit input errors removed", c1, bad1);
  out.checks.add("criterion 2: one fault leaves at most a single-qubit error", out.clean_input.ok(),
                 std::to_string(out.clean_input.violations) + " violations over " +
                     std::to_string(out.clean_input.faults) + " faults");
  out.checks.add("criterion 3: one fault on an erred input leaves a codeword up to one error",
                 out.noisy_input.ok(),
                 std::to_string(out.noisy_input.violations) + " violations over " +
                     std::to_string(out.noisy_input.faults) + " faults");
  return out;
}

/// s_1 block with both flag couplings before the data couplings, so hook
/// errors are never flagged.
inline CycleCircuits unordered_s1_cycle() {
  return CycleCircuits::with_s1_steps({ParityStep::flag(), ParityStep::flag(), ParityStep::on(0),
                                       ParityStep::on(1), ParityStep::on(2), ParityStep::on(4)});
}

}  // namespace flagqec

#endif  // FLAGQEC_FAULT_INJECTION_HPP_
