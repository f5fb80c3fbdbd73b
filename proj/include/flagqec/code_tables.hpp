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

#ifndef FLAGQEC_CODE_TABLES_HPP_
#define FLAGQEC_CODE_TABLES_HPP_

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flagqec/code.hpp"
#include "flagqec/fault.hpp"
#include "flagqec/protocol_circuits.hpp"

namespace flagqec {

using SyndromeTable = std::map<unsigned, PauliString>;  // syndrome_index -> recovery

/// Index of (m3, m4, m5) in the frame table: bit 2 for m3 = -1, bit 1 for m4, bit 0 for m5.
inline unsigned frame_index(int m3, int m4, int m5) {
  return (m3 < 0 ? 4u : 0u) | (m4 < 0 ? 2u : 0u) | (m5 < 0 ? 1u : 0u);
}

struct DecodeTables {
  SyndromeTable no_flag;
  std::array<SyndromeTable, 4> with_flag;  // [k-1]: flag raised while measuring s_k
  std::array<PauliString, 8> frame;

  const PauliString& decode(const Syndrome& s, bool flag_raised, int k = 1) const {
    const SyndromeTable& t = flag_raised ? with_flag.at(static_cast<std::size_t>(k - 1)) : no_flag;
    auto it = t.find(syndrome_index(s));
    if (it == t.end()) throw std::out_of_range("syndrome missing from table");
    return it->second;
  }
  const PauliString& frame_correction(int m3, int m4, int m5) const {
    return frame[frame_index(m3, m4, m5)];
  }

  static const DecodeTables& standard();
};

/// Set E: the unique weight <= 1 error per syndrome.
inline SyndromeTable generate_no_flag_table() {
  SyndromeTable t;
  for (const auto& e : single_qubit_errors()) t.emplace(syndrome_index(syndrome_of(e)), e);
  return t;
}

/// Data errors left by single faults that raise the flag of the flagged s_k
/// circuit, keyed by fault. Input is taken to be an error-free code state.
struct FlagFaultRecord {
  Fault fault;
  std::string tag;
  PauliString data_error;
  bool ancilla_flipped = false;
};

inline std::vector<FlagFaultRecord> flag_raising_faults(const Circuit& c, const std::string& ancilla_label,
                                                        const std::string& flag_label) {
  std::vector<FlagFaultRecord> out;
  for (const auto& f : enumerate_faults(c)) {
    Propagation pr = propagate_fault(c, f);
    if (!pr.flipped.count(flag_label)) continue;
    out.push_back({f, c[f.location].tag, pr.frame.truncated(layout::kData),
                   pr.flipped.count(ancilla_label) > 0});
  }
  return out;
}

/// Flag-raised data error with the measured stabilizer folded in when that
/// strictly lowers the weight.
inline PauliString reduce_by(const PauliString& e, const PauliString& s) {
  PauliString r = (e * s).unsigned_copy();
  return r.weight() < e.weight() ? r : e.unsigned_copy();
}

/// Set E'_k: errors from flag-raising single faults of the flagged s_k
/// measurement (reduced by s_k), completed with E for unclaimed syndromes.
inline SyndromeTable generate_flag_table(int k) {
  const Circuit c = flagged_stabilizer_circuit(k);
  const PauliString& s = FiveQubitCode::stabilizers()[static_cast<std::size_t>(k - 1)];
  SyndromeTable t;
  for (const auto& rec : flag_raising_faults(c, "s" + std::to_string(k), "f" + std::to_string(k))) {
    PauliString e = reduce_by(rec.data_error, s);
    unsigned idx = syndrome_index(syndrome_of(e));
    auto it = t.find(idx);
    if (it == t.end()) {
      t.emplace(idx, e);
    } else if (logical_class(it->second * e).cls != LogicalClass::kI) {
      throw std::logic_error("flag faults give logically distinct errors with one syndrome");
    } else if (e.weight() < it->second.weight()) {
      it->second = e;
    }
  }
  for (const auto& [idx, e] : generate_no_flag_table()) t.emplace(idx, e);
  return t;
}

/// Frame correction: commutes with p_1, p_2 and anticommutes with p_i
/// exactly when m_i = -1. A weight-1 Pauli when one exists; otherwise the
/// product of the m_3-only and (m_4, m_5)-only corrections.
inline std::array<PauliString, 8> generate_frame_table() {
  const auto& p = FiveQubitCode::p_ops();
  auto pattern = [&](const PauliString& e) {
    if (!e.commutes(p[0]) || !e.commutes(p[1])) return 8u;
    return frame_index(e.commutes(p[2]) ? 1 : -1, e.commutes(p[3]) ? 1 : -1, e.commutes(p[4]) ? 1 : -1);
  };
  std::array<PauliString, 8> out;
  std::array<bool, 8> have{};
  out[0] = PauliString(5);
  have[0] = true;
  for (const auto& e : single_qubit_errors(false)) {
    unsigned idx = pattern(e);
    if (idx < 8 && !have[idx]) {
      out[idx] = e;
      have[idx] = true;
    }
  }
  for (unsigned idx = 1; idx < 8; ++idx) {
    if (have[idx]) continue;
    unsigned hi = idx & 4u, lo = idx & 3u;
    if (!have[hi] || !have[lo]) throw std::logic_error("frame table: no decomposition");
    out[idx] = (out[hi] * out[lo]).unsigned_copy();
    have[idx] = true;
  }
  return out;
}

inline const DecodeTables& DecodeTables::standard() {
  static const DecodeTables t = [] {
    DecodeTables d;
    d.no_flag = generate_no_flag_table();
    for (int k = 1; k <= 4; ++k) d.with_flag[static_cast<std::size_t>(k - 1)] = generate_flag_table(k);
    d.frame = generate_frame_table();
    return d;
  }();
  return t;
}

inline const PauliString& decode(const Syndrome& s, bool flag_raised) {
  return DecodeTables::standard().decode(s, flag_raised);
}
inline const PauliString& frame_correction(int m3, int m4, int m5) {
  return DecodeTables::standard().frame_correction(m3, m4, m5);
}

/// All weight-`w` members of the coset L·S, with exact signs.
inline std::vector<PauliString> incarnations(LogicalClass c, std::size_t w) {
  std::vector<PauliString> out;
  for (const auto& s : FiveQubitCode::group()) {
    PauliString e = logical_operator(c) * s;
    if (e.weight() == w) out.push_back(e);
  }
  return out;
}

/// Cyclic shift: qubit j moves to j + k (mod 5).
inline PauliString cyclic_shift(const PauliString& p, int k) {
  std::array<int, 5> perm{};
  for (int j = 0; j < 5; ++j) perm[j] = (j + k) % 5;
  return permuted(p, perm);
}

// ---------------------------------------------------------------------------
// Hard-coded reference tables and consistency checks.

namespace reference {

struct SyndromeRow {
  Syndrome syndrome;
  const char* e;
  const char* e_flag;
};

inline const std::vector<SyndromeRow>& syndrome_rows() {
  static const std::vector<SyndromeRow> rows = {
      {{+1, +1, +1, +1}, "IIIII", "IIIII"}, {{+1, -1, +1, -1}, "XIIII", "XIIII"},
      {{-1, -1, +1, -1}, "ZIIII", "ZIIII"}, {{-1, +1, +1, +1}, "YIIII", "IIXIY"},
      {{+1, +1, -1, +1}, "IXIII", "IXIII"}, {{-1, -1, -1, +1}, "IZIII", "IIZIY"},
      {{-1, -1, +1, +1}, "IYIII", "IYIII"}, {{-1, +1, +1, -1}, "IIXII", "XYIII"},
      {{-1, -1, -1, -1}, "IIZII", "IIZII"}, {{+1, -1, -1, +1}, "IIYII", "IIYII"},
      {{+1, -1, +1, +1}, "IIIXI", "IIIXI"}, {{+1, -1, -1, -1}, "IIIZI", "IIYIY"},
      {{+1, +1, -1, -1}, "IIIYI", "IIIYI"}, {{-1, +1, -1, +1}, "IIIIX", "IIIIX"},
      {{+1, +1, +1, -1}, "IIIIY", "IIIIY"}, {{-1, +1, -1, -1}, "IIIIZ", "XZIII"},
  };
  return rows;
}

/// Set E', hard-coded.
inline const std::vector<const char*>& e_prime() {
  static const std::vector<const char*> v = {"IIIII", "XIIII", "IIXIY", "ZIIII", "IXIII", "IYIII",
                                             "IIZIY", "XYIII", "IIYII", "IIZII", "IIIXI", "IIIYI",
                                             "IIYIY", "IIIIX", "IIIIY", "XZIII"};
  return v;
}

struct FrameRow {
  int m3, m4, m5;
  const char* correction;
};

inline const std::vector<FrameRow>& frame_rows() {
  static const std::vector<FrameRow> rows = {
      {+1, +1, +1, "IIIII"}, {+1, +1, -1, "IIIZI"}, {+1, -1, +1, "IZIII"}, {+1, -1, -1, "IIXII"},
      {-1, +1, +1, "ZIIII"}, {-1, +1, -1, "IIIIX"}, {-1, -1, +1, "ZZIII"}, {-1, -1, -1, "ZIXII"},
  };
  return rows;
}

struct IncarnationRow {
  LogicalClass cls;
  const char* weight5;
  const char* weight3_a;  // signed; cyclic shifts included
  const char* weight3_b;
};

inline const std::vector<IncarnationRow>& incarnation_rows() {
  static const std::vector<IncarnationRow> rows = {
      {LogicalClass::kZ, "+ZZZZZ", "-IIYZY", "-IXXIZ"},
      {LogicalClass::kY, "+YYYYY", "-IZZIY", "-XIIXY"},
      {LogicalClass::kX, "+XXXXX", "-IXIYY", "-ZIIZX"},
  };
  return rows;
}

/// Rows of the flag-fault table for the flagged s_1 circuit: gate tag,
/// fault letters (ancilla, partner), alternative letters with the same
/// effect, data error, and its reduced form.
struct FlagFaultRow {
  const char* gate;
  const char* fault;
  const char* alt;
  const char* error;
  const char* reduced;
};

inline const std::vector<FlagFaultRow>& flag_fault_rows() {
  static const std::vector<FlagFaultRow> rows = {
      {"(b)", "XI", "YI", "IIYIY", "IIYIY"}, {"(b)", "XX", "YX", "IXYIY", "XIIII"},
      {"(b)", "XY", "YY", "IYYIY", "XZIII"}, {"(b)", "XZ", "YZ", "IZYIY", "XYIII"},
      {"(c)", "XI", "YI", "IIIIY", "IIIIY"}, {"(c)", "XX", "YX", "IIXIY", "IIXIY"},
      {"(c)", "XY", "YY", "IIYIY", "IIYIY"}, {"(c)", "XZ", "YZ", "IIZIY", "IIZIY"},
      {"(a)", "XZ", "YZ", "IXYIY", "XIIII"}, {"(a)", "XI", "YI", "IXYIY", "XIIII"},
      {"(a)", "IX", "IY", "IIIII", "IIIII"}, {"(a)", "ZX", "ZY", "IIIII", "IIIII"},
      {"(d)", "XX", "XY", "IIIIY", "IIIIY"}, {"(d)", "YX", "YY", "IIIIY", "IIIIY"},
      {"(d)", "IX", "IY", "IIIII", "IIIII"}, {"(d)", "ZX", "ZY", "IIIII", "IIIII"},
  };
  return rows;
}

/// Single-qubit errors and the operators among p_1..p_5, T_1, T_2 they flip.
struct FlipRow {
  const char* error;
  const char* flips;  // 7 characters, 'F' = anticommutes
};

inline const std::vector<FlipRow>& flip_rows() {
  static const std::vector<FlipRow> rows = {
      {"YIIII", ".FFF..F"}, {"XIIII", ".F.F..."}, {"ZIIII", "..F...F"}, {"IYIII", "F.FF.F."},
      {"IXIII", "F.F...."}, {"IZIII", "...F.F."}, {"IIYII", "F..FF.."}, {"IIXII", "...FF.F"},
      {"IIZII", "F.....F"}, {"IIIYI", "FF..F.."}, {"IIIXI", "FF...FF"}, {"IIIZI", "....FFF"},
      {"IIIIY", ".FF.F.."}, {"IIIIX", "..F.FF."}, {"IIIIZ", ".F...F."},
  };
  return rows;
}

}  // namespace reference

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return true;
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks) {
      if (!c.ok) out.push_back(c);
    }
    return out;
  }
};

/// Structural invariants: every syndrome present once, entries reproduce
/// their syndromes, frame corrections have the required commutation pattern.
inline CheckReport check_table_invariants(const DecodeTables& t) {
  CheckReport r;
  auto check_table = [&](const SyndromeTable& tab, const std::string& name) {
    std::set<unsigned> seen;
    bool self = true;
    std::string bad;
    for (const auto& [idx, e] : tab) {
      seen.insert(syndrome_index(syndrome_of(e)));
      if (syndrome_index(syndrome_of(e)) != idx) {
        self = false;
        bad += " " + e.letters();
      }
    }
    r.add(name + ": 16 syndromes, bijective", tab.size() == 16 && seen.size() == 16,
          std::to_string(tab.size()) + " entries, " + std::to_string(seen.size()) + " distinct syndromes");
    r.add(name + ": entries reproduce their syndrome", self, bad);
  };
  check_table(t.no_flag, "E");
  for (int k = 1; k <= 4; ++k) check_table(t.with_flag[static_cast<std::size_t>(k - 1)], "E'_" + std::to_string(k));
  const auto& p = FiveQubitCode::p_ops();
  bool frame_ok = true;
  std::string bad;
  for (unsigned idx = 0; idx < 8; ++idx) {
    const PauliString& e = t.frame[idx];
    if (e.size() != 5) {
      frame_ok = false;
      bad += " [missing]";
      continue;
    }
    int m[3] = {(idx & 4u) ? -1 : 1, (idx & 2u) ? -1 : 1, (idx & 1u) ? -1 : 1};
    bool ok = e.commutes(p[0]) && e.commutes(p[1]);
    for (int i = 0; i < 3; ++i) ok = ok && (e.commutes(p[2 + i]) == (m[i] > 0));
    if (!ok) {
      frame_ok = false;
      bad += " " + e.letters();
    }
  }
  r.add("frame: commutation pattern", frame_ok, bad);
  return r;
}

/// Generated tables against the hard-coded ones, plus invariants.
inline CheckReport verify_tables(const DecodeTables& t = DecodeTables::standard()) {
  CheckReport r = check_table_invariants(t);
  bool e_ok = true, ep_ok = true;
  std::string e_bad, ep_bad;
  for (const auto& row : reference::syndrome_rows()) {
    unsigned idx = syndrome_index(row.syndrome);
    auto a = t.no_flag.find(idx);
    auto b = t.with_flag[0].find(idx);
    if (a == t.no_flag.end() || a->second.letters() != row.e) {
      e_ok = false;
      e_bad += " " + syndrome_to_string(row.syndrome);
    }
    if (b == t.with_flag[0].end() || b->second.letters() != row.e_flag) {
      ep_ok = false;
      ep_bad += " " + syndrome_to_string(row.syndrome);
    }
  }
  r.add("E table matches reference", e_ok, e_bad);
  r.add("E' table matches reference", ep_ok, ep_bad);

  std::set<std::string> listed(reference::e_prime().begin(), reference::e_prime().end());
  std::set<std::string> generated;
  for (const auto& [idx, e] : t.with_flag[0]) generated.insert(e.letters());
  r.add("E' set equals listed set", listed == generated && listed.size() == 16);

  bool shift_ok = true;
  for (int k = 2; k <= 4; ++k) {
    for (const auto& [idx, e] : t.with_flag[0]) {
      PauliString sh = cyclic_shift(e, k - 1);
      auto it = t.with_flag[static_cast<std::size_t>(k - 1)].find(syndrome_index(syndrome_of(sh)));
      shift_ok = shift_ok && it != t.with_flag[static_cast<std::size_t>(k - 1)].end() &&
                 it->second.letters() == sh.letters();
    }
  }
  r.add("E'_k are cyclic shifts of E'_1", shift_ok);

  bool frame_ok = true;
  std::string fbad;
  for (const auto& row : reference::frame_rows()) {
    const PauliString& e = t.frame_correction(row.m3, row.m4, row.m5);
    if (e.letters() != row.correction) {
      frame_ok = false;
      fbad += " " + e.letters();
    }
  }
  r.add("frame table matches reference", frame_ok, fbad);

  bool inc_ok = true;
  std::string ibad;
  for (const auto& row : reference::incarnation_rows()) {
    std::vector<PauliString> w5 = incarnations(row.cls, 5);
    std::vector<PauliString> w3 = incarnations(row.cls, 3);
    PauliString top = PauliString::parse(row.weight5);
    bool found5 = false;
    for (const auto& e : w5) found5 = found5 || e == top;
    inc_ok = inc_ok && found5;
    for (const char* base : {row.weight3_a, row.weight3_b}) {
      for (int k = 0; k < 5; ++k) {
        PauliString want = cyclic_shift(PauliString::parse(base), k);
        bool found = false;
        for (const auto& e : w3) found = found || e == want;
        if (!found) {
          inc_ok = false;
          ibad += " " + want.str();
        }
      }
    }
  }
  r.add("incarnations present with listed signs", inc_ok, ibad);

  bool flips_ok = true;
  std::string flbad;
  std::vector<PauliString> ops(FiveQubitCode::p_ops().begin(), FiveQubitCode::p_ops().end());
  ops.push_back(FiveQubitCode::t1());
  ops.push_back(FiveQubitCode::t2());
  for (const auto& row : reference::flip_rows()) {
    PauliString e = PauliString::parse(row.error);
    for (std::size_t j = 0; j < ops.size(); ++j) {
      bool f = !e.commutes(ops[j]);
      if (f != (row.flips[j] == 'F')) {
        flips_ok = false;
        flbad += " " + std::string(row.error);
      }
    }
  }
  r.add("single-qubit flip table matches reference", flips_ok, flbad);
  return r;
}

}  // namespace flagqec

#endif  // FLAGQEC_CODE_TABLES_HPP_
