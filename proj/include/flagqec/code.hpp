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

#ifndef FLAGQEC_CODE_HPP_
#define FLAGQEC_CODE_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flagqec/pauli.hpp"

namespace flagqec {

/// The [[5,1,3]] code with its cyclic stabilizers.
struct FiveQubitCode {
  static constexpr std::size_t n = 5;

  static const std::array<PauliString, 4>& stabilizers() {
    static const std::array<PauliString, 4> s = {
        PauliString::parse("XXYIY"), PauliString::parse("YXXYI"),
        PauliString::parse("IYXXY"), PauliString::parse("YIYXX")};
    return s;
  }
  static const PauliString& x_logical() {
    static const PauliString x = PauliString::parse("XXXXX");
    return x;
  }
  static const PauliString& z_logical() {
    static const PauliString z = PauliString::parse("ZZZZZ");
    return z;
  }
  /// Y_L = i X_L Z_L, Hermitian.
  static const PauliString& y_logical() {
    static const PauliString y = (x_logical() * z_logical()).with_phase(
        (x_logical() * z_logical()).phase() + 1);
    return y;
  }
  /// Weight-3 incarnations of -X_L; |->_L is their joint +1 eigenstate.
  static const std::array<PauliString, 5>& p_ops() {
    static const std::array<PauliString, 5> p = {
        PauliString::parse("IZXZI"), PauliString::parse("ZIIZX"),
        PauliString::parse("XZIIZ"), PauliString::parse("ZXZII"),
        PauliString::parse("IIZXZ")};
    return p;
  }
  static const PauliString& t1() {
    static const PauliString t = PauliString::parse("IXIYY");
    return t;
  }
  static const PauliString& t2() {
    static const PauliString t = PauliString::parse("XIYYI");
    return t;
  }

  /// All 16 elements of the stabilizer group with exact signs; [0] = identity.
  static const std::vector<PauliString>& group() {
    static const std::vector<PauliString> g = [] {
      std::vector<PauliString> out;
      for (unsigned mask = 0; mask < 16; ++mask) {
        PauliString acc(n);
        for (int k = 0; k < 4; ++k) {
          if (mask & (1u << k)) acc *= stabilizers()[k];
        }
        out.push_back(acc);
      }
      return out;
    }();
    return g;
  }
};

enum class LogicalClass { kI, kX, kY, kZ };

inline std::string_view logical_class_name(LogicalClass c) {
  switch (c) {
    case LogicalClass::kI: return "I_L";
    case LogicalClass::kX: return "X_L";
    case LogicalClass::kY: return "Y_L";
    case LogicalClass::kZ: return "Z_L";
  }
  return "?";
}

inline const PauliString& logical_operator(LogicalClass c) {
  static const PauliString id(5);
  switch (c) {
    case LogicalClass::kI: return id;
    case LogicalClass::kX: return FiveQubitCode::x_logical();
    case LogicalClass::kY: return FiveQubitCode::y_logical();
    case LogicalClass::kZ: return FiveQubitCode::z_logical();
  }
  return id;
}

/// Signs of (s_1, s_2, s_3, s_4): +1 where e commutes with s_i.
using Syndrome = std::array<int, 4>;

inline Syndrome syndrome_of(const PauliString& e) {
  if (e.size() != 5) throw DimensionError("syndrome_of expects a 5-qubit Pauli");
  Syndrome s{};
  for (int k = 0; k < 4; ++k) s[k] = e.commutes(FiveQubitCode::stabilizers()[k]) ? +1 : -1;
  return s;
}

/// Syndrome as a 4-bit index, bit k set when s_{k+1} = -1.
inline unsigned syndrome_index(const Syndrome& s) {
  unsigned idx = 0;
  for (int k = 0; k < 4; ++k) idx |= (s[k] < 0 ? 1u : 0u) << k;
  return idx;
}

inline Syndrome syndrome_from_index(unsigned idx) {
  Syndrome s{};
  for (int k = 0; k < 4; ++k) s[k] = (idx >> k) & 1u ? -1 : +1;
  return s;
}

inline std::string syndrome_to_string(const Syndrome& s) {
  std::string out = "[";
  for (int k = 0; k < 4; ++k) {
    if (k) out += ",";
    out += s[k] > 0 ? "+1" : "-1";
  }
  return out + "]";
}

struct ClassResult {
  LogicalClass cls = LogicalClass::kI;
  PauliString rep;  // weight <= 1, with e = rep * L * S up to phase
};

/// Unique decomposition e ∝ E·L·S with wt(E) <= 1 (the code is perfect).
inline ClassResult logical_class(const PauliString& e) {
  if (e.size() != 5) throw DimensionError("logical_class expects a 5-qubit Pauli");
  for (LogicalClass c : {LogicalClass::kI, LogicalClass::kX, LogicalClass::kY, LogicalClass::kZ}) {
    for (const auto& s : FiveQubitCode::group()) {
      PauliString r = e * s * logical_operator(c);
      if (r.weight() <= 1) return {c, r};
    }
  }
  throw std::logic_error("logical_class: no weight-1 representative");
}

/// Every single-qubit Pauli on 5 qubits plus the identity (set E), I first.
inline std::vector<PauliString> single_qubit_errors(bool include_identity = true) {
  std::vector<PauliString> out;
  if (include_identity) out.emplace_back(5);
  for (std::size_t q = 0; q < 5; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) out.push_back(PauliString::single(5, q, p));
  }
  return out;
}

/// Signed generators of a logical Pauli eigenstate: s_1..s_4 and ±L.
enum class LogicalState { kZero, kOne, kPlus, kMinus, kPlusI, kMinusI };

inline std::string_view logical_state_name(LogicalState s) {
  switch (s) {
    case LogicalState::kZero: return "0";
    case LogicalState::kOne: return "1";
    case LogicalState::kPlus: return "+";
    case LogicalState::kMinus: return "-";
    case LogicalState::kPlusI: return "+i";
    case LogicalState::kMinusI: return "-i";
  }
  return "?";
}

inline LogicalState logical_state_from_name(std::string_view s) {
  for (LogicalState l : {LogicalState::kZero, LogicalState::kOne, LogicalState::kPlus,
                         LogicalState::kMinus, LogicalState::kPlusI, LogicalState::kMinusI}) {
    if (logical_state_name(l) == s) return l;
  }
  throw std::invalid_argument("unknown logical state: " + std::string(s));
}

inline PauliString logical_state_operator(LogicalState s) {
  switch (s) {
    case LogicalState::kZero: return FiveQubitCode::z_logical();
    case LogicalState::kOne: return -FiveQubitCode::z_logical();
    case LogicalState::kPlus: return FiveQubitCode::x_logical();
    case LogicalState::kMinus: return -FiveQubitCode::x_logical();
    case LogicalState::kPlusI: return FiveQubitCode::y_logical();
    case LogicalState::kMinusI: return -FiveQubitCode::y_logical();
  }
  return FiveQubitCode::z_logical();
}

inline std::array<PauliString, 5> logical_state_generators(LogicalState s) {
  const auto& st = FiveQubitCode::stabilizers();
  return {st[0], st[1], st[2], st[3], logical_state_operator(s)};
}

}  // namespace flagqec

#endif  // FLAGQEC_CODE_HPP_
