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

#ifndef FLAGQEC_GATE_HPP_
#define FLAGQEC_GATE_HPP_

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flagqec/pauli.hpp"

namespace flagqec {

class UnknownGateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a stabilizer backend is handed a rotation that is not a
/// multiple of pi/2.
class NonCliffordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind {
  kI,
  kX,
  kY,
  kZ,
  kH,
  kS,
  kSdg,
  kRx,  // exp(-i theta X / 2)
  kRy,
  kRz,
  kCX,  // qubits[0] control, qubits[1] target
  kCY,
  kCZ,
  // |0><0| ⊗ Rx(+pi/2) + |1><1| ⊗ Rx(-pi/2): the native electron-nuclear gate.
  kCRxPM,
};

struct GateSpec {
  GateKind kind = GateKind::kI;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;

  int arity() const {
    switch (kind) {
      case GateKind::kCX:
      case GateKind::kCY:
      case GateKind::kCZ:
      case GateKind::kCRxPM:
        return 2;
      default:
        return 1;
    }
  }
  bool has_angle() const {
    return kind == GateKind::kRx || kind == GateKind::kRy ||
           kind == GateKind::kRz;
  }
  bool operator==(const GateSpec&) const = default;

  static GateSpec one(GateKind k, int q, double angle = 0.0) {
    return GateSpec{k, {q, -1}, angle};
  }
  static GateSpec two(GateKind k, int control, int target) {
    return GateSpec{k, {control, target}, 0.0};
  }
};

inline std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::kI: return "I";
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kZ: return "Z";
    case GateKind::kH: return "H";
    case GateKind::kS: return "S";
    case GateKind::kSdg: return "SDG";
    case GateKind::kRx: return "RX";
    case GateKind::kRy: return "RY";
    case GateKind::kRz: return "RZ";
    case GateKind::kCX: return "CX";
    case GateKind::kCY: return "CY";
    case GateKind::kCZ: return "CZ";
    case GateKind::kCRxPM: return "CRX_PM";
  }
  return "?";
}

inline GateKind gate_kind_from_name(std::string_view name) {
  static constexpr GateKind kAll[] = {
      GateKind::kI,   GateKind::kX,  GateKind::kY,  GateKind::kZ,
      GateKind::kH,   GateKind::kS,  GateKind::kSdg, GateKind::kRx,
      GateKind::kRy,  GateKind::kRz, GateKind::kCX, GateKind::kCY,
      GateKind::kCZ,  GateKind::kCRxPM};
  for (GateKind k : kAll) {
    if (gate_name(k) == name) return k;
  }
  throw UnknownGateError("unknown gate kind: " + std::string(name));
}

/// Pauli gate corresponding to a single-letter PauliString factor.
inline GateKind gate_of_pauli(Pauli p) {
  switch (p) {
    case Pauli::X: return GateKind::kX;
    case Pauli::Y: return GateKind::kY;
    case Pauli::Z: return GateKind::kZ;
    case Pauli::I: break;
  }
  return GateKind::kI;
}

/// Controlled-P gate with `control` driving letter p on `target`.
inline GateSpec controlled_pauli(Pauli p, int control, int target) {
  switch (p) {
    case Pauli::X: return GateSpec::two(GateKind::kCX, control, target);
    case Pauli::Y: return GateSpec::two(GateKind::kCY, control, target);
    case Pauli::Z: return GateSpec::two(GateKind::kCZ, control, target);
    case Pauli::I: break;
  }
  throw std::invalid_argument("controlled_pauli: identity letter");
}

/// Number of quarter turns k for angle = k*pi/2 (mod 4), if exact to 1e-9.
inline std::optional<int> quarter_turns(double angle) {
  double k = angle / (std::numbers::pi / 2);
  double r = std::round(k);
  if (std::abs(k - r) > 1e-9) return std::nullopt;
  return static_cast<int>(((static_cast<long long>(r) % 4) + 4) % 4);
}

namespace detail {

inline void conj_h(PauliString& p, int q) {
  std::uint64_t b = std::uint64_t{1} << q;
  std::uint64_t x = p.x_bits(), z = p.z_bits();
  if ((x & b) && (z & b)) p.set_phase(p.phase() + 2);
  std::uint64_t xb = x & b, zb = z & b;
  x = (x & ~b) | zb;
  z = (z & ~b) | xb;
  p.set_bits(x, z);
}

// S P S^dagger: X -> Y, Y -> -X.
inline void conj_s(PauliString& p, int q) {
  std::uint64_t b = std::uint64_t{1} << q;
  std::uint64_t x = p.x_bits(), z = p.z_bits();
  if ((x & b) && (z & b)) p.set_phase(p.phase() + 2);
  if (x & b) z ^= b;
  p.set_bits(x, z);
}

// S^dagger P S: X -> -Y, Y -> X.
inline void conj_sdg(PauliString& p, int q) {
  std::uint64_t b = std::uint64_t{1} << q;
  std::uint64_t x = p.x_bits(), z = p.z_bits();
  if ((x & b) && !(z & b)) p.set_phase(p.phase() + 2);
  if (x & b) z ^= b;
  p.set_bits(x, z);
}

inline void conj_pauli(PauliString& p, int q, Pauli g) {
  std::uint64_t b = std::uint64_t{1} << q;
  bool x = p.x_bits() & b, z = p.z_bits() & b;
  bool anti = false;
  switch (g) {
    case Pauli::X: anti = z; break;
    case Pauli::Z: anti = x; break;
    case Pauli::Y: anti = x != z; break;
    case Pauli::I: break;
  }
  if (anti) p.set_phase(p.phase() + 2);
}

inline void conj_cx(PauliString& p, int c, int t) {
  std::uint64_t bc = std::uint64_t{1} << c, bt = std::uint64_t{1} << t;
  std::uint64_t x = p.x_bits(), z = p.z_bits();
  bool xc = x & bc, zc = z & bc, xt = x & bt, zt = z & bt;
  if (xc && zt && (xt == zc)) p.set_phase(p.phase() + 2);
  if (xc) x ^= bt;
  if (zt) z ^= bc;
  p.set_bits(x, z);
}

// Rx(pi/2) = e^{-i pi/4} H S H: Z -> -Y, Y -> Z.
inline void conj_sqrt_x(PauliString& p, int q) {
  conj_h(p, q);
  conj_s(p, q);
  conj_h(p, q);
}

// Ry(pi/2): X -> -Z, Z -> X.
inline void conj_sqrt_y(PauliString& p, int q) {
  conj_sdg(p, q);
  conj_sqrt_x(p, q);
  conj_s(p, q);
}

}  // namespace detail

/// Returns g p g^dagger with exact phase. Rotations must be multiples of pi/2.
inline PauliString conjugate_by_gate(PauliString p, const GateSpec& g) {
  int n = static_cast<int>(p.size());
  int q0 = g.qubits[0], q1 = g.qubits[1];
  if (q0 < 0 || q0 >= n || (g.arity() == 2 && (q1 < 0 || q1 >= n || q1 == q0))) {
    throw std::out_of_range("gate qubits outside Pauli register");
  }
  auto turns = [&]() {
    auto k = quarter_turns(g.angle);
    if (!k) {
      throw NonCliffordError(std::string(gate_name(g.kind)) +
                             " angle is not a multiple of pi/2");
    }
    return *k;
  };
  switch (g.kind) {
    case GateKind::kI: break;
    case GateKind::kX: detail::conj_pauli(p, q0, Pauli::X); break;
    case GateKind::kY: detail::conj_pauli(p, q0, Pauli::Y); break;
    case GateKind::kZ: detail::conj_pauli(p, q0, Pauli::Z); break;
    case GateKind::kH: detail::conj_h(p, q0); break;
    case GateKind::kS: detail::conj_s(p, q0); break;
    case GateKind::kSdg: detail::conj_sdg(p, q0); break;
    case GateKind::kRx:
      for (int i = turns(); i > 0; --i) detail::conj_sqrt_x(p, q0);
      break;
    case GateKind::kRy:
      for (int i = turns(); i > 0; --i) detail::conj_sqrt_y(p, q0);
      break;
    case GateKind::kRz:
      for (int i = turns(); i > 0; --i) detail::conj_s(p, q0);
      break;
    case GateKind::kCX: detail::conj_cx(p, q0, q1); break;
    case GateKind::kCY:
      detail::conj_sdg(p, q1);
      detail::conj_cx(p, q0, q1);
      detail::conj_s(p, q1);
      break;
    case GateKind::kCZ:
      detail::conj_h(p, q1);
      detail::conj_cx(p, q0, q1);
      detail::conj_h(p, q1);
      break;
    case GateKind::kCRxPM:
      // (S ⊗ Rx(pi/2)) CX
      detail::conj_cx(p, q0, q1);
      detail::conj_s(p, q0);
      detail::conj_sqrt_x(p, q1);
      break;
  }
  return p;
}

inline std::string gate_to_string(const GateSpec& g) {
  std::string s(gate_name(g.kind));
  if (g.has_angle()) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "(%.17g)", g.angle);
    s += buf;
  }
  return s;
}

}  // namespace flagqec

#endif  // FLAGQEC_GATE_HPP_
