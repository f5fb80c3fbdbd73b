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

#ifndef FLAGQEC_FAULT_HPP_
#define FLAGQEC_FAULT_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagqec/circuit.hpp"
#include "flagqec/gate.hpp"
#include "flagqec/pauli.hpp"

namespace flagqec {

/// A Pauli error inserted right after a location, or a flipped outcome at a
/// measurement location. `error` acts on the location's qubits in order.
struct Fault {
  std::size_t location = 0;
  PauliString error;
  bool flip = false;

  static Fault pauli(std::size_t loc, PauliString e) {
    if (e.is_identity()) throw std::invalid_argument("identity fault");
    return Fault{loc, e.unsigned_copy(), false};
  }
  static Fault outcome_flip(std::size_t loc) { return Fault{loc, PauliString(), true}; }

  /// The error embedded into the full register.
  PauliString on_register(const Location& l, std::size_t n) const {
    if (flip) return PauliString(n);
    if (error.size() != l.qubits.size()) {
      throw DimensionError("fault arity does not match location");
    }
    PauliString out(n);
    for (std::size_t k = 0; k < l.qubits.size(); ++k) {
      out.set(static_cast<std::size_t>(l.qubits[k]), error.get(k));
    }
    return out;
  }

  bool operator==(const Fault&) const = default;
};

inline std::string fault_to_string(const Fault& f) {
  if (f.flip) return "L" + std::to_string(f.location) + ":flip";
  return "L" + std::to_string(f.location) + ":" + f.error.letters();
}

/// All non-identity Paulis on k qubits in lexicographic letter order.
inline std::vector<PauliString> nontrivial_paulis(std::size_t k) {
  std::vector<PauliString> out;
  std::size_t total = std::size_t{1} << (2 * k);
  for (std::size_t code = 1; code < total; ++code) {
    PauliString p(k);
    for (std::size_t q = 0; q < k; ++q) {
      std::size_t letter = (code >> (2 * (k - 1 - q))) & 3u;
      p.set(q, static_cast<Pauli>(letter));
    }
    out.push_back(p);
  }
  return out;
}

/// 15 faults per two-qubit gate, 3 per one-qubit location, 1 flip per measurement.
inline std::vector<Fault> enumerate_faults(const Circuit& c) {
  std::vector<Fault> out;
  for (const auto& l : c.locations()) {
    if (l.kind == LocKind::kMeasureReset) {
      out.push_back(Fault::outcome_flip(l.index));
      continue;
    }
    for (const auto& e : nontrivial_paulis(l.qubits.size())) {
      out.push_back(Fault::pauli(l.index, e));
    }
  }
  return out;
}

/// Result of pushing a fault through the rest of a circuit as a Pauli frame.
struct Propagation {
  PauliString frame;                 // net Pauli on the register at the end
  std::set<std::string> flipped;     // measurement labels whose record flips
};

/// Propagates the fault (and any conditional gates it toggles) to the end of
/// the circuit. Reset qubits drop their frame component.
inline Propagation propagate_fault(const Circuit& c, const Fault& f) {
  const std::size_t n = c.num_qubits();
  if (f.location >= c.size()) throw std::out_of_range("fault location out of range");
  Propagation out{PauliString(n), {}};
  const Location& at = c[f.location];
  if (f.flip) {
    if (at.kind != LocKind::kMeasureReset) {
      throw std::invalid_argument("outcome flip on a non-measurement location");
    }
    out.flipped.insert(at.label);
  } else {
    out.frame = f.on_register(at, n);
  }
  for (std::size_t i = f.location + 1; i < c.size(); ++i) {
    const Location& l = c[i];
    switch (l.kind) {
      case LocKind::kPrepare: {
        out.frame.set(static_cast<std::size_t>(l.qubits[0]), Pauli::I);
        break;
      }
      case LocKind::kGate1:
      case LocKind::kGate2: {
        if (l.condition) {
          if (l.gate.arity() != 1 || l.gate.kind < GateKind::kX || l.gate.kind > GateKind::kZ) {
            throw std::invalid_argument("conditional gates must be single-qubit Paulis");
          }
          // The gate fires in exactly one of the faulty / fault-free runs.
          if (out.flipped.count(l.condition->label)) {
            Pauli p = l.gate.kind == GateKind::kX   ? Pauli::X
                      : l.gate.kind == GateKind::kY ? Pauli::Y
                                                    : Pauli::Z;
            out.frame *= PauliString::single(n, static_cast<std::size_t>(l.qubits[0]), p);
            out.frame = out.frame.unsigned_copy();
          }
          break;
        }
        out.frame = conjugate_by_gate(out.frame, l.gate).unsigned_copy();
        break;
      }
      case LocKind::kMeasureReset: {
        std::size_t q = static_cast<std::size_t>(l.qubits[0]);
        PauliString b = PauliString::single(n, q, l.basis);
        if (!out.frame.commutes(b)) {
          if (out.flipped.count(l.label)) {
            out.flipped.erase(l.label);
          } else {
            out.flipped.insert(l.label);
          }
        }
        out.frame.set(q, Pauli::I);
        break;
      }
      case LocKind::kIdle: break;
    }
  }
  return out;
}

}  // namespace flagqec

#endif  // FLAGQEC_FAULT_HPP_
