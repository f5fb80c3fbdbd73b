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

#ifndef FLAGQEC_COMPILE_HPP_
#define FLAGQEC_COMPILE_HPP_

#include <numbers>
#include <stdexcept>
#include <vector>

#include "flagqec/circuit.hpp"
#include "flagqec/dense.hpp"
#include "flagqec/gate.hpp"

namespace flagqec {

/// Lowers a circuit to the native set {CRX_PM, RX, RY, RZ}. Controlled gates
/// become CRX_PM plus target rotations; the S^dagger each one leaves on its
/// control is deferred (it commutes with further control use) and emitted
/// as one RZ(-k pi/2) before the qubit's next non-control operation or the
/// next measurement, preparation or conditional gate; for an ancilla this is
/// the readout phase. Conditional gates keep their
/// condition. Equality is up to global phase.
inline Circuit compile_to_native(const Circuit& c) {
  constexpr double kPi = std::numbers::pi;
  Circuit out(c.num_qubits(), c.name() + "_native", c.roles());
  out.set_description(c.description());
  std::vector<int> pending(c.num_qubits(), 0);

  auto flush = [&](int q, const std::string& tag) {
    int k = pending[q] % 4;
    pending[q] = 0;
    if (k) out.gate(GateSpec::one(GateKind::kRz, q, -k * kPi / 2), tag.empty() ? "phase" : tag);
  };
  auto flush_all = [&](int measured) {
    for (int q = 0; q < static_cast<int>(c.num_qubits()); ++q) {
      flush(q, q == measured ? "readout-phase" : "");
    }
  };
  auto rot = [&](GateKind k, int q, double angle, const Location& l) {
    out.gate(GateSpec::one(k, q, angle), l.tag, l.condition);
  };

  for (const auto& l : c.locations()) {
    switch (l.kind) {
      case LocKind::kPrepare:
        flush_all(-1);
        out.prepare(l.qubits[0], l.prep, l.tag);
        break;
      case LocKind::kIdle:
        out.idle(l.qubits[0], l.tag);
        break;
      case LocKind::kMeasureReset:
        flush_all(l.qubits[0]);
        out.measure_reset(l.qubits[0], l.basis, l.label, l.tag);
        break;
      case LocKind::kGate1: {
        const int q = l.qubits[0];
        if (l.condition) {
          flush_all(-1);
        } else {
          flush(q, {});
        }
        switch (l.gate.kind) {
          case GateKind::kI: out.idle(q, l.tag); break;
          case GateKind::kX: rot(GateKind::kRx, q, kPi, l); break;
          case GateKind::kY: rot(GateKind::kRy, q, kPi, l); break;
          case GateKind::kZ: rot(GateKind::kRz, q, kPi, l); break;
          case GateKind::kS: rot(GateKind::kRz, q, kPi / 2, l); break;
          case GateKind::kSdg: rot(GateKind::kRz, q, -kPi / 2, l); break;
          case GateKind::kH:  // H ∝ Ry(pi/2) Rz(pi)
            rot(GateKind::kRz, q, kPi, l);
            rot(GateKind::kRy, q, kPi / 2, l);
            break;
          case GateKind::kRx:
          case GateKind::kRy:
          case GateKind::kRz: out.gate(l.gate, l.tag, l.condition); break;
          default: throw std::invalid_argument("compile_to_native: unsupported gate");
        }
        break;
      }
      case LocKind::kGate2: {
        if (l.condition) throw std::invalid_argument("compile_to_native: conditional two-qubit gate");
        const int ctl = l.qubits[0], tgt = l.qubits[1];
        flush(tgt, {});
        auto crx = [&]() { out.gate(GateSpec::two(GateKind::kCRxPM, ctl, tgt), l.tag); };
        switch (l.gate.kind) {
          case GateKind::kCX:  // CX ∝ (S^dag ⊗ Rx(-pi/2)) CRX_PM
            crx();
            out.gate(GateSpec::one(GateKind::kRx, tgt, -kPi / 2), l.tag);
            ++pending[ctl];
            break;
          case GateKind::kCY:  // CRY_PM = Rz(pi/2) CRX_PM Rz(-pi/2) on the target
            out.gate(GateSpec::one(GateKind::kRz, tgt, -kPi / 2), l.tag);
            crx();
            out.gate(GateSpec::one(GateKind::kRz, tgt, kPi / 2), l.tag);
            out.gate(GateSpec::one(GateKind::kRy, tgt, -kPi / 2), l.tag);
            ++pending[ctl];
            break;
          case GateKind::kCZ:  // H_t CX H_t
            out.gate(GateSpec::one(GateKind::kRz, tgt, kPi), l.tag);
            out.gate(GateSpec::one(GateKind::kRy, tgt, kPi / 2), l.tag);
            crx();
            out.gate(GateSpec::one(GateKind::kRx, tgt, -kPi / 2), l.tag);
            out.gate(GateSpec::one(GateKind::kRz, tgt, kPi), l.tag);
            out.gate(GateSpec::one(GateKind::kRy, tgt, kPi / 2), l.tag);
            ++pending[ctl];
            break;
          case GateKind::kCRxPM:
            crx();
            break;
          default: throw std::invalid_argument("compile_to_native: unsupported gate");
        }
        break;
      }
    }
  }
  for (int q = 0; q < static_cast<int>(c.num_qubits()); ++q) flush(q, {});
  return out;
}

/// Maximal runs of unconditional gates, as gate lists.
inline std::vector<std::vector<GateSpec>> gate_segments(const Circuit& c) {
  std::vector<std::vector<GateSpec>> out(1);
  for (const auto& l : c.locations()) {
    bool plain_gate = (l.kind == LocKind::kGate1 || l.kind == LocKind::kGate2) && !l.condition;
    if (plain_gate) {
      out.back().push_back(l.gate);
    } else if (l.kind != LocKind::kIdle && !out.back().empty()) {
      out.emplace_back();
    }
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

/// Unitary of a measurement-free circuit.
inline Matrix unitary_of_circuit(const Circuit& c) {
  std::vector<GateSpec> gates;
  for (const auto& l : c.locations()) {
    if (l.kind == LocKind::kIdle) continue;
    if (l.kind != LocKind::kGate1 && l.kind != LocKind::kGate2) {
      throw std::invalid_argument("unitary_of_circuit: circuit contains preparations or measurements");
    }
    if (l.condition) throw std::invalid_argument("unitary_of_circuit: conditional gate");
    gates.push_back(l.gate);
  }
  return unitary_of_gates(c.num_qubits(), gates);
}

struct EquivalenceReport {
  bool equivalent = true;
  std::size_t segments = 0;
  double max_distance = 0.0;
};

/// Compares source and compiled segment by segment: same number of
/// measurement-free segments, each equal up to global phase within `tol`.
inline EquivalenceReport check_compiled(const Circuit& source, const Circuit& compiled, double tol = 1e-10) {
  auto a = gate_segments(source);
  auto b = gate_segments(compiled);
  EquivalenceReport r;
  r.segments = a.size();
  if (a.size() != b.size()) {
    r.equivalent = false;
    r.max_distance = 1.0;
    return r;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = distance_up_to_global_phase(unitary_of_gates(source.num_qubits(), a[i]),
                                           unitary_of_gates(compiled.num_qubits(), b[i]));
    r.max_distance = std::max(r.max_distance, d);
  }
  r.equivalent = r.max_distance <= tol;
  return r;
}

}  // namespace flagqec

#endif  // FLAGQEC_COMPILE_HPP_
