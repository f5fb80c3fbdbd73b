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

#ifndef FLAGQEC_TABLEAU_HPP_
#define FLAGQEC_TABLEAU_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagqec/gate.hpp"
#include "flagqec/pauli.hpp"

namespace flagqec {

/// Single-qubit preparation labels |0>, |1>, |+>, |->, |i>, |-i>.
enum class BasisLabel { kZero, kOne, kPlus, kMinus, kPlusI, kMinusI };

inline std::string_view basis_label_name(BasisLabel b) {
  switch (b) {
    case BasisLabel::kZero: return "0";
    case BasisLabel::kOne: return "1";
    case BasisLabel::kPlus: return "+";
    case BasisLabel::kMinus: return "-";
    case BasisLabel::kPlusI: return "+i";
    case BasisLabel::kMinusI: return "-i";
  }
  return "?";
}

inline BasisLabel basis_label_from_name(std::string_view s) {
  if (s == "0") return BasisLabel::kZero;
  if (s == "1") return BasisLabel::kOne;
  if (s == "+") return BasisLabel::kPlus;
  if (s == "-") return BasisLabel::kMinus;
  if (s == "+i" || s == "i") return BasisLabel::kPlusI;
  if (s == "-i") return BasisLabel::kMinusI;
  throw std::invalid_argument("unknown basis label: " + std::string(s));
}

/// The signed single-qubit Pauli stabilizing a basis label.
inline PauliString basis_label_stabilizer(std::size_t n, std::size_t q,
                                          BasisLabel b) {
  switch (b) {
    case BasisLabel::kZero: return PauliString::single(n, q, Pauli::Z);
    case BasisLabel::kOne: return -PauliString::single(n, q, Pauli::Z);
    case BasisLabel::kPlus: return PauliString::single(n, q, Pauli::X);
    case BasisLabel::kMinus: return -PauliString::single(n, q, Pauli::X);
    case BasisLabel::kPlusI: return PauliString::single(n, q, Pauli::Y);
    case BasisLabel::kMinusI: return -PauliString::single(n, q, Pauli::Y);
  }
  throw std::invalid_argument("unknown basis label");
}

struct MeasureResult {
  int outcome = +1;  // +1 or -1
  bool deterministic = true;
  double probability = 1.0;  // Born probability of the returned outcome
};

/// Thrown when a forced outcome contradicts a deterministic measurement, or
/// (dense backend) selects a zero-probability branch.
class ImpossibleBranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pure stabilizer state in destabilizer/stabilizer tableau form.
/// Rows [0, n) are destabilizers, rows [n, 2n) stabilizers.
class StabilizerState {
 public:
  explicit StabilizerState(std::size_t n, std::uint64_t seed = 0)
      : n_(n), seed_(seed), rng_(seed) {
    if (n == 0 || n > PauliString::kMaxQubits) {
      throw DimensionError("StabilizerState: qubit count must be in [1, 64]");
    }
    rows_.reserve(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      rows_.push_back(PauliString::single(n, q, Pauli::X));
    }
    for (std::size_t q = 0; q < n; ++q) {
      rows_.push_back(PauliString::single(n, q, Pauli::Z));
    }
  }

  static StabilizerState product(std::span<const BasisLabel> labels,
                                 std::uint64_t seed = 0) {
    StabilizerState s(labels.size(), seed);
    for (std::size_t q = 0; q < labels.size(); ++q) {
      s.rotate_from_zero(static_cast<int>(q), labels[q]);
    }
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  void reseed(std::uint64_t seed) {
    seed_ = seed;
    rng_.seed(seed);
  }

  std::span<const PauliString> destabilizers() const {
    return {rows_.data(), n_};
  }
  std::span<const PauliString> stabilizers() const {
    return {rows_.data() + n_, n_};
  }

  void apply(const GateSpec& g) {
    for (auto& r : rows_) r = conjugate_by_gate(r, g);
  }

  /// Applies a Pauli operator (e.g. an injected fault) to the state.
  void apply_pauli(const PauliString& p) {
    check(p);
    for (auto& r : rows_) {
      if (!r.commutes(p)) r = -r;
    }
  }

  bool is_deterministic(const PauliString& p) const {
    check(p);
    for (std::size_t i = n_; i < 2 * n_; ++i) {
      if (!rows_[i].commutes(p)) return false;
    }
    return true;
  }

  /// +1 / -1 when ±p is in the stabilizer group, 0 otherwise.
  int expectation(const PauliString& p) const {
    check_hermitian(p);
    if (!is_deterministic(p)) return 0;
    return deterministic_value(p);
  }

  /// Projective measurement of a Hermitian Pauli. `forced` selects the branch
  /// for random outcomes; for deterministic outcomes it must agree.
  MeasureResult measure(const PauliString& p,
                        std::optional<int> forced = std::nullopt) {
    check_hermitian(p);
    std::size_t pivot = 2 * n_;
    for (std::size_t i = n_; i < 2 * n_; ++i) {
      if (!rows_[i].commutes(p)) {
        pivot = i;
        break;
      }
    }
    if (pivot == 2 * n_) {
      int v = deterministic_value(p);
      if (forced && *forced != v) {
        throw ImpossibleBranchError("forced outcome " + std::to_string(*forced) +
                                    " contradicts deterministic outcome of " +
                                    p.str());
      }
      return {v, true, 1.0};
    }
    int outcome;
    if (forced) {
      if (*forced != 1 && *forced != -1) {
        throw std::invalid_argument("forced outcome must be +1 or -1");
      }
      outcome = *forced;
    } else {
      outcome = std::bernoulli_distribution(0.5)(rng_) ? -1 : +1;
    }
    const PauliString pivot_row = rows_[pivot];
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      if (i == pivot || i == pivot - n_) continue;
      if (!rows_[i].commutes(p)) rows_[i] = rows_[i] * pivot_row;
    }
    rows_[pivot - n_] = pivot_row;
    PauliString row = p.with_phase(p.phase());
    rows_[pivot] = outcome == +1 ? row : -row;
    return {outcome, false, 0.5};
  }

  /// Resets qubit q to the given basis label (discarding its previous state).
  void reset(int q, BasisLabel label = BasisLabel::kZero) {
    PauliString z = PauliString::single(n_, static_cast<std::size_t>(q), Pauli::Z);
    int v = is_deterministic(z) ? deterministic_value(z) : measure(z, +1).outcome;
    if (v == -1) apply(GateSpec::one(GateKind::kX, q));
    rotate_from_zero(q, label);
  }

  /// Relabels qubits: qubit j moves to position perm[j].
  template <class Perm>
  void permute(const Perm& perm) {
    for (auto& r : rows_) r = permuted(r, perm);
  }

  /// Stabilizer rows as signed Pauli strings, one per line.
  std::string dump() const {
    std::ostringstream os;
    for (std::size_t i = n_; i < 2 * n_; ++i) os << rows_[i].str() << '\n';
    return os.str();
  }

 private:
  void check(const PauliString& p) const {
    if (p.size() != n_) {
      throw DimensionError("Pauli size " + std::to_string(p.size()) +
                           " does not match register of " + std::to_string(n_));
    }
  }
  void check_hermitian(const PauliString& p) const {
    check(p);
    if (!p.is_hermitian()) {
      throw std::invalid_argument("measured Pauli must have phase ±1: " + p.str());
    }
  }

  // Assumes p commutes with every stabilizer.
  int deterministic_value(const PauliString& p) const {
    PauliString acc(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!rows_[i].commutes(p)) acc *= rows_[n_ + i];
    }
    if (!acc.equal_up_to_phase(p)) {
      throw std::logic_error("tableau invariant violated in measurement");
    }
    return acc.phase() == p.phase() ? +1 : -1;
  }

  void rotate_from_zero(int q, BasisLabel label) {
    switch (label) {
      case BasisLabel::kZero: break;
      case BasisLabel::kOne: apply(GateSpec::one(GateKind::kX, q)); break;
      case BasisLabel::kPlus: apply(GateSpec::one(GateKind::kH, q)); break;
      case BasisLabel::kMinus:
        apply(GateSpec::one(GateKind::kX, q));
        apply(GateSpec::one(GateKind::kH, q));
        break;
      case BasisLabel::kPlusI:
        apply(GateSpec::one(GateKind::kH, q));
        apply(GateSpec::one(GateKind::kS, q));
        break;
      case BasisLabel::kMinusI:
        apply(GateSpec::one(GateKind::kX, q));
        apply(GateSpec::one(GateKind::kH, q));
        apply(GateSpec::one(GateKind::kS, q));
        break;
    }
  }

  std::size_t n_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<PauliString> rows_;
};

}  // namespace flagqec

#endif  // FLAGQEC_TABLEAU_HPP_
