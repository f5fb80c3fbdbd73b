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

#ifndef FLAGQEC_DENSE_HPP_
#define FLAGQEC_DENSE_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "flagqec/gate.hpp"
#include "flagqec/pauli.hpp"
#include "flagqec/tableau.hpp"

namespace flagqec {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major

/// Row-major square complex matrix.
struct Matrix {
  std::size_t dim = 0;
  std::vector<cplx> a;

  explicit Matrix(std::size_t d = 0) : dim(d), a(d * d) {}
  static Matrix identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
  cplx& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix operator*(const Matrix& l, const Matrix& r) {
  if (l.dim != r.dim) throw DimensionError("matrix dimensions differ");
  Matrix out(l.dim);
  for (std::size_t i = 0; i < l.dim; ++i) {
    for (std::size_t k = 0; k < l.dim; ++k) {
      cplx v = l(i, k);
      if (v == cplx{}) continue;
      for (std::size_t j = 0; j < l.dim; ++j) out(i, j) += v * r(k, j);
    }
  }
  return out;
}

/// max |a - e^{i phi} b| after aligning phases on the largest entry of b.
inline double distance_up_to_global_phase(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw DimensionError("matrix dimensions differ");
  std::size_t k = 0;
  for (std::size_t i = 1; i < b.a.size(); ++i) {
    if (std::abs(b.a[i]) > std::abs(b.a[k])) k = i;
  }
  if (std::abs(a.a[k]) < 1e-12) return std::abs(b.a[k]);
  cplx ph = a.a[k] / b.a[k];
  ph /= std::abs(ph);
  double d = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    d = std::max(d, std::abs(a.a[i] - ph * b.a[i]));
  }
  return d;
}

namespace detail {

inline Mat2 rx(double t) {
  double c = std::cos(t / 2), s = std::sin(t / 2);
  return {cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0)};
}
inline Mat2 ry(double t) {
  double c = std::cos(t / 2), s = std::sin(t / 2);
  return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
}
inline Mat2 rz(double t) {
  return {std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2)};
}

inline Mat2 pauli_matrix(Pauli p) {
  const cplx i(0, 1);
  switch (p) {
    case Pauli::I: return {1.0, 0.0, 0.0, 1.0};
    case Pauli::X: return {0.0, 1.0, 1.0, 0.0};
    case Pauli::Y: return {0.0, -i, i, 0.0};
    case Pauli::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

}  // namespace detail

/// 2x2 matrix of a single-qubit gate.
inline Mat2 single_qubit_matrix(const GateSpec& g) {
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i(0, 1);
  switch (g.kind) {
    case GateKind::kI: return detail::pauli_matrix(Pauli::I);
    case GateKind::kX: return detail::pauli_matrix(Pauli::X);
    case GateKind::kY: return detail::pauli_matrix(Pauli::Y);
    case GateKind::kZ: return detail::pauli_matrix(Pauli::Z);
    case GateKind::kH: return {r, r, r, -r};
    case GateKind::kS: return {1.0, 0.0, 0.0, i};
    case GateKind::kSdg: return {1.0, 0.0, 0.0, -i};
    case GateKind::kRx: return detail::rx(g.angle);
    case GateKind::kRy: return detail::ry(g.angle);
    case GateKind::kRz: return detail::rz(g.angle);
    default: break;
  }
  throw std::invalid_argument("single_qubit_matrix: two-qubit gate");
}

/// Target matrices (control=0, control=1) of a two-qubit controlled gate.
inline std::pair<Mat2, Mat2> controlled_blocks(const GateSpec& g) {
  const Mat2 id = detail::pauli_matrix(Pauli::I);
  switch (g.kind) {
    case GateKind::kCX: return {id, detail::pauli_matrix(Pauli::X)};
    case GateKind::kCY: return {id, detail::pauli_matrix(Pauli::Y)};
    case GateKind::kCZ: return {id, detail::pauli_matrix(Pauli::Z)};
    case GateKind::kCRxPM:
      return {detail::rx(std::numbers::pi / 2), detail::rx(-std::numbers::pi / 2)};
    default: break;
  }
  throw std::invalid_argument("controlled_blocks: not a two-qubit gate");
}

/// State vector on n <= 12 qubits. Qubit q is bit q of the basis index.
class DenseState {
 public:
  static constexpr std::size_t kMaxQubits = 12;

  explicit DenseState(std::size_t n, std::uint64_t seed = 0)
      : n_(n), rng_(seed), amp_(std::size_t{1} << check_n(n)) {
    amp_[0] = 1.0;
  }

  static DenseState product(std::span<const BasisLabel> labels,
                            std::uint64_t seed = 0) {
    DenseState s(labels.size(), seed);
    for (std::size_t q = 0; q < labels.size(); ++q) {
      s.rotate_from_zero(static_cast<int>(q), labels[q]);
    }
    return s;
  }

  static DenseState from_amplitudes(std::vector<cplx> amp, std::uint64_t seed = 0) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amp.size()) ++n;
    if ((std::size_t{1} << n) != amp.size()) {
      throw DimensionError("amplitude count must be a power of two");
    }
    DenseState s(n, seed);
    s.amp_ = std::move(amp);
    s.normalize();
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  void reseed(std::uint64_t seed) { rng_.seed(seed); }

  void apply_matrix(const Mat2& m, int q) {
    check_qubit(q);
    std::size_t b = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & b) continue;
      cplx a0 = amp_[i], a1 = amp_[i | b];
      amp_[i] = m[0] * a0 + m[1] * a1;
      amp_[i | b] = m[2] * a0 + m[3] * a1;
    }
  }

  void apply_controlled(const Mat2& m0, const Mat2& m1, int c, int t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw std::invalid_argument("control equals target");
    std::size_t bc = std::size_t{1} << c, bt = std::size_t{1} << t;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & bt) continue;
      const Mat2& m = (i & bc) ? m1 : m0;
      cplx a0 = amp_[i], a1 = amp_[i | bt];
      amp_[i] = m[0] * a0 + m[1] * a1;
      amp_[i | bt] = m[2] * a0 + m[3] * a1;
    }
  }

  void apply(const GateSpec& g) {
    if (g.arity() == 2) {
      auto [m0, m1] = controlled_blocks(g);
      apply_controlled(m0, m1, g.qubits[0], g.qubits[1]);
    } else {
      apply_matrix(single_qubit_matrix(g), g.qubits[0]);
    }
  }

  /// psi <- P psi, including the phase of P.
  void apply_pauli(const PauliString& p) {
    check(p);
    amp_ = pauli_times(p);
  }

  /// <psi| P |psi>, real for Hermitian P.
  cplx expectation_complex(const PauliString& p) const {
    check(p);
    std::vector<cplx> v = pauli_times(p);
    cplx s = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * v[i];
    return s;
  }
  double expectation(const PauliString& p) const {
    return expectation_complex(p).real();
  }

  /// Projective measurement of Hermitian p. Forcing a zero-probability
  /// branch raises ImpossibleBranchError.
  MeasureResult measure(const PauliString& p, std::optional<int> forced = std::nullopt) {
    check(p);
    if (!p.is_hermitian()) {
      throw std::invalid_argument("measured Pauli must have phase ±1: " + p.str());
    }
    double e = std::clamp(expectation(p), -1.0, 1.0);
    double p_plus = (1.0 + e) / 2.0;
    int outcome;
    if (forced) {
      if (*forced != 1 && *forced != -1) {
        throw std::invalid_argument("forced outcome must be +1 or -1");
      }
      outcome = *forced;
    } else {
      outcome = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p_plus ? +1 : -1;
    }
    double prob = outcome == +1 ? p_plus : 1.0 - p_plus;
    if (prob < kZeroProbability) {
      throw ImpossibleBranchError("branch " + std::to_string(outcome) + " of " +
                                  p.str() + " has zero probability");
    }
    std::vector<cplx> v = pauli_times(p);
    double sgn = outcome;
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] = (amp_[i] + sgn * v[i]) / 2.0;
    normalize();
    bool det = prob > 1.0 - kZeroProbability;
    return {outcome, det, prob};
  }

  void reset(int q, BasisLabel label = BasisLabel::kZero) {
    PauliString z = PauliString::single(n_, static_cast<std::size_t>(q), Pauli::Z);
    double e = expectation(z);
    int v = (1.0 + e) / 2.0 >= kZeroProbability ? +1 : -1;
    measure(z, v);
    if (v == -1) apply(GateSpec::one(GateKind::kX, q));
    rotate_from_zero(q, label);
  }

  /// Relabels qubits: qubit j moves to position perm[j].
  template <class Perm>
  void permute(const Perm& perm) {
    std::vector<cplx> out(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if ((i >> j) & 1u) k |= std::size_t{1} << perm[j];
      }
      out[k] = amp_[i];
    }
    amp_ = std::move(out);
  }

  static constexpr double kZeroProbability = 1e-12;

 private:
  static std::size_t check_n(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
      throw DimensionError("DenseState supports 1..12 qubits");
    }
    return n;
  }
  void check_qubit(int q) const {
    if (q < 0 || static_cast<std::size_t>(q) >= n_) {
      throw std::out_of_range("qubit index out of range");
    }
  }
  void check(const PauliString& p) const {
    if (p.size() != n_) throw DimensionError("Pauli size does not match register");
  }

  std::vector<cplx> pauli_times(const PauliString& p) const {
    // X^x Z^z per qubit with Y = i X Z.
    static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::uint64_t x = p.x_bits(), z = p.z_bits();
    unsigned k = (p.phase() + std::popcount(x & z)) & 3u;
    std::vector<cplx> out(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      cplx v = kI[k] * amp_[i];
      if (std::popcount(z & i) & 1) v = -v;
      out[i ^ x] = v;
    }
    return out;
  }

  void normalize() {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    if (s <= 0.0) throw std::runtime_error("zero state vector");
    double r = 1.0 / std::sqrt(s);
    for (auto& a : amp_) a *= r;
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
  std::mt19937_64 rng_;
  std::vector<cplx> amp_;
};

inline cplx inner_product(const DenseState& a, const DenseState& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("register sizes differ");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return s;
}

/// |<a|b>|^2 for pure states.
inline double state_fidelity(const DenseState& a, const DenseState& b) {
  return std::norm(inner_product(a, b));
}

/// Full 2^n x 2^n matrix of a Pauli string (column j is P|j>).
inline Matrix pauli_matrix(const PauliString& p) {
  std::size_t d = std::size_t{1} << p.size();
  Matrix m(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cplx> e(d);
    e[j] = 1.0;
    DenseState s = DenseState::from_amplitudes(std::move(e));
    s.apply_pauli(p);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = s.amplitudes()[i];
  }
  return m;
}

/// Unitary of a gate sequence on n qubits (column j is U|j>).
inline Matrix unitary_of_gates(std::size_t n, std::span<const GateSpec> gates) {
  if (n > 8) throw DimensionError("unitary_of_gates: at most 8 qubits");
  std::size_t d = std::size_t{1} << n;
  Matrix m(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cplx> e(d);
    e[j] = 1.0;
    DenseState s = DenseState::from_amplitudes(std::move(e));
    for (const auto& g : gates) s.apply(g);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = s.amplitudes()[i];
  }
  return m;
}

}  // namespace flagqec

#endif  // FLAGQEC_DENSE_HPP_
