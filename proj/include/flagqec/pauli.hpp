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

#ifndef FLAGQEC_PAULI_HPP_
#define FLAGQEC_PAULI_HPP_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flagqec {

/// Thrown when two operands live on registers of different size.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case '_': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

/// Phase-tracked Pauli operator  i^phase * P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}
/// with Hermitian letters (Y = iXZ). Qubit 0 is the leftmost letter.
///
/// Bits are packed into one 64-bit word per component so commutation and
/// multiplication are a handful of word operations.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t n) : n_(n) {
    if (n > kMaxQubits) {
      throw DimensionError("PauliString supports at most 64 qubits");
    }
  }

  /// Parses "XXYIY", "+XXYIY", "-IZXZI", "+iZ", "-iXX".
  static PauliString parse(std::string_view text) {
    unsigned phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      phase = text[pos] == '-' ? 2 : 0;
      ++pos;
      if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        ++pos;
      }
    }
    std::string_view letters = text.substr(pos);
    PauliString out(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q) {
      out.set(q, pauli_from_char(letters[q]));
    }
    out.phase_ = phase & 3u;
    return out;
  }

  static PauliString single(std::size_t n, std::size_t q, Pauli p) {
    PauliString out(n);
    out.set(q, p);
    return out;
  }

  std::size_t size() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  /// Exponent k of the global factor i^k.
  unsigned phase() const { return phase_; }
  bool is_hermitian() const { return (phase_ & 1u) == 0; }

  Pauli get(std::size_t q) const {
    check_index(q);
    bool x = (x_ >> q) & 1u;
    bool z = (z_ >> q) & 1u;
    if (x && z) return Pauli::Y;
    if (x) return Pauli::X;
    if (z) return Pauli::Z;
    return Pauli::I;
  }

  void set(std::size_t q, Pauli p) {
    check_index(q);
    std::uint64_t bit = std::uint64_t{1} << q;
    x_ &= ~bit;
    z_ &= ~bit;
    if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
    if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
  }

  void set_phase(unsigned k) { phase_ = k & 3u; }
  PauliString with_phase(unsigned k) const {
    PauliString out = *this;
    out.phase_ = k & 3u;
    return out;
  }
  PauliString unsigned_copy() const { return with_phase(0); }
  PauliString operator-() const { return with_phase(phase_ + 2); }

  std::size_t weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }
  std::uint64_t support() const { return x_ | z_; }

  bool commutes(const PauliString& other) const {
    check_same(other);
    std::uint64_t anti = (x_ & other.z_) ^ (z_ & other.x_);
    return (std::popcount(anti) & 1) == 0;
  }

  /// Matrix product this * other with exact phase.
  PauliString operator*(const PauliString& other) const {
    check_same(other);
    PauliString out(n_);
    out.x_ = x_ ^ other.x_;
    out.z_ = z_ ^ other.z_;
    out.phase_ = (phase_ + other.phase_ + letter_product_phase(other)) & 3u;
    return out;
  }
  PauliString& operator*=(const PauliString& other) {
    *this = *this * other;
    return *this;
  }

  bool operator==(const PauliString& other) const = default;

  bool equal_up_to_phase(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  /// Letters with a sign prefix: "+XXYIY", "-iZ".
  std::string str() const {
    static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
    return kPrefix[phase_] + letters();
  }

  std::string letters() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_char(get(q));
    return s;
  }

  /// Sub-operator on a contiguous leading block of qubits [0, m).
  PauliString truncated(std::size_t m) const {
    if (m > n_) throw DimensionError("truncated: larger than register");
    PauliString out(m);
    std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    out.x_ = x_ & mask;
    out.z_ = z_ & mask;
    out.phase_ = phase_;
    return out;
  }

  /// Embeds into a register of size m >= n (extra qubits are identity).
  PauliString extended(std::size_t m) const {
    if (m < n_) throw DimensionError("extended: smaller than register");
    PauliString out(m);
    out.x_ = x_;
    out.z_ = z_;
    out.phase_ = phase_;
    return out;
  }

  // Raw mutation used by the Clifford conjugation rules.
  void set_bits(std::uint64_t x, std::uint64_t z) {
    x_ = x;
    z_ = z;
  }

 private:
  void check_index(std::size_t q) const {
    if (q >= n_) throw std::out_of_range("qubit index out of range");
  }
  void check_same(const PauliString& other) const {
    if (n_ != other.n_) {
      throw DimensionError("Pauli strings have different lengths: " +
                           std::to_string(n_) + " vs " +
                           std::to_string(other.n_));
    }
  }

  // Sum over qubits of the phase exponent in P_j Q_j = i^g R_j.
  unsigned letter_product_phase(const PauliString& o) const {
    std::uint64_t x1 = x_, z1 = z_, x2 = o.x_, z2 = o.z_;
    // +i for XY, YZ, ZX; -i for YX, ZY, XZ.
    std::uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) |
                         (~x1 & z1 & x2 & ~z2);
    std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) |
                          (x1 & ~z1 & ~x2 & z2);
    int g = std::popcount(plus) - std::popcount(minus);
    return static_cast<unsigned>(((g % 4) + 4) % 4);
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  unsigned phase_ = 0;
};

inline PauliString multiply(const PauliString& a, const PauliString& b) {
  return a * b;
}
inline bool commutes(const PauliString& a, const PauliString& b) {
  return a.commutes(b);
}
inline std::size_t weight(const PauliString& a) { return a.weight(); }

/// Qubit relabelling: qubit j of `p` moves to position perm[j].
/// Compact 1-based notation without sign: "Z4", "X1Z2", "I" for identity.
inline std::string compact_name(const PauliString& p) {
  std::string out;
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (p.get(q) != Pauli::I) out += pauli_char(p.get(q)) + std::to_string(q + 1);
  }
  return out.empty() ? "I" : out;
}

template <class Perm>
PauliString permuted(const PauliString& p, const Perm& perm) {
  PauliString out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    out.set(static_cast<std::size_t>(perm[j]), p.get(j));
  }
  out.set_phase(p.phase());
  return out;
}

}  // namespace flagqec

#endif  // FLAGQEC_PAULI_HPP_
