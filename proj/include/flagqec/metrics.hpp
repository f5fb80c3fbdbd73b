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

#ifndef FLAGQEC_METRICS_HPP_
#define FLAGQEC_METRICS_HPP_

#include <array>
#include <bit>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagqec/code.hpp"
#include "flagqec/code_tables.hpp"
#include "flagqec/dense.hpp"
#include "flagqec/tableau.hpp"

namespace flagqec {

struct WeightedPauli {
  double coef;
  PauliString op;
};

/// F_L = 1/2 + 1/8 * sum of these 16 expectations.
inline const std::vector<WeightedPauli>& fidelity_terms() {
  static const std::vector<WeightedPauli> t = [] {
    std::vector<WeightedPauli> out;
    for (const char* s : {"IZXZI", "ZIIZX", "XZIIZ", "ZXZII", "IIZXZ", "YIXIY", "IYYIX", "XIYYI",
                          "IXIYY", "YYIXI", "ZZYXY", "YXYZZ", "ZYXYZ", "XYZZY", "YZZYX", "XXXXX"}) {
      out.push_back({1.0 / 8.0, PauliString::parse(s)});
    }
    return out;
  }();
  return t;
}

/// F_L^raised = 1/2 + 1/32 * weighted sum.
inline const std::vector<WeightedPauli>& fidelity_raised_terms() {
  static const std::vector<WeightedPauli> t = [] {
    const std::pair<int, const char*> raw[] = {
        {6, "IIZXZ"}, {6, "ZXZII"}, {6, "YYIXI"}, {-2, "ZIIZX"}, {6, "IXIYY"}, {2, "YZZYX"},
        {2, "XYZZY"}, {-2, "IZXZI"}, {2, "ZYXYZ"}, {6, "XIYYI"}, {2, "YXYZZ"}, {2, "ZZYXY"},
        {6, "IYYIX"}, {-2, "YIXIY"}, {2, "XXXXX"}, {-2, "XZIIZ"}};
    std::vector<WeightedPauli> out;
    for (const auto& [c, s] : raw) out.push_back({c / 32.0, PauliString::parse(s)});
    return out;
  }();
  return t;
}

/// Expectation of a 5-qubit data operator on a register whose first five
/// qubits are the data block.
template <class State>
double data_expectation(const State& s, const PauliString& p) {
  return static_cast<double>(s.expectation(p.extended(s.num_qubits())));
}

template <class State>
double evaluate_terms(const State& s, const std::vector<WeightedPauli>& terms) {
  double f = 0.5;
  for (const auto& t : terms) f += t.coef * data_expectation(s, t.op);
  return f;
}

/// Logical fidelity, term by term, target |->_L.
template <class State>
double logical_fidelity(const State& s) {
  return evaluate_terms(s, fidelity_terms());
}

/// Flag-raised fidelity, term by term.
template <class State>
double logical_fidelity_raised(const State& s) {
  return evaluate_terms(s, fidelity_raised_terms());
}

inline double combined_fidelity(double p_f, double f_raised, double f_not_raised) {
  return p_f * f_raised + (1.0 - p_f) * f_not_raised;
}

inline double fidelity_vs_pe(double pe, double f0, double f1) { return (1.0 - pe) * f0 + pe * f1; }

// ---------------------------------------------------------------------------
// Coset overlaps through the 32-element group generated by p_1..p_5.

/// Product of p_i over the set bits of `mask` (exact phase; Hermitian).
inline const std::array<PauliString, 32>& p_group() {
  static const std::array<PauliString, 32> g = [] {
    std::array<PauliString, 32> out;
    for (unsigned mask = 0; mask < 32; ++mask) {
      PauliString acc(5);
      for (int i = 0; i < 5; ++i) {
        if (mask >> i & 1u) acc *= FiveQubitCode::p_ops()[static_cast<std::size_t>(i)];
      }
      out[mask] = acc;
    }
    return out;
  }();
  return g;
}

/// The 32 expectations <g_mask>, computed once per state.
template <class State>
std::array<double, 32> p_group_expectations(const State& s) {
  std::array<double, 32> v{};
  for (unsigned mask = 0; mask < 32; ++mask) v[mask] = data_expectation(s, p_group()[mask]);
  return v;
}

/// Tr(E|alpha><alpha|E rho), alpha = -1 for |->_L and +1 for |+>_L.
inline double coset_overlap(const std::array<double, 32>& v, const PauliString& e, int alpha) {
  unsigned flips = 0;
  for (int i = 0; i < 5; ++i) {
    if (!e.commutes(FiveQubitCode::p_ops()[static_cast<std::size_t>(i)])) flips |= 1u << i;
  }
  double acc = 0.0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    int sign = (std::popcount(mask & flips) & 1) ? -1 : 1;
    if (alpha > 0 && (std::popcount(mask) & 1)) sign = -sign;
    acc += sign * v[mask];
  }
  return acc / 32.0;
}

struct OverlapDistribution {
  double p0_minus = 0, p1_minus = 0, p0_plus = 0, p1_plus = 0;
  double total() const { return p0_minus + p1_minus + p0_plus + p1_plus; }
};

/// P_{0,alpha} and P_{1,alpha}; P_1 sums the 15 non-identity single-qubit
/// errors so that the four numbers add up to one.
template <class State>
OverlapDistribution overlap_distribution(const State& s) {
  auto v = p_group_expectations(s);
  OverlapDistribution d;
  d.p0_minus = coset_overlap(v, PauliString(5), -1);
  d.p0_plus = coset_overlap(v, PauliString(5), +1);
  for (const auto& e : single_qubit_errors(false)) {
    d.p1_minus += coset_overlap(v, e, -1);
    d.p1_plus += coset_overlap(v, e, +1);
  }
  return d;
}

/// Sum over `errors` of Tr(E|->_L<-|_L E rho) via the group expectations.
template <class State>
double fidelity_over(const State& s, std::span<const PauliString> errors) {
  auto v = p_group_expectations(s);
  double f = 0.0;
  for (const auto& e : errors) f += coset_overlap(v, e, -1);
  return f;
}

/// The error set E' listed in the decoding tables.
inline std::vector<PauliString> e_prime_errors() {
  std::vector<PauliString> out;
  for (const char* s : reference::e_prime()) out.push_back(PauliString::parse(s));
  return out;
}

// ---------------------------------------------------------------------------
// Dense projector oracles.

/// E (prod_i (1 + alpha' p_i)/2) E as a 32x32 matrix, alpha = -1 for |->_L.
inline Matrix coset_projector(const PauliString& e, int alpha) {
  const std::size_t d = 32;
  Matrix proj = Matrix::identity(d);
  for (const auto& p : FiveQubitCode::p_ops()) {
    int m = e.commutes(p) ? 1 : -1;
    if (alpha > 0) m = -m;
    Matrix pm = pauli_matrix(p);
    Matrix factor(d);
    for (std::size_t i = 0; i < d * d; ++i) factor.a[i] = 0.5 * (static_cast<double>(m) * pm.a[i]);
    for (std::size_t i = 0; i < d; ++i) factor(i, i) += 0.5;
    proj = proj * factor;
  }
  return proj;
}

inline double projector_expectation(const Matrix& m, const DenseState& s) {
  const auto& a = s.amplitudes();
  cplx acc = 0.0;
  for (std::size_t r = 0; r < m.dim; ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < m.dim; ++c) row += m(r, c) * a[c];
    acc += std::conj(a[r]) * row;
  }
  return acc.real();
}

/// Direct projector sum over `errors` on a 5-qubit dense state.
inline double projector_sum_fidelity(const DenseState& s, std::span<const PauliString> errors) {
  if (s.num_qubits() != 5) throw DimensionError("projector oracle expects a 5-qubit state");
  Matrix sum(32);
  for (const auto& e : errors) {
    Matrix p = coset_projector(e, -1);
    for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += p.a[i];
  }
  return projector_expectation(sum, s);
}

/// Sum of the 32 coset projectors E|alpha><alpha|E (should be the identity).
inline Matrix coset_projector_sum() {
  Matrix sum(32);
  for (int alpha : {-1, +1}) {
    for (const auto& e : single_qubit_errors()) {
      Matrix p = coset_projector(e, alpha);
      for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += p.a[i];
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// GHZ and Monte Carlo estimators.

/// The 15 non-identity elements of <XXXX, ZZII, IZZI, IIZZ>.
inline std::vector<PauliString> ghz_operators() {
  const PauliString gens[4] = {PauliString::parse("XXXX"), PauliString::parse("ZZII"),
                               PauliString::parse("IZZI"), PauliString::parse("IIZZ")};
  std::vector<PauliString> out;
  for (unsigned mask = 1; mask < 16; ++mask) {
    PauliString acc(4);
    for (int k = 0; k < 4; ++k) {
      if (mask >> k & 1u) acc *= gens[k];
    }
    out.push_back(acc);
  }
  return out;
}

/// (1 + sum of the 15 expectations) / 16, on the first four qubits.
template <class State>
double ghz_fidelity(const State& s) {
  double acc = 1.0;
  for (const auto& o : ghz_operators()) acc += static_cast<double>(s.expectation(o.extended(s.num_qubits())));
  return acc / 16.0;
}

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

/// Mean and standard error of per-shot success indicators.
inline Estimate mc_fidelity(std::span<const bool> success) {
  Estimate e;
  e.n = success.size();
  if (e.n == 0) return e;
  std::size_t k = 0;
  for (bool b : success) k += b;
  e.value = static_cast<double>(k) / static_cast<double>(e.n);
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(e.n));
  return e;
}

enum class FidelityMode { kExactDense, kTableauExact, kMonteCarlo };

inline std::string_view fidelity_mode_name(FidelityMode m) {
  switch (m) {
    case FidelityMode::kExactDense: return "exact_dense";
    case FidelityMode::kTableauExact: return "tableau_exact";
    case FidelityMode::kMonteCarlo: return "mc_estimate";
  }
  return "?";
}

struct FidelityReport {
  double f_l = 0.0;
  double f_l_stderr = 0.0;
  double f_l_raised = 0.0;
  double f_l_not_raised = 0.0;
  double p_flag = 0.0;
  double f_l_flag_ignored = 0.0;  // E-table fidelity on every outcome (flag_s1 only)
  OverlapDistribution overlaps;
  FidelityMode mode = FidelityMode::kExactDense;
};

inline nlohmann::json to_json(const FidelityReport& r) {
  return {{"f_l", r.f_l},
          {"f_l_stderr", r.f_l_stderr},
          {"f_l_raised", r.f_l_raised},
          {"f_l_not_raised", r.f_l_not_raised},
          {"p_flag", r.p_flag},
          {"f_l_flag_ignored", r.f_l_flag_ignored},
          {"p0_minus", r.overlaps.p0_minus},
          {"p1_minus", r.overlaps.p1_minus},
          {"p0_plus", r.overlaps.p0_plus},
          {"p1_plus", r.overlaps.p1_plus},
          {"mode", std::string(fidelity_mode_name(r.mode))}};
}

}  // namespace flagqec

#endif  // FLAGQEC_METRICS_HPP_
