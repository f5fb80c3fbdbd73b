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

#ifndef FLAGQEC_EQUIVALENCE_HPP_
#define FLAGQEC_EQUIVALENCE_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "flagqec/circuit.hpp"
#include "flagqec/dense.hpp"
#include "flagqec/executor.hpp"
#include "flagqec/tableau.hpp"

namespace flagqec {

/// Random Clifford circuit with preparations and mid-circuit measurements.
template <class Rng>
Circuit random_clifford_circuit(std::size_t n, std::size_t depth, Rng& rng, bool measurements = true) {
  static constexpr GateKind k1[] = {GateKind::kX, GateKind::kY, GateKind::kZ, GateKind::kH, GateKind::kS,
                                    GateKind::kSdg};
  static constexpr GateKind k2[] = {GateKind::kCX, GateKind::kCY, GateKind::kCZ, GateKind::kCRxPM};
  static constexpr BasisLabel labels[] = {BasisLabel::kZero, BasisLabel::kOne,   BasisLabel::kPlus,
                                          BasisLabel::kMinus, BasisLabel::kPlusI, BasisLabel::kMinusI};
  static constexpr Pauli bases[] = {Pauli::X, Pauli::Y, Pauli::Z};
  std::uniform_int_distribution<int> qd(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> op(0, 9);
  Circuit c(n, "random_clifford");
  for (int q = 0; q < static_cast<int>(n); ++q) c.prepare(q, labels[rng() % 6]);
  int m = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    const int kind = op(rng);
    const int a = qd(rng);
    if (kind < 4 || n < 2) {
      c.gate(GateSpec::one(k1[rng() % 6], a));
    } else if (kind < 8) {
      int b = qd(rng);
      while (b == a) b = qd(rng);
      c.gate(GateSpec::two(k2[rng() % 4], a, b));
    } else if (kind == 8 && measurements) {
      c.measure_reset(a, bases[rng() % 3], "m" + std::to_string(m++));
    } else {
      c.gate(GateSpec::one(GateKind::kRx, a, (static_cast<int>(rng() % 4) - 1) * 1.5707963267948966));
    }
  }
  return c;
}

struct BackendComparison {
  bool outcomes_match = true;
  double max_expectation_diff = 0.0;
  double probability_diff = 0.0;
  std::size_t branches = 0;
  bool ok(double tol = 1e-10) const {
    return outcomes_match && max_expectation_diff <= tol && probability_diff <= tol;
  }
};

namespace detail {

/// Tableau and dense states agree when every stabilizer generator has dense
/// expectation +1 (they fix the state) and every destabilizer has 0.
inline double state_mismatch(const StabilizerState& t, const DenseState& d) {
  double diff = 0.0;
  for (const auto& g : t.stabilizers()) diff = std::max(diff, std::abs(d.expectation(g) - 1.0));
  for (const auto& g : t.destabilizers()) {
    diff = std::max(diff, std::abs(d.expectation(g) - static_cast<double>(t.expectation(g))));
  }
  return diff;
}

inline void compare_branch(const Circuit& c, const std::vector<int>& physical, const StabilizerState& t,
                           const ExecResult& tres, double tprob, BackendComparison& out) {
  DenseState d(c.num_qubits());
  BranchCursor dc;
  ExecOptions opt;
  opt.all_outcomes = &physical;
  ExecResult dres = execute(c, d, dc, opt);
  if (dres.outcomes.size() != tres.outcomes.size()) {
    out.outcomes_match = false;
    return;
  }
  for (std::size_t i = 0; i < dres.outcomes.size(); ++i) {
    out.outcomes_match = out.outcomes_match && dres.outcomes[i].value == tres.outcomes[i].value &&
                         dres.outcomes[i].deterministic == tres.outcomes[i].deterministic;
  }
  out.probability_diff = std::max(out.probability_diff, std::abs(dc.probability - tprob));
  out.max_expectation_diff = std::max(out.max_expectation_diff, state_mismatch(t, d));
  ++out.branches;
}

}  // namespace detail

/// Runs every random-outcome branch of `c` on the tableau and replays the
/// same physical outcomes on the dense backend.
inline BackendComparison compare_backends_all_branches(const Circuit& c) {
  BackendComparison out;
  for_each_branch(
      [&](BranchCursor& cur) {
        StabilizerState t(c.num_qubits());
        ExecResult res = execute(c, t, cur);
        return std::make_pair(std::move(t), std::move(res));
      },
      [&](const BranchCursor& cur, const std::pair<StabilizerState, ExecResult>& r) {
        std::vector<int> physical;
        for (const auto& o : r.second.outcomes) physical.push_back(o.physical);
        detail::compare_branch(c, physical, r.first, r.second, cur.probability, out);
      });
  return out;
}

/// One sampled branch of `c` (tableau generator seeded with `seed`).
inline BackendComparison compare_backends_sampled(const Circuit& c, std::uint64_t seed) {
  BackendComparison out;
  StabilizerState t(c.num_qubits(), seed);
  BranchCursor cur;
  cur.sample = true;
  ExecResult res = execute(c, t, cur);
  std::vector<int> physical;
  for (const auto& o : res.outcomes) physical.push_back(o.physical);
  detail::compare_branch(c, physical, t, res, cur.probability, out);
  return out;
}

}  // namespace flagqec

#endif  // FLAGQEC_EQUIVALENCE_HPP_
