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

#ifndef FLAGQEC_EXECUTOR_HPP_
#define FLAGQEC_EXECUTOR_HPP_

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagqec/circuit.hpp"
#include "flagqec/dense.hpp"
#include "flagqec/fault.hpp"
#include "flagqec/tableau.hpp"

namespace flagqec {

struct Outcome {
  std::string label;
  std::size_t location = 0;
  int value = +1;     // recorded (after any readout flip)
  int physical = +1;  // eigenvalue the state collapsed to
  bool deterministic = true;
  double probability = 1.0;
};

/// Chooses outcomes of random measurements. The first `prefix.size()` random
/// measurements follow the prefix; later ones take +1, or are sampled from the
/// backend's generator when `sample` is set.
struct BranchCursor {
  std::vector<int> prefix;
  bool sample = false;
  std::vector<int> taken;
  double probability = 1.0;

  std::optional<int> next() {
    std::size_t k = taken.size();
    if (k < prefix.size()) return prefix[k];
    if (sample) return std::nullopt;
    return +1;
  }
};

struct ExecResult {
  std::vector<Outcome> outcomes;

  const Outcome* find(std::string_view label) const {
    for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it) {
      if (it->label == label) return &*it;
    }
    return nullptr;
  }
  int value(std::string_view label) const {
    const Outcome* o = find(label);
    if (!o) throw std::out_of_range("no outcome labelled " + std::string(label));
    return o->value;
  }
};

/// Faults bucketed by location, with a location offset so that a trace built
/// from several circuits can share one fault index space.
class FaultSchedule {
 public:
  FaultSchedule() = default;
  explicit FaultSchedule(std::span<const Fault> faults) : faults_(faults.begin(), faults.end()) {}

  std::vector<const Fault*> at(std::size_t global_index) const {
    std::vector<const Fault*> out;
    for (const auto& f : faults_) {
      if (f.location == global_index) out.push_back(&f);
    }
    return out;
  }
  bool empty() const { return faults_.empty(); }
  const std::vector<Fault>& faults() const { return faults_; }

 private:
  std::vector<Fault> faults_;
};

namespace detail {

inline bool is_deterministic(const StabilizerState& s, const PauliString& p) {
  return s.is_deterministic(p);
}
inline bool is_deterministic(const DenseState& s, const PauliString& p) {
  return std::abs(s.expectation(p)) > 1.0 - DenseState::kZeroProbability;
}

}  // namespace detail

struct ExecOptions {
  const FaultSchedule* faults = nullptr;
  std::size_t location_offset = 0;  // global index of this circuit's location 0
  // Optional physical outcomes for every measurement, in order; overrides the
  // cursor. Used for cross-backend branch replays.
  const std::vector<int>* all_outcomes = nullptr;
  // Extra readout flips applied to recorded outcomes (noise sampling);
  // called with the location and the physical outcome.
  std::function<bool(const Location&, int)> readout_flip;
  // Extra Pauli faults drawn at each location (noise sampling on adaptive
  // traces); applied after the location like scheduled faults.
  std::function<std::vector<Fault>(const Location&)> location_faults;
};

/// Runs `c` on `state`. Works for StabilizerState and DenseState.
template <class State>
ExecResult execute(const Circuit& c, State& state, BranchCursor& cursor,
                   const ExecOptions& opt = {}, ExecResult prior = {}) {
  if (state.num_qubits() != c.num_qubits()) {
    throw DimensionError("circuit and state register sizes differ");
  }
  const std::size_t n = c.num_qubits();
  ExecResult res = std::move(prior);
  std::size_t local_meas = 0;
  for (const auto& l : c.locations()) {
    std::vector<const Fault*> here;
    if (opt.faults) here = opt.faults->at(opt.location_offset + l.index);
    std::vector<Fault> drawn;
    if (opt.location_faults) drawn = opt.location_faults(l);
    for (const auto& f : drawn) here.push_back(&f);
    switch (l.kind) {
      case LocKind::kPrepare:
        state.reset(l.qubits[0], l.prep);
        break;
      case LocKind::kGate1:
      case LocKind::kGate2:
        if (l.condition && res.value(l.condition->label) != l.condition->outcome) break;
        state.apply(l.gate);
        break;
      case LocKind::kIdle:
        break;
      case LocKind::kMeasureReset: {
        PauliString b = PauliString::single(n, static_cast<std::size_t>(l.qubits[0]), l.basis);
        MeasureResult m;
        if (opt.all_outcomes) {
          if (local_meas >= opt.all_outcomes->size()) {
            throw std::out_of_range("all_outcomes shorter than measurement count");
          }
          m = state.measure(b, (*opt.all_outcomes)[local_meas]);
          if (!m.deterministic) cursor.taken.push_back(m.outcome);
        } else if (detail::is_deterministic(state, b)) {
          m = state.measure(b);
        } else {
          m = state.measure(b, cursor.next());
          cursor.taken.push_back(m.outcome);
        }
        ++local_meas;
        cursor.probability *= m.probability;
        int recorded = m.outcome;
        for (const Fault* f : here) {
          if (f->flip) recorded = -recorded;
        }
        if (opt.readout_flip && opt.readout_flip(l, m.outcome)) recorded = -recorded;
        res.outcomes.push_back(
            {l.label, opt.location_offset + l.index, recorded, m.outcome, m.deterministic, m.probability});
        state.reset(l.qubits[0], BasisLabel::kZero);
        break;
      }
    }
    for (const Fault* f : here) {
      if (!f->flip) state.apply_pauli(f->on_register(l, n));
    }
  }
  return res;
}

/// Depth-first enumeration of every random-outcome branch of `run`.
/// `run(cursor)` must replay the same deterministic program for a given
/// prefix. `visit(cursor, result)` is called once per leaf.
template <class Run, class Visit>
void for_each_branch(Run&& run, Visit&& visit, std::size_t max_branches = 1u << 16) {
  std::vector<std::vector<int>> stack{{}};
  std::size_t leaves = 0;
  while (!stack.empty()) {
    BranchCursor cur;
    cur.prefix = std::move(stack.back());
    stack.pop_back();
    auto result = run(cur);
    if (++leaves > max_branches) throw std::runtime_error("branch enumeration limit exceeded");
    for (std::size_t k = cur.taken.size(); k-- > cur.prefix.size();) {
      std::vector<int> child(cur.taken.begin(), cur.taken.begin() + static_cast<long>(k));
      child.push_back(-1);
      stack.push_back(std::move(child));
    }
    visit(cur, result);
  }
}

}  // namespace flagqec

#endif  // FLAGQEC_EXECUTOR_HPP_
