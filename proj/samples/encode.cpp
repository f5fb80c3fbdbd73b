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

// Prepares |->_L with the flagged encoding circuit on every measurement
// branch and prints what the heralds and the Pauli frame do.

#include <cstdio>

#include "flagqec/flagqec.hpp"

using namespace flagqec;

int main() {
  std::printf("%s\n", to_text(encoding_circuit(true)).c_str());
  for_each_branch(
      [](BranchCursor& cur) { return run_encoding<DenseState>(true, Policy::kGeneral, cur); },
      [](const BranchCursor& cur, const Run<DenseState>& run) {
        std::printf("p=%.4f", cur.probability);
        for (const auto& [label, v] : run.record.outcomes) std::printf(" %s=%+d", label.c_str(), v);
        std::printf("  frame=%s  F_L=%.12f\n", run.record.pauli_frame.letters().c_str(), logical_fidelity(run.state));
      });

  // One Monte Carlo point at p2 = 1e-2.
  ExperimentConfig cfg;
  cfg.noise = NoiseModel::depolarizing(1e-2);
  cfg.shots = 20000;
  cfg.seed = 42;
  ExperimentResult r = run_experiment(cfg);
  std::printf("noisy FT encoding: F_L = %.6f +- %.2g, acceptance %.4f\n", r.fidelity.f_l, r.fidelity.f_l_stderr,
              r.acceptance_rate);
  return 0;
}
