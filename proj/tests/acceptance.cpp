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

// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "flagqec/flagqec.hpp"

using namespace flagqec;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Verdict()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string first_failures(const CheckReport& r) {
  std::string out;
  for (const auto& f : r.failures()) {
    out += " [" + f.name + (f.detail.empty() ? "" : ": " + f.detail) + "]";
    if (out.size() > 400) break;
  }
  return out;
}

Verdict tables() {
  CheckReport r = verify_tables();
  return {r.ok(), std::to_string(r.checks.size()) + " checks" + first_failures(r)};
}

Verdict flag_fault_table() {
  CheckReport r = verify_flagged_s1();
  return {r.ok(), std::to_string(r.checks.size()) + " checks" + first_failures(r)};
}

Verdict encoding() {
  EncodingVerification v = verify_ft_encoding();
  std::string d = "ft " + std::to_string(v.ft.violations) + "/" + std::to_string(v.ft.faults) +
                  " faults violating, herald_plus " + std::to_string(v.ft_herald_plus.violations) +
                  ", non-ft control " + std::to_string(v.non_ft.violations) + " violations, drop-flag " +
                  std::to_string(v.dropped.violations) + " violations";
  auto ce = v.non_ft.counterexamples();
  if (!ce.empty()) d += ", e.g. " + fault_to_string(ce.front()->fault) + " at " + ce.front()->tag;
  return {v.ok(), d};
}

Verdict case_b() {
  CheckReport r = verify_case_b_tables();
  return {r.ok(), std::to_string(r.checks.size()) + " checks" + first_failures(r)};
}

Verdict injected_y() {
  BranchCursor cur;
  auto run = run_flagged_s1<DenseState>(LogicalState::kMinus, true, cur);
  bool ok = true;
  std::string d;
  auto need = [&](bool c, const std::string& what) {
    if (!c) {
      ok = false;
      d += " [" + what + "]";
    }
  };
  need(run.record.data_error.letters() == "IIYIY", "residual " + run.record.data_error.letters());
  need(syndrome_of(run.record.data_error) == Syndrome{+1, -1, -1, -1}, "syndrome");
  need(run.record.flag_raised, "flag not raised");
  // Exact values come from the tableau (integer expectations, dyadic
  // coefficients); the dense run must agree to rounding.
  BranchCursor tcur;
  auto trun = run_flagged_s1<StabilizerState>(LogicalState::kMinus, true, tcur);
  need(trun.record.flag_raised, "tableau flag not raised");
  const double f_not = logical_fidelity(trun.state);
  const double f_raised = logical_fidelity_raised(trun.state);
  need(f_not == 0.0, "F_not_raised = " + fmt("%.17g", f_not));
  need(f_raised == 1.0, "F_raised = " + fmt("%.17g", f_raised));
  need(std::abs(logical_fidelity(run.state) - f_not) <= 1e-12, "dense F_not_raised disagrees");
  need(std::abs(logical_fidelity_raised(run.state) - f_raised) <= 1e-12, "dense F_raised disagrees");

  // Exact mixture over the injection probability against the linear law.
  ExperimentConfig cfg;
  cfg.protocol = Protocol::kFlaggedS1;
  cfg.p_e = 0.0;
  const double f0 = run_experiment(cfg).fidelity.f_l_flag_ignored;
  cfg.p_e = 1.0;
  const double f1 = run_experiment(cfg).fidelity.f_l_flag_ignored;
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    cfg.p_e = i / 20.0;
    ExperimentResult r = run_experiment(cfg);
    worst = std::max(worst, std::abs(r.fidelity.f_l_flag_ignored - fidelity_vs_pe(cfg.p_e, f0, f1)));
    worst = std::max(worst, std::abs(r.fidelity.f_l - combined_fidelity(r.fidelity.p_flag, f_raised, 1.0)));
  }
  need(worst <= 1e-12, "linearity deviation " + fmt("%.3g", worst));
  return {ok, "residual Y3Y5, syndrome [+1,-1,-1,-1], flag raised, F_not_raised=" + fmt("%g", f_not) +
                  ", F_raised=" + fmt("%g", f_raised) + ", linearity deviation " + fmt("%.2g", worst) + d};
}

Verdict cycle() {
  CriteriaReport r = verify_ft_criteria();
  std::string d = std::to_string(r.criterion1_cases) + " error-free cases, " +
                  std::to_string(r.clean_input.faults) + " faults on clean inputs, " +
                  std::to_string(r.noisy_input.faults) + " faults on erred inputs" + first_failures(r.checks);
  return {r.ok(), d};
}

Verdict backends() {
  bool ok = true;
  std::string d;
  std::size_t branches = 0;
  double worst = 0.0;
  for (const auto& c : all_protocol_circuits()) {
    auto r = compare_backends_all_branches(c);
    branches += r.branches;
    worst = std::max({worst, r.max_expectation_diff, r.probability_diff});
    if (!r.ok(1e-10)) {
      ok = false;
      d += " [" + c.name() + "]";
    }
  }
  std::mt19937_64 rng(20260101);
  int random_bad = 0;
  for (int i = 0; i < 500; ++i) {
    Circuit c = random_clifford_circuit(1 + rng() % 7, 40, rng);
    auto r = compare_backends_sampled(c, rng());
    worst = std::max({worst, r.max_expectation_diff, r.probability_diff});
    if (!r.ok(1e-10)) ++random_bad;
  }
  ok = ok && random_bad == 0;
  return {ok, std::to_string(branches) + " protocol branches, 500 random circuits (" +
                  std::to_string(random_bad) + " mismatched), worst difference " + fmt("%.2g", worst) + d};
}

Verdict fidelity_formulas() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const auto e = single_qubit_errors();
  const auto ep = e_prime_errors();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> amp(32);
    for (auto& a : amp) a = cplx(g(rng), g(rng));
    DenseState s = DenseState::from_amplitudes(std::move(amp));
    worst = std::max(worst, std::abs(logical_fidelity(s) - projector_sum_fidelity(s, e)));
    worst = std::max(worst, std::abs(logical_fidelity_raised(s) - projector_sum_fidelity(s, ep)));
  }
  const double id = distance_up_to_global_phase(coset_projector_sum(), Matrix::identity(32));
  return {worst <= 1e-10 && id <= 1e-10,
          "worst deviation " + fmt("%.2g", worst) + ", projector sum vs identity " + fmt("%.2g", id)};
}

Verdict compilation() {
  bool ok = true;
  double worst = 0.0;
  std::string d;
  std::size_t n = 0;
  for (const auto& c : all_protocol_circuits()) {
    auto r = check_compiled(c, compile_to_native(c), 1e-10);
    worst = std::max(worst, r.max_distance);
    ++n;
    if (!r.equivalent) {
      ok = false;
      d += " [" + c.name() + "]";
    }
  }
  return {ok, std::to_string(n) + " circuits, worst distance " + fmt("%.2g", worst) + d};
}

Verdict monte_carlo() {
  ExperimentConfig cfg;
  cfg.noise = NoiseModel::depolarizing(1e-3);
  cfg.min_accepted = 100'000;
  cfg.seed = 1;
  cfg.protocol = Protocol::kEncodingFt;
  ExperimentResult ft = run_experiment(cfg);
  cfg.protocol = Protocol::kEncodingNonFt;
  ExperimentResult nft = run_experiment(cfg);
  RateComparison c = compare_rates(ft, nft);
  bool ok = ft.accepted >= 100'000 && nft.accepted >= 100'000 && c.rate_a < c.rate_b && c.sigma >= 5.0;
  return {ok, "ft " + std::to_string(ft.failures) + "/" + std::to_string(ft.accepted) + " (" +
                  fmt("%.3g", c.rate_a) + "), non-ft " + std::to_string(nft.failures) + "/" +
                  std::to_string(nft.accepted) + " (" + fmt("%.3g", c.rate_b) + "), separation " +
                  fmt("%.2f", c.sigma) + " sigma"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "decoding tables match the reference tables", 1.0, tables},
      {2, "flagged s1 fault table", 10.0, flag_fault_table},
      {3, "fault-tolerant encoding, non-FT and drop-flag controls fail", 300.0, encoding},
      {4, "case B single-error verification", 60.0, case_b},
      {5, "injected Y on the flagged s1 measurement", 60.0, injected_y},
      {6, "correction cycle criteria, exhaustive", 900.0, cycle},
      {7, "tableau and dense backends agree", 120.0, backends},
      {8, "closed-form fidelities equal projector sums", 60.0, fidelity_formulas},
      {9, "native compilation is equivalent", 60.0, compilation},
      {10, "Monte Carlo: FT logical error rate below non-FT at 5 sigma", 600.0, monte_carlo},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s (%.3f s, budget %.0f s)%s: %s\n", pass ? "PASS" : "FAIL", c.id, c.title, s,
                c.budget_s, in_time ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
