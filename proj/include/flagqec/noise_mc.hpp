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

#ifndef FLAGQEC_NOISE_MC_HPP_
#define FLAGQEC_NOISE_MC_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagqec/metrics.hpp"
#include "flagqec/parallel.hpp"
#include "flagqec/protocols.hpp"

namespace flagqec {

/// Circuit-level Pauli noise. Rates are per location; a firing location gets
/// a uniformly random non-identity Pauli of its arity.
struct NoiseModel {
  double p1 = 0.0;      // one-qubit gates
  double p2 = 0.0;      // two-qubit gates
  double p_idle = 0.0;  // idle locations
  double p_prep = 0.0;  // flips the prepared state (X for Z-basis, Z for X-basis)
  double eps0 = 0.0;    // +1 recorded as -1
  double eps1 = 0.0;    // -1 recorded as +1
  double p_reset = 0.0; // X on the qubit after a measure-reset

  static NoiseModel depolarizing(double p2) { return NoiseModel{p2 / 10, p2, p2 / 10, 0, 0, 0, 0}; }
  /// Readout assignment from F_0 = 0.905, F_1 = 0.986.
  static NoiseModel hardware_readout() {
    NoiseModel n;
    n.eps0 = 1.0 - 0.905;
    n.eps1 = 1.0 - 0.986;
    return n;
  }

  void validate() const {
    const std::pair<const char*, double> all[] = {{"p1", p1},     {"p2", p2},     {"p_idle", p_idle},
                                                  {"p_prep", p_prep}, {"eps0", eps0}, {"eps1", eps1},
                                                  {"p_reset", p_reset}};
    for (const auto& [name, v] : all) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("noise rate out of [0,1]: ") + name);
    }
  }
  bool noiseless() const {
    return p1 == 0 && p2 == 0 && p_idle == 0 && p_prep == 0 && eps0 == 0 && eps1 == 0 && p_reset == 0;
  }
  bool operator==(const NoiseModel&) const = default;
};

inline nlohmann::json to_json(const NoiseModel& n) {
  return {{"p1", n.p1},       {"p2", n.p2},     {"p_idle", n.p_idle}, {"p_prep", n.p_prep},
          {"eps0", n.eps0},   {"eps1", n.eps1}, {"p_reset", n.p_reset}};
}

/// Reads a noise object; unknown keys are an error.
inline NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel n;
  for (const auto& [k, v] : j.items()) {
    if (k == "p1") n.p1 = v.get<double>();
    else if (k == "p2") n.p2 = v.get<double>();
    else if (k == "p_idle") n.p_idle = v.get<double>();
    else if (k == "p_prep") n.p_prep = v.get<double>();
    else if (k == "eps0") n.eps0 = v.get<double>();
    else if (k == "eps1") n.eps1 = v.get<double>();
    else if (k == "p_reset") n.p_reset = v.get<double>();
    else throw std::invalid_argument("unknown noise key: " + k);
  }
  n.validate();
  return n;
}

/// Faults drawn at one location. Readout misassignment depends on the
/// physical outcome and is drawn at run time (see readout_sampler).
template <class Rng>
std::vector<Fault> sample_location(const Location& l, const NoiseModel& nm, Rng& rng, std::size_t index) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Fault> out;
  auto depolarize = [&](double p, std::size_t k) {
    if (p > 0 && u(rng) < p) {
      const std::size_t choices = (std::size_t{1} << (2 * k)) - 1;
      std::uniform_int_distribution<std::size_t> pick(0, choices - 1);
      out.push_back(Fault::pauli(index, nontrivial_paulis(k)[pick(rng)]));
    }
  };
  switch (l.kind) {
    case LocKind::kGate1: depolarize(nm.p1, 1); break;
    case LocKind::kGate2: depolarize(nm.p2, 2); break;
    case LocKind::kIdle: depolarize(nm.p_idle, 1); break;
    case LocKind::kPrepare:
      if (nm.p_prep > 0 && u(rng) < nm.p_prep) {
        bool x_basis = l.prep == BasisLabel::kPlus || l.prep == BasisLabel::kMinus;
        bool y_basis = l.prep == BasisLabel::kPlusI || l.prep == BasisLabel::kMinusI;
        out.push_back(Fault::pauli(index, PauliString::parse(x_basis || y_basis ? "Z" : "X")));
      }
      break;
    case LocKind::kMeasureReset:
      if (nm.p_reset > 0 && u(rng) < nm.p_reset) out.push_back(Fault::pauli(index, PauliString::parse("X")));
      break;
  }
  return out;
}

/// Independent draws for every location of `c`; indices shifted by `offset`.
template <class Rng>
std::vector<Fault> sample_faults(const Circuit& c, const NoiseModel& nm, Rng& rng, std::size_t offset = 0) {
  std::vector<Fault> out;
  for (const auto& l : c.locations()) {
    for (auto& f : sample_location(l, nm, rng, offset + l.index)) out.push_back(std::move(f));
  }
  return out;
}

template <class Rng>
std::function<bool(const Location&, int)> readout_sampler(const NoiseModel& nm, Rng& rng) {
  if (nm.eps0 == 0 && nm.eps1 == 0) return {};
  return [&nm, &rng](const Location&, int physical) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < (physical > 0 ? nm.eps0 : nm.eps1);
  };
}

/// Generator for shot `shot` of a run seeded with `seed`.
inline std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Experiments.

enum class Protocol { kEncodingFt, kEncodingNonFt, kGhz, kFlaggedS1, kQecCycle };

inline std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kEncodingFt: return "encoding_ft";
    case Protocol::kEncodingNonFt: return "encoding_nonft";
    case Protocol::kGhz: return "ghz";
    case Protocol::kFlaggedS1: return "flagged_s1";
    case Protocol::kQecCycle: return "qec_cycle";
  }
  return "?";
}

inline Protocol protocol_from_name(std::string_view s) {
  for (Protocol p : {Protocol::kEncodingFt, Protocol::kEncodingNonFt, Protocol::kGhz, Protocol::kFlaggedS1,
                     Protocol::kQecCycle}) {
    if (protocol_name(p) == s) return p;
  }
  throw std::invalid_argument("unknown protocol: " + std::string(s));
}

struct ExperimentConfig {
  Protocol protocol = Protocol::kEncodingFt;
  Policy policy = Policy::kGeneral;
  NoiseModel noise;
  double p_e = 0.0;               // flagged_s1: probability of the injected ancilla Y
  std::size_t shots = 0;          // 0 selects exact (dense, noiseless) mode
  std::size_t min_accepted = 0;   // keep sampling until this many accepted shots
  std::size_t max_shots = 50'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ExperimentResult {
  std::string protocol;
  FidelityReport fidelity;
  double acceptance_rate = 0.0;
  std::size_t shots = 0;
  std::size_t accepted = 0;
  std::size_t failures = 0;   // accepted shots outside the target coset
  std::uint64_t seed = 0;
  NoiseModel noise;

  double logical_error_rate() const { return 1.0 - fidelity.f_l; }
};

inline nlohmann::json to_json(const ExperimentResult& r) {
  return {{"protocol", r.protocol},
          {"fidelity", to_json(r.fidelity)},
          {"acceptance_rate", r.acceptance_rate},
          {"shots", r.shots},
          {"accepted", r.accepted},
          {"failures", r.failures},
          {"logical_error_rate", r.logical_error_rate()},
          {"seed", r.seed},
          {"noise", to_json(r.noise)}};
}

namespace detail {

struct ShotOutcome {
  bool accepted = false;
  bool flag = false;
  double f = 0.0;
  double f_ignored = 0.0;  // E-table fidelity regardless of the flag
  OverlapDistribution overlaps;
};

template <class State>
double flagged_s1_fidelity(const State& s, bool flag) {
  static const std::vector<PauliString> e_prime = e_prime_errors();
  return flag ? fidelity_over(s, std::span<const PauliString>(e_prime)) : logical_fidelity(s);
}

inline ShotOutcome run_shot(const ExperimentConfig& cfg, std::uint64_t shot) {
  std::mt19937_64 rng = shot_rng(cfg.seed, shot);
  const NoiseModel& nm = cfg.noise;
  BranchCursor cur;
  cur.sample = true;
  ExecOptions opt;
  opt.readout_flip = readout_sampler(nm, rng);
  opt.location_faults = [&](const Location& l) { return sample_location(l, nm, rng, l.index); };
  const std::uint64_t state_seed = rng();
  ShotOutcome out;
  switch (cfg.protocol) {
    case Protocol::kEncodingFt:
    case Protocol::kEncodingNonFt: {
      static const Circuit ft = encoding_circuit(true), nonft = encoding_circuit(false);
      const Circuit& c = cfg.protocol == Protocol::kEncodingFt ? ft : nonft;
      auto run = run_encoding<StabilizerState>(c, cfg.policy, cur, opt, state_seed);
      out.accepted = run.record.accepted;
      out.flag = run.record.flag_raised;
      if (out.accepted) {
        out.f = logical_fidelity(run.state);
        out.overlaps = overlap_distribution(run.state);
      }
      break;
    }
    case Protocol::kGhz: {
      auto run = run_ghz<StabilizerState>(cur, opt, state_seed);
      out.accepted = true;
      out.f = ghz_fidelity(run.state);
      break;
    }
    case Protocol::kFlaggedS1: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const bool inject = cfg.p_e > 0 && u(rng) < cfg.p_e;
      auto run = run_flagged_s1<StabilizerState>(LogicalState::kMinus, inject, cur, opt, state_seed);
      out.accepted = true;
      out.flag = run.record.flag_raised;
      out.f = flagged_s1_fidelity(run.state, out.flag);
      out.f_ignored = logical_fidelity(run.state);
      out.overlaps = overlap_distribution(run.state);
      break;
    }
    case Protocol::kQecCycle: {
      auto s = prepare_logical<StabilizerState>(LogicalState::kMinus, layout::kRegister, state_seed);
      // The cycle's trace is adaptive, so faults are drawn location by location.
      auto res = run_qec_cycle(s, cur, nullptr, opt);
      out.accepted = true;
      out.flag = res.record.flag_raised;
      out.f = logical_fidelity(s);
      out.overlaps = overlap_distribution(s);
      break;
    }
  }
  return out;
}

/// Noiseless branch enumeration on the dense backend; weights are Born
/// probabilities.
template <class RunFn, class Score>
void exact_branches(RunFn&& run, Score&& score) {
  for_each_branch([&](BranchCursor& cur) { return run(cur); },
                  [&](const BranchCursor& cur, const auto& r) { score(cur.probability, r); });
}

inline ExperimentResult run_exact(const ExperimentConfig& cfg) {
  if (!cfg.noise.noiseless()) {
    throw std::invalid_argument("exact mode (shots = 0) supports only the noiseless model and p_e");
  }
  ExperimentResult res;
  res.protocol = std::string(protocol_name(cfg.protocol));
  res.seed = cfg.seed;
  res.noise = cfg.noise;
  FidelityReport& fr = res.fidelity;
  fr.mode = FidelityMode::kExactDense;
  double p_acc = 0.0, f_acc = 0.0;
  auto add_overlaps = [&](double w, const OverlapDistribution& d) {
    fr.overlaps.p0_minus += w * d.p0_minus;
    fr.overlaps.p1_minus += w * d.p1_minus;
    fr.overlaps.p0_plus += w * d.p0_plus;
    fr.overlaps.p1_plus += w * d.p1_plus;
  };
  switch (cfg.protocol) {
    case Protocol::kEncodingFt:
    case Protocol::kEncodingNonFt: {
      const Circuit c = encoding_circuit(cfg.protocol == Protocol::kEncodingFt);
      exact_branches([&](BranchCursor& cur) { return run_encoding<DenseState>(c, cfg.policy, cur); },
                     [&](double p, const Run<DenseState>& r) {
                       if (!r.record.accepted) return;
                       p_acc += p;
                       f_acc += p * logical_fidelity(r.state);
                       add_overlaps(p, overlap_distribution(r.state));
                     });
      break;
    }
    case Protocol::kGhz:
      exact_branches([&](BranchCursor& cur) { return run_ghz<DenseState>(cur); },
                     [&](double p, const Run<DenseState>& r) {
                       p_acc += p;
                       f_acc += p * ghz_fidelity(r.state);
                     });
      break;
    case Protocol::kFlaggedS1: {
      // Both branches of the injected Y, weighted by p_e.
      double p_flag = 0, f_raised = 0, f_not = 0, f_ignored = 0;
      for (int inject = 0; inject < 2; ++inject) {
        const double w = inject ? cfg.p_e : 1.0 - cfg.p_e;
        if (w == 0) continue;
        exact_branches(
            [&](BranchCursor& cur) { return run_flagged_s1<DenseState>(LogicalState::kMinus, inject, cur); },
            [&](double p, const Run<DenseState>& r) {
              const double f2 = logical_fidelity(r.state);
              if (r.record.flag_raised) {
                p_flag += w * p;
                f_raised += w * p * logical_fidelity_raised(r.state);
              } else {
                f_not += w * p * f2;
              }
              f_ignored += w * p * f2;
              add_overlaps(w * p, overlap_distribution(r.state));
            });
      }
      fr.p_flag = p_flag;
      fr.f_l_raised = p_flag > 0 ? f_raised / p_flag : 0.0;
      fr.f_l_not_raised = p_flag < 1 ? f_not / (1 - p_flag) : 0.0;
      fr.f_l_flag_ignored = f_ignored;
      p_acc = 1.0;
      f_acc = f_raised + f_not;
      break;
    }
    case Protocol::kQecCycle:
      exact_branches(
          [&](BranchCursor& cur) {
            auto s = prepare_logical<DenseState>(LogicalState::kMinus);
            run_qec_cycle(s, cur);
            return s;
          },
          [&](double p, const DenseState& s) {
            p_acc += p;
            f_acc += p * logical_fidelity(s);
            add_overlaps(p, overlap_distribution(s));
          });
      break;
  }
  res.acceptance_rate = p_acc;
  fr.f_l = p_acc > 0 ? f_acc / p_acc : 0.0;
  if (p_acc > 0 && cfg.protocol != Protocol::kFlaggedS1) {
    fr.overlaps.p0_minus /= p_acc;
    fr.overlaps.p1_minus /= p_acc;
    fr.overlaps.p0_plus /= p_acc;
    fr.overlaps.p1_plus /= p_acc;
  }
  return res;
}

}  // namespace detail

/// Runs one experiment. shots = 0 selects the exact dense mode; otherwise
/// shots are sampled on the tableau backend, each with its own generator
/// derived from (seed, shot index), so results do not depend on `threads`.
/// With min_accepted > 0, batches of shots are added until that many are
/// accepted (shots is then the batch size).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.noise.validate();
  if (!(cfg.p_e >= 0 && cfg.p_e <= 1)) throw std::invalid_argument("p_e out of [0,1]");
  if (cfg.shots == 0 && cfg.min_accepted == 0) return detail::run_exact(cfg);

  ExperimentResult res;
  res.protocol = std::string(protocol_name(cfg.protocol));
  res.seed = cfg.seed;
  res.noise = cfg.noise;
  const std::size_t batch = cfg.shots ? cfg.shots : 10'000;

  std::size_t n_flag = 0, n_acc = 0;
  double sum_f = 0, sum_f2 = 0, sum_raised = 0, sum_not = 0, sum_ignored = 0;
  OverlapDistribution ov;
  std::size_t total = 0;
  std::vector<detail::ShotOutcome> outs;
  do {
    outs.assign(batch, {});
    const std::size_t first = total;
    parallel_for(batch, cfg.threads, [&](std::size_t i) { outs[i] = detail::run_shot(cfg, first + i); });
    total += batch;
    for (const auto& o : outs) {
      if (!o.accepted) continue;
      ++n_acc;
      sum_f += o.f;
      sum_f2 += o.f * o.f;
      sum_ignored += o.f_ignored;
      if (o.f < 1.0 - 1e-9) ++res.failures;
      if (o.flag) {
        ++n_flag;
        sum_raised += o.f;
      } else {
        sum_not += o.f;
      }
      ov.p0_minus += o.overlaps.p0_minus;
      ov.p1_minus += o.overlaps.p1_minus;
      ov.p0_plus += o.overlaps.p0_plus;
      ov.p1_plus += o.overlaps.p1_plus;
    }
  } while (n_acc < cfg.min_accepted && total < cfg.max_shots);

  res.shots = total;
  res.accepted = n_acc;
  res.acceptance_rate = static_cast<double>(n_acc) / static_cast<double>(total);
  FidelityReport& fr = res.fidelity;
  fr.mode = FidelityMode::kMonteCarlo;
  if (n_acc) {
    const double n = static_cast<double>(n_acc);
    fr.f_l = sum_f / n;
    const double var = std::max(0.0, sum_f2 / n - fr.f_l * fr.f_l);
    fr.f_l_stderr = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    fr.p_flag = static_cast<double>(n_flag) / n;
    fr.f_l_raised = n_flag ? sum_raised / static_cast<double>(n_flag) : 0.0;
    fr.f_l_not_raised = n_acc > n_flag ? sum_not / static_cast<double>(n_acc - n_flag) : 0.0;
    if (cfg.protocol == Protocol::kFlaggedS1) fr.f_l_flag_ignored = sum_ignored / n;
    fr.overlaps = {ov.p0_minus / n, ov.p1_minus / n, ov.p0_plus / n, ov.p1_plus / n};
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepRow {
  double rate = 0.0;
  ExperimentResult result;
};

/// Sets the named rate on `base`. "p2_scaled" also sets p1 = p_idle = p2/10.
inline NoiseModel with_rate(NoiseModel base, const std::string& param, double v) {
  if (param == "p1") base.p1 = v;
  else if (param == "p2") base.p2 = v;
  else if (param == "p_idle") base.p_idle = v;
  else if (param == "p_prep") base.p_prep = v;
  else if (param == "eps0") base.eps0 = v;
  else if (param == "eps1") base.eps1 = v;
  else if (param == "p_reset") base.p_reset = v;
  else if (param == "p2_scaled") {
    base.p2 = v;
    base.p1 = base.p_idle = v / 10;
  }
  else if (param != "p_e") throw std::invalid_argument("unknown sweep parameter: " + param);
  return base;
}

/// One experiment per grid value, all with the same seed (paired samples).
inline std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::string& param,
                                   const std::vector<double>& grid) {
  std::vector<SweepRow> out;
  for (double v : grid) {
    ExperimentConfig cfg = base;
    cfg.noise = with_rate(base.noise, param, v);
    if (param == "p_e") cfg.p_e = v;
    out.push_back({v, run_experiment(cfg)});
  }
  return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "rate,f_l,stderr,acceptance,shots\n";
  for (const auto& r : rows) {
    os << r.rate << ',' << r.result.fidelity.f_l << ',' << r.result.fidelity.f_l_stderr << ','
       << r.result.acceptance_rate << ',' << r.result.shots << '\n';
  }
  return os.str();
}

inline nlohmann::json sweep_json(const std::string& param, const std::vector<SweepRow>& rows) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& r : rows) pts.push_back({{"rate", r.rate}, {"result", to_json(r.result)}});
  return {{"parameter", param}, {"points", pts}};
}

// ---------------------------------------------------------------------------
// Logical error rate comparison.

struct RateComparison {
  double rate_a = 0, stderr_a = 0, rate_b = 0, stderr_b = 0;
  double sigma = 0;  // (rate_b - rate_a) / combined stderr
};

/// Binomial standard errors on failure counts; a zero count uses the
/// one-failure bound so that the separation is not overstated.
inline RateComparison compare_rates(const ExperimentResult& a, const ExperimentResult& b) {
  auto rate = [](const ExperimentResult& r, double& se) {
    const double n = static_cast<double>(r.accepted);
    const double k = static_cast<double>(r.failures);
    const double p = k / n;
    const double pb = std::max(p, 1.0 / n);
    se = std::sqrt(pb * (1 - pb) / n);
    return p;
  };
  RateComparison c;
  c.rate_a = rate(a, c.stderr_a);
  c.rate_b = rate(b, c.stderr_b);
  c.sigma = (c.rate_b - c.rate_a) / std::sqrt(c.stderr_a * c.stderr_a + c.stderr_b * c.stderr_b);
  return c;
}

}  // namespace flagqec

#endif  // FLAGQEC_NOISE_MC_HPP_
