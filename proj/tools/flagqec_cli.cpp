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

// flagqec_cli: tables, verification, simulation, sweeps and compilation.
//
// Exit codes: 0 success, 1 verification violation, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flagqec/flagqec.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace flagqec;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
  const char* env = std::getenv("FLAGQEC_OUT_DIR");
  return env && *env ? env : "flagqec_out";
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Run configuration shared by simulate, sweep and ghz.

struct RunConfig {
  std::string protocol = "encoding";
  bool ft = false;
  std::string policy = "general";
  NoiseModel noise;
  double p_e = 0.0;
  std::size_t shots = 0;
  std::size_t min_accepted = 0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format = "text";
  std::string out = default_out_dir();
};

/// Reads a JSON run configuration; unknown keys are rejected.
void apply_config_file(RunConfig& rc, const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "protocol") rc.protocol = v.get<std::string>();
      else if (k == "ft") rc.ft = v.get<bool>();
      else if (k == "policy") rc.policy = v.get<std::string>();
      else if (k == "noise") rc.noise = noise_from_json(v);
      else if (k == "p_e") rc.p_e = v.get<double>();
      else if (k == "shots") rc.shots = v.get<std::size_t>();
      else if (k == "min_accepted") rc.min_accepted = v.get<std::size_t>();
      else if (k == "seed") rc.seed = v.get<std::uint64_t>();
      else if (k == "threads") rc.threads = v.get<unsigned>();
      else if (k == "format") rc.format = v.get<std::string>();
      else if (k == "out") rc.out = v.get<std::string>();
      else throw UsageError("config: unknown key '" + k + "'");
    }
  } catch (const json::type_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

/// Command-line values land here first; only options actually given
/// override the config file.
struct RunFlags {
  RunConfig v;
  std::string config;
  double depolarizing = -1;
  bool hardware_readout = false;
  std::vector<CLI::Option*> opts;
  CLI::Option *protocol{}, *ft{}, *policy{}, *p_e{}, *shots{}, *min_acc{}, *seed{}, *threads{}, *format{},
      *out{};
  CLI::Option *p1{}, *p2{}, *p_idle{}, *p_prep{}, *eps0{}, *eps1{}, *p_reset{};

  void add(CLI::App* app, bool with_protocol = true) {
    if (with_protocol) {
      protocol = app->add_option("--protocol", v.protocol,
                                 "encoding, ghz, flagged_s1, cycle (or encoding_ft / encoding_nonft)");
      ft = app->add_flag("--ft", v.ft, "Use the flagged (fault-tolerant) encoding circuit");
      policy = app->add_option("--policy", v.policy, "Encoding acceptance: general or herald_plus");
      p_e = app->add_option("--p-e", v.p_e, "flagged_s1: probability of the injected ancilla Y");
    }
    shots = app->add_option("--shots", v.shots, "Monte Carlo shots; 0 selects the exact noiseless report");
    min_acc = app->add_option("--min-accepted", v.min_accepted, "Sample until this many shots are accepted");
    seed = app->add_option("--seed", v.seed, "RNG seed (drawn and printed when omitted)");
    threads = app->add_option("--threads", v.threads, "Worker threads (0 = all cores)");
    format = app->add_option("--format", v.format, "Summary format on stdout")->check(CLI::IsMember({"text", "json"}));
    out = app->add_option("--out", v.out, "Output directory (default $FLAGQEC_OUT_DIR or ./flagqec_out)");
    p1 = app->add_option("--p1", v.noise.p1, "One-qubit gate fault rate");
    p2 = app->add_option("--p2", v.noise.p2, "Two-qubit gate fault rate");
    p_idle = app->add_option("--p-idle", v.noise.p_idle, "Idle fault rate");
    p_prep = app->add_option("--p-prep", v.noise.p_prep, "Preparation flip rate");
    eps0 = app->add_option("--eps0", v.noise.eps0, "Readout: +1 recorded as -1");
    eps1 = app->add_option("--eps1", v.noise.eps1, "Readout: -1 recorded as +1");
    p_reset = app->add_option("--p-reset", v.noise.p_reset, "Ancilla reset failure rate");
    app->add_option("--depolarizing", depolarizing, "Set p2 and p1 = p_idle = p2/10");
    app->add_flag("--hardware-readout", hardware_readout, "Readout errors eps0 = 0.095, eps1 = 0.014");
    app->add_option("--config", config, "JSON run configuration (unknown keys are rejected)");
  }

  RunConfig resolve() const {
    RunConfig rc;
    if (!config.empty()) apply_config_file(rc, config);
    auto take = [](CLI::Option* o, auto& dst, const auto& src) {
      if (o && o->count()) dst = src;
    };
    take(protocol, rc.protocol, v.protocol);
    take(ft, rc.ft, v.ft);
    take(policy, rc.policy, v.policy);
    take(p_e, rc.p_e, v.p_e);
    take(shots, rc.shots, v.shots);
    take(min_acc, rc.min_accepted, v.min_accepted);
    take(seed, rc.seed, v.seed);
    take(threads, rc.threads, v.threads);
    take(format, rc.format, v.format);
    take(out, rc.out, v.out);
    if (depolarizing >= 0) {
      NoiseModel d = NoiseModel::depolarizing(depolarizing);
      rc.noise.p1 = d.p1;
      rc.noise.p2 = d.p2;
      rc.noise.p_idle = d.p_idle;
    }
    if (hardware_readout) {
      rc.noise.eps0 = NoiseModel::hardware_readout().eps0;
      rc.noise.eps1 = NoiseModel::hardware_readout().eps1;
    }
    take(p1, rc.noise.p1, v.noise.p1);
    take(p2, rc.noise.p2, v.noise.p2);
    take(p_idle, rc.noise.p_idle, v.noise.p_idle);
    take(p_prep, rc.noise.p_prep, v.noise.p_prep);
    take(eps0, rc.noise.eps0, v.noise.eps0);
    take(eps1, rc.noise.eps1, v.noise.eps1);
    take(p_reset, rc.noise.p_reset, v.noise.p_reset);
    return rc;
  }
};

Protocol to_protocol(const RunConfig& rc) {
  if (rc.protocol == "encoding") return rc.ft ? Protocol::kEncodingFt : Protocol::kEncodingNonFt;
  if (rc.protocol == "cycle") return Protocol::kQecCycle;
  try {
    return protocol_from_name(rc.protocol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ExperimentConfig to_experiment(const RunConfig& rc) {
  ExperimentConfig cfg;
  cfg.protocol = to_protocol(rc);
  try {
    cfg.policy = policy_from_name(rc.policy);
    rc.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(rc.p_e >= 0 && rc.p_e <= 1)) throw UsageError("--p-e must lie in [0,1]");
  cfg.noise = rc.noise;
  cfg.p_e = rc.p_e;
  cfg.shots = rc.shots;
  cfg.min_accepted = rc.min_accepted;
  cfg.threads = rc.threads;
  const bool exact = cfg.shots == 0 && cfg.min_accepted == 0;
  if (exact && !cfg.noise.noiseless()) {
    throw UsageError("exact mode (--shots 0) needs zero noise; give --shots or --min-accepted");
  }
  cfg.seed = exact ? rc.seed.value_or(0) : resolve_seed(rc.seed);
  return cfg;
}

void print_result(const ExperimentResult& r, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(r).dump(2) << "\n";
    return;
  }
  const auto& f = r.fidelity;
  std::printf("protocol: %s (%s)\n", r.protocol.c_str(), std::string(fidelity_mode_name(f.mode)).c_str());
  std::printf("f_l: %.10g +- %.3g\n", f.f_l, f.f_l_stderr);
  std::printf("acceptance: %.10g (%zu of %zu shots)\n", r.acceptance_rate, r.accepted, r.shots);
  std::printf("failures: %zu\n", r.failures);
  if (r.protocol == "flagged_s1") {
    std::printf("p_flag: %.10g  f_raised: %.10g  f_not_raised: %.10g  f_flag_ignored: %.10g\n", f.p_flag,
                f.f_l_raised, f.f_l_not_raised, f.f_l_flag_ignored);
  }
  std::printf("seed: %llu\n", static_cast<unsigned long long>(r.seed));
}

// ---------------------------------------------------------------------------
// tables

std::string syndrome_text(const Syndrome& s) {
  std::string out = "[";
  for (int k = 0; k < 4; ++k) out += std::string(k ? "," : "") + (s[k] > 0 ? "+1" : "-1");
  return out + "]";
}

json syndrome_table_json(const SyndromeTable& t) {
  json rows = json::array();
  for (const auto& [idx, e] : t) {
    const Syndrome s = syndrome_from_index(idx);
    rows.push_back({{"syndrome", s}, {"recovery", e.letters()}, {"compact", compact_name(e)}});
  }
  return rows;
}

std::string syndrome_table_csv(const SyndromeTable& t, const std::string& name) {
  std::string out = "syndrome,table,recovery\n";
  for (const auto& [idx, e] : t) out += syndrome_text(syndrome_from_index(idx)) + "," + name + "," + compact_name(e) + "\n";
  return out;
}

int cmd_tables(const std::string& out_dir) {
  const DecodeTables& t = DecodeTables::standard();
  fs::path dir = ensure_dir(out_dir);

  json code = {{"stabilizers", json::array()}, {"p_operators", json::array()},
               {"x_logical", FiveQubitCode::x_logical().str()}, {"z_logical", FiveQubitCode::z_logical().str()}};
  for (const auto& s : FiveQubitCode::stabilizers()) code["stabilizers"].push_back(s.str());
  for (const auto& p : FiveQubitCode::p_ops()) code["p_operators"].push_back(p.str());

  json flag = json::object();
  write_file(dir / "no_flag.csv", syndrome_table_csv(t.no_flag, "noflag"));
  for (int k = 1; k <= 4; ++k) {
    const auto& tab = t.with_flag[static_cast<std::size_t>(k - 1)];
    flag["s" + std::to_string(k)] = syndrome_table_json(tab);
    write_file(dir / ("flag_s" + std::to_string(k) + ".csv"), syndrome_table_csv(tab, "flag_s" + std::to_string(k)));
  }

  json frame = json::array();
  std::string frame_csv = "m3,m4,m5,correction\n";
  for (int m3 : {+1, -1}) {
    for (int m4 : {+1, -1}) {
      for (int m5 : {+1, -1}) {
        const PauliString& c = t.frame_correction(m3, m4, m5);
        frame.push_back({{"m3", m3}, {"m4", m4}, {"m5", m5}, {"correction", c.letters()}});
        frame_csv += std::to_string(m3) + "," + std::to_string(m4) + "," + std::to_string(m5) + "," +
                     compact_name(c) + "\n";
      }
    }
  }
  write_file(dir / "frame.csv", frame_csv);

  json inc = json::array();
  std::string inc_csv = "class,weight,operator\n";
  for (LogicalClass c : {LogicalClass::kX, LogicalClass::kY, LogicalClass::kZ}) {
    for (std::size_t w : {3u, 5u}) {
      json ops = json::array();
      for (const auto& p : incarnations(c, w)) {
        ops.push_back(p.str());
        inc_csv += std::string(logical_class_name(c)) + "," + std::to_string(w) + "," + p.str() + "\n";
      }
      inc.push_back({{"class", logical_class_name(c)}, {"weight", w}, {"operators", ops}});
    }
  }
  write_file(dir / "incarnations.csv", inc_csv);

  json all = {{"code", code},
              {"no_flag", syndrome_table_json(t.no_flag)},
              {"flag", flag},
              {"frame", frame},
              {"incarnations", inc}};
  write_file(dir / "tables.json", all.dump(2) + "\n");
  std::cout << syndrome_table_csv(t.no_flag, "noflag");
  std::cout << "wrote tables to " << dir.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

void print_checks(const CheckReport& r) {
  for (const auto& c : r.checks) {
    std::printf("%s %s%s%s\n", c.ok ? "ok  " : "FAIL", c.name.c_str(), c.detail.empty() ? "" : ": ",
                c.detail.c_str());
  }
}

void print_ft(const FtReport& r) {
  std::printf("%s %s: %zu faults, %zu branches, %zu accepted, %zu violations\n", r.ok() ? "ok  " : "FAIL",
              r.name.c_str(), r.faults, r.branches, r.accepted, r.violations);
  for (const FaultRecord* ce : r.counterexamples()) {
    std::printf("     counterexample: %s at %s\n", fault_to_string(ce->fault).c_str(), ce->tag.c_str());
    break;
  }
}

json checks_json(const CheckReport& r) {
  json j = json::array();
  for (const auto& c : r.checks) j.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return j;
}

int cmd_verify(const std::string& which, const std::string& mutate, unsigned threads, const std::string& out_dir) {
  json report;
  bool ok = false;
  if (!mutate.empty() && !((which == "encoding" && mutate == "drop-flag") || (which == "cycle" && mutate == "unordered-flags"))) {
    throw UsageError("--mutate " + mutate + " does not apply to --which " + which);
  }
  if (which == "encoding" && mutate == "drop-flag") {
    FtReport r = verify_encoding(drop_flag(encoding_circuit(true)), Policy::kGeneral, threads);
    r.name = "drop_flag/general";
    print_ft(r);
    report = to_json(r);
    ok = r.ok();
  } else if (which == "encoding") {
    EncodingVerification v = verify_ft_encoding(threads);
    print_ft(v.ft);
    print_ft(v.ft_herald_plus);
    std::printf("control (expected to fail):\n");
    print_ft(v.non_ft);
    print_ft(v.dropped);
    report = {{"ft", to_json(v.ft)},
              {"ft_herald_plus", to_json(v.ft_herald_plus)},
              {"non_ft", to_json(v.non_ft)},
              {"drop_flag", to_json(v.dropped)},
              {"ok", v.ok()}};
    ok = v.ok();
  } else if (which == "s1" || which == "case_b" || which == "tables") {
    CheckReport r = which == "s1" ? verify_flagged_s1() : which == "case_b" ? verify_case_b_tables(threads) : verify_tables();
    print_checks(r);
    report = {{"checks", checks_json(r)}, {"ok", r.ok()}};
    ok = r.ok();
  } else if (which == "cycle") {
    CriteriaReport r = mutate.empty() ? verify_ft_criteria(CycleCircuits::get(), threads)
                                      : verify_ft_criteria(unordered_s1_cycle(), threads);
    print_checks(r.checks);
    report = {{"checks", checks_json(r.checks)},
              {"criterion1_cases", r.criterion1_cases},
              {"clean_input", to_json(r.clean_input, false)},
              {"noisy_input", to_json(r.noisy_input, false)},
              {"ok", r.ok()}};
    ok = r.ok();
  } else {
    throw UsageError("unknown --which " + which);
  }
  fs::path dir = ensure_dir(out_dir);
  std::string name = "verify_" + which + (mutate.empty() ? "" : "_" + mutate) + ".json";
  write_file(dir / name, report.dump(2) + "\n");
  std::printf("%s; report in %s\n", ok ? "PASS" : "VIOLATION", (dir / name).string().c_str());
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// simulate / sweep / ghz / compile

int cmd_simulate(const RunConfig& rc) {
  ExperimentConfig cfg = to_experiment(rc);
  ExperimentResult r = run_experiment(cfg);
  fs::path dir = ensure_dir(rc.out);
  write_file(dir / "simulate.json", to_json(r).dump(2) + "\n");
  print_result(r, rc.format);
  return kOk;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad grid value '" + tok + "'");
    }
  }
  return out;
}

int cmd_sweep(const RunConfig& rc, const std::string& param, const std::string& grid) {
  ExperimentConfig cfg = to_experiment(rc);
  std::vector<SweepRow> rows;
  try {
    rows = sweep(cfg, param, parse_grid(grid));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  fs::path dir = ensure_dir(rc.out);
  const std::string csv = sweep_csv(rows);
  write_file(dir / "sweep.csv", csv);
  write_file(dir / "sweep.json", sweep_json(param, rows).dump(2) + "\n");
  if (rc.format == "json") {
    std::cout << sweep_json(param, rows).dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return kOk;
}

int cmd_ghz(RunConfig rc, double noise) {
  rc.protocol = "ghz";
  if (noise < 0 || noise > 1) throw UsageError("--noise must lie in [0,1]");
  if (noise > 0) {
    NoiseModel d = NoiseModel::depolarizing(noise);
    rc.noise.p1 = d.p1;
    rc.noise.p2 = d.p2;
    rc.noise.p_idle = d.p_idle;
    if (rc.shots == 0 && rc.min_accepted == 0) rc.shots = 10000;
  }
  ExperimentResult r = run_experiment(to_experiment(rc));
  fs::path dir = ensure_dir(rc.out);
  write_file(dir / "ghz.json", to_json(r).dump(2) + "\n");
  if (rc.format == "json") {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::printf("fidelity: %.6f\n", r.fidelity.f_l);
    if (r.fidelity.mode == FidelityMode::kMonteCarlo) {
      std::printf("stderr: %.3g\nshots: %zu\nseed: %llu\n", r.fidelity.f_l_stderr, r.shots,
                  static_cast<unsigned long long>(r.seed));
    }
  }
  return kOk;
}

int cmd_compile(const std::string& in, bool check, const std::string& out_dir) {
  const std::string text = read_file(in);
  Circuit src;
  try {
    src = fs::path(in).extension() == ".json" ? circuit_from_json(json::parse(text)) : from_text(text);
  } catch (const std::exception& e) {
    throw UsageError("cannot parse " + in + ": " + e.what());
  }
  Circuit native = compile_to_native(src);
  fs::path dir = ensure_dir(out_dir);
  fs::path out = dir / (fs::path(in).stem().string() + ".native.circ");
  write_file(out, to_text(native));
  std::printf("compiled %zu locations to %zu native locations: %s\n", src.size(), native.size(), out.string().c_str());
  if (!check) return kOk;
  EquivalenceReport r = check_compiled(src, native);
  std::printf("%s: %zu segments, max distance %.3g\n", r.equivalent ? "equivalent" : "NOT equivalent", r.segments,
              r.max_distance);
  return r.equivalent ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagqec: flag fault-tolerant five-qubit code toolkit"};
  app.require_subcommand(1);

  std::string out_dir = default_out_dir();

  auto* tables = app.add_subcommand("tables", "Write the decoding tables as CSV and JSON");
  tables->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Exhaustive fault-tolerance checks");
  std::string which, mutate;
  unsigned vthreads = 0;
  verify->add_option("--which", which, "What to verify")
      ->required()
      ->check(CLI::IsMember({"encoding", "s1", "case_b", "cycle", "tables"}));
  verify->add_option("--mutate", mutate, "Break the circuit on purpose (the check should then fail)")
      ->check(CLI::IsMember({"drop-flag", "unordered-flags"}));
  verify->add_option("--threads", vthreads, "Worker threads (0 = all cores)");
  verify->add_option("--out", out_dir, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Run one protocol (exact or Monte Carlo)");
  RunFlags sim_flags;
  sim_flags.add(simulate);

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one noise parameter");
  RunFlags sweep_flags;
  sweep_flags.add(sweep_cmd);
  std::string param = "p2_scaled", grid;
  sweep_cmd->add_option("--param", param, "p1, p2, p_idle, p_prep, eps0, eps1, p_reset, p2_scaled, p_e");
  sweep_cmd->add_option("--grid", grid, "Comma-separated values")->required();

  auto* ghz = app.add_subcommand("ghz", "Four-qubit GHZ preparation fidelity");
  RunFlags ghz_flags;
  ghz_flags.add(ghz, false);
  double ghz_noise = 0.0;
  ghz->add_option("--noise", ghz_noise, "Depolarizing two-qubit rate (p1 = p_idle = noise/10)");

  auto* compile = app.add_subcommand("compile", "Compile a circuit to the native gate set");
  std::string in;
  bool check = false;
  compile->add_option("--in", in, "Circuit file (.circ text or .json)")->required();
  compile->add_flag("--check", check, "Verify equivalence with the source");
  compile->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*tables) return cmd_tables(out_dir);
    if (*verify) return cmd_verify(which, mutate, vthreads, out_dir);
    if (*simulate) return cmd_simulate(sim_flags.resolve());
    if (*sweep_cmd) return cmd_sweep(sweep_flags.resolve(), param, grid);
    if (*ghz) return cmd_ghz(ghz_flags.resolve(), ghz_noise);
    if (*compile) return cmd_compile(in, check, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
