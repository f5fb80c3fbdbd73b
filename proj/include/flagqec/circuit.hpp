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

#ifndef FLAGQEC_CIRCUIT_HPP_
#define FLAGQEC_CIRCUIT_HPP_

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flagqec/gate.hpp"
#include "flagqec/pauli.hpp"
#include "flagqec/tableau.hpp"

namespace flagqec {

class CircuitFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LocKind { kPrepare, kGate1, kGate2, kMeasureReset, kIdle };

inline std::string_view loc_kind_name(LocKind k) {
  switch (k) {
    case LocKind::kPrepare: return "prepare";
    case LocKind::kGate1: return "gate1q";
    case LocKind::kGate2: return "gate2q";
    case LocKind::kMeasureReset: return "measure_reset";
    case LocKind::kIdle: return "idle";
  }
  return "?";
}

inline LocKind loc_kind_from_name(std::string_view s) {
  if (s == "prepare") return LocKind::kPrepare;
  if (s == "gate1q") return LocKind::kGate1;
  if (s == "gate2q") return LocKind::kGate2;
  if (s == "measure_reset") return LocKind::kMeasureReset;
  if (s == "idle") return LocKind::kIdle;
  throw CircuitFormatError("unknown location kind: " + std::string(s));
}

/// Gate is applied only when the named earlier outcome equals `outcome`.
struct Condition {
  std::string label;
  int outcome = -1;
  bool operator==(const Condition&) const = default;
};

struct Location {
  std::size_t index = 0;
  LocKind kind = LocKind::kIdle;
  std::vector<int> qubits;
  GateSpec gate{};                         // gate1q / gate2q
  BasisLabel prep = BasisLabel::kZero;     // prepare
  Pauli basis = Pauli::Z;                  // measure_reset: X, Y or Z
  std::string label;                       // measure_reset outcome name
  std::optional<Condition> condition;      // classically controlled gates
  std::string tag;                         // free-form, e.g. "(b)" or "block:T2"

  int arity() const { return static_cast<int>(qubits.size()); }
  bool operator==(const Location&) const = default;
};

/// Ordered list of locations on a register with per-qubit role labels.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t n, std::string name, std::vector<std::string> roles = {})
      : n_(n), name_(std::move(name)), roles_(std::move(roles)) {
    if (roles_.empty()) {
      for (std::size_t q = 0; q < n_; ++q) roles_.push_back("q" + std::to_string(q));
    }
    if (roles_.size() != n_) throw CircuitFormatError("roles size differs from n");
  }

  std::size_t num_qubits() const { return n_; }
  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  void set_description(std::string d) { description_ = std::move(d); }
  const std::vector<std::string>& roles() const { return roles_; }
  const std::vector<Location>& locations() const { return locs_; }
  std::size_t size() const { return locs_.size(); }
  const Location& operator[](std::size_t i) const { return locs_.at(i); }

  int qubit_of_role(std::string_view role) const {
    for (std::size_t q = 0; q < n_; ++q) {
      if (roles_[q] == role) return static_cast<int>(q);
    }
    throw std::out_of_range("no qubit with role " + std::string(role));
  }

  Circuit& prepare(int q, BasisLabel b, std::string tag = {}) {
    Location l;
    l.kind = LocKind::kPrepare;
    l.qubits = {q};
    l.prep = b;
    l.tag = std::move(tag);
    return push(std::move(l));
  }

  Circuit& gate(const GateSpec& g, std::string tag = {},
                std::optional<Condition> cond = std::nullopt) {
    Location l;
    l.kind = g.arity() == 2 ? LocKind::kGate2 : LocKind::kGate1;
    l.qubits = g.arity() == 2 ? std::vector<int>{g.qubits[0], g.qubits[1]}
                              : std::vector<int>{g.qubits[0]};
    l.gate = g;
    l.condition = std::move(cond);
    l.tag = std::move(tag);
    return push(std::move(l));
  }

  Circuit& measure_reset(int q, Pauli basis, std::string label, std::string tag = {}) {
    if (basis == Pauli::I) throw CircuitFormatError("measurement basis cannot be I");
    Location l;
    l.kind = LocKind::kMeasureReset;
    l.qubits = {q};
    l.basis = basis;
    l.label = std::move(label);
    l.tag = std::move(tag);
    return push(std::move(l));
  }

  Circuit& idle(int q, std::string tag = {}) {
    Location l;
    l.kind = LocKind::kIdle;
    l.qubits = {q};
    l.tag = std::move(tag);
    return push(std::move(l));
  }

  Circuit& append(const Circuit& other) {
    if (other.n_ != n_) throw DimensionError("append: register sizes differ");
    for (Location l : other.locs_) push(std::move(l));
    return *this;
  }

  /// Copy without the locations for which pred(loc) holds.
  template <class Pred>
  Circuit filtered(Pred pred) const {
    Circuit out(n_, name_, roles_);
    out.description_ = description_;
    for (const auto& l : locs_) {
      if (!pred(l)) out.push(l);
    }
    return out;
  }

  std::vector<std::string> measurement_labels() const {
    std::vector<std::string> out;
    for (const auto& l : locs_) {
      if (l.kind == LocKind::kMeasureReset) out.push_back(l.label);
    }
    return out;
  }

  std::size_t count(LocKind k) const {
    std::size_t c = 0;
    for (const auto& l : locs_) c += l.kind == k;
    return c;
  }

  /// Unconditional gates only.
  bool is_measurement_free() const {
    for (const auto& l : locs_) {
      if (l.kind == LocKind::kMeasureReset || l.kind == LocKind::kPrepare) return false;
      if (l.condition) return false;
    }
    return true;
  }

  bool operator==(const Circuit& o) const {
    return n_ == o.n_ && name_ == o.name_ && roles_ == o.roles_ && locs_ == o.locs_;
  }

 private:
  Circuit& push(Location l) {
    for (int q : l.qubits) {
      if (q < 0 || static_cast<std::size_t>(q) >= n_) {
        throw std::out_of_range("location qubit " + std::to_string(q) +
                                " outside register of " + std::to_string(n_));
      }
    }
    if (l.kind == LocKind::kGate2 && l.qubits[0] == l.qubits[1]) {
      throw CircuitFormatError("two-qubit gate with identical qubits");
    }
    if (l.condition) {
      bool found = false;
      for (const auto& prev : locs_) {
        found = found || (prev.kind == LocKind::kMeasureReset && prev.label == l.condition->label);
      }
      if (!found) {
        throw CircuitFormatError("condition refers to unknown outcome " + l.condition->label);
      }
    }
    l.index = locs_.size();
    locs_.push_back(std::move(l));
    return *this;
  }

  std::size_t n_ = 0;
  std::string name_;
  std::string description_;
  std::vector<std::string> roles_;
  std::vector<Location> locs_;
};

/// The circuit's locations, dense and ordered (idles are explicit locations).
inline const std::vector<Location>& enumerate_locations(const Circuit& c) {
  return c.locations();
}

// ---------------------------------------------------------------------------
// Text format, one location per line:
//   circuit <name> <n>
//   roles <r0> <r1> ...
//   desc <free text>
//   prep <q> <0|1|+|-|+i|-i> [@tag]
//   gate <NAME>[(<angle>)] <q> [<q>] [if <label>=<+1|-1>] [@tag]
//   measure <q> <X|Y|Z> <label> [@tag]
//   idle <q> [@tag]
// '#' starts a comment.

inline std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name() << ' ' << c.num_qubits() << '\n';
  os << "roles";
  for (const auto& r : c.roles()) os << ' ' << r;
  os << '\n';
  if (!c.description().empty()) os << "desc " << c.description() << '\n';
  for (const auto& l : c.locations()) {
    switch (l.kind) {
      case LocKind::kPrepare:
        os << "prep " << l.qubits[0] << ' ' << basis_label_name(l.prep);
        break;
      case LocKind::kGate1:
      case LocKind::kGate2:
        os << "gate " << gate_to_string(l.gate);
        for (int q : l.qubits) os << ' ' << q;
        if (l.condition) {
          os << " if " << l.condition->label << '=' << (l.condition->outcome > 0 ? "+1" : "-1");
        }
        break;
      case LocKind::kMeasureReset:
        os << "measure " << l.qubits[0] << ' ' << pauli_char(l.basis) << ' ' << l.label;
        break;
      case LocKind::kIdle:
        os << "idle " << l.qubits[0];
        break;
    }
    if (!l.tag.empty()) os << " @" << l.tag;
    os << '\n';
  }
  return os.str();
}

namespace detail {

inline int parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CircuitFormatError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
}

inline GateSpec parse_gate_token(const std::string& tok, int line) {
  std::string name = tok;
  double angle = 0.0;
  auto open = tok.find('(');
  if (open != std::string::npos) {
    if (tok.back() != ')') {
      throw CircuitFormatError("line " + std::to_string(line) + ": bad gate " + tok);
    }
    name = tok.substr(0, open);
    try {
      angle = std::stod(tok.substr(open + 1, tok.size() - open - 2));
    } catch (const std::exception&) {
      throw CircuitFormatError("line " + std::to_string(line) + ": bad angle in " + tok);
    }
  }
  GateSpec g;
  try {
    g.kind = gate_kind_from_name(name);
  } catch (const std::exception& e) {
    throw CircuitFormatError("line " + std::to_string(line) + ": " + e.what());
  }
  g.angle = angle;
  if (g.has_angle() != (open != std::string::npos)) {
    throw CircuitFormatError("line " + std::to_string(line) + ": angle mismatch for " + name);
  }
  return g;
}

}  // namespace detail

inline Circuit from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::optional<Circuit> c;
  std::vector<std::string> pending_roles;
  std::string desc;
  auto need = [&](int ln) -> Circuit& {
    if (!c) throw CircuitFormatError("line " + std::to_string(ln) + ": missing 'circuit' header");
    return *c;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    std::string tag;
    if (tok.back().size() > 1 && tok.back()[0] == '@') {
      tag = tok.back().substr(1);
      tok.pop_back();
    }
    const std::string& kw = tok[0];
    auto bad = [&]() {
      return CircuitFormatError("line " + std::to_string(lineno) + ": malformed '" + kw + "'");
    };
    if (kw == "circuit") {
      if (tok.size() != 3 || c) throw bad();
      int n = detail::parse_int(tok[2], lineno);
      if (n <= 0 || n > 64) throw bad();
      c.emplace(static_cast<std::size_t>(n), tok[1]);
    } else if (kw == "roles") {
      Circuit& cc = need(lineno);
      std::vector<std::string> r(tok.begin() + 1, tok.end());
      if (r.size() != cc.num_qubits() || !cc.locations().empty()) throw bad();
      Circuit fresh(cc.num_qubits(), cc.name(), r);
      fresh.set_description(cc.description());
      cc = fresh;
    } else if (kw == "desc") {
      auto p = raw.find("desc");
      std::string d = raw.substr(p + 4);
      d.erase(0, d.find_first_not_of(" \t"));
      need(lineno).set_description(d);
    } else if (kw == "prep") {
      if (tok.size() != 3) throw bad();
      BasisLabel b;
      try {
        b = basis_label_from_name(tok[2]);
      } catch (const std::invalid_argument&) {
        throw bad();
      }
      need(lineno).prepare(detail::parse_int(tok[1], lineno), b, tag);
    } else if (kw == "gate") {
      if (tok.size() < 3) throw bad();
      GateSpec g = detail::parse_gate_token(tok[1], lineno);
      std::size_t k = 2;
      int ar = g.arity();
      if (tok.size() < 2 + static_cast<std::size_t>(ar)) throw bad();
      g.qubits[0] = detail::parse_int(tok[k++], lineno);
      if (ar == 2) g.qubits[1] = detail::parse_int(tok[k++], lineno);
      std::optional<Condition> cond;
      if (k < tok.size()) {
        if (tok[k] != "if" || k + 2 != tok.size()) throw bad();
        const std::string& ce = tok[k + 1];
        auto eq = ce.find('=');
        if (eq == std::string::npos) throw bad();
        std::string v = ce.substr(eq + 1);
        if (v != "+1" && v != "-1" && v != "1") throw bad();
        cond = Condition{ce.substr(0, eq), v == "-1" ? -1 : +1};
      }
      need(lineno).gate(g, tag, cond);
    } else if (kw == "measure") {
      if (tok.size() != 4 || tok[2].size() != 1) throw bad();
      Pauli b = pauli_from_char(tok[2][0]);
      need(lineno).measure_reset(detail::parse_int(tok[1], lineno), b, tok[3], tag);
    } else if (kw == "idle") {
      if (tok.size() != 2) throw bad();
      need(lineno).idle(detail::parse_int(tok[1], lineno), tag);
    } else {
      throw CircuitFormatError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
    }
  }
  if (!c) throw CircuitFormatError("empty circuit text");
  return *c;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const Location& l) {
  nlohmann::json j;
  j["kind"] = loc_kind_name(l.kind);
  j["qubits"] = l.qubits;
  switch (l.kind) {
    case LocKind::kPrepare: j["basis"] = basis_label_name(l.prep); break;
    case LocKind::kGate1:
    case LocKind::kGate2:
      j["gate"] = gate_name(l.gate.kind);
      if (l.gate.has_angle()) j["angle"] = l.gate.angle;
      if (l.condition) {
        j["condition"] = {{"label", l.condition->label}, {"outcome", l.condition->outcome}};
      }
      break;
    case LocKind::kMeasureReset:
      j["basis"] = std::string(1, pauli_char(l.basis));
      j["label"] = l.label;
      break;
    case LocKind::kIdle: break;
  }
  if (!l.tag.empty()) j["tag"] = l.tag;
  return j;
}

inline nlohmann::json to_json(const Circuit& c) {
  nlohmann::json j;
  j["name"] = c.name();
  j["description"] = c.description();
  j["n"] = c.num_qubits();
  j["roles"] = c.roles();
  j["locations"] = nlohmann::json::array();
  for (const auto& l : c.locations()) j["locations"].push_back(to_json(l));
  return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("n").get<std::size_t>(), j.at("name").get<std::string>(),
              j.value("roles", std::vector<std::string>{}));
    c.set_description(j.value("description", std::string{}));
    for (const auto& lj : j.at("locations")) {
      LocKind k = loc_kind_from_name(lj.at("kind").get<std::string>());
      auto qs = lj.at("qubits").get<std::vector<int>>();
      std::string tag = lj.value("tag", std::string{});
      std::size_t want = k == LocKind::kGate2 ? 2 : 1;
      if (qs.size() != want) throw CircuitFormatError("wrong qubit count for location");
      switch (k) {
        case LocKind::kPrepare:
          c.prepare(qs[0], basis_label_from_name(lj.at("basis").get<std::string>()), tag);
          break;
        case LocKind::kGate1:
        case LocKind::kGate2: {
          GateSpec g;
          g.kind = gate_kind_from_name(lj.at("gate").get<std::string>());
          if ((g.arity() == 2) != (k == LocKind::kGate2)) {
            throw CircuitFormatError("gate arity does not match location kind");
          }
          g.angle = lj.value("angle", 0.0);
          g.qubits[0] = qs[0];
          if (g.arity() == 2) g.qubits[1] = qs[1];
          std::optional<Condition> cond;
          if (lj.contains("condition")) {
            cond = Condition{lj["condition"].at("label").get<std::string>(),
                             lj["condition"].at("outcome").get<int>()};
          }
          c.gate(g, tag, cond);
          break;
        }
        case LocKind::kMeasureReset: {
          auto b = lj.at("basis").get<std::string>();
          if (b.size() != 1) throw CircuitFormatError("bad measurement basis");
          c.measure_reset(qs[0], pauli_from_char(b[0]), lj.at("label").get<std::string>(), tag);
          break;
        }
        case LocKind::kIdle: c.idle(qs[0], tag); break;
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CircuitFormatError(std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace flagqec

#endif  // FLAGQEC_CIRCUIT_HPP_
