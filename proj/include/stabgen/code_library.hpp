// Copyright 2026 The stabgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABGEN_CODE_LIBRARY_HPP_
#define STABGEN_CODE_LIBRARY_HPP_

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabgen/elementary.hpp"
#include "stabgen/pauli.hpp"
#include "stabgen/text.hpp"

#ifndef STABGEN_DEFAULT_DATA_DIR
#define STABGEN_DEFAULT_DATA_DIR "data"
#endif

namespace stabgen {

enum class InteractionKind { XY, Ising };

inline std::string to_string(InteractionKind k) { return k == InteractionKind::XY ? "XY" : "Ising"; }

inline InteractionKind parse_kind(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "xy") return InteractionKind::XY;
  if (s == "ising" || s == "zz") return InteractionKind::Ising;
  throw ParseError("unknown interaction kind: " + s);
}

struct ChainStep {
  std::string annotation;
  std::vector<ElementaryOp> ops;
  /// Printed line after this step; empty when the step is stacked onto the next one.
  std::optional<PauliSum> expected;
  /// +1 / -1 per op, filled by verification.
  std::vector<int> sign_choices;
};

struct DerivationChain {
  std::string name;
  InteractionKind kind = InteractionKind::XY;
  std::size_t n = 1;
  PauliSum target{1};
  std::vector<ChainStep> steps;
  PauliSum h_ini{1};
  /// Axis of an all-qubit rotation layer generating a second, wrapped segment.
  std::optional<Axis> wrap_axis;

  /// Final printed line (the target when there are no steps).
  const PauliSum& terminal() const {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (it->expected) return *it->expected;
    }
    return target;
  }
};

struct BaselineEntry {
  std::string label;
  int count = 1;
  /// Either a stated (tau_op, tau_rot) pair or the name of an old-method chain.
  std::optional<std::pair<int, int>> stated;
  std::string old_chain;
};

/// Generation times as printed, in (tau_op, tau_rot) units and nanoseconds.
struct PrintedCost {
  int op = 0;
  int rot = 0;
  double ns = 0.0;
};

struct PrintedRow {
  std::optional<PrintedCost> table_previous;
  std::optional<PrintedCost> table_new;
  std::optional<double> table_improvement;
  std::optional<PrintedCost> text_new;
  std::optional<double> text_previous_ns;
};

struct CodeSpec {
  std::string name;
  std::size_t n = 1;
  std::size_t k = 1;
  std::vector<PauliString> generators;
  std::vector<PauliString> logical_x;
  std::vector<PauliString> logical_z;
  /// (generator index, qubit) pairs, 0-based, in application order.
  std::vector<std::pair<std::size_t, std::size_t>> modified;
  std::optional<PauliSum> ghz;
  std::map<InteractionKind, DerivationChain> chains;
  std::map<InteractionKind, std::vector<BaselineEntry>> baselines;
  std::map<std::string, DerivationChain> old_chains;
  std::map<InteractionKind, PrintedRow> printed;

  PauliSum generator_sum() const {
    PauliSum h(n);
    for (const auto& g : generators) h.add_term(g, 1.0);
    return h;
  }
  const DerivationChain& chain(InteractionKind kind) const {
    auto it = chains.find(kind);
    if (it == chains.end()) throw std::out_of_range(name + ": no " + to_string(kind) + " chain");
    return it->second;
  }
};

/// Parses an annotation such as "(x<->z:2,4)(y<->z:1) XY:12,34" into ops with +pi/2 and +pi/4 angles.
inline std::vector<ElementaryOp> parse_annotation(const std::string& text, std::size_t n) {
  std::vector<ElementaryOp> ops;
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // Normalize the unicode arrow to ASCII.
    if (text.compare(i, 3, "\xE2\x86\x94") == 0) {
      s += "<->";
      i += 2;
    } else {
      s += text[i];
    }
  }
  auto fail = [&](const std::string& why) { return ParseError("annotation \"" + text + "\": " + why); };
  auto qubit = [&](std::size_t q) {
    if (q == 0 || q > n) throw fail("qubit index out of range");
    return q - 1;
  };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  while (true) {
    skip();
    if (i >= s.size()) break;
    if (s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) throw fail("unclosed group");
      std::string body = s.substr(i + 1, close - i - 1);
      i = close + 1;
      std::size_t colon = body.find(':');
      if (colon == std::string::npos) throw fail("missing ':'");
      std::string axes = body.substr(0, colon);
      axes.erase(std::remove_if(axes.begin(), axes.end(),
                                [](char c) { return c == '<' || c == '>' || c == '-' || std::isspace(static_cast<unsigned char>(c)); }),
                 axes.end());
      if (axes.size() != 2 || axes[0] == axes[1]) throw fail("expected two distinct axes");
      int mask = 0;
      for (char c : axes) {
        if (c == 'x') mask |= 1;
        else if (c == 'y') mask |= 2;
        else if (c == 'z') mask |= 4;
        else throw fail("bad axis");
      }
      Axis rot = mask == 5 ? Axis::Y : mask == 6 ? Axis::X : Axis::Z;
      std::stringstream qs(body.substr(colon + 1));
      std::string tok;
      while (std::getline(qs, tok, ',')) {
        ops.push_back(AxisRotation{qubit(std::stoul(tok)), rot, Angle::pi_fraction(1, 2)});
      }
    } else if (s.compare(i, 3, "XY:") == 0 || s.compare(i, 3, "ZZ:") == 0) {
      bool xy = s[i] == 'X';
      i += 3;
      std::size_t end = i;
      while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == ',' || s[end] == '-')) ++end;
      std::stringstream es(s.substr(i, end - i));
      i = end;
      std::string tok;
      while (std::getline(es, tok, ',')) {
        std::size_t a, b;
        auto dash = tok.find('-');
        if (dash != std::string::npos) {
          a = std::stoul(tok.substr(0, dash));
          b = std::stoul(tok.substr(dash + 1));
        } else if (tok.size() == 2) {
          a = static_cast<std::size_t>(tok[0] - '0');
          b = static_cast<std::size_t>(tok[1] - '0');
        } else {
          throw fail("edge \"" + tok + "\" needs two digits or i-j form");
        }
        if (xy) ops.push_back(XYEdge{qubit(a), qubit(b), Angle::pi_fraction(1, 4)});
        else ops.push_back(IsingEdge{qubit(a), qubit(b), Angle::pi_fraction(1, 4)});
      }
    } else {
      throw fail("unexpected text at \"" + s.substr(i) + "\"");
    }
  }
  std::uint64_t seen = 0;
  for (const auto& op : ops) {
    if (seen & op_support(op)) throw fail("operations overlap on a qubit");
    seen |= op_support(op);
  }
  return ops;
}

/// Sets the sense of each op: rotations get sign * pi/2, edges sign * pi/4.
inline ElementaryOp with_sign(const ElementaryOp& op, int sign) {
  if (sign > 0) return op;
  return inverse(op);
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::pair<std::string, std::string> split_word(const std::string& line) {
  auto sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {line, ""};
  return {line.substr(0, sp), trim(line.substr(sp + 1))};
}

inline void parse_chain_line(DerivationChain& c, const std::string& key, const std::string& rest,
                             const std::string& where) {
  if (key == "h_ini") {
    c.h_ini = parse_pauli_sum(rest, c.n);
  } else if (key == "target") {
    c.target = parse_pauli_sum(rest, c.n);
  } else if (key == "wrap") {
    if (rest == "x") c.wrap_axis = Axis::X;
    else if (rest == "y") c.wrap_axis = Axis::Y;
    else if (rest == "z") c.wrap_axis = Axis::Z;
    else throw ParseError(where + "bad wrap axis");
  } else if (key == "step") {
    ChainStep st;
    auto bar = rest.find('|');
    st.annotation = trim(rest.substr(0, bar));
    st.ops = parse_annotation(st.annotation, c.n);
    if (bar != std::string::npos) st.expected = parse_pauli_sum(rest.substr(bar + 1), c.n);
    st.sign_choices.assign(st.ops.size(), 1);
    c.steps.push_back(std::move(st));
  } else {
    throw ParseError(where + "unknown chain directive \"" + key + "\"");
  }
}

}  // namespace detail

/// Reads a code definition file.
inline CodeSpec parse_code(std::istream& in, const std::string& source = "<input>") {
  CodeSpec code;
  std::string raw;
  int lineno = 0;
  enum class Block { None, Chain, Baseline, OldChain } block = Block::None;
  DerivationChain cur;
  InteractionKind cur_kind = InteractionKind::XY;
  std::string cur_name;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string where = source + ":" + std::to_string(lineno) + ": ";
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto [key, rest] = detail::split_word(line);
    try {
      if (block == Block::None) {
        if (key == "code") {
          code.name = rest;
        } else if (key == "n") {
          code.n = std::stoul(rest);
        } else if (key == "generator") {
          code.generators.push_back(parse_pauli_string(rest, code.n));
        } else if (key == "logical_x") {
          code.logical_x.push_back(parse_pauli_string(rest, code.n));
        } else if (key == "logical_z") {
          code.logical_z.push_back(parse_pauli_string(rest, code.n));
        } else if (key == "ghz") {
          code.ghz = parse_pauli_sum(rest, code.n);
        } else if (key == "modified") {
          std::stringstream ss(rest);
          std::size_t g, q;
          if (!(ss >> g >> q) || g == 0 || q == 0) throw ParseError(where + "expected 'modified <gen> <qubit>'");
          code.modified.emplace_back(g - 1, q - 1);
        } else if (key == "table" || key == "text") {
          std::stringstream ss(rest);
          std::string kind;
          ss >> kind;
          PrintedRow& row = code.printed[parse_kind(kind)];
          if (key == "table") {
            PrintedCost a, b;
            double imp;
            if (!(ss >> a.op >> a.rot >> a.ns >> b.op >> b.rot >> b.ns >> imp)) throw ParseError(where + "bad table row");
            row.table_previous = a;
            row.table_new = b;
            row.table_improvement = imp;
          } else {
            PrintedCost b;
            double prev;
            if (!(ss >> b.op >> b.rot >> b.ns >> prev)) throw ParseError(where + "bad text row");
            row.text_new = b;
            row.text_previous_ns = prev;
          }
        } else if (key == "chain") {
          block = Block::Chain;
          cur = DerivationChain{};
          cur.n = code.n;
          cur.kind = parse_kind(rest);
          cur.name = code.name + "/" + to_string(cur.kind);
          cur.target = PauliSum(code.n);
          cur.h_ini = PauliSum(code.n);
        } else if (key == "baseline") {
          block = Block::Baseline;
          cur_kind = parse_kind(rest);
          code.baselines[cur_kind];
        } else if (key == "old_chain") {
          block = Block::OldChain;
          auto [nm, kind] = detail::split_word(rest);
          cur = DerivationChain{};
          cur.n = code.n;
          cur.kind = parse_kind(kind);
          cur.name = nm;
          cur.target = PauliSum(code.n);
          cur.h_ini = PauliSum(code.n);
          cur_name = nm;
        } else {
          throw ParseError(where + "unknown directive \"" + key + "\"");
        }
        continue;
      }
      if (key == "end") {
        if (block == Block::Chain) code.chains[cur.kind] = cur;
        if (block == Block::OldChain) code.old_chains[cur_name] = cur;
        block = Block::None;
        continue;
      }
      if (block == Block::Baseline) {
        std::stringstream ss(rest);
        BaselineEntry e;
        if (key == "stated") {
          int a, b;
          if (!(ss >> e.count >> a >> b)) throw ParseError(where + "expected 'stated <count> <op> <rot> label'");
          e.stated = std::make_pair(a, b);
        } else if (key == "old_chain") {
          if (!(ss >> e.count >> e.old_chain)) throw ParseError(where + "expected 'old_chain <count> <name>'");
        } else {
          throw ParseError(where + "unknown baseline directive \"" + key + "\"");
        }
        std::getline(ss, e.label);
        e.label = detail::trim(e.label);
        if (e.label.empty()) e.label = e.old_chain;
        code.baselines[cur_kind].push_back(e);
        continue;
      }
      detail::parse_chain_line(cur, key, rest, where);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (msg.rfind(source, 0) == 0) throw;
      throw ParseError(where + msg);
    } catch (const std::logic_error& e) {
      throw ParseError(where + e.what());
    }
  }
  if (block != Block::None) throw ParseError(source + ": missing 'end'");
  if (code.name.empty()) throw ParseError(source + ": missing 'code' directive");
  if (code.generators.size() >= code.n) throw ParseError(source + ": too many generators");
  code.k = code.n - code.generators.size();
  return code;
}

inline CodeSpec load_code_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return parse_code(in, p.filename().string());
}

/// Directory holding codes/*.code; overridable through STABGEN_FIXTURE_DIR.
inline std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("STABGEN_FIXTURE_DIR"); env && *env) return env;
  return STABGEN_DEFAULT_DATA_DIR;
}

inline std::vector<CodeSpec> builtin_codes() {
  std::filesystem::path dir = fixture_dir() / "codes";
  std::vector<CodeSpec> out;
  for (const char* f : {"nine_qubit.code", "five_qubit.code", "steane.code"}) {
    out.push_back(load_code_file(dir / f));
  }
  return out;
}

/// Looks up a built-in code by name or alias ("nine", "9code", "five", "5code", "steane", "7code"),
/// falling back to a fixture path.
inline CodeSpec find_code(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"nine-qubit", "nine-qubit"}, {"nine", "nine-qubit"}, {"9code", "nine-qubit"}, {"9", "nine-qubit"},
      {"five-qubit", "five-qubit"}, {"five", "five-qubit"}, {"5code", "five-qubit"}, {"5", "five-qubit"},
      {"steane", "steane"},         {"7code", "steane"},    {"7", "steane"}};
  auto it = alias.find(name);
  if (it != alias.end()) {
    for (auto& c : builtin_codes()) {
      if (c.name == it->second) return c;
    }
  }
  if (std::filesystem::exists(name)) return load_code_file(name);
  throw std::out_of_range("unknown code: " + name);
}

/// Checks generator commutation, independence and logical-operator relations.
inline std::vector<std::string> check_code(const CodeSpec& c) {
  std::vector<std::string> problems;
  const auto& g = c.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!commutes(g[i], g[j])) problems.push_back("G" + std::to_string(i + 1) + " and G" + std::to_string(j + 1) + " anticommute");
    }
  }
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << g.size()); ++subset) {
    PauliString p(c.n);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if ((subset >> i) & 1U) p = p * g[i];
    }
    if (p.is_identity()) {
      problems.push_back("generators are dependent");
      break;
    }
  }
  for (std::size_t l = 0; l < c.logical_x.size() && l < c.logical_z.size(); ++l) {
    if (commutes(c.logical_x[l], c.logical_z[l])) problems.push_back("logical X commutes with logical Z");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!commutes(c.logical_x[l], g[i]) || !commutes(c.logical_z[l], g[i])) {
        problems.push_back("logical operator anticommutes with G" + std::to_string(i + 1));
      }
    }
  }
  return problems;
}

enum class LineStatus { Target, Exact, SignsResolved, Mismatch };

inline std::string to_string(LineStatus s) {
  switch (s) {
    case LineStatus::Target: return "target";
    case LineStatus::Exact: return "exact";
    case LineStatus::SignsResolved: return "matched_with_signs";
    case LineStatus::Mismatch: return "mismatch";
  }
  return "?";
}

struct LineReport {
  /// 1-based printed line number; line 1 is the target.
  std::size_t line = 1;
  std::string annotation;
  LineStatus status = LineStatus::Target;
  /// Resolved sense per op of the contributing steps, e.g. "Ry(pi/2)@2".
  std::vector<std::string> ops;
  std::vector<int> signs;
  std::vector<std::string> diff;
  /// Forward replay from the target disagrees with the printed line only in term signs.
  bool replay_sign_only = false;
  bool replay_equal = true;
};

struct VerificationReport {
  std::string chain;
  std::vector<LineReport> lines;
  /// The chain with sign choices persisted into its ops.
  DerivationChain resolved;
  PauliSum replayed_terminal{1};
  bool replay_consistent = true;

  bool all_matched() const {
    return std::none_of(lines.begin(), lines.end(), [](const LineReport& l) { return l.status == LineStatus::Mismatch; });
  }
  std::size_t matched_count() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(),
                                                  [](const LineReport& l) { return l.status != LineStatus::Mismatch; }));
  }
  /// First line whose printed term set cannot be produced by the step operations.
  std::optional<std::size_t> first_unusable_line() const {
    for (const auto& l : lines) {
      if (!l.replay_equal && !l.replay_sign_only) return l.line;
    }
    return std::nullopt;
  }
};

/// Human-readable differences between two sums, naming each offending string.
inline std::vector<std::string> diff_sums(const PauliSum& expected, const PauliSum& got) {
  std::vector<std::string> out;
  auto signed_term = [&](const PauliSum& h, PauliKey k, double c) {
    PauliSum t(h.n_qubits());
    t.add(k, c);
    std::string r = render(t);
    return r[0] == '-' ? r : "+" + r;
  };
  auto a = expected.terms().begin(), ae = expected.terms().end();
  auto b = got.terms().begin(), be = got.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back("missing " + signed_term(expected, a->first, a->second));
      ++a;
    } else if (a == ae || b->first < a->first) {
      out.push_back("unexpected " + signed_term(got, b->first, b->second));
      ++b;
    } else {
      if (a->second != b->second) {
        out.push_back("expected " + signed_term(expected, a->first, a->second) + ", got " +
                      signed_term(got, b->first, b->second));
      }
      ++a;
      ++b;
    }
  }
  return out;
}

namespace detail {

inline std::vector<ElementaryOp> signed_ops(const std::vector<ElementaryOp>& ops, std::uint64_t neg_mask) {
  std::vector<ElementaryOp> r;
  for (std::size_t i = 0; i < ops.size(); ++i) r.push_back(with_sign(ops[i], (neg_mask >> i) & 1U ? -1 : 1));
  return r;
}

}  // namespace detail

/// Replays every step; for each printed line searches the rotation senses (then edge senses)
/// that reproduce it exactly.
inline VerificationReport verify_chain(const DerivationChain& chain) {
  VerificationReport rep;
  rep.chain = chain.name;
  rep.resolved = chain;
  LineReport first;
  first.line = 1;
  first.status = LineStatus::Target;
  rep.lines.push_back(first);

  PauliSum current = chain.target;
  PauliSum replay = chain.target;
  std::size_t line = 1;
  std::size_t s = 0;
  while (s < chain.steps.size()) {
    // A unit is a run of stacked steps closed by a step with a printed line.
    std::size_t e = s;
    while (e < chain.steps.size() && !chain.steps[e].expected) ++e;
    if (e == chain.steps.size()) throw ParseError(chain.name + ": trailing step without a printed line");
    std::vector<ElementaryOp> ops;
    std::vector<std::size_t> owner;
    std::string annotation;
    for (std::size_t t = s; t <= e; ++t) {
      for (const auto& op : chain.steps[t].ops) {
        ops.push_back(op);
        owner.push_back(t);
      }
      annotation += (annotation.empty() ? "" : " ") + chain.steps[t].annotation;
    }
    const PauliSum& want = *chain.steps[e].expected;

    std::vector<std::size_t> rot_idx, edge_idx;
    for (std::size_t i = 0; i < ops.size(); ++i) (is_rotation(ops[i]) ? rot_idx : edge_idx).push_back(i);
    if (ops.size() > 24) throw InvalidOperation(chain.name + ": too many operations in one step");

    std::optional<std::uint64_t> found;
    std::uint64_t best_mask = 0;
    std::size_t best_diff = ~std::size_t{0};
    PauliSum best = current;
    auto try_masks = [&](const std::vector<std::size_t>& free) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()) && !found; ++m) {
        std::uint64_t neg = 0;
        for (std::size_t b = 0; b < free.size(); ++b) {
          if ((m >> b) & 1U) neg |= std::uint64_t{1} << free[b];
        }
        PauliSum got = conjugate_all(current, detail::signed_ops(ops, neg));
        if (got == want) {
          found = neg;
          best = got;
          return;
        }
        std::size_t d = diff_sums(want, got).size();
        if (d < best_diff) {
          best_diff = d;
          best_mask = neg;
          best = got;
        }
      }
    };
    try_masks(rot_idx);
    if (!found && !edge_idx.empty()) {
      std::vector<std::size_t> all(ops.size());
      for (std::size_t i = 0; i < ops.size(); ++i) all[i] = i;
      try_masks(all);
    }

    std::uint64_t mask = found ? *found : best_mask;
    LineReport lr;
    lr.line = ++line;
    lr.annotation = annotation;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      int sign = (mask >> i) & 1U ? -1 : 1;
      lr.signs.push_back(sign);
      std::size_t t = owner[i];
      std::size_t local = static_cast<std::size_t>(
          std::count(owner.begin(), owner.begin() + static_cast<std::ptrdiff_t>(i), t));
      rep.resolved.steps[t].sign_choices[local] = sign;
      rep.resolved.steps[t].ops[local] = with_sign(chain.steps[t].ops[local], sign);
      lr.ops.push_back(describe(rep.resolved.steps[t].ops[local]));
    }
    if (!found) {
      lr.status = LineStatus::Mismatch;
      lr.diff = diff_sums(want, best);
    } else {
      lr.status = mask == 0 ? LineStatus::Exact : LineStatus::SignsResolved;
    }
    replay = conjugate_all(replay, detail::signed_ops(ops, mask));
    lr.replay_equal = replay == want;
    lr.replay_sign_only = !lr.replay_equal && replay.same_support(want);
    if (!lr.replay_equal && !lr.replay_sign_only) rep.replay_consistent = false;
    rep.lines.push_back(std::move(lr));
    // Later lines are checked from the printed line, so one slip does not cascade.
    current = want;
    s = e + 1;
  }
  rep.replayed_terminal = replay;
  return rep;
}

inline VerificationReport verify_chain(const CodeSpec& code, InteractionKind kind) {
  return verify_chain(code.chain(kind));
}

/// Applies the inverse of every resolved step, last to first, to a sum.
inline PauliSum reverse_chain(const DerivationChain& resolved, PauliSum h) {
  for (auto it = resolved.steps.rbegin(); it != resolved.steps.rend(); ++it) {
    for (auto op = it->ops.rbegin(); op != it->ops.rend(); ++op) h = conjugate_elementary(h, inverse(*op));
  }
  return h;
}

inline PauliSum forward_chain(const DerivationChain& resolved, PauliSum h) {
  for (const auto& st : resolved.steps) h = conjugate_all(h, st.ops);
  return h;
}

/// Old-method reduction chains of every built-in code, keyed "code/name".
inline std::map<std::string, DerivationChain> old_method_chains() {
  std::map<std::string, DerivationChain> out;
  for (const auto& c : builtin_codes()) {
    for (const auto& [nm, ch] : c.old_chains) out[c.name + "/" + nm] = ch;
  }
  return out;
}

}  // namespace stabgen

#endif  // STABGEN_CODE_LIBRARY_HPP_
