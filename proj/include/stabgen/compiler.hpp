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

#ifndef STABGEN_COMPILER_HPP_
#define STABGEN_COMPILER_HPP_

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabgen/code_library.hpp"
#include "stabgen/elementary.hpp"
#include "stabgen/pauli.hpp"
#include "stabgen/text.hpp"

namespace stabgen {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A duration a*tau_op + b*tau_rot.
struct Duration {
  int op = 0;
  int rot = 0;
  Duration& operator+=(Duration o) {
    op += o.op;
    rot += o.rot;
    return *this;
  }
  friend Duration operator+(Duration a, Duration b) { return a += b; }
  friend Duration operator*(int k, Duration d) { return {k * d.op, k * d.rot}; }
  friend bool operator==(Duration a, Duration b) { return a.op == b.op && a.rot == b.rot; }
  std::string expr() const {
    return std::to_string(op) + "*tau_op + " + std::to_string(rot) + "*tau_rot";
  }
};

/// Block overheads of the accounting, in tau_rot units unless noted.
struct Accounting {
  /// One interaction block: tau_op + 4 tau_rot for exp(+i tau H_op), tau_op + 5 tau_rot for exp(-i tau H_op).
  Duration interaction_plus{1, 4};
  Duration interaction_minus{1, 5};
  /// A parallel rotation layer, paid once on each side of the conjugation.
  int rotation_half = 1;
  /// Extracting the core Hamiltonian from the always-on lattice terms.
  int extraction_single_qubit = 10;
  int extraction_two_body = 4;

  Duration interaction_block() const { return interaction_plus + interaction_minus; }
  Duration rotation_group() const { return {0, 2 * rotation_half}; }
};

struct CostModel {
  double tau_op_ns = 6.25;
  double tau_rot_ns = 1.0;

  /// tau_op = pi / (4 J) with J = 2 pi * j_hz.
  static CostModel from_coupling(double j_hz, double tau_rot_ns) {
    if (!(j_hz > 0) || !(tau_rot_ns >= 0)) throw std::invalid_argument("CostModel: J must be positive, tau_rot non-negative");
    double j = 2.0 * std::numbers::pi * j_hz;
    return {std::numbers::pi / (4.0 * j) * 1e9, tau_rot_ns};
  }
  double ns(Duration d) const { return d.op * tau_op_ns + d.rot * tau_rot_ns; }
};

enum class StepKind { RotationGroup, InteractionBlock, ExtractionBlock };

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::RotationGroup: return "rotation_group";
    case StepKind::InteractionBlock: return "interaction_block";
    case StepKind::ExtractionBlock: return "extraction_block";
  }
  return "?";
}

/// A conjugation layer. ops act on the Hamiltonian in order; the layer is paid on both
/// sides of the core evolution.
struct ScheduledStep {
  StepKind kind = StepKind::RotationGroup;
  std::vector<ElementaryOp> ops;
  Duration duration;
  std::size_t segment = 0;
  std::string label;
  /// Runs in parallel with the neighbouring interaction block.
  bool concurrent = false;
};

struct PulseSequence {
  std::string code;
  InteractionKind kind = InteractionKind::XY;
  std::size_t n = 1;
  PauliSum h_ini{1};
  /// Per segment: extraction prologue first, then layers from h_ini outward.
  std::vector<ScheduledStep> steps;
  std::size_t segments = 0;
  PauliSum target{1};
  std::vector<std::string> notes;

  Duration total() const {
    Duration d;
    for (const auto& s : steps) d += s.duration;
    return d;
  }
};

/// Conjugates h_ini through every segment's layers and sums the segments.
inline PauliSum effective_hamiltonian(const PulseSequence& seq) {
  PauliSum total(seq.n);
  for (std::size_t seg = 0; seg < seq.segments; ++seg) {
    PauliSum h = seq.h_ini;
    for (const auto& st : seq.steps) {
      if (st.segment == seg) h = conjugate_all(h, st.ops);
    }
    total += h;
  }
  return total;
}

namespace detail {

inline std::vector<ElementaryOp> single_qubit_candidates(std::size_t q) {
  std::vector<ElementaryOp> c;
  for (long num : {1L, -1L}) {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) c.push_back(AxisRotation{q, a, Angle::pi_fraction(num, 2)});
  }
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) c.push_back(AxisRotation{q, a, Angle::pi_fraction(1, 1)});
  return c;
}

inline PauliSum restrict_to(const PauliSum& h, std::uint64_t qubits) {
  PauliSum r(h.n_qubits());
  for (const auto& [k, c] : h.terms()) {
    if (((k.x | k.z) & ~qubits) == 0) r.add(k, c);
  }
  return r;
}

}  // namespace detail

/// Finds one single-qubit rotation per qubit (or none) mapping `from` onto `to` by conjugation.
inline std::optional<std::vector<ElementaryOp>> find_alignment(const PauliSum& from, const PauliSum& to) {
  std::size_t n = from.n_qubits();
  bool single = true;
  for (const auto& [k, c] : from.terms()) single = single && std::popcount(k.x | k.z) == 1;
  for (const auto& [k, c] : to.terms()) single = single && std::popcount(k.x | k.z) == 1;
  std::vector<ElementaryOp> ops;
  if (single) {
    if ((from.support() | to.support()) != from.support()) return std::nullopt;
    for (std::size_t q = 0; q < n; ++q) {
      std::uint64_t bit = std::uint64_t{1} << q;
      if (!(from.support() & bit)) continue;
      PauliSum a = detail::restrict_to(from, bit), b = detail::restrict_to(to, bit);
      if (a == b) continue;
      bool ok = false;
      for (const auto& cand : detail::single_qubit_candidates(q)) {
        if (conjugate_elementary(a, cand) == b) {
          ops.push_back(cand);
          ok = true;
          break;
        }
      }
      if (!ok) return std::nullopt;
    }
    return ops;
  }
  std::vector<std::size_t> qs;
  for (std::size_t q = 0; q < n; ++q) {
    if ((from.support() >> q) & 1U) qs.push_back(q);
  }
  if (qs.size() > 6) return std::nullopt;
  std::vector<std::vector<ElementaryOp>> cands;
  for (std::size_t q : qs) cands.push_back(detail::single_qubit_candidates(q));
  // Option 0 means no rotation; enumerate by increasing number of rotated qubits.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < qs.size(); ++i) combos *= 10;
  std::optional<std::vector<ElementaryOp>> best;
  for (std::size_t idx = 0; idx < combos; ++idx) {
    std::vector<ElementaryOp> trial;
    std::size_t r = idx;
    for (std::size_t i = 0; i < qs.size(); ++i, r /= 10) {
      if (r % 10) trial.push_back(cands[i][r % 10 - 1]);
    }
    if (best && trial.size() >= best->size()) continue;
    if (conjugate_all(from, trial) == to) best = trial;
  }
  return best;
}

inline std::optional<PauliSum> wrapped_target(const PauliSum& target, std::optional<Axis> wrap,
                                              std::vector<ElementaryOp>* layer = nullptr) {
  if (!wrap) return std::nullopt;
  std::vector<ElementaryOp> ops;
  for (std::size_t q = 0; q < target.n_qubits(); ++q) ops.push_back(AxisRotation{q, *wrap, Angle::pi_fraction(1, 2)});
  if (layer) *layer = ops;
  return conjugate_all(target, ops);
}

inline bool is_two_body_terminal(const PauliSum& h) {
  for (const auto& [k, c] : h.terms()) {
    if (std::popcount(k.x | k.z) > 1) return true;
  }
  return false;
}

/// Builds the forward schedule from h_ini to the chain's target (and its wrapped copy).
inline PulseSequence compile(const CodeSpec& code, InteractionKind kind, const Accounting& acc = {}) {
  const DerivationChain& chain = code.chain(kind);
  VerificationReport rep = verify_chain(chain);
  if (auto bad = rep.first_unusable_line()) {
    std::string msg = chain.name + ": chain does not verify at line " + std::to_string(*bad);
    for (const auto& l : rep.lines) {
      if (l.line == *bad) {
        for (const auto& d : l.diff) msg += "; " + d;
      }
    }
    throw CompileError(msg);
  }
  PulseSequence seq;
  seq.code = code.name;
  seq.kind = kind;
  seq.n = code.n;
  seq.h_ini = chain.h_ini;
  const PauliSum& terminal = rep.replayed_terminal;
  for (const auto& l : rep.lines) {
    if (l.status == LineStatus::Mismatch) {
      std::string d;
      for (const auto& s : l.diff) d += (d.empty() ? "" : "; ") + s;
      seq.notes.push_back("printed line " + std::to_string(l.line) + " differs from the replay (" + d + ")");
    }
  }
  if (terminal != chain.terminal()) {
    seq.notes.push_back("using replayed terminal " + render(terminal) + " instead of printed " + render(chain.terminal()));
  }

  auto align = find_alignment(chain.h_ini, terminal);
  if (!align) throw CompileError(chain.name + ": no single-qubit rotation maps h_ini onto the terminal " + render(terminal));

  std::vector<ScheduledStep> layers;
  int prologue = is_two_body_terminal(terminal) ? acc.extraction_two_body : acc.extraction_single_qubit;
  layers.push_back({StepKind::ExtractionBlock, {}, {0, prologue}, 0, "h_ini extraction", false});
  if (!align->empty()) layers.push_back({StepKind::RotationGroup, *align, acc.rotation_group(), 0, "terminal alignment", false});

  // Units of stacked steps, applied in reverse with inverted senses.
  const auto& steps = rep.resolved.steps;
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t s = 0; s < steps.size();) {
    std::size_t e = s;
    while (e < steps.size() && !steps[e].expected) ++e;
    units.emplace_back(s, e);
    s = e + 1;
  }
  for (auto u = units.rbegin(); u != units.rend(); ++u) {
    std::vector<ElementaryOp> rot, edge;
    for (std::size_t t = u->first; t <= u->second; ++t) {
      for (const auto& op : steps[t].ops) (is_rotation(op) ? rot : edge).push_back(op);
    }
    std::string label = steps[u->first].annotation;
    for (std::size_t t = u->first + 1; t <= u->second; ++t) label += " " + steps[t].annotation;
    auto inv = [](const std::vector<ElementaryOp>& ops) {
      std::vector<ElementaryOp> r;
      for (auto it = ops.rbegin(); it != ops.rend(); ++it) r.push_back(inverse(*it));
      return r;
    };
    // Forward the unit applied rotations before edges, so the inverse undoes edges first.
    if (!edge.empty()) layers.push_back({StepKind::InteractionBlock, inv(edge), acc.interaction_block(), 0, label, false});
    if (!rot.empty()) {
      bool conc = !edge.empty();
      layers.push_back({StepKind::RotationGroup, inv(rot), conc ? Duration{} : acc.rotation_group(), 0, label, conc});
    }
  }
  seq.steps = layers;
  seq.segments = 1;
  seq.target = chain.target;
  std::vector<ElementaryOp> wrap_layer;
  if (auto wt = wrapped_target(chain.target, chain.wrap_axis, &wrap_layer)) {
    for (auto st : layers) {
      st.segment = 1;
      seq.steps.push_back(st);
    }
    seq.steps.push_back({StepKind::RotationGroup, wrap_layer, acc.rotation_group(), 1, "second segment wrap", false});
    seq.segments = 2;
    seq.target += *wt;
  }
  PauliSum eff = effective_hamiltonian(seq);
  if (eff != seq.target) throw CompileError(chain.name + ": compiled sequence yields " + render(eff));
  return seq;
}

struct CostReport {
  int n_op_units = 0;
  int n_rot_units = 0;
  double total_ns = 0.0;
};

inline CostReport cost(const PulseSequence& seq, const CostModel& model) {
  Duration d = seq.total();
  return {d.op, d.rot, model.ns(d)};
}

/// Cost of one old-method reduction chain: its blocks and rotation lines plus the extraction of its terminal.
inline Duration old_chain_cost(const DerivationChain& ch, const Accounting& acc = {}) {
  Duration d;
  for (const auto& st : ch.steps) {
    bool edge = std::any_of(st.ops.begin(), st.ops.end(), is_edge);
    bool rot = std::any_of(st.ops.begin(), st.ops.end(), is_rotation);
    if (edge) d += acc.interaction_block();
    else if (rot) d += acc.rotation_group();
  }
  d.rot += is_two_body_terminal(ch.terminal()) ? acc.extraction_two_body : acc.extraction_single_qubit;
  return d;
}

struct BaselineItem {
  std::string label;
  int count = 1;
  Duration each;
  bool from_chain = false;
};

struct BaselineReport {
  std::vector<BaselineItem> items;
  Duration total;
  CostReport cost;
};

inline BaselineReport baseline_cost(const CodeSpec& code, InteractionKind kind, const CostModel& model = {},
                                    const Accounting& acc = {}) {
  auto it = code.baselines.find(kind);
  if (it == code.baselines.end()) throw std::out_of_range(code.name + ": no baseline for " + to_string(kind));
  BaselineReport r;
  for (const auto& e : it->second) {
    BaselineItem item{e.label, e.count, {}, false};
    if (e.stated) {
      item.each = {e.stated->first, e.stated->second};
    } else {
      const auto& ch = code.old_chains.at(e.old_chain);
      if (!verify_chain(ch).all_matched()) throw CompileError("old-method chain " + e.old_chain + " does not verify");
      item.each = old_chain_cost(ch, acc);
      item.from_chain = true;
    }
    r.total += e.count * item.each;
    r.items.push_back(item);
  }
  r.cost = {r.total.op, r.total.rot, model.ns(r.total)};
  return r;
}

enum class Phase { Opening, Core, Closing };

inline std::string to_string(Phase p) {
  return p == Phase::Opening ? "open" : p == Phase::Core ? "core" : "close";
}

/// One entry of the time-ordered schedule.
struct TimelineEntry {
  std::size_t index = 0;
  std::size_t segment = 0;
  Phase phase = Phase::Opening;
  StepKind kind = StepKind::RotationGroup;
  std::vector<ElementaryOp> ops;
  Duration start;
  Duration duration;
  std::string label;
};

/// Flattens layers to time order: per segment, outer layers inverted, the core, then layers outward.
inline std::vector<TimelineEntry> timeline(const PulseSequence& seq, const Accounting& acc = {}) {
  std::vector<TimelineEntry> out;
  Duration t;
  auto emit = [&](const ScheduledStep& st, Phase ph, std::vector<ElementaryOp> ops, Duration d) {
    TimelineEntry e{out.size(), st.segment, ph, st.kind, std::move(ops), t, d, st.label};
    t += d;
    out.push_back(std::move(e));
  };
  for (std::size_t seg = 0; seg < seq.segments; ++seg) {
    std::vector<const ScheduledStep*> layers;
    const ScheduledStep* core = nullptr;
    for (const auto& st : seq.steps) {
      if (st.segment != seg) continue;
      if (st.kind == StepKind::ExtractionBlock) core = &st;
      else layers.push_back(&st);
    }
    auto half = [&](const ScheduledStep& st, const std::vector<ElementaryOp>& ops) -> Duration {
      if (st.kind == StepKind::RotationGroup) return st.concurrent ? Duration{} : Duration{0, acc.rotation_half};
      const ElementaryOp& op = ops.front();
      double th = std::holds_alternative<XYEdge>(op) ? std::get<XYEdge>(op).theta.radians()
                                                     : std::get<IsingEdge>(op).theta.radians();
      return th > 0 ? acc.interaction_minus : acc.interaction_plus;
    };
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
      std::vector<ElementaryOp> ops;
      for (auto op = (*it)->ops.rbegin(); op != (*it)->ops.rend(); ++op) ops.push_back(inverse(*op));
      emit(**it, Phase::Opening, ops, half(**it, ops));
    }
    if (core) emit(*core, Phase::Core, {}, core->duration);
    for (const auto* st : layers) emit(*st, Phase::Closing, st->ops, half(*st, st->ops));
  }
  return out;
}

struct PulseCensus {
  int n_op_units = 0;
  int n_rot_units = 0;
  /// Two-qubit edge evolutions in the time-ordered schedule.
  int n_interaction_uses = 0;
  /// Single-qubit rotation pulses in the time-ordered schedule.
  int n_single_rotations = 0;
  /// pi-pulse slots inside interaction and extraction blocks.
  int n_block_pulses = 0;
  int n_pulses_total = 0;
};

inline PulseCensus pulse_census(const PulseSequence& seq, const Accounting& acc = {}) {
  PulseCensus c;
  Duration d = seq.total();
  c.n_op_units = d.op;
  c.n_rot_units = d.rot;
  for (const auto& st : seq.steps) {
    for (const auto& op : st.ops) {
      if (is_edge(op)) c.n_interaction_uses += 2;
      else c.n_single_rotations += 2;
    }
    if (st.kind == StepKind::InteractionBlock) c.n_block_pulses += acc.interaction_block().rot;
    if (st.kind == StepKind::ExtractionBlock) c.n_block_pulses += st.duration.rot;
  }
  c.n_pulses_total = c.n_interaction_uses + c.n_single_rotations + c.n_block_pulses;
  return c;
}

namespace detail {

inline nlohmann::ordered_json op_json(const ElementaryOp& op) {
  nlohmann::ordered_json j;
  if (const auto* r = std::get_if<AxisRotation>(&op)) {
    j["type"] = "rotation";
    j["qubits"] = {r->qubit + 1};
    j["axis"] = std::string(1, axis_char(r->axis));
    j["angle"] = r->angle.to_string();
  } else if (const auto* e = std::get_if<XYEdge>(&op)) {
    j["type"] = "xy_edge";
    j["qubits"] = {e->i + 1, e->j + 1};
    j["edge"] = std::to_string(e->i + 1) + "-" + std::to_string(e->j + 1);
    j["angle"] = e->theta.to_string();
  } else if (const auto* e2 = std::get_if<IsingEdge>(&op)) {
    j["type"] = "ising_edge";
    j["qubits"] = {e2->i + 1, e2->j + 1};
    j["edge"] = std::to_string(e2->i + 1) + "-" + std::to_string(e2->j + 1);
    j["angle"] = e2->theta.to_string();
  } else {
    j["type"] = "pauli_evolution";
    j["angle"] = std::get<PauliEvolution>(op).theta.to_string();
  }
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json schedule_json(const PulseSequence& seq, const CostModel& model) {
  nlohmann::ordered_json j;
  j["code"] = seq.code;
  j["kind"] = to_string(seq.kind);
  j["h_ini"] = render(seq.h_ini);
  j["target"] = render(seq.target);
  CostReport c = cost(seq, model);
  j["cost"] = {{"tau_op_units", c.n_op_units}, {"tau_rot_units", c.n_rot_units}, {"total_ns", c.total_ns}};
  j["notes"] = seq.notes;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& e : timeline(seq)) {
    nlohmann::ordered_json s;
    s["index"] = e.index;
    s["segment"] = e.segment + 1;
    s["phase"] = to_string(e.phase);
    s["kind"] = to_string(e.kind);
    std::vector<std::size_t> qubits;
    nlohmann::ordered_json ops = nlohmann::ordered_json::array();
    for (const auto& op : e.ops) {
      ops.push_back(detail::op_json(op));
      for (std::size_t q = 0; q < seq.n; ++q) {
        if ((op_support(op) >> q) & 1U) qubits.push_back(q + 1);
      }
    }
    std::sort(qubits.begin(), qubits.end());
    s["qubits"] = qubits;
    s["ops"] = ops;
    s["label"] = e.label;
    s["t_start_expr"] = e.start.expr();
    s["duration_expr"] = e.duration.expr();
    s["t_start_ns"] = model.ns(e.start);
    s["duration_ns"] = model.ns(e.duration);
    steps.push_back(s);
  }
  j["steps"] = steps;
  return j;
}

/// Columns: index,segment,phase,kind,op,qubits,axis_or_edge,angle,t_start_expr,duration_expr,t_start_ns,duration_ns
inline std::string schedule_csv(const PulseSequence& seq, const CostModel& model) {
  std::ostringstream o;
  o << "index,segment,phase,kind,op,qubits,axis_or_edge,angle,t_start_expr,duration_expr,t_start_ns,duration_ns\n";
  for (const auto& e : timeline(seq)) {
    auto row = [&](const std::string& op, const std::string& qubits, const std::string& ax, const std::string& angle) {
      o << e.index << ',' << e.segment + 1 << ',' << to_string(e.phase) << ',' << to_string(e.kind) << ',' << op << ','
        << qubits << ',' << ax << ',' << angle << ',' << e.start.expr() << ',' << e.duration.expr() << ','
        << format_number(model.ns(e.start)) << ',' << format_number(model.ns(e.duration)) << '\n';
    };
    if (e.ops.empty()) row("extraction", "", "", "");
    for (const auto& op : e.ops) {
      auto j = detail::op_json(op);
      std::string qs;
      for (const auto& q : j["qubits"]) qs += (qs.empty() ? "" : " ") + std::to_string(q.get<std::size_t>());
      row(j["type"].get<std::string>(), qs, j.contains("axis") ? j["axis"].get<std::string>() : j["edge"].get<std::string>(),
          j["angle"].get<std::string>());
    }
  }
  return o.str();
}

struct TableRow {
  std::string code;
  InteractionKind kind = InteractionKind::XY;
  CostReport previous;
  CostReport current;
  double improvement_pct = 0.0;
  PrintedRow printed;
  std::vector<std::string> discrepancies;
};

inline TableRow table_row(const CodeSpec& code, InteractionKind kind, const CostModel& model) {
  TableRow r;
  r.code = code.name;
  r.kind = kind;
  r.previous = baseline_cost(code, kind, model).cost;
  r.current = cost(compile(code, kind), model);
  r.improvement_pct = r.previous.total_ns > 0 ? 100.0 * (r.previous.total_ns - r.current.total_ns) / r.previous.total_ns : 0.0;
  auto it = code.printed.find(kind);
  if (it != code.printed.end()) {
    r.printed = it->second;
    const auto& p = it->second;
    auto pair = [](int a, int b) { return std::to_string(a) + "*tau_op + " + std::to_string(b) + "*tau_rot"; };
    if (p.table_new && (p.table_new->op != r.current.n_op_units || p.table_new->rot != r.current.n_rot_units)) {
      r.discrepancies.push_back("table prints new time " + pair(p.table_new->op, p.table_new->rot) + ", computed " +
                                pair(r.current.n_op_units, r.current.n_rot_units));
    }
    if (p.text_new && (p.text_new->op != r.current.n_op_units || p.text_new->rot != r.current.n_rot_units)) {
      r.discrepancies.push_back("text prints new time " + pair(p.text_new->op, p.text_new->rot) + ", computed " +
                                pair(r.current.n_op_units, r.current.n_rot_units));
    }
    if (p.table_previous && (p.table_previous->op != r.previous.n_op_units || p.table_previous->rot != r.previous.n_rot_units)) {
      r.discrepancies.push_back("table prints previous time " + pair(p.table_previous->op, p.table_previous->rot));
    }
    if (p.text_previous_ns && p.table_previous && *p.text_previous_ns != p.table_previous->ns) {
      r.discrepancies.push_back("text prints previous time " + format_number(*p.text_previous_ns) + " ns, table " +
                                format_number(p.table_previous->ns) + " ns");
    }
  }
  return r;
}

}  // namespace stabgen

#endif  // STABGEN_COMPILER_HPP_
