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

#ifndef STABGEN_CLI_HPP_
#define STABGEN_CLI_HPP_

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabgen/compiler.hpp"
#include "stabgen/encoding.hpp"
#include "stabgen/fidelity.hpp"
#include "stabgen/lattice.hpp"

namespace stabgen::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string code = "all";
  std::string kind = "all";
  double j_hz = 20e6;
  double tau_rot_ns = 1.0;
  double sigma = 0.01;
  int trials = 2000;
  std::uint64_t seed = 1;
  std::string distribution = "gaussian";
  int logical = 0;
  std::string out;
  std::string format = "json";
  // extract
  std::string config;
  std::size_t n_logical = 1;
  std::size_t n_phys = 5;
  double lattice_j = 1.0;
  double omega = 1.0;
  double tau = 0.01;
  int reps = 1;
  std::string pattern = "H0";
  std::size_t edge = 2;
  bool no_dense = false;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<CodeSpec> select_codes(const std::string& name) {
  if (name == "all") return builtin_codes();
  try {
    return {find_code(name)};
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

inline std::vector<InteractionKind> select_kinds(const CodeSpec& c, const std::string& kind) {
  std::vector<InteractionKind> out;
  if (kind == "all") {
    for (const auto& [k, ch] : c.chains) out.push_back(k);
    return out;
  }
  InteractionKind k;
  try {
    k = parse_kind(kind);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (!c.chains.count(k)) throw UsageError(c.name + " has no " + to_string(k) + " chain");
  return {k};
}

inline const CodeSpec single_code(const RunConfig& rc) {
  if (rc.code == "all") throw UsageError(rc.command + " needs --code");
  return select_codes(rc.code).front();
}

inline InteractionKind single_kind(const RunConfig& rc, const CodeSpec& c) {
  if (rc.kind == "all") throw UsageError(rc.command + " needs --kind");
  return select_kinds(c, rc.kind).front();
}

inline CostModel cost_model(const RunConfig& rc) {
  try {
    return CostModel::from_coupling(rc.j_hz, rc.tau_rot_ns);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

}  // namespace detail

// ---- verify

inline Json verification_json(const CodeSpec& c, InteractionKind k, const VerificationReport& r) {
  Json j;
  j["code"] = c.name;
  j["kind"] = to_string(k);
  j["chain"] = r.chain;
  j["all_matched"] = r.all_matched();
  j["lines"] = r.lines.size();
  j["matched"] = r.matched_count();
  j["replay_consistent"] = r.replay_consistent;
  j["replayed_terminal"] = render(r.replayed_terminal);
  Json lines = Json::array();
  for (const auto& l : r.lines) {
    Json e;
    e["line"] = l.line;
    e["status"] = to_string(l.status);
    e["annotation"] = l.annotation;
    e["ops"] = l.ops;
    e["signs"] = l.signs;
    e["diff"] = l.diff;
    e["replay_equal"] = l.replay_equal;
    lines.push_back(e);
  }
  j["line_reports"] = lines;
  return j;
}

inline int cmd_verify(const RunConfig& rc, std::ostream& out) {
  bool ok = true;
  Json all = Json::array();
  std::ostringstream text, csv;
  csv << "code,kind,line,status,diff\n";
  for (const auto& c : detail::select_codes(rc.code)) {
    for (auto k : detail::select_kinds(c, rc.kind)) {
      VerificationReport r = verify_chain(c, k);
      ok = ok && r.all_matched();
      all.push_back(verification_json(c, k, r));
      text << c.name << " " << to_string(k) << ": " << r.matched_count() << "/" << r.lines.size() << " lines matched"
           << (r.all_matched() ? "" : " (FAILED)") << "\n";
      for (const auto& l : r.lines) {
        std::string d;
        for (const auto& s : l.diff) d += (d.empty() ? "" : "; ") + s;
        csv << c.name << ',' << to_string(k) << ',' << l.line << ',' << to_string(l.status) << ',' << detail::csv_escape(d)
            << '\n';
        if (l.status == LineStatus::Mismatch) text << "  line " << l.line << ": " << d << "\n";
        else if (!l.replay_equal) text << "  line " << l.line << ": forward replay differs in signs only\n";
      }
    }
  }
  if (rc.format == "json") {
    Json j;
    j["all_matched"] = ok;
    j["chains"] = all;
    out << j.dump(2) << "\n";
  } else {
    out << (rc.format == "csv" ? csv.str() : text.str());
  }
  return ok ? kOk : kCheckFailed;
}

// ---- tables

inline int cmd_tables(const RunConfig& rc, std::ostream& out) {
  CostModel m = detail::cost_model(rc);
  Json rows = Json::array();
  std::ostringstream csv, text;
  csv << "table,code,kind,previous_op,previous_rot,previous_ns,new_op,new_rot,new_ns,improvement_pct,discrepancies\n";
  text << std::fixed << std::setprecision(1);
  for (auto kind : {InteractionKind::XY, InteractionKind::Ising}) {
    std::string table = kind == InteractionKind::XY ? "I" : "II";
    text << "Table " << table << " (" << to_string(kind) << "), tau_op = " << format_number(m.tau_op_ns)
         << " ns, tau_rot = " << format_number(m.tau_rot_ns) << " ns\n";
    text << std::left << std::setw(12) << "code" << std::right << std::setw(14) << "previous/ns" << std::setw(12)
         << "new/ns" << std::setw(14) << "improvement" << "\n";
    for (const auto& c : builtin_codes()) {
      if (!c.chains.count(kind)) continue;
      TableRow r = table_row(c, kind, m);
      Json j;
      j["table"] = table;
      j["code"] = r.code;
      j["kind"] = to_string(kind);
      j["previous"] = {{"n_op", r.previous.n_op_units}, {"n_rot", r.previous.n_rot_units}, {"ns", r.previous.total_ns}};
      j["new"] = {{"n_op", r.current.n_op_units}, {"n_rot", r.current.n_rot_units}, {"ns", r.current.total_ns}};
      j["improvement_pct"] = std::round(r.improvement_pct * 10.0) / 10.0;
      j["discrepancies"] = r.discrepancies;
      rows.push_back(j);
      std::string d;
      for (const auto& s : r.discrepancies) d += (d.empty() ? "" : "; ") + s;
      csv << table << ',' << r.code << ',' << to_string(kind) << ',' << r.previous.n_op_units << ','
          << r.previous.n_rot_units << ',' << format_number(r.previous.total_ns) << ',' << r.current.n_op_units << ','
          << r.current.n_rot_units << ',' << format_number(r.current.total_ns) << ',' << j["improvement_pct"].get<double>()
          << ',' << detail::csv_escape(d) << '\n';
      text << std::left << std::setw(12) << r.code << std::right << std::setw(14) << r.previous.total_ns << std::setw(12)
           << r.current.total_ns << std::setw(13) << r.improvement_pct << "%\n";
      for (const auto& s : r.discrepancies) text << "    note: " << s << "\n";
    }
    text << "\n";
  }
  if (rc.format == "json") {
    Json j;
    j["tau_op_ns"] = m.tau_op_ns;
    j["tau_rot_ns"] = m.tau_rot_ns;
    j["rows"] = rows;
    out << j.dump(2) << "\n";
  } else {
    out << (rc.format == "csv" ? csv.str() : text.str());
  }
  return kOk;
}

// ---- compile / census

inline int cmd_compile(const RunConfig& rc, std::ostream& out) {
  CodeSpec c = detail::single_code(rc);
  InteractionKind k = detail::single_kind(rc, c);
  CostModel m = detail::cost_model(rc);
  PulseSequence seq = compile(c, k);
  if (rc.format == "csv") {
    out << schedule_csv(seq, m);
  } else if (rc.format == "json") {
    out << schedule_json(seq, m).dump(2) << "\n";
  } else {
    CostReport cr = cost(seq, m);
    out << c.name << " " << to_string(k) << ": " << cr.n_op_units << " tau_op + " << cr.n_rot_units
        << " tau_rot = " << format_number(cr.total_ns) << " ns\n";
    for (const auto& e : timeline(seq)) {
      out << "  [" << e.index << "] " << to_string(e.phase) << " " << to_string(e.kind) << " " << e.label << " ("
          << e.ops.size() << " ops)\n";
    }
    for (const auto& n : seq.notes) out << "  note: " << n << "\n";
  }
  return kOk;
}

inline Json census_json(const CodeSpec& c, InteractionKind k, const PulseCensus& p) {
  Json j;
  j["code"] = c.name;
  j["kind"] = to_string(k);
  j["n_op_units"] = p.n_op_units;
  j["n_rot_units"] = p.n_rot_units;
  j["n_interaction_uses"] = p.n_interaction_uses;
  j["n_single_rotations"] = p.n_single_rotations;
  j["n_block_pulses"] = p.n_block_pulses;
  j["n_pulses_total"] = p.n_pulses_total;
  return j;
}

inline int cmd_census(const RunConfig& rc, std::ostream& out) {
  Json rows = Json::array();
  std::ostringstream csv, text;
  csv << "code,kind,n_op_units,n_rot_units,n_interaction_uses,n_single_rotations,n_block_pulses,n_pulses_total\n";
  for (const auto& c : detail::select_codes(rc.code)) {
    for (auto k : detail::select_kinds(c, rc.kind)) {
      PulseCensus p = pulse_census(compile(c, k));
      rows.push_back(census_json(c, k, p));
      csv << c.name << ',' << to_string(k) << ',' << p.n_op_units << ',' << p.n_rot_units << ',' << p.n_interaction_uses
          << ',' << p.n_single_rotations << ',' << p.n_block_pulses << ',' << p.n_pulses_total << '\n';
      text << c.name << " " << to_string(k) << ": " << p.n_pulses_total << " pulses (" << p.n_single_rotations
           << " rotations, " << p.n_block_pulses << " block pulses, " << p.n_interaction_uses << " edge uses)\n";
    }
  }
  if (rc.format == "json") out << rows.dump(2) << "\n";
  else out << (rc.format == "csv" ? csv.str() : text.str());
  return kOk;
}

// ---- prepare

inline int cmd_prepare(const RunConfig& rc, std::ostream& out) {
  if (rc.logical != 0 && rc.logical != 1) throw UsageError("--logical must be 0 or 1");
  bool ok = true;
  Json rows = Json::array();
  std::ostringstream csv, text;
  csv << "code,logical,generator,eigenvalue,passed\n";
  for (const auto& c : detail::select_codes(rc.code)) {
    StateVector s = prepare_logical(c, rc.logical);
    auto chk = stabilizer_eigencheck(s, c);
    double z = logical_z_value(s, c);
    bool z_ok = std::abs(z - (rc.logical ? -1.0 : 1.0)) < kEigenTolerance;
    Json j;
    j["code"] = c.name;
    j["logical"] = rc.logical;
    Json gens = Json::array();
    text << c.name << " |" << rc.logical << ">:\n";
    for (std::size_t i = 0; i < chk.size(); ++i) {
      double ev = expectation(c.generators[i], s);
      gens.push_back({{"generator", render(c.generators[i])}, {"eigenvalue", std::round(ev * 1e9) / 1e9}, {"passed", bool(chk[i])}});
      csv << c.name << ',' << rc.logical << ',' << render(c.generators[i]) << ',' << format_number(std::round(ev * 1e9) / 1e9)
          << ',' << (chk[i] ? "true" : "false") << '\n';
      text << "  G" << i + 1 << " = " << std::left << std::setw(24) << render(c.generators[i]) << std::right
           << format_number(std::round(ev * 1e9) / 1e9) << (chk[i] ? "" : "  FAILED") << "\n";
      ok = ok && chk[i];
    }
    j["generators"] = gens;
    j["logical_z"] = std::round(z * 1e9) / 1e9;
    j["passed"] = z_ok && std::all_of(chk.begin(), chk.end(), [](bool b) { return b; });
    ok = ok && z_ok;
    text << "  logical Z = " << format_number(std::round(z * 1e9) / 1e9) << (z_ok ? "" : "  FAILED") << "\n";
    rows.push_back(j);
  }
  if (rc.format == "json") out << rows.dump(2) << "\n";
  else out << (rc.format == "csv" ? csv.str() : text.str());
  return ok ? kOk : kCheckFailed;
}

// ---- extract

inline LatticeConfig lattice_config(const RunConfig& rc) {
  if (!rc.config.empty()) return load_lattice_config(rc.config);
  LatticeConfig c;
  InteractionKind k = InteractionKind::XY;
  if (rc.kind != "all") {
    try {
      k = parse_kind(rc.kind);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  c.spec = LatticeSpec::uniform(rc.n_logical, rc.n_phys, k, rc.lattice_j, rc.omega);
  c.tau = rc.tau;
  c.n = rc.reps;
  c.pattern = rc.pattern;
  c.edge = rc.edge;
  if (c.pattern != "H0" && c.pattern != "edge") throw UsageError("--pattern must be H0 or edge");
  return c;
}

inline int cmd_extract(const RunConfig& rc, std::ostream& out) {
  LatticeConfig c = lattice_config(rc);
  validate(c.spec);
  PerturbationReport r = perturbation_norm_report(c.spec, make_pattern(c), c.tau, c.n, !rc.no_dense);
  Json j = to_json(r);
  if (rc.format == "json") {
    out << j.dump(2) << "\n";
  } else if (rc.format == "csv") {
    out << "pattern,kind,n_logical,n_phys,tau,n,error_norm,first_order_norm,estimate_norm,ratio,realizable\n";
    out << r.pattern << ',' << to_string(r.kind) << ',' << r.n_logical << ',' << r.n_phys << ',' << format_number(r.tau)
        << ',' << r.n << ',' << r.error_norm << ',' << r.first_order_norm << ',' << r.estimate_norm << ',' << r.ratio << ','
        << (r.violations.empty() ? "true" : "false") << '\n';
  } else {
    out << r.pattern << " on " << r.n_logical << "x" << r.n_phys << " " << to_string(r.kind) << ", tau = " << r.tau
        << ", n = " << r.n << "\n";
    out << "  effective: " << render(r.ideal) << "\n";
    out << "  error norm " << r.error_norm << ", estimate " << r.estimate_norm << ", ratio " << r.ratio << "\n";
    for (const auto& v : r.violations) out << "  violation: " << v << "\n";
  }
  return r.violations.empty() ? kOk : kCheckFailed;
}

// ---- fidelity

inline int cmd_fidelity(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  CodeSpec c = detail::single_code(rc);
  InteractionKind k = detail::single_kind(rc, c);
  if (rc.sigma < 0) throw UsageError("--sigma must be non-negative");
  if (rc.trials < 1) throw UsageError("--trials must be positive");
  FidelityOptions o;
  o.sigma = rc.sigma;
  o.trials = rc.trials;
  o.seed = rc.seed;
  try {
    o.distribution = parse_distribution(rc.distribution);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  o.model = detail::cost_model(rc);
  FidelityResult r = fidelity_monte_carlo(compile(c, k), c, o);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  if (rc.format == "json") {
    out << to_json(r).dump(2) << "\n";
  } else if (rc.format == "csv") {
    out << "code,kind,sigma,trials,seed,distribution,mean_F,stderr,predicted_F,second_order_F,N_P,T\n";
    out << std::setprecision(12) << r.code << ',' << to_string(r.kind) << ',' << r.sigma << ',' << r.trials << ',' << r.seed
        << ',' << to_string(r.distribution) << ',' << r.mean_f << ',' << r.stderr_f << ',' << r.predicted_f << ','
        << r.second_order_f << ',' << r.n_p << ',' << r.t_ns << '\n';
  } else {
    out << std::setprecision(8) << r.code << " " << to_string(r.kind) << ", sigma = " << r.sigma << ", " << r.trials
        << " trials\n  mean F = " << r.mean_f << " +- " << r.stderr_f << "\n  formula 1 - N_P s^2/8 = " << r.predicted_f
        << " (N_P = " << r.n_p << ", T = " << r.t_ns << " ns)\n  second order = " << r.second_order_f << "\n";
  }
  return kOk;
}

// ---- entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"stabgen: stabilizer Hamiltonian pulse compiler and verifier", "stabgen"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&](CLI::App* s) {
    s->add_option("--code", rc.code, "code name, alias or fixture path (default: all)");
    s->add_option("--kind", rc.kind, "interaction kind: XY, Ising or all");
    s->add_option("--j-hz", rc.j_hz, "device coupling J/(2 pi) in Hz")->check(CLI::PositiveNumber);
    s->add_option("--tau-rot-ns", rc.tau_rot_ns, "single-qubit rotation time in ns")->check(CLI::NonNegativeNumber);
    s->add_option("--out", rc.out, "write the report to this file");
    s->add_option("--format", rc.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto* verify = app.add_subcommand("verify", "replay derivation chains line by line");
  auto* tables = app.add_subcommand("tables", "reproduce the generation-time tables");
  auto* compile_cmd = app.add_subcommand("compile", "compile a pulse schedule");
  auto* census = app.add_subcommand("census", "count pulses in compiled schedules");
  auto* prepare = app.add_subcommand("prepare", "prepare an encoded logical state and check it");
  auto* extract = app.add_subcommand("extract", "toggling-frame extraction on a qubit lattice");
  auto* fidelity = app.add_subcommand("fidelity", "Monte Carlo pulse-error fidelity");
  for (auto* s : {verify, tables, compile_cmd, census, prepare, extract, fidelity}) add_common(s);

  prepare->add_option("--logical", rc.logical, "logical basis state 0 or 1");

  extract->add_option("--config", rc.config, "lattice config file (key = value)");
  extract->add_option("--n-logical", rc.n_logical, "number of arrays")->check(CLI::PositiveNumber);
  extract->add_option("--n-phys", rc.n_phys, "qubits per array")->check(CLI::PositiveNumber);
  extract->add_option("--J", rc.lattice_j, "uniform coupling");
  extract->add_option("--omega", rc.omega, "uniform Zeeman term");
  extract->add_option("--tau", rc.tau, "frame duration")->check(CLI::PositiveNumber);
  extract->add_option("--n", rc.reps, "cycle repetitions")->check(CLI::PositiveNumber);
  extract->add_option("--pattern", rc.pattern, "H0 or edge");
  extract->add_option("--edge", rc.edge, "edge (e, e+1), 1-based e")->check(CLI::PositiveNumber);
  extract->add_flag("--no-dense", rc.no_dense, "skip the exact dense oracle");

  fidelity->add_option("--sigma", rc.sigma, "pulse angle standard deviation in rad");
  fidelity->add_option("--trials", rc.trials, "Monte Carlo trials");
  fidelity->add_option("--seed", rc.seed, "base seed");
  fidelity->add_option("--distribution", rc.distribution, "gaussian or uniform");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  rc.command = app.get_subcommands().front()->get_name();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!rc.out.empty()) {
    file.open(rc.out);
    if (!file) {
      err << "error: cannot write " << rc.out << "\n";
      return kUsage;
    }
    sink = &file;
  }
  try {
    if (rc.command == "verify") return cmd_verify(rc, *sink);
    if (rc.command == "tables") return cmd_tables(rc, *sink);
    if (rc.command == "compile") return cmd_compile(rc, *sink);
    if (rc.command == "census") return cmd_census(rc, *sink);
    if (rc.command == "prepare") return cmd_prepare(rc, *sink);
    if (rc.command == "extract") return cmd_extract(rc, *sink);
    if (rc.command == "fidelity") return cmd_fidelity(rc, *sink, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace stabgen::cli

#endif  // STABGEN_CLI_HPP_
