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

#ifndef STABGEN_LATTICE_HPP_
#define STABGEN_LATTICE_HPP_

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "stabgen/code_library.hpp"
#include "stabgen/dense.hpp"
#include "stabgen/elementary.hpp"
#include "stabgen/pauli.hpp"
#include "stabgen/text.hpp"

namespace stabgen {

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Arrays k = 0..n_logical-1, each a chain of n_phys qubits i = 0..n_phys-1.
/// intra_J[(k, i)] couples (k, i)-(k, i+1); inter_J[(k, i)] couples (k, i)-(k+1, i).
struct LatticeSpec {
  using Site = std::pair<std::size_t, std::size_t>;

  std::size_t n_logical = 1;
  std::size_t n_phys = 5;
  InteractionKind coupling_kind = InteractionKind::XY;
  std::map<Site, double> intra_J;
  std::map<Site, double> inter_J;
  std::map<Site, double> omega;

  std::size_t n_qubits() const { return n_logical * n_phys; }
  std::size_t qubit(std::size_t k, std::size_t i) const { return k * n_phys + i; }

  static LatticeSpec uniform(std::size_t n_logical, std::size_t n_phys, InteractionKind kind, double j,
                             double om) {
    LatticeSpec s{n_logical, n_phys, kind, {}, {}, {}};
    for (std::size_t k = 0; k < n_logical; ++k) {
      for (std::size_t i = 0; i < n_phys; ++i) {
        s.omega[{k, i}] = om;
        if (i + 1 < n_phys) s.intra_J[{k, i}] = j;
        if (k + 1 < n_logical) s.inter_J[{k, i}] = j;
      }
    }
    return s;
  }

  double max_J() const {
    double m = 0.0;
    for (const auto& [s, v] : intra_J) m = std::max(m, std::abs(v));
    for (const auto& [s, v] : inter_J) m = std::max(m, std::abs(v));
    return m;
  }
  double max_omega() const {
    double m = 0.0;
    for (const auto& [s, v] : omega) m = std::max(m, std::abs(v));
    return m;
  }
};

inline void validate(const LatticeSpec& s) {
  if (s.n_logical == 0 || s.n_phys == 0) throw GeometryError("lattice needs at least one array and one qubit");
  if (s.n_qubits() > kMaxQubits) throw GeometryError("lattice exceeds " + std::to_string(kMaxQubits) + " qubits");
  auto check = [&](const std::map<LatticeSpec::Site, double>& m, std::size_t kmax, std::size_t imax,
                   const char* what) {
    for (const auto& [site, v] : m) {
      if (!std::isfinite(v)) throw GeometryError(std::string(what) + ": non-finite strength");
      if (site.first >= kmax || site.second >= imax) {
        throw GeometryError(std::string(what) + ": site (" + std::to_string(site.first + 1) + ", " +
                            std::to_string(site.second + 1) + ") outside the lattice");
      }
    }
  };
  check(s.omega, s.n_logical, s.n_phys, "omega");
  check(s.intra_J, s.n_logical, s.n_phys - 1, "intra_J");
  check(s.inter_J, s.n_logical - 1, s.n_phys, "inter_J");
}

namespace detail {

inline PauliSum coupling(const LatticeSpec& s, std::size_t a, std::size_t b, double j) {
  std::size_t n = s.n_qubits();
  PauliSum h(n);
  if (s.coupling_kind == InteractionKind::XY) {
    h.add_term(two_body(n, a, b, Axis::X), j);
    h.add_term(two_body(n, a, b, Axis::Y), j);
  } else {
    h.add_term(two_body(n, a, b, Axis::Z), j);
  }
  return h;
}

}  // namespace detail

/// Sum Omega X + sum J (XX + YY) or sum Omega X + sum J ZZ.
inline PauliSum build_lattice_hamiltonian(const LatticeSpec& s) {
  validate(s);
  std::size_t n = s.n_qubits();
  PauliSum h(n);
  for (const auto& [site, om] : s.omega) h.add_term(PauliString::single(n, s.qubit(site.first, site.second), Axis::X), om);
  for (const auto& [site, j] : s.intra_J) {
    h += detail::coupling(s, s.qubit(site.first, site.second), s.qubit(site.first, site.second + 1), j);
  }
  for (const auto& [site, j] : s.inter_J) {
    h += detail::coupling(s, s.qubit(site.first, site.second), s.qubit(site.first + 1, site.second), j);
  }
  return h;
}

/// The x-and-y (XY) or x-and-z (Ising) flipping pi-pulse axis.
inline Axis flip_axis(InteractionKind k) { return k == InteractionKind::XY ? Axis::Z : Axis::Y; }

struct ToggleFrame {
  std::string name;
  std::set<std::size_t> pulsed;      // 0-based qubits receiving a pi-pulse
  std::map<PauliKey, int> signs;     // per bare-Hamiltonian term
};

struct TogglingPattern {
  std::string name;
  Axis pulse_axis = Axis::Z;
  std::array<ToggleFrame, 4> frames;  // A, B, B', A'
};

/// Bare Hamiltonian with a frame's stored term signs applied.
inline PauliSum frame_hamiltonian(const PauliSum& bare, const ToggleFrame& f) {
  PauliSum h(bare.n_qubits());
  for (const auto& [k, c] : bare.terms()) {
    auto it = f.signs.find(k);
    h.add(k, it == f.signs.end() ? c : it->second * c);
  }
  return h;
}

/// Bare Hamiltonian conjugated by the frame's pi-pulses.
inline PauliSum pulsed_hamiltonian(const PauliSum& bare, const ToggleFrame& f, Axis axis) {
  std::vector<ElementaryOp> pulses;
  for (auto q : f.pulsed) pulses.push_back(AxisRotation{q, axis, Angle::pi_fraction(1, 1)});
  return conjugate_all(bare, pulses);
}

/// Terms whose stored sign disagrees with the pulse conjugation, rendered per frame.
inline std::vector<std::string> realizability_violations(const PauliSum& bare, const TogglingPattern& p) {
  std::vector<std::string> out;
  for (const auto& f : p.frames) {
    PauliSum want = frame_hamiltonian(bare, f);
    PauliSum got = pulsed_hamiltonian(bare, f, p.pulse_axis);
    for (const auto& d : diff_sums(want, got)) out.push_back(f.name + ": " + d);
  }
  return out;
}

namespace detail {

// Sign of each term from a per-qubit sign row: product of the row signs over the term's support.
inline ToggleFrame frame_from_rows(const std::string& name, const PauliSum& bare, const std::vector<int>& row) {
  ToggleFrame f{name, {}, {}};
  for (std::size_t q = 0; q < row.size(); ++q) {
    if (row[q] < 0) f.pulsed.insert(q);
  }
  for (const auto& [k, c] : bare.terms()) {
    int s = 1;
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (((k.x | k.z) >> q) & 1U) s *= row[q];
    }
    f.signs[k] = s;
  }
  return f;
}

inline std::vector<int> rows(const LatticeSpec& s, const std::function<bool(std::size_t, std::size_t)>& flipped) {
  std::vector<int> r(s.n_qubits(), 1);
  for (std::size_t k = 0; k < s.n_logical; ++k) {
    for (std::size_t i = 0; i < s.n_phys; ++i) {
      if (flipped(k, i)) r[s.qubit(k, i)] = -1;
    }
  }
  return r;
}

}  // namespace detail

/// Four frames cancelling every coupling and keeping the single-qubit part.
/// Array parity is counted from the first array; qubit parity is 1-based.
inline TogglingPattern pattern_select_H0(const LatticeSpec& s) {
  validate(s);
  PauliSum bare = build_lattice_hamiltonian(s);
  auto odd_q = [](std::size_t i) { return i % 2 == 0; };
  auto odd_arr = [](std::size_t k) { return k % 2 == 1; };
  TogglingPattern p{"H0", flip_axis(s.coupling_kind), {}};
  p.frames[0] = detail::frame_from_rows("A", bare, detail::rows(s, [&](auto k, auto i) { return odd_arr(k) && odd_q(i); }));
  p.frames[1] = detail::frame_from_rows("B", bare, detail::rows(s, [&](auto k, auto i) { return !odd_arr(k) && odd_q(i); }));
  p.frames[2] = detail::frame_from_rows("B'", bare, detail::rows(s, [&](auto k, auto i) { return odd_arr(k) && !odd_q(i); }));
  p.frames[3] = detail::frame_from_rows("A'", bare, detail::rows(s, [&](auto k, auto i) { return !odd_arr(k) && !odd_q(i); }));
  return p;
}

/// Four frames keeping only the edge (e, e+1) of every array; e is 1-based.
inline TogglingPattern pattern_select_edge(const LatticeSpec& s, std::size_t e) {
  validate(s);
  if (e < 1 || e + 1 > s.n_phys) {
    throw GeometryError("edge (" + std::to_string(e) + "," + std::to_string(e + 1) + ") not inside an array of " +
                        std::to_string(s.n_phys));
  }
  PauliSum bare = build_lattice_hamiltonian(s);
  std::size_t a = e - 1, b = e;
  // Both edge qubits flipped, alternating outward.
  auto core = [&](std::size_t i) {
    std::size_t dist = i < a ? a - i : i > b ? i - b : 0;
    return dist % 2 == 0;
  };
  TogglingPattern p{"edge " + std::to_string(e) + "-" + std::to_string(e + 1), flip_axis(s.coupling_kind), {}};
  p.frames[0] = detail::frame_from_rows("A", bare, detail::rows(s, [](auto, auto) { return false; }));
  p.frames[1] = detail::frame_from_rows("B", bare, detail::rows(s, [&](auto k, auto i) { return core(i) == (k % 2 == 0); }));
  p.frames[2] = detail::frame_from_rows("B'", bare, detail::rows(s, [&](auto k, auto i) { return core(i) != (k % 2 == 0); }));
  p.frames[3] = detail::frame_from_rows("A'", bare, detail::rows(s, [](auto, auto) { return true; }));
  return p;
}

inline std::array<PauliSum, 4> frame_hamiltonians(const PauliSum& bare, const TogglingPattern& p) {
  return {frame_hamiltonian(bare, p.frames[0]), frame_hamiltonian(bare, p.frames[1]),
          frame_hamiltonian(bare, p.frames[2]), frame_hamiltonian(bare, p.frames[3])};
}

/// U = (e^{-i tau A} e^{-i tau B} e^{-i tau B'} e^{-i tau A'})^n = exp(-i G).
/// Generators are on the exponent scale; effective() and perturbation() divide by n*tau.
struct BchResult {
  double tau = 0.0;
  int n = 1;
  PauliSum ideal_generator;
  PauliSum error_generator;

  PauliSum effective() const { return ideal_generator * (1.0 / (n * tau)); }
  PauliSum perturbation() const { return error_generator * (1.0 / (n * tau)); }
  PauliSum average() const { return ideal_generator * (1.0 / (4.0 * n * tau)); }
};

inline BchResult bch_first_order(const PauliSum& ha, const PauliSum& hb, const PauliSum& hbp, const PauliSum& hap,
                                 double tau, int n) {
  if (n < 1) throw InvalidOperation("bch_first_order: n must be >= 1");
  if (!(tau > 0.0)) throw InvalidOperation("bch_first_order: tau must be positive");
  PauliSum a = 0.5 * (ha + hb), b = 0.5 * (ha - hb);
  PauliSum a2 = 0.5 * (hap + hbp), b2 = 0.5 * (hap - hbp);
  BchResult r;
  r.tau = tau;
  r.n = n;
  r.ideal_generator = (2.0 * n * tau) * (a + a2);
  r.error_generator = (n * tau * tau) * (commutator(b, a) - commutator(b2, a2) + 2.0 * commutator(a, a2));
  r.ideal_generator = r.ideal_generator.pruned(1e-15);
  r.error_generator = r.error_generator.pruned(1e-15);
  return r;
}

inline BchResult bch_first_order(const std::array<PauliSum, 4>& f, double tau, int n) {
  return bch_first_order(f[0], f[1], f[2], f[3], tau, n);
}

/// Dense G with U = exp(-i G), U the ordered frame product repeated n times.
inline Matrix exact_generator(const std::array<PauliSum, 4>& f, double tau, int n) {
  std::size_t nq = f[0].n_qubits();
  detail::check_dense(nq);
  double bound = 0.0;
  for (const auto& h : f) bound += l1_norm(h);
  if (bound * tau * n >= std::numbers::pi) {
    throw InvalidOperation("exact_generator: sequence too long for an unambiguous logarithm");
  }
  Eigen::Index d = Eigen::Index{1} << nq;
  Matrix u1 = Matrix::Identity(d, d);
  for (auto it = f.rbegin(); it != f.rend(); ++it) u1 = expm_apply(*it, tau, u1);
  Matrix u = Matrix::Identity(d, d);
  for (int i = 0; i < n; ++i) u = u * u1;
  return logm_unitary(u);
}

struct CleanupResult {
  std::vector<ElementaryOp> flip;
  std::vector<ElementaryOp> unflip;
  PauliSum flipped;
  PauliSum effective;  // average over the two halves
  PauliSum removed;
  PauliSum lost;       // removed terms that are not single-qubit
  bool cancellable() const { return lost.empty(); }
};

/// e^{-i tau H} R e^{-i tau H} R^dagger with R a pi-pulse about axis on every qubit.
inline CleanupResult appendix_a_cleanup(const PauliSum& h, Axis axis = Axis::X) {
  CleanupResult r;
  for (std::size_t q = 0; q < h.n_qubits(); ++q) {
    r.flip.push_back(AxisRotation{q, axis, Angle::pi_fraction(1, 1)});
    r.unflip.push_back(AxisRotation{q, axis, Angle::pi_fraction(-1, 1)});
  }
  r.flipped = conjugate_all(h, r.flip);
  r.effective = (0.5 * (h + r.flipped)).pruned(1e-15);
  r.removed = PauliSum(h.n_qubits());
  r.lost = PauliSum(h.n_qubits());
  for (const auto& [k, c] : h.terms()) {
    if (r.effective.terms().count(k)) continue;
    r.removed.add(k, c);
    if (std::popcount(k.x | k.z) != 1) r.lost.add(k, c);
  }
  return r;
}

struct PerturbationReport {
  std::string pattern;
  InteractionKind kind = InteractionKind::XY;
  std::size_t n_logical = 0, n_phys = 0;
  double tau = 0.0;
  int n = 1;
  PauliSum ideal;               // effective Hamiltonian, first order
  PauliSum first_order_error;   // perturbation, same scale as ideal
  std::optional<PauliSum> exact;
  double error_norm = 0.0;      // exact deviation if available, else first-order
  double first_order_norm = 0.0;
  double first_order_l1 = 0.0;
  double estimate_norm = 0.0;
  double ratio = 0.0;
  std::vector<std::string> violations;
};

inline double closed_form_estimate(const LatticeSpec& s, const TogglingPattern& p, double tau) {
  double c = p.name == "H0" ? 20.0 : 10.0;
  return c * tau * static_cast<double>(s.n_qubits()) * s.max_J() * s.max_omega();
}

inline PerturbationReport perturbation_norm_report(const LatticeSpec& s, const TogglingPattern& p, double tau,
                                                   int n = 1, bool dense = true) {
  PauliSum bare = build_lattice_hamiltonian(s);
  auto frames = frame_hamiltonians(bare, p);
  BchResult b = bch_first_order(frames, tau, n);
  PerturbationReport r;
  r.pattern = p.name;
  r.kind = s.coupling_kind;
  r.n_logical = s.n_logical;
  r.n_phys = s.n_phys;
  r.tau = tau;
  r.n = n;
  r.ideal = b.effective();
  r.first_order_error = b.perturbation();
  r.first_order_norm = hs_norm(r.first_order_error);
  r.first_order_l1 = l1_norm(r.first_order_error);
  r.error_norm = r.first_order_norm;
  if (dense && s.n_qubits() <= kMaxDenseQubits) {
    Matrix g = exact_generator(frames, tau, n);
    r.exact = pauli_decompose(g, s.n_qubits(), 1e-14) * (1.0 / (n * tau));
    r.error_norm = hs_norm(*r.exact - r.ideal);
  }
  r.estimate_norm = closed_form_estimate(s, p, tau);
  r.ratio = r.estimate_norm > 0 ? r.error_norm / r.estimate_norm : 0.0;
  r.violations = realizability_violations(bare, p);
  return r;
}

inline nlohmann::ordered_json to_json(const PerturbationReport& r) {
  nlohmann::ordered_json j;
  j["pattern"] = r.pattern;
  j["kind"] = to_string(r.kind);
  j["n_logical"] = r.n_logical;
  j["n_phys"] = r.n_phys;
  j["tau"] = r.tau;
  j["n"] = r.n;
  j["ideal"] = render(r.ideal);
  j["exact"] = r.exact ? nlohmann::ordered_json(render(r.exact->pruned(1e-9))) : nlohmann::ordered_json(nullptr);
  j["first_order_error"] = render(r.first_order_error.pruned(1e-12));
  j["error_norm"] = r.error_norm;
  j["first_order_norm"] = r.first_order_norm;
  j["first_order_l1"] = r.first_order_l1;
  j["estimate_norm"] = r.estimate_norm;
  j["ratio"] = r.ratio;
  j["realizable"] = r.violations.empty();
  return j;
}

/// key = value lines; '#' starts a comment.
struct LatticeConfig {
  LatticeSpec spec;
  double tau = 0.01;
  int n = 1;
  std::string pattern = "H0";
  std::size_t edge = 2;
};

inline LatticeConfig parse_lattice_config(std::istream& in, const std::string& source = "<config>") {
  std::map<std::string, std::string> kv;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source + ":" + std::to_string(no) + ": expected key = value");
    kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  auto num = [&](const std::string& key, double def) {
    auto it = kv.find(key);
    if (it == kv.end()) return def;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ParseError(source + ": " + key + ": not a number: " + it->second);
    }
  };
  static const std::set<std::string> known = {"n_logical", "n_phys", "coupling_kind", "J", "Omega", "tau", "n",
                                              "pattern", "edge"};
  for (const auto& [k, v] : kv) {
    if (!known.count(k)) throw ParseError(source + ": unknown key " + k);
  }
  LatticeConfig c;
  double nl = num("n_logical", 1), np = num("n_phys", 5);
  if (nl < 1 || np < 1 || nl != std::floor(nl) || np != std::floor(np)) throw ParseError(source + ": bad lattice size");
  InteractionKind kind = kv.count("coupling_kind") ? parse_kind(kv["coupling_kind"]) : InteractionKind::XY;
  c.spec = LatticeSpec::uniform(static_cast<std::size_t>(nl), static_cast<std::size_t>(np), kind, num("J", 1.0),
                                num("Omega", 1.0));
  c.tau = num("tau", 0.01);
  double reps = num("n", 1);
  if (reps < 1 || reps != std::floor(reps)) throw ParseError(source + ": n must be a positive integer");
  c.n = static_cast<int>(reps);
  if (kv.count("pattern")) c.pattern = kv["pattern"];
  if (c.pattern != "H0" && c.pattern != "edge") throw ParseError(source + ": pattern must be H0 or edge");
  if (kv.count("edge")) {
    double e = num("edge", 2);
    if (e < 1 || e != std::floor(e)) throw ParseError(source + ": edge must be a positive integer");
    c.edge = static_cast<std::size_t>(e);
  }
  return c;
}

inline LatticeConfig load_lattice_config(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open " + p.string());
  return parse_lattice_config(in, p.string());
}

inline TogglingPattern make_pattern(const LatticeConfig& c) {
  return c.pattern == "H0" ? pattern_select_H0(c.spec) : pattern_select_edge(c.spec, c.edge);
}

}  // namespace stabgen

#endif  // STABGEN_LATTICE_HPP_
