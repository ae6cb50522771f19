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

#ifndef STABGEN_FIDELITY_HPP_
#define STABGEN_FIDELITY_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "stabgen/compiler.hpp"
#include "stabgen/encoding.hpp"

namespace stabgen {

enum class ErrorDistribution { Gaussian, Uniform };

inline std::string to_string(ErrorDistribution d) { return d == ErrorDistribution::Gaussian ? "gaussian" : "uniform"; }

inline ErrorDistribution parse_distribution(const std::string& s) {
  if (s == "gaussian") return ErrorDistribution::Gaussian;
  if (s == "uniform") return ErrorDistribution::Uniform;
  throw std::invalid_argument("unknown error distribution '" + s + "'");
}

struct FidelityOptions {
  double sigma = 0.01;
  int trials = 2000;
  std::uint64_t seed = 1;
  ErrorDistribution distribution = ErrorDistribution::Gaussian;
  /// Angle phi of the core evolution exp(-i phi h_ini).
  double core_angle = std::numbers::pi / 4;
  CostModel model{};
};

struct FidelityResult {
  std::string code;
  InteractionKind kind = InteractionKind::XY;
  double sigma = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  ErrorDistribution distribution = ErrorDistribution::Gaussian;
  double mean_f = 1.0;
  double stderr_f = 0.0;
  double predicted_f = 1.0;
  /// 1 - (sigma^2 / 4) sum of per-pulse leakage weights.
  double second_order_f = 1.0;
  int n_p = 0;
  int n_pulses_census = 0;
  double t_ns = 0.0;
  std::vector<std::string> warnings;
};

/// splitmix64 step; per-trial streams are seeded from (seed, trial).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ trial);
}

/// One time-ordered operation of the simulated sequence.
struct SimOp {
  enum Kind { Pulse, Ideal, Core } kind = Ideal;
  ElementaryOp op;
  std::size_t segment = 0;
};

inline std::vector<SimOp> simulation_ops(const PulseSequence& seq) {
  std::vector<SimOp> out;
  for (const auto& e : timeline(seq)) {
    if (e.phase == Phase::Core) {
      out.push_back({SimOp::Core, AxisRotation{}, e.segment});
      continue;
    }
    for (const auto& op : e.ops) out.push_back({is_rotation(op) ? SimOp::Pulse : SimOp::Ideal, op, e.segment});
  }
  return out;
}

/// Number of pulses whose angles are perturbed.
inline int perturbed_pulse_count(const PulseSequence& seq) {
  int n = 0;
  for (const auto& s : simulation_ops(seq)) n += s.kind == SimOp::Pulse;
  return n;
}

namespace detail {

inline StateVector apply_core(const PulseSequence& seq, double phi, StateVector s) {
  for (const auto& [k, c] : seq.h_ini.terms()) s = evolve_pauli_exp(s, seq.h_ini.string_of(k), phi * c);
  return s;
}

/// Runs the sequence with rotation angle offsets delta (one per pulse, in order).
inline StateVector run_sequence(const PulseSequence& seq, const std::vector<SimOp>& ops, const std::vector<double>& delta,
                                double phi, StateVector s) {
  std::size_t p = 0;
  for (const auto& o : ops) {
    if (o.kind == SimOp::Core) {
      s = apply_core(seq, phi, std::move(s));
    } else if (o.kind == SimOp::Pulse) {
      const auto& r = std::get<AxisRotation>(o.op);
      double d = p < delta.size() ? delta[p] : 0.0;
      ++p;
      s = evolve_pauli_exp(s, PauliString::single(s.n_qubits, r.qubit, r.axis), (r.angle.radians() + d) / 2);
    } else {
      s = apply_op(s, o.op);
    }
  }
  return s;
}

inline void check_core_commutes(const PulseSequence& seq) {
  const PauliSum& h = seq.h_ini;
  for (const auto& [a, ca] : h.terms()) {
    for (const auto& [b, cb] : h.terms()) {
      if (!commutes(h.string_of(a), h.string_of(b))) throw std::invalid_argument("fidelity: core Hamiltonian terms do not commute");
    }
  }
}

}  // namespace detail

/// Population of s in the span of the orthonormal states.
inline double manifold_population(const std::vector<StateVector>& manifold, const StateVector& s) {
  double f = 0.0;
  for (const auto& m : manifold) f += std::norm(m.amps.dot(s.amps));
  return f;
}

/// Leading-order leakage weight of each pulse: ||(1 - P) V sigma V^dag psi||^2 at the end of the sequence.
inline std::vector<double> leakage_weights(const PulseSequence& seq, const CodeSpec& code, double phi = std::numbers::pi / 4) {
  detail::check_core_commutes(seq);
  auto ops = simulation_ops(seq);
  std::vector<StateVector> manifold = {prepare_logical(code, 0), prepare_logical(code, 1)};
  std::vector<double> out;
  StateVector s = manifold[0];
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    if (o.kind == SimOp::Core) {
      s = detail::apply_core(seq, phi, std::move(s));
      continue;
    }
    s = apply_op(s, o.op);
    if (o.kind != SimOp::Pulse) continue;
    const auto& r = std::get<AxisRotation>(o.op);
    StateVector kicked = apply_pauli(PauliString::single(code.n, r.qubit, r.axis), s);
    std::vector<SimOp> rest(ops.begin() + static_cast<std::ptrdiff_t>(i) + 1, ops.end());
    StateVector end = detail::run_sequence(seq, rest, {}, phi, kicked);
    out.push_back(1.0 - manifold_population(manifold, end));
  }
  return out;
}

inline FidelityResult fidelity_monte_carlo(const PulseSequence& seq, const CodeSpec& code, const FidelityOptions& opt) {
  if (opt.sigma < 0) throw std::invalid_argument("fidelity: sigma must be non-negative");
  if (opt.trials < 1) throw std::invalid_argument("fidelity: trials must be positive");
  detail::check_core_commutes(seq);
  FidelityResult r;
  r.code = seq.code;
  r.kind = seq.kind;
  r.sigma = opt.sigma;
  r.trials = opt.trials;
  r.seed = opt.seed;
  r.distribution = opt.distribution;
  if (opt.sigma >= 0.5) r.warnings.push_back("sigma >= 0.5 rad: outside the small-error regime of the formula");

  auto ops = simulation_ops(seq);
  r.n_p = perturbed_pulse_count(seq);
  r.n_pulses_census = pulse_census(seq).n_pulses_total;
  r.t_ns = cost(seq, opt.model).total_ns;
  // F at t = T.
  r.predicted_f = 1.0 - r.n_p * opt.sigma * opt.sigma / 8.0;
  double w = 0.0;
  for (double x : leakage_weights(seq, code, opt.core_angle)) w += x;
  r.second_order_f = 1.0 - opt.sigma * opt.sigma / 4.0 * w;

  std::vector<StateVector> manifold = {prepare_logical(code, 0), prepare_logical(code, 1)};
  double half_width = std::sqrt(3.0) * opt.sigma;
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> delta(static_cast<std::size_t>(r.n_p));
  for (int t = 0; t < opt.trials; ++t) {
    std::mt19937_64 rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
    std::normal_distribution<double> gauss(0.0, opt.sigma);
    std::uniform_real_distribution<double> uni(-half_width, half_width);
    for (auto& d : delta) d = opt.sigma == 0 ? 0.0 : opt.distribution == ErrorDistribution::Gaussian ? gauss(rng) : uni(rng);
    double f = manifold_population(manifold, detail::run_sequence(seq, ops, delta, opt.core_angle, manifold[0]));
    sum += f;
    sum2 += f * f;
  }
  double n = opt.trials;
  r.mean_f = sum / n;
  double var = n > 1 ? std::max(0.0, (sum2 - n * r.mean_f * r.mean_f) / (n - 1)) : 0.0;
  r.stderr_f = std::sqrt(var / n);
  return r;
}

inline nlohmann::ordered_json to_json(const FidelityResult& r) {
  nlohmann::ordered_json j;
  j["code"] = r.code;
  j["kind"] = to_string(r.kind);
  j["sigma"] = r.sigma;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["distribution"] = to_string(r.distribution);
  j["mean_F"] = r.mean_f;
  j["stderr"] = r.stderr_f;
  j["predicted_F"] = r.predicted_f;
  j["second_order_F"] = r.second_order_f;
  j["N_P"] = r.n_p;
  j["N_P_census"] = r.n_pulses_census;
  j["T"] = r.t_ns;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace stabgen

#endif  // STABGEN_FIDELITY_HPP_
