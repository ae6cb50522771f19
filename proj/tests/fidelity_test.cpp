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

#include <gtest/gtest.h>

#include "stabgen/fidelity.hpp"
#include "stabgen/fit.hpp"

using namespace stabgen;

namespace {

const CodeSpec& code(const std::string& name) {
  static const std::vector<CodeSpec> codes = builtin_codes();
  for (const auto& c : codes) {
    if (c.name == name) return c;
  }
  throw std::out_of_range(name);
}

FidelityResult run(const char* name, InteractionKind kind, double sigma, int trials, std::uint64_t seed = 1,
                   ErrorDistribution d = ErrorDistribution::Gaussian) {
  FidelityOptions o;
  o.sigma = sigma;
  o.trials = trials;
  o.seed = seed;
  o.distribution = d;
  return fidelity_monte_carlo(compile(code(name), kind), code(name), o);
}

}  // namespace

TEST(fidelity, zero_sigma_is_exact) {
  for (const auto& c : builtin_codes()) {
    for (const auto& [kind, ch] : c.chains) {
      FidelityResult r = run(c.name.c_str(), kind, 0.0, 3);
      EXPECT_NEAR(r.mean_f, 1.0, 1e-10) << c.name << " " << to_string(kind);
      EXPECT_EQ(r.stderr_f, 0.0);
    }
  }
}

TEST(fidelity, ideal_sequence_keeps_every_logical_state) {
  const CodeSpec& c = code("five-qubit");
  PulseSequence seq = compile(c, InteractionKind::XY);
  auto ops = simulation_ops(seq);
  StateVector psi{5, (prepare_logical(c, 0).amps + cd(0, 1) * prepare_logical(c, 1).amps) / std::sqrt(2.0)};
  StateVector out = detail::run_sequence(seq, ops, {}, 0.3, psi);
  EXPECT_NEAR(manifold_population({prepare_logical(c, 0), prepare_logical(c, 1)}, out), 1.0, 1e-10);
  EXPECT_NEAR(out.amps.norm(), 1.0, 1e-10);
}

TEST(fidelity, pulse_count_matches_census) {
  for (const auto& c : builtin_codes()) {
    for (const auto& [kind, ch] : c.chains) {
      PulseSequence seq = compile(c, kind);
      EXPECT_EQ(perturbed_pulse_count(seq), pulse_census(seq).n_single_rotations);
    }
  }
}

TEST(fidelity, monte_carlo_agrees_with_second_order_leakage) {
  for (double s : {0.005, 0.01, 0.02}) {
    FidelityResult r = run("five-qubit", InteractionKind::XY, s, 2000);
    EXPECT_LT(std::abs(r.mean_f - r.second_order_f), 3 * r.stderr_f + 1e-12) << s;
  }
}

TEST(fidelity, every_pulse_leaks_at_leading_order) {
  const CodeSpec& c = code("five-qubit");
  for (double w : leakage_weights(compile(c, InteractionKind::XY), c)) EXPECT_NEAR(w, 1.0, 1e-9);
}

TEST(fidelity, infidelity_scales_as_sigma_squared) {
  std::vector<double> x, y;
  for (double s : {0.005, 0.01, 0.02, 0.04}) {
    x.push_back(s);
    y.push_back(1.0 - run("five-qubit", InteractionKind::XY, s, 500).mean_f);
  }
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 0.1);
}

TEST(fidelity, distribution_insensitive) {
  FidelityResult g = run("five-qubit", InteractionKind::XY, 0.02, 2000, 3, ErrorDistribution::Gaussian);
  FidelityResult u = run("five-qubit", InteractionKind::XY, 0.02, 2000, 3, ErrorDistribution::Uniform);
  double joint = std::sqrt(g.stderr_f * g.stderr_f + u.stderr_f * u.stderr_f);
  EXPECT_LT(std::abs(g.mean_f - u.mean_f), 3 * joint);
}

TEST(fidelity, deterministic_and_seed_dependent) {
  auto a = to_json(run("five-qubit", InteractionKind::XY, 0.01, 200, 9)).dump();
  auto b = to_json(run("five-qubit", InteractionKind::XY, 0.01, 200, 9)).dump();
  EXPECT_EQ(a, b);
  FidelityResult c = run("five-qubit", InteractionKind::XY, 0.01, 200, 10);
  FidelityResult d = run("five-qubit", InteractionKind::XY, 0.01, 200, 9);
  EXPECT_NE(c.mean_f, d.mean_f);
  EXPECT_LT(std::abs(c.mean_f - d.mean_f), 3 * std::hypot(c.stderr_f, d.stderr_f));
  EXPECT_NE(trial_seed(9, 0), trial_seed(9, 1));
}

TEST(fidelity, large_sigma_warns_and_bad_input_throws) {
  EXPECT_FALSE(run("five-qubit", InteractionKind::XY, 0.5, 2).warnings.empty());
  EXPECT_TRUE(run("five-qubit", InteractionKind::XY, 0.1, 2).warnings.empty());
  EXPECT_THROW(run("five-qubit", InteractionKind::XY, -0.1, 2), std::invalid_argument);
  EXPECT_THROW(run("five-qubit", InteractionKind::XY, 0.1, 0), std::invalid_argument);
}

TEST(fidelity, json_fields) {
  auto j = to_json(run("five-qubit", InteractionKind::XY, 0.01, 10));
  for (const char* k : {"code", "kind", "sigma", "trials", "mean_F", "stderr", "predicted_F", "N_P", "T"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["N_P"].get<int>(), 20);
  EXPECT_EQ(j["T"].get<double>(), 127.5);
  EXPECT_NEAR(j["predicted_F"].get<double>(), 1 - 20 * 1e-4 / 8, 1e-15);
}
