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

#include <random>
#include <sstream>

#include "stabgen/encoding.hpp"

using namespace stabgen;

namespace {

const CodeSpec& code(const std::string& name) {
  static const std::vector<CodeSpec> codes = builtin_codes();
  for (const auto& c : codes) {
    if (c.name == name) return c;
  }
  throw std::out_of_range(name);
}

StateVector basis(std::size_t n, std::size_t index) { return StateVector::basis(n, index); }

bool all_true(const std::vector<bool>& v) {
  for (bool b : v) {
    if (!b) return false;
  }
  return true;
}

}  // namespace

TEST(eigencheck, zero_state_against_five_qubit) {
  auto r = stabilizer_eigencheck(StateVector::zero(5), code("five-qubit"));
  ASSERT_EQ(r.size(), 4U);
  for (bool b : r) EXPECT_FALSE(b);
  EXPECT_THROW(stabilizer_eigencheck(StateVector::zero(4), code("five-qubit")), DimensionError);
}

TEST(modified_generator, printed_examples) {
  EXPECT_EQ(modified_generator(code("five-qubit").generators[0], 0), parse_pauli_string("Y1Z2Z3X4", 5));
  EXPECT_EQ(modified_generator(code("steane").generators[0], 3), parse_pauli_string("X1X2X3Y4", 7));
}

TEST(modified_generator, involution_and_refusal) {
  for (const auto& c : builtin_codes()) {
    for (const auto& g : c.generators) {
      for (std::size_t a = 0; a < c.n; ++a) {
        char ch = g.at(a);
        if (ch == 'X' || ch == 'Y') {
          EXPECT_EQ(modified_generator(modified_generator(g, a), a), g);
        } else {
          EXPECT_THROW(modified_generator(g, a), InvalidOperation);
        }
      }
    }
  }
}

TEST(prepare, logical_states_are_code_states) {
  for (const char* name : {"five-qubit", "steane", "nine-qubit"}) {
    for (int c : {0, 1}) {
      StateVector s = prepare_logical(code(name), c);
      EXPECT_NEAR(s.amps.norm(), 1.0, 1e-10);
      EXPECT_TRUE(all_true(stabilizer_eigencheck(s, code(name)))) << name << " c=" << c;
      EXPECT_NEAR(logical_z_value(s, code(name)), c ? -1.0 : 1.0, 1e-9) << name;
    }
  }
}

TEST(prepare, ground_space_certification) {
  const std::pair<const char*, double> want[] = {{"nine-qubit", -8}, {"five-qubit", -4}, {"steane", -6}};
  for (const auto& [name, e] : want) {
    const CodeSpec& c = code(name);
    PauliSum h = c.generator_sum() * -1.0;
    GroundSpace g = ground_space(h);
    EXPECT_EQ(g.dimension, 2U) << name;
    EXPECT_NEAR(g.energy, e, 1e-9) << name;
    double ang = max_principal_angle(g.basis, {prepare_logical(c, 0), prepare_logical(c, 1)});
    EXPECT_LT(ang, 1e-8) << name;
  }
}

TEST(prepare, signs_resolved_per_factor) {
  auto five = modified_factors(code("five-qubit"));
  ASSERT_EQ(five.size(), 4U);
  for (const auto& f : five) {
    EXPECT_EQ(f.gtilde.at(f.qubit), 'Y');
    EXPECT_EQ(f.sign, 1);
  }
  auto steane = modified_factors(code("steane"));
  for (const auto& f : steane) EXPECT_EQ(f.sign, 1);
}

TEST(modified_one_state, printed_basis_states) {
  StateVector five = modified_one_state(code("five-qubit"));
  EXPECT_LT((five.amps + basis(5, 2).amps).norm(), 1e-10);
  StateVector steane = modified_one_state(code("steane"));
  EXPECT_LT(phase_distance(steane.amps, basis(7, 0b0110100).amps), 1e-10);
}

TEST(modified_one_state, superpositions_encode_linearly) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (const char* name : {"five-qubit", "steane"}) {
    const CodeSpec& c = code(name);
    auto fs = modified_factors(c);
    StateVector one = modified_one_state(c), z0 = prepare_logical(c, 0), z1 = prepare_logical(c, 1);
    for (int t = 0; t < 10; ++t) {
      cd a(g(rng), g(rng)), b(g(rng), g(rng));
      double nrm = std::sqrt(std::norm(a) + std::norm(b));
      a /= nrm;
      b /= nrm;
      StateVector in{c.n, a * StateVector::zero(c.n).amps + b * one.amps};
      StateVector out = apply_encoder(fs, in);
      EXPECT_LT((out.amps - (a * z0.amps + b * z1.amps)).norm(), 1e-9) << name;
    }
  }
}

TEST(encoder, steane_combined_equals_ordered) {
  const CodeSpec& c = code("steane");
  auto fs = modified_factors(c);
  EXPECT_LT((combined_encoder_matrix(fs, c.n) - encoder_matrix(fs, c.n)).norm(), 1e-10);
}

TEST(encoder, commutation_report) {
  // Flags checked against dense commutators.
  for (const char* name : {"five-qubit", "steane"}) {
    const CodeSpec& c = code(name);
    for (const auto& p : gtilde_commutation_report(c)) {
      auto gt = [&](std::size_t g) {
        for (const auto& [gi, a] : c.modified) {
          if (gi + 1 == g) return modified_generator(c.generators[gi], a);
        }
        throw std::out_of_range("generator");
      };
      Matrix a = pauli_matrix(gt(p.i)), b = pauli_matrix(gt(p.j));
      EXPECT_EQ(p.commutes, (a * b - b * a).norm() < 1e-12) << name << " " << p.i << "," << p.j;
    }
  }
  auto five = gtilde_commutation_report(code("five-qubit"));
  ASSERT_EQ(five.size(), 6U);
  std::vector<std::pair<std::size_t, std::size_t>> comm;
  for (const auto& p : five) {
    if (p.commutes) comm.emplace_back(p.i, p.j);
  }
  std::vector<std::pair<std::size_t, std::size_t>> want = {{1, 2}, {1, 4}, {2, 3}, {3, 4}};
  EXPECT_EQ(comm, want);
  auto steane = gtilde_commutation_report(code("steane"));
  ASSERT_EQ(steane.size(), 3U);
  for (const auto& p : steane) EXPECT_TRUE(p.commutes);
}

TEST(encoder, ordering_violation_is_refused) {
  CodeSpec c = code("five-qubit");
  // G~1 acts on qubit 4 with X, so designating qubit 4 afterwards must fail.
  c.modified = {{0, 0}, {3, 3}};
  EXPECT_THROW(modified_factors(c), EncodingError);
  c.modified = {{0, 0}, {2, 0}};
  EXPECT_THROW(modified_factors(c), EncodingError);
}

TEST(nine_qubit, ghz_identity_sign) {
  StateVector s = evolve_pauli_exp(StateVector::zero(3), parse_pauli_string("X1Y2X3", 3), std::numbers::pi / 4);
  Vector want = (basis(3, 0).amps + basis(3, 7).amps) / std::sqrt(2.0);
  EXPECT_LT((s.amps - want).norm(), 1e-12);
  s = evolve_pauli_exp(StateVector::zero(3), parse_pauli_string("X1Y2X3", 3), -std::numbers::pi / 4);
  EXPECT_LT((s.amps - (basis(3, 0).amps - basis(3, 7).amps) / std::sqrt(2.0)).norm(), 1e-12);
}

TEST(nine_qubit, ghz_products) {
  const CodeSpec& c = code("nine-qubit");
  for (int bit : {0, 1}) {
    Vector block = (basis(3, 0).amps + (bit ? -1.0 : 1.0) * basis(3, 7).amps) / std::sqrt(2.0);
    Vector want(512);
    for (Eigen::Index i = 0; i < 512; ++i) want(i) = block(i >> 6) * block((i >> 3) & 7) * block(i & 7);
    StateVector s = prepare_nine_code(c, bit);
    EXPECT_LT((s.amps - want).norm(), 1e-12);
    auto chk = stabilizer_eigencheck(s, c);
    EXPECT_EQ(chk.size(), 8U);
    EXPECT_TRUE(all_true(chk));
  }
}

TEST(nine_qubit, ghz_route_reproduces_hamiltonian_and_state) {
  const CodeSpec& c = code("nine-qubit");
  GhzRoute r = ghz_route(c);
  EXPECT_EQ(r.result, *c.ghz);
  Matrix u = Matrix::Identity(512, 512);
  for (const auto& l : r.layers) {
    for (const auto& op : l) u = op_unitary(op, 9) * u;
  }
  Matrix h = u * to_matrix(r.start).m * u.adjoint();
  EXPECT_LT((h - to_matrix(*c.ghz).m).norm(), 1e-10);
  StateVector s{9, expm_hermitian(h, std::numbers::pi / 4) * StateVector::zero(9).amps};
  EXPECT_LT((s.amps - prepare_nine_code(c, 0).amps).norm(), 1e-10);
}

TEST(dense, evolution_preserves_norm) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> th(-3, 3);
  StateVector s = prepare_logical(code("five-qubit"), 0);
  for (int t = 0; t < 50; ++t) {
    std::string str;
    for (int q = 0; q < 5; ++q) {
      int k = pick(rng);
      if (k) str += std::string(1, "XYZ"[k - 1]) + std::to_string(q + 1);
    }
    PauliString p = str.empty() ? PauliString(5) : parse_pauli_string(str, 5);
    double a = th(rng);
    StateVector next = evolve_pauli_exp(s, p, a);
    EXPECT_NEAR(next.amps.norm(), 1.0, 1e-10);
    EXPECT_LT((next.amps - pauli_exp_matrix(p, a) * s.amps).norm(), 1e-10);
    s = next;
  }
}
