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

#include "stabgen/dense.hpp"
#include "stabgen/elementary.hpp"
#include "stabgen/pauli.hpp"
#include "stabgen/text.hpp"

using namespace stabgen;

namespace {

PauliSum S(const char* t, std::size_t n) { return parse_pauli_sum(t, n); }
PauliString P(const char* t, std::size_t n) { return parse_pauli_string(t, n); }

PauliString random_string(std::mt19937_64& rng, std::size_t n) {
  std::uint64_t m = PauliString::mask(n);
  return PauliString(n, rng() & m, rng() & m, static_cast<int>(rng() % 4));
}

PauliSum random_sum(std::mt19937_64& rng, std::size_t n, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PauliSum h(n);
  for (int t = 0; t < terms; ++t) h.add_term(random_string(rng, n).canonical(), u(rng));
  return h;
}

}  // namespace

TEST(pauli_string, multiply_single_qubit) {
  PauliString x = PauliString::single(1, 0, Axis::X);
  PauliString z = PauliString::single(1, 0, Axis::Z);
  PauliString y = PauliString::single(1, 0, Axis::Y);
  EXPECT_EQ(x * z, y.with_phase(3));
  EXPECT_EQ(z * x, y.with_phase(1));
  EXPECT_EQ(x * y, z.with_phase(1));
  EXPECT_EQ(y * z, x.with_phase(1));
}

TEST(pauli_string, multiply_involution) {
  PauliString p = PauliString::from_dense("XZ");
  EXPECT_EQ(p * p, PauliString(2));
  PauliString y = PauliString::from_dense("YYZ").with_phase(1);
  EXPECT_EQ((y * y).phase_log(), 2);
}

TEST(pauli_string, multiply_matches_dense) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    PauliString a = random_string(rng, 4), b = random_string(rng, 4);
    Matrix prod = pauli_matrix(a) * pauli_matrix(b);
    EXPECT_LT((pauli_matrix(a * b) - prod).norm(), 1e-12);
  }
}

TEST(pauli_string, size_mismatch) {
  EXPECT_THROW(multiply(PauliString(2), PauliString(3)), DimensionError);
  EXPECT_THROW(commutes(PauliString(2), PauliString(3)), DimensionError);
  EXPECT_THROW(PauliString(65), DimensionError);
}

TEST(pauli_string, commutes_examples) {
  EXPECT_TRUE(commutes(P("Z1Z2", 3), P("Z2Z3", 3)));
  EXPECT_FALSE(commutes(P("X1", 1), P("Z1", 1)));
}

TEST(pauli_string, commutes_exhaustive_three_qubits) {
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      PauliString p(3, a & 7, a >> 3), q(3, b & 7, b >> 3);
      Matrix mp = pauli_matrix(p), mq = pauli_matrix(q);
      bool dense = (mp * mq - mq * mp).norm() < 1e-12;
      ASSERT_EQ(commutes(p, q), dense);
    }
  }
}

TEST(conjugation, z1z2_maps_x1_to_y1z2) {
  PauliSum r = conjugate_evolution(S("X1", 2), P("Z1Z2", 2), Angle::pi_fraction(1, 4));
  EXPECT_EQ(r, S("Y1Z2", 2));
  EXPECT_EQ(conjugate_evolution(S("Y1", 2), P("Z1Z2", 2), Angle::pi_fraction(1, 4)), S("-X1Z2", 2));
  EXPECT_EQ(conjugate_evolution(S("Z1", 2), P("Z1Z2", 2), Angle::from_radians(0.77)), S("Z1", 2));
}

TEST(conjugation, generic_angle_forms) {
  double th = 0.3;
  PauliSum r = conjugate_elementary(S("X1", 2), IsingEdge{0, 1, Angle::from_radians(th)});
  PauliSum want(2);
  want.add_term(P("X1", 2), std::cos(2 * th));
  want.add_term(P("Y1Z2", 2), std::sin(2 * th));
  EXPECT_TRUE(r.approx_equal(want, 1e-15));

  PauliSum rx = conjugate_elementary(S("X1", 2), XYEdge{0, 1, Angle::from_radians(th)});
  PauliSum wx(2);
  wx.add_term(P("X1", 2), std::cos(2 * th));
  wx.add_term(P("Z1Y2", 2), -std::sin(2 * th));
  EXPECT_TRUE(rx.approx_equal(wx, 1e-15));
}

TEST(conjugation, xy_edge_identities) {
  Angle q = Angle::pi_fraction(1, 4);
  EXPECT_EQ(conjugate_elementary(S("X1", 2), XYEdge{0, 1, q}), S("-Z1Y2", 2));
  EXPECT_EQ(conjugate_elementary(S("Y1", 2), XYEdge{0, 1, q}), S("Z1X2", 2));
  EXPECT_EQ(conjugate_elementary(S("Z1", 2), XYEdge{0, 1, q}), S("Z2", 2));
  EXPECT_EQ(conjugate_elementary(S("X1X2", 2), XYEdge{0, 1, q}), S("X1X2", 2));
}

TEST(conjugation, ising_edge_identities) {
  Angle q = Angle::pi_fraction(1, 4);
  EXPECT_EQ(conjugate_elementary(S("X1", 2), IsingEdge{0, 1, q}), S("Y1Z2", 2));
  EXPECT_EQ(conjugate_elementary(S("Y1", 2), IsingEdge{0, 1, q}), S("-X1Z2", 2));
  EXPECT_EQ(conjugate_elementary(S("Z1", 2), IsingEdge{0, 1, q}), S("Z1", 2));
}

TEST(conjugation, axis_rotations_exchange_axes) {
  Angle h = Angle::pi_fraction(1, 2);
  EXPECT_EQ(conjugate_elementary(S("X1", 1), AxisRotation{0, Axis::Y, h}), S("-Z1", 1));
  EXPECT_EQ(conjugate_elementary(S("Z1", 1), AxisRotation{0, Axis::Y, h}), S("X1", 1));
  EXPECT_EQ(conjugate_elementary(S("Y1", 1), AxisRotation{0, Axis::X, h}), S("Z1", 1));
  EXPECT_EQ(conjugate_elementary(S("Z1", 1), AxisRotation{0, Axis::X, Angle::pi_fraction(1, 1)}),
            S("-Z1", 1));
}

TEST(conjugation, rejects_bad_input) {
  EXPECT_THROW(conjugate_evolution(S("X1", 1), P("Z1", 1).with_phase(1), Angle::pi_fraction(1, 4)),
               InvalidOperation);
  EXPECT_THROW(conjugate_elementary(S("X1", 2), XYEdge{1, 1}), InvalidOperation);
  EXPECT_THROW(conjugate_elementary(S("X1", 2), AxisRotation{0, Axis::X, Angle::pi_fraction(1, 4)}),
               InvalidOperation);
  EXPECT_THROW(conjugate_elementary(S("X1", 2), IsingEdge{0, 2}), DimensionError);
}

TEST(conjugation, inverse_roundtrip) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    PauliSum h = random_sum(rng, 4, 6);
    for (long num : {1, -1, 2, -2}) {
      Angle a = Angle::pi_fraction(num, 4);
      PauliString p = random_string(rng, 4).canonical();
      PauliSum back = conjugate_evolution(conjugate_evolution(h, p, a), p, -a);
      EXPECT_EQ(back, h);
    }
    ElementaryOp op = XYEdge{1, 3, Angle::from_radians(0.41)};
    PauliSum back = conjugate_elementary(conjugate_elementary(h, op), inverse(op));
    EXPECT_TRUE(back.approx_equal(h, 1e-12));
  }
}

TEST(conjugation, preserves_norm_and_clifford_weight) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    PauliSum h = random_sum(rng, 5, 8);
    PauliString p = random_string(rng, 5).canonical();
    PauliSum c = conjugate_evolution(h, p, Angle::pi_fraction(1, 4));
    EXPECT_NEAR(hs_norm(c), hs_norm(h), 1e-12);
    PauliSum one(h.string_of(h.terms().begin()->first), 1.0);
    EXPECT_EQ(conjugate_evolution(one, p, Angle::pi_fraction(1, 4)).size(), 1U);
    EXPECT_LE(conjugate_evolution(one, p, Angle::from_radians(0.2)).size(), 2U);
  }
}

TEST(conjugation, matches_dense) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    PauliSum h = random_sum(rng, 3, 5);
    PauliString p = random_string(rng, 3).canonical();
    Matrix u = pauli_exp_matrix(p, 0.3);
    Matrix want = u * to_matrix(h).m * u.adjoint();
    Matrix got = to_matrix(conjugate_evolution(h, p, Angle::from_radians(0.3))).m;
    EXPECT_LT((want - got).norm(), 1e-12);
  }
}

TEST(commutator, examples) {
  EXPECT_TRUE(commutator(S("Z1", 2), S("Z1Z2", 2)).empty());
  EXPECT_EQ(commutator(S("X1", 1), S("Z1", 1)), S("-2*Y1", 1));
}

TEST(commutator, matches_dense) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    PauliSum a = random_sum(rng, 3, 5), b = random_sum(rng, 3, 5);
    Matrix ma = to_matrix(a).m, mb = to_matrix(b).m;
    Matrix want = cd(0, -1) * (ma * mb - mb * ma);
    EXPECT_LT((to_matrix(commutator(a, b)).m - want).norm(), 1e-12);
  }
}

TEST(hs_norm, examples) {
  EXPECT_DOUBLE_EQ(hs_norm(S("Z1", 1)), 1.0);
  EXPECT_DOUBLE_EQ(hs_norm(S("Z1 + X1", 1)), std::sqrt(2.0));
  std::mt19937_64 rng(1);
  PauliSum h = random_sum(rng, 3, 6);
  Matrix m = to_matrix(h).m;
  EXPECT_NEAR(hs_norm(h), std::sqrt((m.adjoint() * m).trace().real() / 8.0), 1e-12);
}

TEST(pauli_sum, zero_terms_are_dropped) {
  PauliSum h = S("X1 + Z2", 2);
  h -= S("X1", 2);
  EXPECT_EQ(h, S("Z2", 2));
  EXPECT_EQ(h.size(), 1U);
  EXPECT_THROW(h.add_term(P("X1", 2).with_phase(1), 1.0), InvalidOperation);
}

TEST(text, render_and_parse_roundtrip) {
  PauliSum h = S("-Z1Z2X3 + Y2", 3);
  EXPECT_EQ(render(h), "-Z1Z2X3 + Y2");
  EXPECT_EQ(parse_pauli_sum(render(h), 3), h);
  EXPECT_EQ(parse_pauli_sum("−Z₁Z₂X₃ + Y₂", 3), h);
  EXPECT_EQ(parse_pauli_sum("-Z_1 Z_2 X_3 + Y_{2}", 3), h);
  PauliSum big = parse_pauli_sum("0.5*X_{12} - Z1", 12);
  EXPECT_EQ(render(big), "-Z1 + 0.5*X_{12}");
  EXPECT_EQ(parse_pauli_sum(render(big), 12), big);
  EXPECT_EQ(render(S("X7", 10), RenderOptions{5}), "X2^(2)");
  EXPECT_EQ(parse_pauli_sum("X2^(2)", 10, 5), S("X7", 10));
  EXPECT_THROW(parse_pauli_sum("X1 Q2", 2), ParseError);
  EXPECT_THROW(parse_pauli_sum("X3", 2), ParseError);
}
