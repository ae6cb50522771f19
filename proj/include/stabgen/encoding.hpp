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

#ifndef STABGEN_ENCODING_HPP_
#define STABGEN_ENCODING_HPP_

#include <algorithm>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "stabgen/code_library.hpp"
#include "stabgen/compiler.hpp"
#include "stabgen/dense.hpp"

namespace stabgen {

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kEigenTolerance = 1e-9;

/// true for generator G iff ||G s - s|| < 1e-9.
inline std::vector<bool> stabilizer_eigencheck(const StateVector& s, const CodeSpec& code) {
  if (s.n_qubits != code.n) throw DimensionError("stabilizer_eigencheck: state and code sizes differ");
  std::vector<bool> out;
  for (const auto& g : code.generators) out.push_back((apply_pauli(g, s).amps - s.amps).norm() < kEigenTolerance);
  return out;
}

inline double expectation(const PauliString& p, const StateVector& s) {
  return s.amps.dot(apply_pauli(p, s).amps).real();
}

/// <Z-bar> of the first logical qubit.
inline double logical_z_value(const StateVector& s, const CodeSpec& code) {
  if (code.logical_z.empty()) throw EncodingError(code.name + ": no logical Z");
  return expectation(code.logical_z[0], s);
}

/// Swaps X and Y on qubit a (0-based).
inline PauliString modified_generator(const PauliString& g, std::size_t a) {
  if (a >= g.n_qubits()) throw DimensionError("modified_generator: qubit out of range");
  char c = g.at(a);
  if (c != 'X' && c != 'Y') {
    throw InvalidOperation("modified_generator: generator acts as " + std::string(1, c == 'I' ? 'I' : c) +
                           " on qubit " + std::to_string(a + 1));
  }
  // X <-> Y toggles the z bit on that qubit.
  PauliString flip = PauliString::single(g.n_qubits(), a, Axis::Z);
  return (g * flip).canonical();
}

/// exp(-i sign pi/4 G~) standing in for the projector (1 + G).
struct ModifiedFactor {
  std::size_t generator = 0;  // 0-based
  std::size_t qubit = 0;      // 0-based
  PauliString gtilde;
  int sign = -1;
};

/// Factors in application order with signs resolved against (1 + G) on the running state.
inline std::vector<ModifiedFactor> modified_factors(const CodeSpec& code) {
  if (code.modified.empty()) throw EncodingError(code.name + ": no modified-generator list");
  std::vector<ModifiedFactor> out;
  std::set<std::size_t> used;
  StateVector psi = StateVector::zero(code.n);
  for (const auto& [gi, a] : code.modified) {
    if (gi >= code.generators.size()) throw EncodingError(code.name + ": modified generator index out of range");
    if (!used.insert(a).second) throw EncodingError(code.name + ": qubit " + std::to_string(a + 1) + " designated twice");
    for (const auto& prev : out) {
      char c = prev.gtilde.at(a);
      if (c == 'X' || c == 'Y') {
        throw EncodingError(code.name + ": G~" + std::to_string(prev.generator + 1) + " acts on qubit " +
                            std::to_string(a + 1) + " with " + std::string(1, c) + " before G~" +
                            std::to_string(gi + 1));
      }
    }
    const PauliString& g = code.generators[gi];
    ModifiedFactor f{gi, a, modified_generator(g, a), 0};
    Vector want = psi.amps + apply_pauli(g, psi).amps;
    if (want.norm() < 1e-9) throw EncodingError(code.name + ": projector (1+G" + std::to_string(gi + 1) + ") annihilates the state");
    want /= want.norm();
    for (int s : {-1, 1}) {
      StateVector got = evolve_pauli_exp(psi, f.gtilde, s * std::numbers::pi / 4);
      if ((got.amps - want).norm() < 1e-10) {
        f.sign = s;
        psi = got;
        break;
      }
    }
    if (f.sign == 0) throw EncodingError(code.name + ": no sign of exp(pi/4 G~" + std::to_string(gi + 1) + ") matches (1+G)");
    out.push_back(f);
  }
  return out;
}

/// M-bar |s>: the factors applied in order.
inline StateVector apply_encoder(const std::vector<ModifiedFactor>& fs, StateVector s) {
  for (const auto& f : fs) s = evolve_pauli_exp(s, f.gtilde, f.sign * std::numbers::pi / 4);
  return s;
}

inline StateVector apply_encoder_inverse(const std::vector<ModifiedFactor>& fs, StateVector s) {
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) s = evolve_pauli_exp(s, it->gtilde, -it->sign * std::numbers::pi / 4);
  return s;
}

inline Matrix encoder_matrix(const std::vector<ModifiedFactor>& fs, std::size_t n) {
  Eigen::Index d = Eigen::Index{1} << n;
  Matrix u = Matrix::Identity(d, d);
  for (const auto& f : fs) u = pauli_exp_matrix(f.gtilde, f.sign * std::numbers::pi / 4) * u;
  return u;
}

/// exp(-i pi/4 sum sign_j G~_j), meaningful when the G~ commute.
inline Matrix combined_encoder_matrix(const std::vector<ModifiedFactor>& fs, std::size_t n) {
  PauliSum h(n);
  for (const auto& f : fs) h.add_term(f.gtilde, f.sign);
  return expm_hermitian(to_matrix(h).m, std::numbers::pi / 4);
}

struct CommutationPair {
  std::size_t i = 0, j = 0;  // 1-based generator labels
  bool commutes = false;
};

inline std::vector<CommutationPair> gtilde_commutation_report(const CodeSpec& code) {
  std::vector<ModifiedFactor> fs;
  for (const auto& [gi, a] : code.modified) fs.push_back({gi, a, modified_generator(code.generators[gi], a), 0});
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.generator < b.generator; });
  std::vector<CommutationPair> out;
  for (std::size_t x = 0; x < fs.size(); ++x) {
    for (std::size_t y = x + 1; y < fs.size(); ++y) {
      out.push_back({fs[x].generator + 1, fs[y].generator + 1, commutes(fs[x].gtilde, fs[y].gtilde)});
    }
  }
  return out;
}

/// exp(-+i pi/4 H) |0...0> with H the nine-qubit GHZ Hamiltonian; - for c = 0.
inline StateVector prepare_nine_code(const CodeSpec& code, int c) {
  if (!code.ghz) throw EncodingError(code.name + ": no GHZ Hamiltonian");
  const PauliSum& h = *code.ghz;
  for (const auto& [a, ca] : h.terms()) {
    for (const auto& [b, cb] : h.terms()) {
      if (!commutes(h.string_of(a), h.string_of(b))) throw EncodingError(code.name + ": GHZ terms do not commute");
    }
  }
  double theta = (c ? -1.0 : 1.0) * std::numbers::pi / 4;
  StateVector s = StateVector::zero(code.n);
  for (const auto& [k, coeff] : h.terms()) s = evolve_pauli_exp(s, h.string_of(k), theta * coeff);
  return s;
}

inline StateVector apply_logical_x(const CodeSpec& code, StateVector s) {
  if (code.logical_x.empty()) throw EncodingError(code.name + ": no logical X");
  return apply_pauli(code.logical_x[0], s);
}

/// Encoded |c-bar> with generator eigenvalues +1.
inline StateVector prepare_logical(const CodeSpec& code, int c) {
  if (c != 0 && c != 1) throw std::invalid_argument("prepare_logical: c must be 0 or 1");
  if (code.modified.empty() && code.ghz) return prepare_nine_code(code, c);
  StateVector s = apply_encoder(modified_factors(code), StateVector::zero(code.n));
  return c ? apply_logical_x(code, s) : s;
}

/// M-bar^-1 X-bar M-bar |0...0>.
inline StateVector modified_one_state(const CodeSpec& code) {
  auto fs = modified_factors(code);
  return apply_encoder_inverse(fs, apply_logical_x(code, apply_encoder(fs, StateVector::zero(code.n))));
}

/// Nine-qubit GHZ Hamiltonian from X1 + X4 + X7: two XY edge layers, then one rotation layer.
struct GhzRoute {
  PauliSum start;
  std::vector<std::vector<ElementaryOp>> layers;
  PauliSum result;
};

inline GhzRoute ghz_route(const CodeSpec& code) {
  if (!code.ghz || code.n != 9) throw EncodingError(code.name + ": GHZ route needs the nine-qubit code");
  GhzRoute r;
  r.start = parse_pauli_sum("X1 + X4 + X7", 9);
  r.layers.push_back({XYEdge{0, 1}, XYEdge{3, 4}, XYEdge{6, 7}});
  r.layers.push_back({XYEdge{1, 2}, XYEdge{4, 5}, XYEdge{7, 8}});
  PauliSum h = r.start;
  for (const auto& l : r.layers) h = conjugate_all(h, l);
  std::vector<ElementaryOp> rot;
  for (std::size_t b = 0; b < 3; ++b) {
    std::uint64_t block = std::uint64_t{7} << (3 * b);
    auto a = find_alignment(detail::restrict_to(h, block), detail::restrict_to(*code.ghz, block));
    if (!a) throw EncodingError("GHZ route: no rotation layer for block " + std::to_string(b + 1));
    rot.insert(rot.end(), a->begin(), a->end());
  }
  r.layers.push_back(rot);
  r.result = conjugate_all(h, rot);
  return r;
}

}  // namespace stabgen

#endif  // STABGEN_ENCODING_HPP_
