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

#ifndef STABGEN_DENSE_HPP_
#define STABGEN_DENSE_HPP_

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "stabgen/elementary.hpp"
#include "stabgen/pauli.hpp"

namespace stabgen {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDenseQubits = 10;

/// Amplitudes over 2^n basis states; qubit 1 is the most significant bit.
struct StateVector {
  std::size_t n_qubits = 0;
  Vector amps;

  static StateVector basis(std::size_t n, std::size_t index) {
    StateVector s{n, Vector::Zero(Eigen::Index{1} << n)};
    s.amps(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }
  static StateVector zero(std::size_t n) { return basis(n, 0); }
  double norm() const { return amps.norm(); }
};

struct DenseOperator {
  std::size_t n_qubits = 0;
  Matrix m;
};

namespace detail {

inline void check_dense(std::size_t n) {
  if (n == 0 || n > kMaxDenseQubits) {
    throw DimensionError("dense oracle supports 1..10 qubits, got " + std::to_string(n));
  }
}

// Maps symplectic bit q (qubit q) onto basis-index bit n-1-q.
inline std::uint64_t to_index_bits(std::uint64_t mask, std::size_t n) {
  std::uint64_t r = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if ((mask >> q) & 1U) r |= std::uint64_t{1} << (n - 1 - q);
  }
  return r;
}

inline cd ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// P|b> = amp(b) |b ^ flip>.
struct PauliAction {
  std::uint64_t flip;
  std::uint64_t sign_mask;
  cd base;
  PauliAction(const PauliString& p, std::size_t n)
      : flip(to_index_bits(p.x_mask(), n)),
        sign_mask(to_index_bits(p.z_mask(), n)),
        base(ipow(p.phase_log() + std::popcount(p.x_mask() & p.z_mask()))) {}
  cd amp(std::uint64_t b) const { return (std::popcount(b & sign_mask) & 1) ? -base : base; }
};

}  // namespace detail

inline Matrix pauli_matrix(const PauliString& p) {
  std::size_t n = p.n_qubits();
  detail::check_dense(n);
  detail::PauliAction a(p, n);
  Eigen::Index d = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(d, d);
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(d); ++b) {
    m(static_cast<Eigen::Index>(b ^ a.flip), static_cast<Eigen::Index>(b)) = a.amp(b);
  }
  return m;
}

inline DenseOperator to_matrix(const PauliSum& h) {
  std::size_t n = h.n_qubits();
  detail::check_dense(n);
  Eigen::Index d = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [k, c] : h.terms()) {
    detail::PauliAction a(h.string_of(k), n);
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(d); ++b) {
      m(static_cast<Eigen::Index>(b ^ a.flip), static_cast<Eigen::Index>(b)) += c * a.amp(b);
    }
  }
  return {n, std::move(m)};
}

inline StateVector apply_pauli(const PauliString& p, const StateVector& s) {
  if (p.n_qubits() != s.n_qubits) throw DimensionError("apply_pauli: size mismatch");
  detail::PauliAction a(p, s.n_qubits);
  StateVector r{s.n_qubits, Vector::Zero(s.amps.size())};
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(s.amps.size()); ++b) {
    r.amps(static_cast<Eigen::Index>(b ^ a.flip)) = a.amp(b) * s.amps(static_cast<Eigen::Index>(b));
  }
  return r;
}

/// exp(-i theta P)|s> = cos(theta)|s> - i sin(theta) P|s>.
inline StateVector evolve_pauli_exp(const StateVector& s, const PauliString& p, double theta) {
  StateVector ps = apply_pauli(p, s);
  StateVector r{s.n_qubits, std::cos(theta) * s.amps + cd(0, -std::sin(theta)) * ps.amps};
  return r;
}

inline StateVector evolve_pauli_exp(const StateVector& s, const PauliString& p, const Angle& theta) {
  auto [c, sn] = theta.cos_sin();
  StateVector ps = apply_pauli(p, s);
  return {s.n_qubits, c * s.amps + cd(0, -sn) * ps.amps};
}

/// Generators (P, theta) whose ordered product exp(-i theta P) realizes op.
inline std::vector<std::pair<PauliString, Angle>> op_factors(const ElementaryOp& op, std::size_t n) {
  validate(op, n);
  struct V {
    std::size_t n;
    std::vector<std::pair<PauliString, Angle>> operator()(const AxisRotation& r) const {
      return {{PauliString::single(n, r.qubit, r.axis), r.angle.scaled(1, 2)}};
    }
    std::vector<std::pair<PauliString, Angle>> operator()(const PauliEvolution& e) const {
      return {{e.p, e.theta}};
    }
    std::vector<std::pair<PauliString, Angle>> operator()(const XYEdge& e) const {
      return {{two_body(n, e.i, e.j, Axis::X), e.theta}, {two_body(n, e.i, e.j, Axis::Y), e.theta}};
    }
    std::vector<std::pair<PauliString, Angle>> operator()(const IsingEdge& e) const {
      return {{two_body(n, e.i, e.j, Axis::Z), e.theta}};
    }
  };
  return std::visit(V{n}, op);
}

inline StateVector apply_op(const StateVector& s, const ElementaryOp& op) {
  StateVector r = s;
  for (const auto& [p, th] : op_factors(op, s.n_qubits)) r = evolve_pauli_exp(r, p, th);
  return r;
}

/// Dense exp(-i theta P) assembled from the Pauli action, no matrix exponential.
inline Matrix pauli_exp_matrix(const PauliString& p, double theta) {
  Eigen::Index d = Eigen::Index{1} << p.n_qubits();
  return std::cos(theta) * Matrix::Identity(d, d) + cd(0, -std::sin(theta)) * pauli_matrix(p);
}

inline Matrix op_unitary(const ElementaryOp& op, std::size_t n) {
  detail::check_dense(n);
  Eigen::Index d = Eigen::Index{1} << n;
  Matrix u = Matrix::Identity(d, d);
  for (const auto& [p, th] : op_factors(op, n)) u = pauli_exp_matrix(p, th.radians()) * u;
  return u;
}

/// P * M, using the permutation-with-phases structure of P.
inline Matrix left_pauli(const PauliString& p, const Matrix& m) {
  detail::PauliAction a(p, p.n_qubits());
  Matrix r(m.rows(), m.cols());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(m.rows()); ++b) {
    r.row(static_cast<Eigen::Index>(b ^ a.flip)) = a.amp(b) * m.row(static_cast<Eigen::Index>(b));
  }
  return r;
}

/// M * P.
inline Matrix right_pauli(const Matrix& m, const PauliString& p) {
  detail::PauliAction a(p, p.n_qubits());
  Matrix r(m.rows(), m.cols());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(m.cols()); ++b) {
    r.col(static_cast<Eigen::Index>(b)) = a.amp(b) * m.col(static_cast<Eigen::Index>(b ^ a.flip));
  }
  return r;
}

/// exp(-i theta P) M exp(i theta P) without forming the unitary.
inline Matrix conjugate_dense(const Matrix& m, const PauliString& p, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  Matrix pm = left_pauli(p, m);
  return c * c * m + s * s * right_pauli(pm, p) + cd(0, c * s) * (right_pauli(m, p) - pm);
}

inline Matrix conjugate_dense(Matrix m, const ElementaryOp& op, std::size_t n) {
  for (const auto& [p, th] : op_factors(op, n)) m = conjugate_dense(m, p, th.radians());
  return m;
}

/// H * M without forming H.
inline Matrix apply_sum(const PauliSum& h, const Matrix& m) {
  std::size_t n = h.n_qubits();
  Matrix r = Matrix::Zero(m.rows(), m.cols());
  for (const auto& [k, c] : h.terms()) {
    detail::PauliAction a(h.string_of(k), n);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const cd* src = m.col(col).data();
      cd* dst = r.col(col).data();
      for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(m.rows()); ++b) dst[b ^ a.flip] += c * a.amp(b) * src[b];
    }
  }
  return r;
}

/// exp(-i t H) M by substepped Taylor series on the sparse Pauli action.
inline Matrix expm_apply(const PauliSum& h, double t, Matrix m) {
  double width = std::abs(t) * l1_norm(h);
  int steps = std::max(1, static_cast<int>(std::ceil(width / 0.5)));
  double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    Matrix term = m;
    double scale = m.norm();
    for (int k = 1; k < 60; ++k) {
      term = apply_sum(h, term) * cd(0, -dt / k);
      m += term;
      if (term.norm() <= 1e-17 * scale) break;
    }
  }
  return m;
}

/// exp(-i t H) for Hermitian H via eigendecomposition.
inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& v = es.eigenvectors();
  Vector ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(cd(0, -t * es.eigenvalues()(i)));
  return v * ph.asDiagonal() * v.adjoint();
}

/// Hermitian G with U = exp(-i G), principal branch (eigenphases in (-pi, pi]).
inline Matrix logm_unitary(const Matrix& u) {
  // A generic real combination of the Hermitian and anti-Hermitian parts shares U's eigenvectors.
  const double c = 0.5772156649015329;
  Matrix herm = 0.5 * (u + u.adjoint()) + cd(0, -0.5 * c) * (u - u.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  Matrix v = es.eigenvectors();
  const auto& lam = es.eigenvalues();
  Eigen::Index d = u.rows();
  Vector phases(d);
  Eigen::Index i = 0;
  while (i < d) {
    Eigen::Index j = i + 1;
    while (j < d && lam(j) - lam(j - 1) < 1e-7) ++j;
    Eigen::Index g = j - i;
    Matrix vg = v.middleCols(i, g);
    Matrix sub = vg.adjoint() * u * vg;
    if (g == 1) {
      phases(i) = std::arg(sub(0, 0));
    } else {
      Eigen::ComplexSchur<Matrix> schur(sub);
      v.middleCols(i, g) = vg * schur.matrixU();
      for (Eigen::Index k = 0; k < g; ++k) phases(i + k) = std::arg(schur.matrixT()(k, k));
    }
    i = j;
  }
  return -(v * phases.asDiagonal() * v.adjoint());
}

/// Real Pauli coefficients Tr(P M)/2^n of a Hermitian matrix, dropping |c| <= tol.
inline PauliSum pauli_decompose(const Matrix& m, std::size_t n, double tol = 1e-12) {
  detail::check_dense(n);
  std::uint64_t d = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(m.rows()) != d || static_cast<std::uint64_t>(m.cols()) != d) {
    throw DimensionError("pauli_decompose: matrix size mismatch");
  }
  std::vector<std::uint64_t> to_index(d);
  for (std::uint64_t z = 0; z < d; ++z) to_index[z] = detail::to_index_bits(z, n);
  PauliSum out(n);
  std::vector<cd> v(d);
  for (std::uint64_t x = 0; x < d; ++x) {
    std::uint64_t flip = to_index[x];
    for (std::uint64_t b = 0; b < d; ++b) v[b] = m(static_cast<Eigen::Index>(b ^ flip), static_cast<Eigen::Index>(b));
    for (std::uint64_t h = 1; h < d; h <<= 1) {
      for (std::uint64_t i = 0; i < d; i += h << 1) {
        for (std::uint64_t j = i; j < i + h; ++j) {
          cd a = v[j], b = v[j + h];
          v[j] = a + b;
          v[j + h] = a - b;
        }
      }
    }
    for (std::uint64_t z = 0; z < d; ++z) {
      cd c = std::conj(detail::ipow(std::popcount(x & z))) * v[to_index[z]] / static_cast<double>(d);
      if (std::abs(c.real()) > tol) out.add(PauliKey{x, z}, c.real());
    }
  }
  return out;
}

struct GroundSpace {
  double energy = 0.0;
  std::size_t dimension = 0;
  std::vector<StateVector> basis;
  Vector spectrum;
};

inline GroundSpace ground_space(const PauliSum& h) {
  DenseOperator op = to_matrix(h);
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.m);
  const auto& ev = es.eigenvalues();
  double width = ev(ev.size() - 1) - ev(0);
  double tol = 1e-9 * std::max(1.0, width);
  GroundSpace g;
  g.energy = ev(0);
  g.spectrum = ev.cast<cd>();
  for (Eigen::Index i = 0; i < ev.size() && ev(i) - ev(0) <= tol; ++i) {
    g.basis.push_back({op.n_qubits, es.eigenvectors().col(i)});
  }
  g.dimension = g.basis.size();
  return g;
}

/// Columns of the returned matrix are the given states.
inline Matrix stack_states(const std::vector<StateVector>& states) {
  if (states.empty()) return Matrix();
  Matrix m(states.front().amps.size(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = states[i].amps;
  return m;
}

/// Largest principal angle between the spans of two state lists.
inline double max_principal_angle(const std::vector<StateVector>& a, const std::vector<StateVector>& b) {
  Matrix qa = Eigen::HouseholderQR<Matrix>(stack_states(a)).householderQ() *
              Matrix::Identity(a.front().amps.size(), static_cast<Eigen::Index>(a.size()));
  Matrix qb = Eigen::HouseholderQR<Matrix>(stack_states(b)).householderQ() *
              Matrix::Identity(b.front().amps.size(), static_cast<Eigen::Index>(b.size()));
  // sin of the angles, accurate for small angles.
  Matrix resid = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<Matrix> svd(resid);
  double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  double ang = std::asin(std::min(1.0, s));
  if (a.size() != b.size()) ang = std::numbers::pi / 2;
  return ang;
}

/// Global-phase-insensitive distance min_phi || a - e^{i phi} b ||.
inline double phase_distance(const Vector& a, const Vector& b) {
  cd ov = b.dot(a);
  cd ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cd(1, 0);
  return (a - ph * b).norm();
}

}  // namespace stabgen

#endif  // STABGEN_DENSE_HPP_
