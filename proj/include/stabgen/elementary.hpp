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

#ifndef STABGEN_ELEMENTARY_HPP_
#define STABGEN_ELEMENTARY_HPP_

#include <string>
#include <variant>
#include <vector>

#include "stabgen/pauli.hpp"

namespace stabgen {

/// exp(-i angle/2 sigma_axis) on one qubit; angle in {+-pi/2, +-pi}.
struct AxisRotation {
  std::size_t qubit = 0;
  Axis axis = Axis::X;
  Angle angle = Angle::pi_fraction(1, 2);
};

/// exp(-i theta P).
struct PauliEvolution {
  PauliString p;
  Angle theta;
};

/// exp(-i theta X_i X_j) exp(-i theta Y_i Y_j).
struct XYEdge {
  std::size_t i = 0;
  std::size_t j = 1;
  Angle theta = Angle::pi_fraction(1, 4);
};

/// exp(-i theta Z_i Z_j).
struct IsingEdge {
  std::size_t i = 0;
  std::size_t j = 1;
  Angle theta = Angle::pi_fraction(1, 4);
};

using ElementaryOp = std::variant<AxisRotation, PauliEvolution, XYEdge, IsingEdge>;

inline bool is_rotation(const ElementaryOp& op) { return std::holds_alternative<AxisRotation>(op); }
inline bool is_edge(const ElementaryOp& op) {
  return std::holds_alternative<XYEdge>(op) || std::holds_alternative<IsingEdge>(op);
}

/// Qubits touched by an operation, as a bitmask.
inline std::uint64_t op_support(const ElementaryOp& op) {
  struct V {
    std::uint64_t operator()(const AxisRotation& r) const { return std::uint64_t{1} << r.qubit; }
    std::uint64_t operator()(const PauliEvolution& e) const { return e.p.support(); }
    std::uint64_t operator()(const XYEdge& e) const {
      return (std::uint64_t{1} << e.i) | (std::uint64_t{1} << e.j);
    }
    std::uint64_t operator()(const IsingEdge& e) const {
      return (std::uint64_t{1} << e.i) | (std::uint64_t{1} << e.j);
    }
  };
  return std::visit(V{}, op);
}

inline void validate(const ElementaryOp& op, std::size_t n) {
  struct V {
    std::size_t n;
    void edge(std::size_t i, std::size_t j) const {
      if (i == j) throw InvalidOperation("edge endpoints must differ");
      if (i >= n || j >= n) throw DimensionError("edge endpoint out of range");
    }
    void operator()(const AxisRotation& r) const {
      if (r.qubit >= n) throw DimensionError("rotation qubit out of range");
      const Angle& a = r.angle;
      bool ok = a.is_exact() && (a.denominator() == 1 || a.denominator() == 2) &&
                (a.numerator() == 1 || a.numerator() == -1);
      if (!ok) throw InvalidOperation("rotation angle must be +-pi/2 or +-pi");
    }
    void operator()(const PauliEvolution& e) const {
      if (e.p.n_qubits() != n) throw DimensionError("evolution generator size mismatch");
      if (e.p.phase_log() != 0) throw InvalidOperation("evolution generator must have phase +1");
    }
    void operator()(const XYEdge& e) const { edge(e.i, e.j); }
    void operator()(const IsingEdge& e) const { edge(e.i, e.j); }
  };
  std::visit(V{n}, op);
}

inline PauliString two_body(std::size_t n, std::size_t i, std::size_t j, Axis a) {
  return multiply(PauliString::single(n, i, a), PauliString::single(n, j, a));
}

inline PauliSum conjugate_elementary(const PauliSum& h, const ElementaryOp& op) {
  std::size_t n = h.n_qubits();
  validate(op, n);
  struct V {
    const PauliSum& h;
    std::size_t n;
    PauliSum operator()(const AxisRotation& r) const {
      return conjugate_evolution(h, PauliString::single(n, r.qubit, r.axis), r.angle.scaled(1, 2));
    }
    PauliSum operator()(const PauliEvolution& e) const { return conjugate_evolution(h, e.p, e.theta); }
    PauliSum operator()(const XYEdge& e) const {
      PauliSum t = conjugate_evolution(h, two_body(n, e.i, e.j, Axis::Y), e.theta);
      return conjugate_evolution(t, two_body(n, e.i, e.j, Axis::X), e.theta);
    }
    PauliSum operator()(const IsingEdge& e) const {
      return conjugate_evolution(h, two_body(n, e.i, e.j, Axis::Z), e.theta);
    }
  };
  return std::visit(V{h, n}, op);
}

inline PauliSum conjugate_all(PauliSum h, const std::vector<ElementaryOp>& ops) {
  for (const auto& op : ops) h = conjugate_elementary(h, op);
  return h;
}

inline ElementaryOp inverse(const ElementaryOp& op) {
  struct V {
    ElementaryOp operator()(const AxisRotation& r) const { return AxisRotation{r.qubit, r.axis, -r.angle}; }
    ElementaryOp operator()(const PauliEvolution& e) const { return PauliEvolution{e.p, -e.theta}; }
    ElementaryOp operator()(const XYEdge& e) const { return XYEdge{e.i, e.j, -e.theta}; }
    ElementaryOp operator()(const IsingEdge& e) const { return IsingEdge{e.i, e.j, -e.theta}; }
  };
  return std::visit(V{}, op);
}

/// Short human-readable form with 1-based qubits, e.g. "Ry(pi/2)@3", "XY(pi/4)@1,2".
inline std::string describe(const ElementaryOp& op) {
  struct V {
    std::string operator()(const AxisRotation& r) const {
      return std::string("R") + axis_char(r.axis) + "(" + r.angle.to_string() + ")@" +
             std::to_string(r.qubit + 1);
    }
    std::string operator()(const PauliEvolution& e) const {
      std::string s;
      for (std::size_t q = 0; q < e.p.n_qubits(); ++q) {
        if (e.p.at(q) != 'I') s += e.p.at(q) + std::to_string(q + 1);
      }
      return "exp(" + e.theta.to_string() + ")@" + s;
    }
    std::string operator()(const XYEdge& e) const {
      return "XY(" + e.theta.to_string() + ")@" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1);
    }
    std::string operator()(const IsingEdge& e) const {
      return "ZZ(" + e.theta.to_string() + ")@" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1);
    }
  };
  return std::visit(V{}, op);
}

}  // namespace stabgen

#endif  // STABGEN_ELEMENTARY_HPP_
