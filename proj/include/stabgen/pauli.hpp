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

#ifndef STABGEN_PAULI_HPP_
#define STABGEN_PAULI_HPP_

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabgen {

/// Raised when operands disagree on qubit count or exceed the supported size.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation receives a structurally invalid argument.
struct InvalidOperation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxQubits = 64;

enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

/// An angle, kept as an exact rational multiple of pi whenever possible.
class Angle {
 public:
  Angle() = default;

  static Angle pi_fraction(long num, long den) {
    if (den == 0) throw InvalidOperation("Angle: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    Angle a;
    a.num_ = num / g;
    a.den_ = den / g;
    a.exact_ = true;
    a.rad_ = std::numbers::pi * static_cast<double>(a.num_) / static_cast<double>(a.den_);
    return a;
  }

  static Angle from_radians(double r) {
    Angle a;
    a.rad_ = r;
    a.exact_ = false;
    return a;
  }

  double radians() const { return rad_; }
  bool is_exact() const { return exact_; }
  long numerator() const { return num_; }
  long denominator() const { return den_; }

  Angle operator-() const {
    return exact_ ? pi_fraction(-num_, den_) : from_radians(-rad_);
  }
  Angle scaled(long mul, long div) const {
    return exact_ ? pi_fraction(num_ * mul, den_ * div)
                  : from_radians(rad_ * static_cast<double>(mul) / static_cast<double>(div));
  }

  /// (cos, sin); exact for multiples of pi/2.
  std::pair<double, double> cos_sin() const {
    if (exact_ && (den_ == 1 || den_ == 2)) {
      long k = (num_ * (2 / den_)) % 4;
      if (k < 0) k += 4;
      static constexpr double c[4] = {1.0, 0.0, -1.0, 0.0};
      static constexpr double s[4] = {0.0, 1.0, 0.0, -1.0};
      return {c[k], s[k]};
    }
    return {std::cos(rad_), std::sin(rad_)};
  }

  std::string to_string() const {
    if (!exact_) return std::to_string(rad_);
    if (num_ == 0) return "0";
    std::string s = num_ < 0 ? "-" : "";
    long a = num_ < 0 ? -num_ : num_;
    if (a != 1) s += std::to_string(a);
    s += "pi";
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  friend bool operator==(const Angle& a, const Angle& b) {
    if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.rad_ == b.rad_;
  }

 private:
  long num_ = 0;
  long den_ = 1;
  bool exact_ = true;
  double rad_ = 0.0;
};

/// Symplectic key of a phase-free Pauli string; bit q refers to qubit q (0-based).
struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend auto operator<=>(const PauliKey&, const PauliKey&) = default;
};

/// An n-qubit Pauli string with a phase in {+1, +i, -1, -i}.
class PauliString {
 public:
  explicit PauliString(std::size_t n = 1) : n_(n) { check_size(n); }
  PauliString(std::size_t n, std::uint64_t x, std::uint64_t z, int phase_log = 0)
      : n_(n), x_(x), z_(z), phase_(static_cast<std::uint8_t>(((phase_log % 4) + 4) % 4)) {
    check_size(n);
    std::uint64_t m = mask(n);
    if ((x & ~m) || (z & ~m)) throw DimensionError("PauliString: mask exceeds qubit count");
  }

  static PauliString single(std::size_t n, std::size_t q, Axis a) {
    if (q >= n) throw DimensionError("PauliString: qubit index out of range");
    std::uint64_t b = std::uint64_t{1} << q;
    return PauliString(n, a != Axis::Z ? b : 0, a != Axis::X ? b : 0);
  }

  /// Builds a string from a text like "XIZY" (qubit 0 first).
  static PauliString from_dense(const std::string& s) {
    PauliString p(s.size());
    for (std::size_t q = 0; q < s.size(); ++q) {
      switch (s[q]) {
        case 'I': case '_': break;
        case 'X': p.x_ |= std::uint64_t{1} << q; break;
        case 'Z': p.z_ |= std::uint64_t{1} << q; break;
        case 'Y':
          p.x_ |= std::uint64_t{1} << q;
          p.z_ |= std::uint64_t{1} << q;
          break;
        default: throw InvalidOperation(std::string("PauliString: bad character ") + s[q]);
      }
    }
    return p;
  }

  std::size_t n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  /// Phase is i^phase_log().
  int phase_log() const { return phase_; }
  PauliKey key() const { return {x_, z_}; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::size_t weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }
  std::uint64_t support() const { return x_ | z_; }

  /// 'I', 'X', 'Y' or 'Z' on qubit q.
  char at(std::size_t q) const {
    bool bx = (x_ >> q) & 1U, bz = (z_ >> q) & 1U;
    return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }

  PauliString canonical() const { return PauliString(n_, x_, z_, 0); }
  PauliString with_phase(int phase_log) const { return PauliString(n_, x_, z_, phase_log); }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_ && a.phase_ == b.phase_;
  }

  static std::uint64_t mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

 private:
  static void check_size(std::size_t n) {
    if (n == 0 || n > kMaxQubits) throw DimensionError("PauliString: qubit count must be in 1..64");
  }

  std::size_t n_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  std::uint8_t phase_ = 0;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": qubit counts differ (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

// Exponent k with sigma(a) sigma(b) = i^k sigma(a xor b), summed over qubits.
inline int product_phase(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
  std::uint64_t y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = z1 & ~x1;
  std::uint64_t y2 = x2 & z2, xo2 = x2 & ~z2, zo2 = z2 & ~x2;
  int plus = std::popcount((y1 & zo2) | (xo1 & y2) | (zo1 & xo2));
  int minus = std::popcount((y1 & xo2) | (xo1 & zo2) | (zo1 & y2));
  return ((plus - minus) % 4 + 4) % 4;
}

}  // namespace detail

inline PauliString multiply(const PauliString& p, const PauliString& q) {
  detail::require_same_size(p.n_qubits(), q.n_qubits(), "multiply");
  int k = p.phase_log() + q.phase_log() +
          detail::product_phase(p.x_mask(), p.z_mask(), q.x_mask(), q.z_mask());
  return PauliString(p.n_qubits(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask(), k);
}

inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

inline bool commutes(const PauliString& p, const PauliString& q) {
  detail::require_same_size(p.n_qubits(), q.n_qubits(), "commutes");
  return (std::popcount((p.x_mask() & q.z_mask()) ^ (p.z_mask() & q.x_mask())) & 1) == 0;
}

/// Hermitian operator as a real combination of phase-canonical Pauli strings.
class PauliSum {
 public:
  using TermMap = std::map<PauliKey, double>;

  explicit PauliSum(std::size_t n = 1) : n_(n) {
    if (n == 0 || n > kMaxQubits) throw DimensionError("PauliSum: qubit count must be in 1..64");
  }
  PauliSum(const PauliString& p, double coeff) : PauliSum(p.n_qubits()) { add_term(p, coeff); }

  std::size_t n_qubits() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Adds coeff * p; p must carry a real phase.
  void add_term(const PauliString& p, double coeff) {
    detail::require_same_size(n_, p.n_qubits(), "PauliSum::add_term");
    int ph = p.phase_log();
    if (ph & 1) throw InvalidOperation("PauliSum: imaginary phase in Hermitian sum");
    add(p.key(), ph == 2 ? -coeff : coeff);
  }

  void add(PauliKey k, double coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(k, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  double coefficient(const PauliString& p) const {
    auto it = terms_.find(p.key());
    if (it == terms_.end()) return 0.0;
    return p.phase_log() == 2 ? -it->second : it->second;
  }

  PauliString string_of(PauliKey k) const { return PauliString(n_, k.x, k.z); }

  PauliSum& operator+=(const PauliSum& o) {
    detail::require_same_size(n_, o.n_, "PauliSum::+");
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  PauliSum& operator-=(const PauliSum& o) {
    detail::require_same_size(n_, o.n_, "PauliSum::-");
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  PauliSum& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, double s) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }
  PauliSum operator-() const { return *this * -1.0; }

  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Drops terms with |coeff| <= tol.
  PauliSum pruned(double tol) const {
    PauliSum r(n_);
    for (const auto& [k, c] : terms_) {
      if (std::abs(c) > tol) r.terms_.emplace(k, c);
    }
    return r;
  }

  bool approx_equal(const PauliSum& o, double tol) const {
    if (n_ != o.n_) return false;
    PauliSum d = *this - o;
    for (const auto& [k, c] : d.terms_) {
      if (std::abs(c) > tol) return false;
    }
    return true;
  }

  /// Same strings, coefficients equal up to sign.
  bool same_support(const PauliSum& o) const {
    if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
    for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b) {
      if (a->first != b->first || std::abs(a->second) != std::abs(b->second)) return false;
    }
    return true;
  }

  /// Bitmask of qubits acted on by some term.
  std::uint64_t support() const {
    std::uint64_t s = 0;
    for (const auto& [k, c] : terms_) s |= k.x | k.z;
    return s;
  }

 private:
  std::size_t n_;
  TermMap terms_;
};

/// e^{-i theta P} h e^{i theta P}.
inline PauliSum conjugate_evolution(const PauliSum& h, const PauliString& p, const Angle& theta) {
  detail::require_same_size(h.n_qubits(), p.n_qubits(), "conjugate_evolution");
  if (p.phase_log() != 0) throw InvalidOperation("conjugate_evolution: generator must have phase +1");
  auto [c, s] = theta.scaled(2, 1).cos_sin();
  PauliSum out(h.n_qubits());
  for (const auto& [k, coeff] : h.terms()) {
    bool comm = (std::popcount((p.x_mask() & k.z) ^ (p.z_mask() & k.x)) & 1) == 0;
    if (comm) {
      out.add(k, coeff);
      continue;
    }
    out.add(k, c * coeff);
    // -i P Q = i^{k-1} R with k odd, hence a real sign.
    int ph = detail::product_phase(p.x_mask(), p.z_mask(), k.x, k.z);
    double sign = ((ph + 3) % 4) == 0 ? 1.0 : -1.0;
    out.add(PauliKey{p.x_mask() ^ k.x, p.z_mask() ^ k.z}, sign * s * coeff);
  }
  return out;
}

/// (1/i)[h1, h2] as a Hermitian sum.
inline PauliSum commutator(const PauliSum& h1, const PauliSum& h2) {
  detail::require_same_size(h1.n_qubits(), h2.n_qubits(), "commutator");
  PauliSum out(h1.n_qubits());
  for (const auto& [a, ca] : h1.terms()) {
    for (const auto& [b, cb] : h2.terms()) {
      if ((std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0) continue;
      // [A,B] = 2AB = 2 i^k R, divided by i.
      int ph = detail::product_phase(a.x, a.z, b.x, b.z);
      double sign = ((ph + 3) % 4) == 0 ? 1.0 : -1.0;
      out.add(PauliKey{a.x ^ b.x, a.z ^ b.z}, 2.0 * sign * ca * cb);
    }
  }
  return out;
}

inline double hs_norm(const PauliSum& h) {
  double s = 0.0;
  for (const auto& [k, c] : h.terms()) s += c * c;
  return std::sqrt(s);
}

inline double l1_norm(const PauliSum& h) {
  double s = 0.0;
  for (const auto& [k, c] : h.terms()) s += std::abs(c);
  return s;
}

}  // namespace stabgen

#endif  // STABGEN_PAULI_HPP_
