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

#ifndef STABGEN_TEXT_HPP_
#define STABGEN_TEXT_HPP_

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "stabgen/pauli.hpp"

namespace stabgen {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RenderOptions {
  /// When nonzero, qubit q is written as index-within-block with a "^(k)" label.
  std::size_t block_size = 0;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string render(const PauliString& p, const RenderOptions& opt = {}) {
  std::string s;
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    char c = p.at(q);
    if (c == 'I') continue;
    std::size_t idx = opt.block_size ? q % opt.block_size + 1 : q + 1;
    s += c;
    s += idx < 10 ? std::to_string(idx) : "_{" + std::to_string(idx) + "}";
    if (opt.block_size) s += "^(" + std::to_string(q / opt.block_size + 1) + ")";
  }
  return s.empty() ? "I" : s;
}

namespace detail {

// Display order: by first acted qubit, then X < Y < Z, identity last at each position.
inline bool display_less(const PauliString& a, const PauliString& b) {
  auto code = [](char c) { return c == 'X' ? 0 : c == 'Y' ? 1 : c == 'Z' ? 2 : 3; };
  for (std::size_t q = 0; q < a.n_qubits(); ++q) {
    int ca = code(a.at(q)), cb = code(b.at(q));
    if (ca != cb) return ca < cb;
  }
  return false;
}

}  // namespace detail

/// Paper-style rendering, e.g. "-Z1Z2X3 + Y2".
inline std::string render(const PauliSum& h, const RenderOptions& opt = {}) {
  if (h.empty()) return "0";
  std::vector<std::pair<PauliString, double>> ts;
  for (const auto& [k, c] : h.terms()) ts.emplace_back(h.string_of(k), c);
  std::sort(ts.begin(), ts.end(),
            [](const auto& a, const auto& b) { return detail::display_less(a.first, b.first); });
  std::string out;
  bool first = true;
  for (const auto& [p, c] : ts) {
    double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1.0) out += format_number(mag) + (p.is_identity() ? "" : "*");
    if (!(mag != 1.0 && p.is_identity())) out += render(p, opt);
  }
  return out;
}

namespace detail {

class SumParser {
 public:
  SumParser(std::string_view s, std::size_t n, std::size_t block) : s_(s), n_(n), block_(block) {}

  std::vector<std::pair<std::vector<std::pair<std::size_t, char>>, double>> terms;
  std::size_t max_index = 0;

  void run() {
    skip_ws();
    if (at_end()) throw ParseError("empty Pauli sum");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      bool had_sign = false;
      while (true) {
        skip_ws();
        if (eat("+")) {
          had_sign = true;
        } else if (eat("-") || eat("\xE2\x88\x92")) {
          sign = -sign;
          had_sign = true;
        } else {
          break;
        }
      }
      if (!first && !had_sign) throw error("expected '+' or '-'");
      first = false;
      skip_ws();
      parse_term(sign);
      skip_ws();
    }
  }

 private:
  ParseError error(const std::string& what) const {
    return ParseError("Pauli sum parse error at offset " + std::to_string(pos_) + ": " + what +
                      " in \"" + std::string(s_) + "\"");
  }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view t) {
    if (s_.substr(pos_, t.size()) == t) {
      pos_ += t.size();
      return true;
    }
    return false;
  }
  // Unicode subscript digit U+2080..U+2089, returns -1 if absent.
  int sub_digit() {
    if (pos_ + 2 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xE2 &&
        static_cast<unsigned char>(s_[pos_ + 1]) == 0x82) {
      unsigned char c = static_cast<unsigned char>(s_[pos_ + 2]);
      if (c >= 0x80 && c <= 0x89) {
        pos_ += 3;
        return c - 0x80;
      }
    }
    return -1;
  }
  std::size_t parse_digits() {
    std::size_t start = pos_, v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
    if (pos_ == start) throw error("expected digits");
    return v;
  }
  std::size_t parse_index() {
    if (eat("_")) {
      if (eat("{")) {
        std::size_t v = parse_digits();
        if (!eat("}")) throw error("expected '}'");
        return v;
      }
      return parse_digits();
    }
    int d = sub_digit();
    if (d >= 0) {
      std::size_t v = static_cast<std::size_t>(d);
      for (int e; (e = sub_digit()) >= 0;) v = v * 10 + static_cast<std::size_t>(e);
      return v;
    }
    if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return static_cast<std::size_t>(s_[pos_++] - '0');
    throw error("expected qubit index");
  }
  void parse_term(double sign) {
    double coeff = 1.0;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      char* e = nullptr;
      std::string buf(s_.substr(pos_));
      coeff = std::strtod(buf.c_str(), &e);
      pos_ += static_cast<std::size_t>(e - buf.c_str());
      skip_ws();
      eat("*");
      skip_ws();
    }
    std::vector<std::pair<std::size_t, char>> factors;
    bool any = false;
    while (true) {
      std::size_t save = pos_;
      skip_ws();
      if (at_end()) break;
      char c = s_[pos_];
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        pos_ = save;
        break;
      }
      if (c == 'I') {
        ++pos_;
        any = true;
        continue;
      }
      ++pos_;
      std::size_t idx = parse_index();
      if (eat("^(")) {
        std::size_t blk = parse_digits();
        if (!eat(")")) throw error("expected ')'");
        if (block_ == 0) throw error("block label without block size");
        if (idx == 0 || idx > block_ || blk == 0) throw error("bad block-labelled index");
        idx = (blk - 1) * block_ + idx;
      }
      if (idx == 0) throw error("qubit indices are 1-based");
      factors.emplace_back(idx - 1, c);
      max_index = std::max(max_index, idx);
      any = true;
    }
    if (!any && coeff == 1.0) throw error("expected Pauli factor");
    terms.emplace_back(std::move(factors), sign * coeff);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_;
  std::size_t block_;
};

}  // namespace detail

/// Parses the printed notation (X1Z2, X_{10}, 2*Y3 ...). n = 0 infers the qubit count from the largest index.
inline PauliSum parse_pauli_sum(std::string_view text, std::size_t n = 0, std::size_t block_size = 0) {
  detail::SumParser p(text, n, block_size);
  p.run();
  std::size_t nq = n ? n : std::max<std::size_t>(p.max_index, 1);
  if (p.max_index > nq) throw ParseError("qubit index exceeds qubit count in \"" + std::string(text) + "\"");
  PauliSum out(nq);
  for (const auto& [factors, coeff] : p.terms) {
    PauliString s(nq);
    for (const auto& [q, c] : factors) {
      Axis a = c == 'X' ? Axis::X : c == 'Y' ? Axis::Y : Axis::Z;
      s = multiply(s, PauliString::single(nq, q, a));
    }
    if (s.phase_log() & 1) throw ParseError("term with repeated qubits is not Hermitian");
    out.add_term(s, coeff);
  }
  return out;
}

inline PauliString parse_pauli_string(std::string_view text, std::size_t n = 0) {
  PauliSum h = parse_pauli_sum(text, n);
  if (h.size() != 1 || std::abs(h.terms().begin()->second) != 1.0) {
    throw ParseError("expected a single signed Pauli string: \"" + std::string(text) + "\"");
  }
  auto [k, c] = *h.terms().begin();
  return PauliString(h.n_qubits(), k.x, k.z, c < 0 ? 2 : 0);
}

}  // namespace stabgen

#endif  // STABGEN_TEXT_HPP_
