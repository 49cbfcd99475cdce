// Copyright 2026 The hqc Authors
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

#include "hqc/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace hqc {

namespace {

void check_register(std::size_t n) {
  if (n == 0 || n > kMaxQubits)
    throw std::invalid_argument(
        fmt::format("register size {} outside [1, {}]", n, kMaxQubits));
}

std::uint64_t low_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(
        fmt::format("{}: length mismatch ({} vs {})", what, a, b));
}

}  // namespace

char to_char(PauliOp op) {
  switch (op) {
    case PauliOp::I:
      return 'I';
    case PauliOp::X:
      return 'X';
    case PauliOp::Y:
      return 'Y';
    case PauliOp::Z:
      return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliOp::I;
    case 'X':
      return PauliOp::X;
    case 'Y':
      return PauliOp::Y;
    case 'Z':
      return PauliOp::Z;
    default:
      throw InputError(fmt::format("invalid Pauli character '{}'", c));
  }
}

cplx Phase::value() const {
  static constexpr cplx kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kUnits[k & 3U];
}

// ---------------------------------------------------------------------------
// BasisState

BasisState::BasisState(std::size_t num_qubits, std::uint64_t bits)
    : n_(num_qubits), bits_(bits) {
  check_register(num_qubits);
  if ((bits & ~low_mask(num_qubits)) != 0)
    throw std::invalid_argument("basis state has bits beyond its register");
}

BasisState BasisState::parse(std::string_view text) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (text[i] != '0')
      throw InputError(fmt::format("invalid bitstring '{}'", text));
  }
  if (text.empty() || text.size() > kMaxQubits)
    throw InputError(fmt::format("invalid bitstring length in '{}'", text));
  return BasisState(text.size(), bits);
}

int BasisState::particle_count() const { return std::popcount(bits_); }

std::string BasisState::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

bool lex_less(const BasisState& a, const BasisState& b) {
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  // The first differing character is the lowest differing bit.
  return !a.test(static_cast<std::size_t>(std::countr_zero(diff)));
}

std::ostream& operator<<(std::ostream& os, const BasisState& s) {
  return os << '|' << s.str() << '>';
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::size_t num_qubits) : n_(num_qubits) {
  check_register(num_qubits);
}

PauliString::PauliString(std::size_t num_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_(num_qubits), x_(x_mask), z_(z_mask) {
  check_register(num_qubits);
  if (((x_mask | z_mask) & ~low_mask(num_qubits)) != 0)
    throw std::invalid_argument("Pauli string has factors beyond its register");
}

PauliString PauliString::parse(std::string_view text) {
  if (text.empty() || text.size() > kMaxQubits)
    throw InputError(fmt::format("invalid Pauli string length in '{}'", text));
  PauliString s(text.size());
  for (std::size_t i = 0; i < text.size(); ++i)
    s.set(i, pauli_from_char(text[i]));
  return s;
}

PauliOp PauliString::at(std::size_t qubit) const {
  const unsigned x = (x_ >> qubit) & 1U;
  const unsigned z = (z_ >> qubit) & 1U;
  if (x && z) return PauliOp::Y;
  if (x) return PauliOp::X;
  if (z) return PauliOp::Z;
  return PauliOp::I;
}

void PauliString::set(std::size_t qubit, PauliOp op) {
  if (qubit >= n_) throw std::out_of_range("Pauli string index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (op == PauliOp::X || op == PauliOp::Y) x_ |= bit;
  if (op == PauliOp::Z || op == PauliOp::Y) z_ |= bit;
}

std::size_t PauliString::locality() const {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (std::size_t i = 0; i < n_; ++i) s[i] = to_char(at(i));
  return s;
}

std::ostream& operator<<(std::ostream& os, const PauliString& s) {
  return os << s.str();
}

std::pair<Phase, PauliString> multiply_strings(const PauliString& a,
                                               const PauliString& b) {
  require_same_size(a.size(), b.size(), "multiply_strings");
  // Single-qubit products: cyclic pairs (XY, YZ, ZX) give +i, reversed -i.
  unsigned exponent = 0;
  std::uint64_t both = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
  while (both != 0) {
    const auto q = static_cast<std::size_t>(std::countr_zero(both));
    both &= both - 1;
    const auto pa = static_cast<int>(a.at(q));
    const auto pb = static_cast<int>(b.at(q));
    if (pa == pb) continue;
    exponent += ((pb - pa + 3) % 3 == 1) ? 1U : 3U;
  }
  return {Phase(exponent),
          PauliString(a.size(), a.x_mask() ^ b.x_mask(),
                      a.z_mask() ^ b.z_mask())};
}

std::pair<Phase, BasisState> apply_string(const PauliString& h,
                                          const BasisState& n) {
  require_same_size(h.size(), n.size(), "apply_string");
  // Y = iXZ: each Y contributes i, each Z (or Y) on |1> contributes -1.
  const auto y_count =
      static_cast<unsigned>(std::popcount(h.x_mask() & h.z_mask()));
  const auto z_on_one =
      static_cast<unsigned>(std::popcount(h.z_mask() & n.bits()));
  return {Phase(y_count + 2U * z_on_one),
          BasisState(n.size(), n.bits() ^ h.x_mask())};
}

cplx string_matrix_element(const BasisState& m, const PauliString& h,
                           const BasisState& n) {
  require_same_size(m.size(), n.size(), "string_matrix_element");
  auto [phase, image] = apply_string(h, n);
  if (image.bits() != m.bits()) return {0.0, 0.0};
  return phase.value();
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(std::size_t num_qubits) : n_(num_qubits) {
  check_register(num_qubits);
}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : PauliSum(num_qubits) {
  for (auto& t : terms) add(t.weight, t.string);
}

void PauliSum::add(cplx weight, const PauliString& string) {
  require_same_size(n_, string.size(), "PauliSum::add");
  terms_.push_back({weight, string});
}

PauliSum& PauliSum::normalize() {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> slot;
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    const auto key = std::make_pair(t.string.x_mask(), t.string.z_mask());
    auto [it, inserted] = slot.try_emplace(key, merged.size());
    if (inserted)
      merged.push_back(t);
    else
      merged[it->second].weight += t.weight;
  }
  std::erase_if(merged, [](const PauliTerm& t) {
    return std::abs(t.weight) < kPruneTolerance;
  });
  terms_ = std::move(merged);
  return *this;
}

double PauliSum::max_imag_weight() const {
  double worst = 0.0;
  for (const auto& t : terms_) worst = std::max(worst, std::abs(t.weight.imag()));
  return worst;
}

std::size_t PauliSum::max_locality() const {
  std::size_t k = 0;
  for (const auto& t : terms_) k = std::max(k, t.string.locality());
  return k;
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  require_same_size(n_, o.n_, "PauliSum::operator+");
  PauliSum out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  out.normalize();
  return out;
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
  require_same_size(n_, o.n_, "PauliSum::operator*");
  PauliSum out(n_);
  out.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto [phase, product] = multiply_strings(a.string, b.string);
      out.terms_.push_back({a.weight * b.weight * phase.value(), product});
    }
  }
  out.normalize();
  return out;
}

PauliSum PauliSum::operator*(cplx scale) const {
  PauliSum out = *this;
  for (auto& t : out.terms_) t.weight *= scale;
  out.normalize();
  return out;
}

cplx sum_matrix_element(const BasisState& m, const PauliSum& h,
                        const BasisState& n) {
  require_same_size(m.size(), h.num_qubits(), "sum_matrix_element");
  require_same_size(n.size(), h.num_qubits(), "sum_matrix_element");
  const std::uint64_t flip = m.bits() ^ n.bits();
  cplx total{0.0, 0.0};
  for (const auto& t : h.terms()) {
    if (t.string.x_mask() != flip) continue;
    total += t.weight * apply_string(t.string, n).first.value();
  }
  return total;
}

double diagonal_energy(const PauliSum& h, const BasisState& n) {
  require_same_size(n.size(), h.num_qubits(), "diagonal_energy");
  double total = 0.0;
  for (const auto& t : h.terms()) {
    if (!t.string.is_diagonal()) continue;
    const bool odd = std::popcount(t.string.z_mask() & n.bits()) & 1;
    total += odd ? -t.weight.real() : t.weight.real();
  }
  return total;
}

TermClasses classify_terms(const PauliSum& h) {
  TermClasses out;
  if (h.num_qubits() == 0) return out;
  out.diagonal = PauliSum(h.num_qubits());
  out.offdiagonal = PauliSum(h.num_qubits());
  for (const auto& t : h.terms())
    (t.string.is_diagonal() ? out.diagonal : out.offdiagonal)
        .add(t.weight, t.string);
  return out;
}

// ---------------------------------------------------------------------------
// Text format

PauliSum read_pauli_sum(std::istream& in) {
  std::vector<PauliTerm> terms;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string re_tok;
    if (!(ls >> re_tok)) continue;
    std::string im_tok, label, extra;
    if (!(ls >> im_tok >> label) || (ls >> extra))
      throw InputError(fmt::format(
          "line {}: expected '<re> <im> <string>'", line_no));
    double re = 0.0, im = 0.0;
    try {
      std::size_t used_re = 0, used_im = 0;
      re = std::stod(re_tok, &used_re);
      im = std::stod(im_tok, &used_im);
      if (used_re != re_tok.size() || used_im != im_tok.size())
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError(fmt::format("line {}: invalid weight", line_no));
    }
    PauliString s;
    try {
      s = PauliString::parse(label);
    } catch (const InputError& e) {
      throw InputError(fmt::format("line {}: {}", line_no, e.what()));
    }
    if (width == 0) width = s.size();
    if (s.size() != width)
      throw InputError(fmt::format(
          "line {}: string '{}' has {} qubits, expected {}", line_no, label,
          s.size(), width));
    terms.push_back({{re, im}, s});
  }
  if (width == 0) throw InputError("Pauli sum file contains no terms");
  PauliSum out(width, std::move(terms));
  out.normalize();
  return out;
}

PauliSum read_pauli_sum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  try {
    return read_pauli_sum(in);
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", path, e.what()));
  }
}

void write_pauli_sum(std::ostream& out, const PauliSum& h) {
  out << "# " << h.size() << " terms on " << h.num_qubits() << " qubits\n";
  for (const auto& t : h.terms())
    out << fmt::format("{:.17g} {:.17g} {}\n", t.weight.real(), t.weight.imag(),
                       t.string.str());
}

}  // namespace hqc
