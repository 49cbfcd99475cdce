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

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace hqc {

using cplx = std::complex<double>;

/// Largest register the bit-mask representation supports.
inline constexpr std::size_t kMaxQubits = 64;

/// Weights below this magnitude are dropped when a PauliSum is normalized.
inline constexpr double kPruneTolerance = 1e-12;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// A power of i, i^k with k in {0, 1, 2, 3}. Products of Pauli strings only
/// ever produce these, so keeping the exponent avoids floating-point phases.
struct Phase {
  std::uint8_t k = 0;

  constexpr Phase() = default;
  constexpr explicit Phase(unsigned exponent) : k(exponent & 3U) {}

  constexpr Phase operator*(Phase o) const { return Phase(k + o.k); }
  constexpr Phase conj() const { return Phase(4U - k); }
  constexpr bool operator==(const Phase&) const = default;

  cplx value() const;
};

/// Computational basis state |n_0 n_1 ... n_{N-1}>. Qubit i is bit i of the
/// word and character i of the textual form; 1 marks an occupied mode.
class BasisState {
 public:
  BasisState() = default;
  BasisState(std::size_t num_qubits, std::uint64_t bits);

  /// Parses "1100"-style literals (character i is qubit i).
  static BasisState parse(std::string_view text);

  std::size_t size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool test(std::size_t qubit) const { return (bits_ >> qubit) & 1U; }
  int particle_count() const;
  std::string str() const;

  bool operator==(const BasisState&) const = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Lexicographic order of the textual form ("0011" < "0101").
bool lex_less(const BasisState& a, const BasisState& b);

std::ostream& operator<<(std::ostream& os, const BasisState& s);

/// Dense tensor product of single-qubit Paulis, stored as X and Z bit masks
/// with Y = X and Z both set.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);
  PauliString(std::size_t num_qubits, std::uint64_t x_mask,
              std::uint64_t z_mask);

  /// Parses "XIZY"-style literals.
  static PauliString parse(std::string_view text);

  std::size_t size() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  PauliOp at(std::size_t qubit) const;
  void set(std::size_t qubit, PauliOp op);

  /// Number of non-identity factors.
  std::size_t locality() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  /// True when the string is built from I and Z only.
  bool is_diagonal() const { return x_ == 0; }

  std::string str() const;

  bool operator==(const PauliString&) const = default;
  auto operator<=>(const PauliString& o) const {
    return std::tie(n_, x_, z_) <=> std::tie(o.n_, o.x_, o.z_);
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PauliString& s);

/// a * b = phase * product.
std::pair<Phase, PauliString> multiply_strings(const PauliString& a,
                                               const PauliString& b);

/// h|n> = phase |m>.
std::pair<Phase, BasisState> apply_string(const PauliString& h,
                                          const BasisState& n);

/// <m|h|n>, always one of {0, +-1, +-i}.
cplx string_matrix_element(const BasisState& m, const PauliString& h,
                           const BasisState& n);

struct PauliTerm {
  cplx weight;
  PauliString string;
};

/// Weighted sum of Pauli strings on a fixed register.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits);
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(cplx weight, const PauliString& string);
  void add(cplx weight, std::string_view string) {
    add(weight, PauliString::parse(string));
  }

  /// Merges duplicate strings (first occurrence keeps its position) and
  /// drops terms with |weight| < kPruneTolerance.
  PauliSum& normalize();

  /// Largest |Im(weight)|.
  double max_imag_weight() const;
  std::size_t max_locality() const;

  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator*(const PauliSum& o) const;
  PauliSum operator*(cplx scale) const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// sum_s w_s <m|h_s|n>.
cplx sum_matrix_element(const BasisState& m, const PauliSum& h,
                        const BasisState& n);

/// Diagonal energy <n|H|n> restricted to the I/Z terms; equals the full
/// diagonal element because X/Y strings vanish on the diagonal.
double diagonal_energy(const PauliSum& h, const BasisState& n);

struct TermClasses {
  PauliSum diagonal;     // I/Z strings
  PauliSum offdiagonal;  // strings with at least one X or Y
};

TermClasses classify_terms(const PauliSum& h);

/// Text format: one `<re> <im> <string>` term per line, `#` comments.
PauliSum read_pauli_sum(std::istream& in);
PauliSum read_pauli_sum_file(const std::string& path);
void write_pauli_sum(std::ostream& out, const PauliSum& h);

}  // namespace hqc
