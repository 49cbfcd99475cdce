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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hqc/pauli.hpp"

namespace hqc {

struct LadderFactor {
  std::size_t mode = 0;
  bool dagger = false;

  bool operator==(const LadderFactor&) const = default;
};

/// coefficient * f_0 f_1 ... f_k, applied right to left.
struct FermionTerm {
  cplx coefficient;
  std::vector<LadderFactor> factors;
};

/// Number-conserving one- and two-body Hamiltonian plus a scalar shift
/// (nuclear repulsion for molecular inputs).
class FermionHamiltonian {
 public:
  FermionHamiltonian() = default;
  explicit FermionHamiltonian(std::size_t mode_count, double constant = 0.0);

  std::size_t mode_count() const { return modes_; }
  double constant() const { return constant_; }
  void set_constant(double c) { constant_ = c; }
  const std::vector<FermionTerm>& terms() const { return terms_; }

  /// Validates mode range, factor count (2 or 4) and particle conservation.
  void add(FermionTerm term);
  void add(cplx coefficient, std::vector<LadderFactor> factors) {
    add(FermionTerm{coefficient, std::move(factors)});
  }

 private:
  std::size_t modes_ = 0;
  double constant_ = 0.0;
  std::vector<FermionTerm> terms_;
};

/// Jordan-Wigner image of a single ladder operator on `num_qubits` modes:
/// a_j^(dagger) = 1/2 Z_0...Z_{j-1} (X_j -/+ i Y_j).
PauliSum jw_ladder(std::size_t mode, bool dagger, std::size_t num_qubits);

/// Imaginary weights above this after the transform mark non-Hermitian input.
inline constexpr double kHermitianTolerance = 1e-10;

/// Maps every term factor by factor and multiplies the Pauli sums; the
/// constant lands on the identity string. Throws InputError when the result
/// is not Hermitian. `keep_complex` skips the Hermiticity check.
PauliSum jw_transform(const FermionHamiltonian& h, bool keep_complex = false);

/// Checks that H never connects basis states of different particle number.
/// Exhaustive when 2^N <= trials, otherwise `trials` seeded random states.
bool check_particle_conservation(const PauliSum& h, std::size_t trials,
                                 std::uint64_t seed = 0x5eed);

/// File format: `modes N`, optional `constant c`, then `<re> <im> <factor>...`
/// lines with factors like `3^` (creation) or `2` (annihilation).
FermionHamiltonian read_fermion_hamiltonian(std::istream& in);
FermionHamiltonian read_fermion_file(const std::string& path);
void write_fermion_hamiltonian(std::ostream& out, const FermionHamiltonian& h);

}  // namespace hqc
