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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hqc/pauli.hpp"

namespace hqc {

struct ExhaustiveSearch {};

/// Metropolis annealing over fixed-particle configurations with single
/// occupied/empty swap proposals. Temperature follows T_k = T0 * cooling^k
/// per sweep of N proposals; T0 defaults to the standard deviation of the
/// diagonal energy over 100 random configurations.
struct MonteCarloSearch {
  std::size_t sweeps = 200;
  std::uint64_t seed = 1;
  double cooling = 0.95;
  std::optional<double> initial_temperature;
};

using SearchStrategy = std::variant<ExhaustiveSearch, MonteCarloSearch>;

struct SubspaceSpec {
  int particle_count = 0;
  /// Highest excitation order kept (1 = S, 2 = SD, 3 = SDT, ...).
  int max_excitation_order = 2;
  /// Number of states to keep; nullopt keeps all enumerated states.
  std::optional<std::size_t> target_size;
  SearchStrategy strategy = ExhaustiveSearch{};
};

struct SubspaceBasis {
  BasisState reference;
  /// Reference first, then ascending diagonal energy (ties: lexicographic).
  std::vector<BasisState> states;
  std::vector<double> diagonal_energies;
  std::vector<std::string> warnings;

  std::size_t size() const { return states.size(); }
};

/// Binomial coefficient; saturates at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All states of `num_qubits` bits with `particle_count` ones, in
/// lexicographic order of their textual form.
std::vector<BasisState> sector_states(std::size_t num_qubits,
                                      int particle_count);

/// Lowest-diagonal-energy configuration with the given particle count.
/// Exhaustive ties break lexicographically.
BasisState find_reference(const PauliSum& h, int particle_count,
                          const SearchStrategy& strategy = ExhaustiveSearch{});

/// States reached from `ref` by moving exactly `order` particles from
/// occupied to empty modes. Empty when the order exceeds either count.
std::vector<BasisState> enumerate_excitations(const BasisState& ref, int order);

SubspaceBasis build_subspace(const PauliSum& h, const SubspaceSpec& spec);

/// Wraps an explicit basis list (imported or hand-picked).
SubspaceBasis make_subspace(const PauliSum& h, std::vector<BasisState> states);

/// One bitstring per line; `#` comments.
std::vector<BasisState> read_bitstrings(std::istream& in);
std::vector<BasisState> read_bitstrings_file(const std::string& path);
void write_bitstrings(std::ostream& out, const std::vector<BasisState>& states);

}  // namespace hqc
