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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqc/pauli.hpp"

namespace hqc {

enum class GateKind { H, S, Sdg, X, CX, CPauli };

struct Gate {
  GateKind kind = GateKind::H;
  std::size_t target = 0;
  std::size_t control = 0;      // CX / CPauli only
  PauliOp pauli = PauliOp::I;   // CPauli only

  static Gate h(std::size_t q) { return {GateKind::H, q}; }
  static Gate s(std::size_t q) { return {GateKind::S, q}; }
  static Gate sdg(std::size_t q) { return {GateKind::Sdg, q}; }
  static Gate x(std::size_t q) { return {GateKind::X, q}; }
  static Gate cx(std::size_t c, std::size_t t) { return {GateKind::CX, t, c}; }
  static Gate cpauli(std::size_t c, std::size_t t, PauliOp p) {
    return {GateKind::CPauli, t, c, p};
  }

  bool controlled() const {
    return kind == GateKind::CX || kind == GateKind::CPauli;
  }
  bool operator==(const Gate&) const = default;
};

/// Target register is qubits [0, N); ancillas follow at N, N+1.
struct Circuit {
  std::size_t num_targets = 0;
  std::size_t num_ancillas = 0;
  std::vector<Gate> gates;
  std::vector<std::size_t> measured;

  std::size_t total_qubits() const { return num_targets + num_ancillas; }
  std::size_t controlled_gate_count() const;
  std::size_t single_qubit_gate_count() const;
};

/// Text netlist, one gate per line (`H 4`, `CX 4 1`, `CY 5 2`, `SDG 4`),
/// closed by `MEASURE q...`.
void write_netlist(std::ostream& out, const Circuit& c);

enum class Part { Real, Imag };

const char* to_string(Part p);

/// Flips the set bits of `n` conditioned on `control` being `control_value`.
/// The open-control form (control_value = 0) conjugates the control with X.
std::vector<Gate> controlled_prepare(const BasisState& n, std::size_t control,
                                     int control_value);

/// Single-ancilla interference circuit for <n|H|n'>: H(a); prepare n' when
/// a = 0; prepare n when a = 1; S^dagger(a) for the imaginary part; H(a).
/// The ancilla is qubit N and is measured.
Circuit build_offdiagonal_circuit(const BasisState& n, const BasisState& n_prime,
                                  Part part);

/// Two-ancilla indirect circuit for <n'|h|n>. Qubit N prepares the target
/// register (as in the single-ancilla circuit), qubit N+1 applies the
/// non-identity factors of h as controlled one-qubit gates. For the
/// imaginary part S^dagger acts on the preparation ancilla. Both ancillas
/// are measured.
Circuit build_indirect_circuit(const BasisState& n, const BasisState& n_prime,
                               const PauliString& h, Part part);

/// Prepares |n> with plain X gates (no ancilla); all qubits measured.
Circuit build_diagonal_circuit(const BasisState& n);

class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  double norm() const;

  void apply(const Gate& g);
  void apply(std::span<const Gate> gates);

 private:
  std::size_t n_;
  std::vector<cplx> amps_;
};

StateVector run(const Circuit& c);

/// <psi|obs|psi> for the circuit's final state; obs spans all qubits.
double exact_expectation(const Circuit& c, const PauliString& obs);
double exact_expectation(const StateVector& psi, const PauliString& obs);

/// Rotations that map obs onto Z-type measurements: H on X sites,
/// S^dagger then H on Y sites.
std::vector<Gate> measurement_rotation(const PauliString& obs);

/// Per-qubit asymmetric readout flips: p01 = P(read 1 | 0), p10 = P(read 0 | 1).
class ReadoutNoise {
 public:
  ReadoutNoise() = default;
  explicit ReadoutNoise(std::vector<std::pair<double, double>> per_qubit);
  static ReadoutNoise uniform(std::size_t num_qubits, double p01, double p10);

  std::size_t size() const { return rates_.size(); }
  double p01(std::size_t q) const { return rates_.at(q).first; }
  double p10(std::size_t q) const { return rates_.at(q).second; }
  bool is_zero() const;

 private:
  std::vector<std::pair<double, double>> rates_;
};

/// Outcome histogram over `measured` qubits. Outcome index bit j holds the
/// result of measured[j]; bitstring keys put measured[0] first.
struct ShotResult {
  std::vector<std::size_t> measured;
  std::vector<std::uint64_t> histogram;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  std::map<std::string, std::uint64_t> counts() const;
  std::vector<double> frequencies() const;
};

/// Draws `shots` outcomes of `measured` from |psi|^2, passing each bit
/// through `noise` (indexed by physical qubit) when given.
ShotResult sample_state(const StateVector& psi,
                        std::span<const std::size_t> measured,
                        std::uint64_t shots, std::uint64_t seed,
                        const ReadoutNoise* noise = nullptr);

/// Exact outcome distribution of `measured` (optionally through the noise
/// channel), same index convention as ShotResult.
std::vector<double> outcome_distribution(const StateVector& psi,
                                         std::span<const std::size_t> measured,
                                         const ReadoutNoise* noise = nullptr);

/// Applies a 2x2 map m (row-major, m[obs*2 + true]) to outcome bit
/// `position` of a distribution over 2^k outcomes.
void apply_bit_map(std::span<double> probs, std::size_t position,
                   const std::array<double, 4>& m);

/// <prod_{j in positions} Z_j> under an outcome distribution.
double parity_expectation(std::span<const double> probs,
                          std::uint64_t position_mask);

struct SampleEstimate {
  ShotResult result;
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Runs c, appends measurement rotations for obs, samples the union of
/// c.measured and the support of obs and returns the parity estimate of obs
/// with stderr sqrt((1 - est^2) / shots).
SampleEstimate sample(const Circuit& c, const PauliString& obs,
                      std::uint64_t shots, std::uint64_t seed,
                      const ReadoutNoise* noise = nullptr);

}  // namespace hqc
