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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqc/circuit.hpp"
#include "hqc/matrix.hpp"
#include "hqc/pauli.hpp"
#include "hqc/subspace.hpp"

namespace hqc {

enum class BackendKind { Oracle, ExactCircuit, Sampled, SampledNoisy };
enum class MeasurementStyle { Direct, Indirect };

const char* to_string(BackendKind k);
const char* to_string(MeasurementStyle s);
BackendKind parse_backend_kind(const std::string& s);
MeasurementStyle parse_measurement_style(const std::string& s);

/// How matrix elements are obtained.
///  - Oracle: classical sum_matrix_element, no circuits.
///  - ExactCircuit: statevector expectations of the measurement circuits;
///    with `noise` set, infinite-shot distributions through the readout
///    channel, mitigated with the exact calibration when requested.
///  - Sampled / SampledNoisy: finite shots, the latter with readout flips
///    and optional calibration-matrix mitigation.
/// Diagonal elements use the classical path unless `diagonals_on_circuit`
/// is set; that flag also puts every term (not just X/Y strings) into the
/// interference circuits, the all-hardware mode.
struct Backend {
  BackendKind kind = BackendKind::Oracle;
  MeasurementStyle style = MeasurementStyle::Direct;
  std::uint64_t shots = 8000;
  std::uint64_t seed = 0;
  ReadoutNoise noise;
  bool mitigate = false;
  bool diagonals_on_circuit = false;
  /// Shots per calibration circuit; 0 means `shots`.
  std::uint64_t calibration_shots = 0;
  /// Worker threads for matrix elements; 0 means hardware concurrency.
  unsigned threads = 0;

  static Backend oracle() { return {}; }
  static Backend exact(MeasurementStyle style = MeasurementStyle::Direct);
  static Backend sampled(std::uint64_t shots, std::uint64_t seed,
                         MeasurementStyle style = MeasurementStyle::Direct);
  static Backend noisy(std::uint64_t shots, std::uint64_t seed, ReadoutNoise noise,
                       bool mitigate,
                       MeasurementStyle style = MeasurementStyle::Direct);

  bool uses_shots() const {
    return kind == BackendKind::Sampled || kind == BackendKind::SampledNoisy;
  }
};

/// Per-qubit 2x2 confusion matrices m[observed * 2 + true]; columns sum to 1.
/// The composite matrix over several qubits is their tensor product.
struct CalibrationMatrix {
  std::vector<std::array<double, 4>> per_qubit;
  std::uint64_t shots = 0;  // 0 for an analytic calibration
  std::uint64_t seed = 0;

  std::size_t size() const { return per_qubit.size(); }
};

/// Samples |0...0> and |1...1> through the noise channel (one qubit register
/// of noise.size()) and estimates every qubit's confusion matrix.
CalibrationMatrix build_calibration(const ReadoutNoise& noise, std::uint64_t shots,
                                    std::uint64_t seed);

/// [[1 - p01, p10], [p01, 1 - p10]] per qubit.
CalibrationMatrix exact_calibration(const ReadoutNoise& noise);

/// Solves cal * p = observed for p >= 0 (least squares), renormalized to
/// sum 1. `measured` maps outcome bit j to the physical qubit whose
/// calibration applies. Throws if a confusion matrix is singular.
std::vector<double> mitigate_distribution(std::span<const double> observed,
                                          std::span<const std::size_t> measured,
                                          const CalibrationMatrix& cal);

std::vector<double> mitigate(const ShotResult& counts, const CalibrationMatrix& cal);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t executions = 0;  // (circuit, Pauli string) settings run
};

struct ComplexEstimate {
  cplx value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t executions = 0;
};

/// Circuit bookkeeping for one effective-Hamiltonian build.
struct RunCounts {
  std::uint64_t diagonal_circuits = 0;     // one per basis state on circuit
  std::uint64_t offdiagonal_circuits = 0;  // one per (pair, part)
  std::uint64_t executions = 0;            // circuit x measured string
  std::uint64_t total_shots = 0;
};

struct EffectiveHamiltonian {
  SubspaceBasis basis;
  CMatrix matrix;
  /// Row-major per-entry estimates; lower triangle mirrors the upper.
  std::vector<ComplexEstimate> entries;
  RunCounts counts;
  Backend backend;
  std::optional<CalibrationMatrix> calibration;

  std::size_t size() const { return matrix.rows(); }
};

/// Matrix-element measurement for one Hamiltonian and backend. Holds the
/// term classification and, for mitigated runs, the calibration.
class Estimator {
 public:
  Estimator(PauliSum h, Backend backend);

  const PauliSum& hamiltonian() const { return h_; }
  const Backend& backend() const { return backend_; }
  const std::optional<CalibrationMatrix>& calibration() const { return cal_; }

  /// <n|H|n>. Circuit path prepares |n> with X gates and measures the I/Z
  /// terms; X/Y strings never contribute to a diagonal and are skipped.
  Estimate measure_diagonal(const BasisState& n) const;

  /// <n|H|n'> for n != n', using the supplied diagonal estimates:
  /// Re = 2 m0 - (d_n + d_n') / 2 with m0 from the real-part circuit, and
  /// the same relation on the imaginary-part circuit (sign per S^dagger).
  ComplexEstimate measure_offdiagonal(const BasisState& n, const BasisState& n_prime,
                                      const Estimate& diag_n,
                                      const Estimate& diag_n_prime) const;

  EffectiveHamiltonian build(const SubspaceBasis& basis) const;

  /// Closed-form circuit accounting for a build over `basis_size` states:
  /// N_s diagonal circuits when diagonals run on circuits, and one circuit
  /// per (pair, part), i.e. 2 C(N_s, 2), for direct measurement. Indirect
  /// circuits embed the string, so they count once per measured string.
  RunCounts expected_counts(std::size_t basis_size) const;

 private:
  struct PartResult {
    double value = 0.0;
    double variance = 0.0;
    std::uint64_t executions = 0;
  };

  PartResult direct_part(const BasisState& n, const BasisState& n_prime, Part part,
                         const Estimate& dn, const Estimate& dnp) const;
  PartResult indirect_part(const BasisState& n, const BasisState& n_prime,
                           Part part) const;
  /// Outcome distribution of `measured`: exact, sampled, or sampled and
  /// mitigated, per backend.
  std::vector<double> distribution(const StateVector& psi,
                                   std::span<const std::size_t> measured,
                                   std::uint64_t seed) const;
  const PauliSum& interference_terms() const;

  PauliSum h_;
  Backend backend_;
  TermClasses classes_;
  PauliSum all_non_identity_;
  std::optional<CalibrationMatrix> cal_;
};

Estimate measure_diagonal(const PauliSum& h, const BasisState& n, const Backend& backend);
ComplexEstimate measure_offdiagonal(const PauliSum& h, const BasisState& n,
                                    const BasisState& n_prime, const Backend& backend,
                                    const Estimate& diag_n, const Estimate& diag_n_prime);
EffectiveHamiltonian build_effective_hamiltonian(const PauliSum& h,
                                                 const SubspaceBasis& basis,
                                                 const Backend& backend);

nlohmann::json to_json(const Backend& b);
nlohmann::json to_json(const CalibrationMatrix& c);
nlohmann::json to_json(const EffectiveHamiltonian& heff);
void write_heff_json(std::ostream& out, const EffectiveHamiltonian& heff);

}  // namespace hqc
