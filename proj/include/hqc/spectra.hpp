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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hqc/estimator.hpp"
#include "hqc/matrix.hpp"
#include "hqc/pauli.hpp"

namespace hqc {

/// Raised when a requested dense problem exceeds the supported size.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxDenseDimension = 4096;
constexpr double kHermitianRejectTolerance = 1e-9;
constexpr double kResidualTolerance = 1e-8;
/// Above this size the decomposition goes through Eigen instead of Jacobi.
constexpr std::size_t kJacobiMaxDimension = 192;

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending, shift included
  /// Column k belongs to eigenvalues[k].
  std::optional<CMatrix> eigenvectors;
  double constant_shift = 0.0;

  std::size_t size() const { return eigenvalues.size(); }
  double ground() const { return eigenvalues.front(); }
};

enum class EigenMethod { Auto, Jacobi, Eigen };

struct EigenOptions {
  bool vectors = false;
  double constant_shift = 0.0;
  EigenMethod method = EigenMethod::Auto;
};

/// Cyclic complex Jacobi: each rotation first phases a_pq real, then zeroes
/// it with a real plane rotation. Returns ascending eigenvalues and V with
/// H V = V diag(lambda).
std::pair<std::vector<double>, CMatrix> jacobi_eigensystem(const CMatrix& h);

/// Rejects matrices whose Hermitian defect exceeds 1e-9 and verifies
/// ||H v - lambda v|| <= 1e-8 ||H|| for every pair.
Spectrum eigendecompose(const CMatrix& h, const EigenOptions& options = {});
Spectrum eigendecompose(const EffectiveHamiltonian& heff, const EigenOptions& options = {});

/// First-order standard errors of the eigenvalues from the per-entry
/// standard errors of a sampled Heff; needs eigenvectors.
std::vector<double> eigenvalue_std_errors(const EffectiveHamiltonian& heff,
                                          const Spectrum& spectrum);

/// Dense <m|H|n> over all C(N, N_F) sector states in sector_states order.
CMatrix sector_matrix(const PauliSum& h, int particle_count,
                      std::size_t capacity = kMaxDenseDimension);

Spectrum exact_sector_spectrum(const PauliSum& h, int particle_count,
                               const EigenOptions& options = {},
                               std::size_t capacity = kMaxDenseDimension);

struct DosOptions {
  std::optional<double> bin_width;
  std::optional<std::size_t> bin_count;
  /// Histogram range; defaults to [min, max] of the spectrum.
  std::optional<std::pair<double, double>> range;
};

struct DosHistogram {
  std::vector<double> bin_edges;  // counts.size() + 1
  std::vector<std::size_t> counts;

  std::size_t total() const;
};

/// Right-open bins except the last, which also takes its right edge.
DosHistogram dos(const std::vector<double>& eigenvalues, const DosOptions& options);
DosHistogram dos(const Spectrum& spectrum, const DosOptions& options);

constexpr double kChemicalAccuracy = 5e-3;

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
void write_dos_csv(std::ostream& out, const DosHistogram& hist);

/// `index,estimate,exact,abs_error,std_error,chemical_accuracy,within`, one
/// row per estimated level that has an exact counterpart.
void write_error_csv(std::ostream& out, const Spectrum& estimate, const Spectrum& exact,
                     const std::vector<double>& std_errors = {});

}  // namespace hqc
