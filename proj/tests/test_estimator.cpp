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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hqc/estimator.hpp"
#include "hqc/fermion.hpp"
#include "support/oracle.hpp"

namespace hqc {
namespace {

PauliSum random_h(std::size_t modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return jw_transform(oracle::random_fermion(modes, rng, 4, 3));
}

SubspaceBasis full_sector(const PauliSum& h, int nf) {
  return make_subspace(h, sector_states(h.num_qubits(), nf));
}

TEST(Estimator, OracleBackendIsBruteForceProjection) {
  const PauliSum h = random_h(4, 1);
  const auto basis = full_sector(h, 2);
  const auto heff = build_effective_hamiltonian(h, basis, Backend::oracle());
  std::vector<std::uint64_t> bits;
  for (const auto& s : basis.states) bits.push_back(s.bits());
  const oracle::Dense ref = oracle::project(oracle::dense_sum(h), bits);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      EXPECT_LT(std::abs(heff.matrix(i, j) - ref(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j))), 1e-12);
  EXPECT_EQ(heff.counts.executions, 0u);
}

TEST(Estimator, ExactCircuitPartsMatchOracle) {
  const PauliSum h = random_h(4, 2);
  const auto states = sector_states(4, 2);
  for (MeasurementStyle style : {MeasurementStyle::Direct, MeasurementStyle::Indirect}) {
    const Estimator est(h, Backend::exact(style));
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const auto e = est.measure_offdiagonal(states[i], states[j],
                                               est.measure_diagonal(states[i]),
                                               est.measure_diagonal(states[j]));
        const cplx truth = sum_matrix_element(states[i], h, states[j]);
        EXPECT_NEAR(e.value.real(), truth.real(), 1e-12);
        EXPECT_NEAR(e.value.imag(), truth.imag(), 1e-12);
      }
  }
}

TEST(Estimator, HeffIsExactlyHermitian) {
  const PauliSum h = random_h(4, 3);
  const auto heff = build_effective_hamiltonian(h, full_sector(h, 2), Backend::sampled(500, 4));
  for (std::size_t i = 0; i < heff.size(); ++i) {
    EXPECT_EQ(heff.matrix(i, i).imag(), 0.0);
    for (std::size_t j = 0; j < heff.size(); ++j)
      EXPECT_EQ(heff.matrix(i, j), std::conj(heff.matrix(j, i)));
  }
}

TEST(Estimator, SampledDiagonalWithinErrorBar) {
  const PauliSum h = random_h(4, 5);
  Backend b = Backend::sampled(8000, 6);
  b.diagonals_on_circuit = true;
  const Estimator est(h, b);
  for (const auto& s : sector_states(4, 2)) {
    const Estimate d = est.measure_diagonal(s);
    // Basis states are eigenstates of every Z string, so the estimate is exact.
    EXPECT_NEAR(d.value, diagonal_energy(h, s), 1e-12);
    EXPECT_GT(d.executions, 0u);
  }
}

TEST(Estimator, ThreadCountDoesNotChangeResults) {
  const PauliSum h = random_h(4, 7);
  Backend one = Backend::noisy(2000, 8, ReadoutNoise::uniform(5, 0.02, 0.03), true);
  one.threads = 1;
  Backend four = one;
  four.threads = 4;
  const auto a = build_effective_hamiltonian(h, full_sector(h, 2), one);
  const auto b = build_effective_hamiltonian(h, full_sector(h, 2), four);
  std::ostringstream sa, sb;
  write_heff_json(sa, a);
  write_heff_json(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Estimator, RejectsComplexWeightsAndShortNoise) {
  PauliSum h(2);
  h.add({0.0, 1.0}, "XY");
  EXPECT_THROW(Estimator(h, Backend::oracle()), InputError);
  const PauliSum ok = random_h(4, 9);
  EXPECT_THROW(Estimator(ok, Backend::noisy(100, 1, ReadoutNoise::uniform(4, 0.01, 0.01), false)),
               InputError);
}

TEST(Estimator, ClosedFormCounts) {
  const PauliSum h = random_h(4, 10);
  const auto basis = full_sector(h, 2);
  const auto heff = build_effective_hamiltonian(h, basis, Backend::sampled(100, 1));
  EXPECT_EQ(heff.counts.diagonal_circuits, 0u);
  EXPECT_EQ(heff.counts.offdiagonal_circuits, 30u);
  std::uint64_t executions = 0, shots = 0;
  for (const auto& e : heff.entries) executions += e.executions, shots += e.shots;
  // Entry bookkeeping mirrors each pair into the lower triangle.
  EXPECT_EQ(executions / 2, heff.counts.executions);
  EXPECT_EQ(shots / 2, heff.counts.total_shots);
}

TEST(Calibration, SampledEntriesWithinBinomialBound) {
  const auto cal = build_calibration(ReadoutNoise::uniform(3, 0.02, 0.02), 8000, 17);
  const double bound = 4.0 * std::sqrt(0.02 * 0.98 / 8000.0);
  for (const auto& m : cal.per_qubit) {
    EXPECT_NEAR(m[0], 0.98, bound);
    EXPECT_NEAR(m[2], 0.02, bound);
    EXPECT_NEAR(m[3], 0.98, bound);
    EXPECT_NEAR(m[1], 0.02, bound);
    EXPECT_DOUBLE_EQ(m[0] + m[2], 1.0);
  }
}

TEST(Calibration, ExactInverseRecoversDistribution) {
  const ReadoutNoise noise = ReadoutNoise::uniform(2, 0.05, 0.1);
  const std::vector<double> truth = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> observed = truth;
  apply_bit_map(observed, 0, {0.95, 0.1, 0.05, 0.9});
  apply_bit_map(observed, 1, {0.95, 0.1, 0.05, 0.9});
  const std::vector<std::size_t> measured = {0, 1};
  const auto back = mitigate_distribution(observed, measured, exact_calibration(noise));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(back[i], truth[i], 1e-14);
}

TEST(Calibration, ProjectsOntoSimplex) {
  // A noise-free observation of |0> under a calibration that claims flips
  // inverts to negative mass; the result must still be a distribution.
  const std::vector<double> observed = {1.0, 0.0};
  const std::vector<std::size_t> measured = {0};
  const auto p = mitigate_distribution(observed, measured,
                                       exact_calibration(ReadoutNoise::uniform(1, 0.2, 0.1)));
  EXPECT_GE(p[1], 0.0);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
  EXPECT_NEAR(p[0], 1.0, 1e-6);
}

TEST(Backend, NameParsing) {
  EXPECT_EQ(parse_backend_kind("noisy"), BackendKind::SampledNoisy);
  EXPECT_EQ(parse_measurement_style("indirect"), MeasurementStyle::Indirect);
  EXPECT_THROW(parse_backend_kind("qpu"), InputError);
  EXPECT_THROW(parse_measurement_style("sideways"), InputError);
}

}  // namespace
}  // namespace hqc
