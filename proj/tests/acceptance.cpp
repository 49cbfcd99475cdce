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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>

#include "hqc/app.hpp"
#include "hqc/circuit.hpp"
#include "hqc/estimator.hpp"
#include "hqc/fermion.hpp"
#include "hqc/pauli.hpp"
#include "hqc/spectra.hpp"
#include "hqc/subspace.hpp"
#include "support/oracle.hpp"

namespace fs = std::filesystem;
using namespace hqc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kCompleteBasis = {"1100", "1010", "1001",
                                                 "0110", "0101", "0011"};

PauliSum h2() { return read_pauli_sum_file(std::string(HQC_DATA_DIR) + "/h2.pauli"); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SubspaceBasis complete_basis(const PauliSum& h) {
  std::vector<BasisState> states;
  for (const auto& s : kCompleteBasis) states.push_back(BasisState::parse(s));
  return make_subspace(h, states);
}

// Random number-conserving Hamiltonian with at most `max_terms` Pauli strings.
PauliSum small_random(std::size_t modes, std::mt19937_64& rng, std::size_t max_terms) {
  for (;;) {
    const auto f = oracle::random_fermion(modes, rng, 2, 1);
    auto h = jw_transform(f);
    if (h.size() <= max_terms && !classify_terms(h).offdiagonal.empty()) return h;
  }
}

double max_entry_diff(const CMatrix& a, const oracle::Dense& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(static_cast<Eigen::Index>(i),
                                                   static_cast<Eigen::Index>(j))));
  return worst;
}

std::vector<std::uint64_t> bits_of(const SubspaceBasis& b) {
  std::vector<std::uint64_t> out;
  for (const auto& s : b.states) out.push_back(s.bits());
  return out;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst_direct = 0.0, worst_indirect = 0.0, worst_full = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = trial % 2 ? 6 : 4;
    const PauliSum h = small_random(n, rng, 30);
    const auto states = sector_states(n, static_cast<int>(n / 2));
    const SubspaceBasis basis = make_subspace(h, states);
    const oracle::Dense ref = oracle::project(oracle::dense_sum(h), bits_of(basis));
    worst_direct = std::max(worst_direct,
        max_entry_diff(Estimator(h, Backend::exact()).build(basis).matrix, ref));
    worst_indirect = std::max(worst_indirect,
        max_entry_diff(Estimator(h, Backend::exact(MeasurementStyle::Indirect))
                           .build(basis).matrix, ref));
    Backend full = Backend::exact();
    full.diagonals_on_circuit = true;
    worst_full = std::max(worst_full, max_entry_diff(Estimator(h, full).build(basis).matrix, ref));
  }
  const double secs = seconds_since(t0);
  const double worst = std::max({worst_direct, worst_indirect, worst_full});
  return {worst <= 1e-10 && secs <= 60.0,
          fmt::format("max |dHeff| direct {:.2e}, indirect {:.2e}, all-circuit {:.2e}; {:.1f} s",
                      worst_direct, worst_indirect, worst_full, secs)};
}

Outcome discreteness() {
  const std::size_t n = 4;
  const char ops[] = {'I', 'X', 'Y', 'Z'};
  std::size_t checked = 0, bad = 0, mismatched = 0;
  for (int code = 0; code < 256; ++code) {
    std::string label;
    for (std::size_t q = 0; q < n; ++q) label += ops[(code >> (2 * q)) & 3];
    const PauliString s = PauliString::parse(label);
    const oracle::Dense dense = oracle::dense_pauli(label);
    for (std::uint64_t m = 0; m < 16; ++m)
      for (std::uint64_t k = 0; k < 16; ++k) {
        const cplx v = string_matrix_element(BasisState(n, m), s, BasisState(n, k));
        const bool ok = v == cplx{0, 0} || v == cplx{1, 0} || v == cplx{-1, 0} ||
                        v == cplx{0, 1} || v == cplx{0, -1};
        if (!ok) ++bad;
        if (v != dense(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k))) ++mismatched;
        ++checked;
      }
  }
  return {bad == 0 && mismatched == 0,
          fmt::format("{} elements, {} outside {{0,+-1,+-i}}, {} differ from dense", checked, bad,
                      mismatched)};
}

Outcome complete_sector() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  std::vector<PauliSum> hams = {h2()};
  for (int i = 0; i < 40; ++i) hams.push_back(jw_transform(oracle::random_fermion(4, rng, 4, 3)));
  for (const auto& h : hams) {
    const SubspaceBasis basis = complete_basis(h);
    const auto exact = exact_sector_spectrum(h, 2).eigenvalues;
    const auto dense = oracle::eigenvalues(oracle::project(oracle::dense_sum(h), oracle::sector(4, 2)));
    worst = std::max(worst, oracle::max_abs_diff(exact, dense));
    for (const Backend& b : {Backend::oracle(), Backend::exact(),
                             Backend::exact(MeasurementStyle::Indirect)})
      worst = std::max(worst,
          oracle::max_abs_diff(eigendecompose(Estimator(h, b).build(basis)).eigenvalues, exact));
  }
  return {worst <= 1e-10, fmt::format("{} Hamiltonians, max eigenvalue deviation {:.2e}",
                                      hams.size(), worst)};
}

Outcome variational_bound() {
  std::mt19937_64 rng(404);
  double worst_bound = -1e300, worst_rise = -1e300;
  std::size_t sd_size = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PauliSum h = jw_transform(oracle::random_fermion(8, rng, 10, 8, true));
    const double exact = exact_sector_spectrum(h, 4).ground();
    const double dense =
        oracle::eigenvalues(oracle::project(oracle::dense_sum(h), oracle::sector(8, 4))).front();
    if (std::abs(exact - dense) > 1e-9) return {false, "exact sector spectrum disagrees with dense"};
    double prev = 1e300;
    for (int order = 1; order <= 3; ++order) {
      SubspaceSpec spec;
      spec.particle_count = 4;
      spec.max_excitation_order = order;
      const SubspaceBasis basis = build_subspace(h, spec);
      if (order == 2) sd_size = basis.size();
      const double e = eigendecompose(Estimator(h, Backend::oracle()).build(basis)).ground();
      if (order == 2) worst_bound = std::max(worst_bound, exact - e);
      worst_rise = std::max(worst_rise, e - prev);
      prev = e;
    }
  }
  return {worst_bound <= 1e-9 && worst_rise <= 1e-9,
          fmt::format("SD size {}; max (exact - Heff) {:.2e}; max rise along S/SD/SDT {:.2e}",
                      sd_size, worst_bound, worst_rise)};
}

Outcome shot_statistics() {
  std::mt19937_64 rng(505);
  const PauliSum h = jw_transform(oracle::random_fermion(4, rng, 4, 3));
  const auto states = sector_states(4, 2);
  const Estimator exact(h, Backend::exact());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) pairs.emplace_back(i, j);

  std::size_t inside = 0, total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [i, j] = pairs[static_cast<std::size_t>(trial) % pairs.size()];
    const Estimator est(h, Backend::sampled(8000, 7000 + static_cast<std::uint64_t>(trial)));
    const Estimate di = est.measure_diagonal(states[i]);
    const Estimate dj = est.measure_diagonal(states[j]);
    const auto e = est.measure_offdiagonal(states[i], states[j], di, dj);
    const cplx truth = sum_matrix_element(states[i], h, states[j]);
    // A component with zero reported error must hit the oracle to rounding.
    inside += std::abs(e.value.real() - truth.real()) <= 4.0 * e.std_error_re + 1e-12;
    inside += std::abs(e.value.imag() - truth.imag()) <= 4.0 * e.std_error_im + 1e-12;
    total += 2;
  }
  const double coverage = static_cast<double>(inside) / static_cast<double>(total);

  // Empirical spread of one element against shot count.
  std::size_t pi = 0, pj = 0;
  double best = 0.0;
  for (const auto& [i, j] : pairs) {
    const double m = std::abs(sum_matrix_element(states[i], h, states[j]).real());
    if (m > best) best = m, pi = i, pj = j;
  }
  const std::vector<std::uint64_t> shot_counts = {500, 2000, 8000, 32000};
  std::vector<double> scaled;
  for (auto shots : shot_counts) {
    double sum = 0.0, sum2 = 0.0;
    const int runs = 300;
    for (int r = 0; r < runs; ++r) {
      const Estimator est(h, Backend::sampled(shots, 90000 + static_cast<std::uint64_t>(r)));
      const auto v = est.measure_offdiagonal(states[pi], states[pj], {}, {}).value.real();
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / runs;
    const double sd = std::sqrt((sum2 - runs * mean * mean) / (runs - 1));
    scaled.push_back(sd * std::sqrt(static_cast<double>(shots)));
  }
  double mean_scaled = 0.0;
  for (double s : scaled) mean_scaled += s / static_cast<double>(scaled.size());
  double worst_dev = 0.0;
  for (double s : scaled) worst_dev = std::max(worst_dev, std::abs(s / mean_scaled - 1.0));
  return {coverage >= 0.99 && worst_dev <= 0.2,
          fmt::format("coverage {:.4f} of {} estimates; sd*sqrt(shots) = {:.3f} {:.3f} {:.3f} "
                      "{:.3f}, max deviation {:.1f}%",
                      coverage, total, scaled[0], scaled[1], scaled[2], scaled[3],
                      100.0 * worst_dev)};
}

Outcome combinatorics() {
  std::size_t mismatches = 0, checked = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int nf = 0; nf <= static_cast<int>(n); ++nf) {
      for (const auto& ref : oracle::sector(n, nf)) {
        const BasisState r(n, ref);
        const int top = std::min(nf, static_cast<int>(n) - nf);
        // Brute-force count of sector states at Hamming distance 2k.
        std::vector<std::uint64_t> by_order(static_cast<std::size_t>(top) + 1, 0);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
          if (std::popcount(s) == nf)
            ++by_order[static_cast<std::size_t>(std::popcount(s ^ ref) / 2)];
        for (int k = 0; k <= top; ++k) {
          const auto ex = enumerate_excitations(r, k);
          const std::uint64_t formula = binomial(static_cast<std::uint64_t>(nf), k) *
                                        binomial(n - static_cast<std::uint64_t>(nf), k);
          std::set<std::uint64_t> distinct;
          bool shape = true;
          for (const auto& s : ex) {
            distinct.insert(s.bits());
            shape &= s.particle_count() == nf &&
                     std::popcount(s.bits() ^ ref) == 2 * k;
          }
          if (ex.size() != formula || formula != by_order[static_cast<std::size_t>(k)] ||
              distinct.size() != ex.size() || !shape)
            ++mismatches;
          ++checked;
        }
      }
    }
  }
  const std::size_t sector495 = sector_states(12, 4).size();
  SubspaceSpec spec;
  spec.particle_count = 2;
  spec.max_excitation_order = 2;
  const SubspaceBasis b = build_subspace(h2(), spec);
  std::set<std::string> got, want(kCompleteBasis.begin(), kCompleteBasis.end());
  for (const auto& s : b.states) got.insert(s.str());
  const bool complete = got == want && b.size() == 6;
  return {mismatches == 0 && sector495 == 495 && complete,
          fmt::format("{} (reference, order) cases, {} mismatches; C(12,4) sector {}; "
                      "N=4 N_F=2 set {}",
                      checked, mismatches, sector495, complete ? "matches" : "differs")};
}

Outcome jordan_wigner() {
  const std::size_t n = 4;
  std::vector<oracle::Dense> a, ad;
  double ladder_dev = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    a.push_back(oracle::dense_sum(jw_ladder(p, false, n)));
    ad.push_back(oracle::dense_sum(jw_ladder(p, true, n)));
    ladder_dev = std::max(ladder_dev, (a[p] - oracle::fock_ladder(p, false, n)).cwiseAbs().maxCoeff());
    ladder_dev = std::max(ladder_dev, (ad[p] - oracle::fock_ladder(p, true, n)).cwiseAbs().maxCoeff());
  }
  const oracle::Dense id = oracle::Dense::Identity(16, 16);
  bool exact = true;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const oracle::Dense acomm = a[p] * ad[q] + ad[q] * a[p];
      const oracle::Dense expect = p == q ? id : oracle::Dense::Zero(16, 16);
      exact &= acomm == expect;
      exact &= (a[p] * a[q] + a[q] * a[p]) == oracle::Dense::Zero(16, 16);
      exact &= (ad[p] * ad[q] + ad[q] * ad[p]) == oracle::Dense::Zero(16, 16);
    }

  std::mt19937_64 rng(707);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t modes = 1; modes <= 6; ++modes) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto f = oracle::random_fermion(modes, rng, 2 * modes, modes);
      const auto h = jw_transform(f);
      const oracle::Dense dense = oracle::dense_fermion(f);
      for (int nf = 0; nf <= static_cast<int>(modes); ++nf) {
        const auto mine = exact_sector_spectrum(h, nf).eigenvalues;
        const auto ref = oracle::eigenvalues(oracle::project(dense, oracle::sector(modes, nf)));
        worst = std::max(worst, oracle::max_abs_diff(mine, ref));
        ++cases;
      }
    }
  }
  return {exact && ladder_dev == 0.0 && worst <= 1e-10,
          fmt::format("anticommutators {}; ladder vs Fock {:.1e}; {} sector spectra, max dev {:.2e}",
                      exact ? "exact" : "WRONG", ladder_dev, cases, worst)};
}

Outcome mitigation() {
  const PauliSum h = h2();
  const SubspaceBasis basis = complete_basis(h);
  const double truth = exact_sector_spectrum(h, 2).ground();
  const ReadoutNoise noise = ReadoutNoise::uniform(5, 0.02, 0.02);
  int improved = 0;
  std::vector<double> raw_err, mit_err;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(trial);
    Backend raw = Backend::noisy(8000, seed, noise, false);
    raw.diagonals_on_circuit = true;
    Backend mit = raw;
    mit.mitigate = true;
    const double er = std::abs(eigendecompose(Estimator(h, raw).build(basis)).ground() - truth);
    const double em = std::abs(eigendecompose(Estimator(h, mit).build(basis)).ground() - truth);
    raw_err.push_back(er);
    mit_err.push_back(em);
    improved += em < er;
  }
  std::nth_element(raw_err.begin(), raw_err.begin() + 50, raw_err.end());
  std::nth_element(mit_err.begin(), mit_err.begin() + 50, mit_err.end());

  Backend analytic = Backend::exact();
  analytic.diagonals_on_circuit = true;
  analytic.noise = noise;
  analytic.mitigate = true;
  const auto heff = Estimator(h, analytic).build(basis);
  const oracle::Dense ref = oracle::project(oracle::dense_sum(h), bits_of(basis));
  const double recovery = max_entry_diff(heff.matrix, ref);
  return {improved >= 90 && recovery <= 1e-10,
          fmt::format("mitigation better in {}/100 trials (median error {:.2e} -> {:.2e}); "
                      "exact-calibration analytic recovery {:.2e}",
                      improved, raw_err[50], mit_err[50], recovery)};
}

Outcome degeneracy() {
  // Spin-symmetric hopping on the H2 orbitals: in the one-electron sector
  // every level is exactly doubly degenerate (spin up / spin down).
  auto f = read_fermion_file(std::string(HQC_DATA_DIR) + "/h2.fermion");
  f.add({0.15, 0.0}, {{0, true}, {2, false}});
  f.add({0.15, 0.0}, {{2, true}, {0, false}});
  f.add({0.15, 0.0}, {{1, true}, {3, false}});
  f.add({0.15, 0.0}, {{3, true}, {1, false}});
  const PauliSum h = jw_transform(f);
  const SubspaceBasis basis = make_subspace(h, sector_states(4, 1));
  const auto exact_levels = exact_sector_spectrum(h, 1).eigenvalues;
  const double exact_gap = exact_levels[1] - exact_levels[0];

  Backend exact = Backend::exact();
  exact.diagonals_on_circuit = true;
  const auto e = eigendecompose(Estimator(h, exact).build(basis)).eigenvalues;
  Backend noisy = Backend::noisy(8000, 99, ReadoutNoise::uniform(5, 0.02, 0.02), false);
  noisy.diagonals_on_circuit = true;
  const auto s = eigendecompose(Estimator(h, noisy).build(basis)).eigenvalues;
  const double split_exact = e[1] - e[0];
  const double split_noisy = s[1] - s[0];
  return {exact_gap <= 1e-12 && split_exact <= 1e-10 && split_noisy > 1e-8,
          fmt::format("sector gap {:.1e}; exact-backend split {:.1e}; noisy split {:.2e}",
                      exact_gap, split_exact, split_noisy)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream sink;
  auto* saved = std::cout.rdbuf(sink.rdbuf());
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(saved);
  return rc;
}

Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / fmt::format("hqc_accept_{}", ::getpid());
  fs::remove_all(root);
  const std::string input = std::string(HQC_DATA_DIR) + "/h2.pauli";
  auto run = [&](const std::string& dir) {
    return cli({"hqc", "solve", input, "--particles", "2", "--backend", "noisy", "--noise",
                "0.02,0.03", "--mitigate", "--full-circuit", "--seed", "42", "--repeats", "2",
                "--out", (root / dir).string()});
  };
  const int rc = run("a") | run("b");
  std::size_t files = 0, differ = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file() || entry.path().filename() == "timing.json") continue;
    const fs::path other = root / "b" / fs::relative(entry.path(), root / "a");
    ++files;
    differ += slurp(entry.path()) != slurp(other);
  }

  // Circuit accounting over several subspace sizes.
  const PauliSum h = h2();
  bool counts_ok = true;
  for (std::size_t ns = 1; ns <= 6; ++ns) {
    SubspaceSpec spec;
    spec.particle_count = 2;
    spec.target_size = ns;
    const auto basis = build_subspace(h, spec);
    Backend b = Backend::exact();
    b.diagonals_on_circuit = true;
    const auto heff = Estimator(h, b).build(basis);
    const std::uint64_t closed = ns + 2 * (ns * (ns - 1) / 2);
    counts_ok &= heff.counts.diagonal_circuits + heff.counts.offdiagonal_circuits == closed;
    counts_ok &= heff.counts.offdiagonal_circuits / 2 == ns * (ns - 1) / 2;
  }
  const auto manifest = nlohmann::json::parse(slurp(root / "a" / "manifest.json"));
  const auto& mc = manifest["expected_counts"];
  counts_ok &= mc["diagonal_circuits"].get<std::uint64_t>() == 6 &&
               mc["offdiagonal_circuits"].get<std::uint64_t>() == 30;
  fs::remove_all(root);
  return {rc == 0 && files > 0 && differ == 0 && counts_ok,
          fmt::format("{} output files compared, {} differ; circuit counts {}", files, differ,
                      counts_ok ? "match N_s + 2 C(N_s,2)" : "MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"discreteness", discreteness},
      {"complete-sector recovery", complete_sector},
      {"variational bound", variational_bound},
      {"shot statistics", shot_statistics},
      {"combinatorics", combinatorics},
      {"jordan-wigner", jordan_wigner},
      {"mitigation", mitigation},
      {"degeneracy lifting", degeneracy},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !o.pass;
    std::cout << fmt::format("{} {:>2} {}: {}", o.pass ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, o.detail)
              << std::endl;
  }
  return failed ? 1 : 0;
}
