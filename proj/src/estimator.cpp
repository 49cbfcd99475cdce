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

#include "hqc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "hqc/random.hpp"

namespace hqc {

namespace {

constexpr double kSingularTolerance = 1e-12;
constexpr int kNnlsIterations = 500;

enum SeedTag : std::uint64_t { kTagDiagonal = 1, kTagDirect = 2, kTagIndirect = 3 };

std::uint64_t stream(Stream s) { return static_cast<std::uint64_t>(s); }

std::vector<std::size_t> support(const PauliString& s) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < s.size(); ++q)
    if (s.at(q) != PauliOp::I) out.push_back(q);
  return out;
}

PauliString widen(const PauliString& s, std::size_t total) {
  return PauliString(total, s.x_mask(), s.z_mask());
}

std::array<double, 4> inverse2(const std::array<double, 4>& m) {
  const double det = m[0] * m[3] - m[1] * m[2];
  if (std::abs(det) < kSingularTolerance)
    throw std::invalid_argument("confusion matrix is singular");
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

std::array<double, 4> transpose2(const std::array<double, 4>& m) {
  return {m[0], m[2], m[1], m[3]};
}

void renormalize(std::vector<double>& p) {
  for (auto& v : p) v = std::max(v, 0.0);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total <= 0.0) throw std::runtime_error("mitigated distribution vanished");
  for (auto& v : p) v /= total;
}

// Projected FISTA on min ||A p - y||^2, p >= 0, A a tensor product of 2x2s.
std::vector<double> nnls(std::span<const double> y,
                         const std::vector<std::array<double, 4>>& maps,
                         std::vector<double> start) {
  double lipschitz = 1.0;
  for (const auto& m : maps) {
    double f = 0.0;
    for (double v : m) f += v * v;
    lipschitz *= f;
  }
  const double step = 1.0 / lipschitz;
  auto forward = [&](std::vector<double> v, bool transposed) {
    for (std::size_t j = 0; j < maps.size(); ++j)
      apply_bit_map(v, j, transposed ? transpose2(maps[j]) : maps[j]);
    return v;
  };
  std::vector<double> p = std::move(start);
  for (auto& v : p) v = std::max(v, 0.0);
  std::vector<double> z = p, prev = p;
  double t = 1.0;
  for (int it = 0; it < kNnlsIterations; ++it) {
    auto r = forward(z, false);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    const auto g = forward(std::move(r), true);
    prev = p;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, z[i] - step * g[i]);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < p.size(); ++i) z[i] = p[i] + beta * (p[i] - prev[i]);
    t = t_next;
  }
  return p;
}

cplx make_cplx(double re, double im) { return {re, im}; }

}  // namespace

const char* to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Oracle:
      return "oracle";
    case BackendKind::ExactCircuit:
      return "exact";
    case BackendKind::Sampled:
      return "sampled";
    case BackendKind::SampledNoisy:
      return "noisy";
  }
  return "?";
}

const char* to_string(MeasurementStyle s) {
  return s == MeasurementStyle::Direct ? "direct" : "indirect";
}

BackendKind parse_backend_kind(const std::string& s) {
  if (s == "oracle") return BackendKind::Oracle;
  if (s == "exact") return BackendKind::ExactCircuit;
  if (s == "sampled") return BackendKind::Sampled;
  if (s == "noisy") return BackendKind::SampledNoisy;
  throw InputError(fmt::format(
      "unknown backend '{}' (expected oracle, exact, sampled or noisy)", s));
}

MeasurementStyle parse_measurement_style(const std::string& s) {
  if (s == "direct") return MeasurementStyle::Direct;
  if (s == "indirect") return MeasurementStyle::Indirect;
  throw InputError(fmt::format("unknown style '{}' (expected direct or indirect)", s));
}

Backend Backend::exact(MeasurementStyle style) {
  Backend b;
  b.kind = BackendKind::ExactCircuit;
  b.style = style;
  return b;
}

Backend Backend::sampled(std::uint64_t shots, std::uint64_t seed, MeasurementStyle style) {
  Backend b;
  b.kind = BackendKind::Sampled;
  b.style = style;
  b.shots = shots;
  b.seed = seed;
  return b;
}

Backend Backend::noisy(std::uint64_t shots, std::uint64_t seed, ReadoutNoise noise,
                       bool mitigate, MeasurementStyle style) {
  Backend b = sampled(shots, seed, style);
  b.kind = BackendKind::SampledNoisy;
  b.noise = std::move(noise);
  b.mitigate = mitigate;
  return b;
}

// ---------------------------------------------------------------------------
// Calibration and mitigation

CalibrationMatrix build_calibration(const ReadoutNoise& noise, std::uint64_t shots,
                                    std::uint64_t seed) {
  const std::size_t n = noise.size();
  if (n == 0) throw std::invalid_argument("calibration needs at least one qubit");
  std::vector<std::size_t> measured(n);
  std::iota(measured.begin(), measured.end(), std::size_t{0});

  StateVector zeros(n);
  StateVector ones(n);
  for (std::size_t q = 0; q < n; ++q) ones.apply(Gate::x(q));
  const auto r0 = sample_state(zeros, measured, shots, derive_seed(seed, {0}), &noise);
  const auto r1 = sample_state(ones, measured, shots, derive_seed(seed, {1}), &noise);

  CalibrationMatrix cal;
  cal.shots = shots;
  cal.seed = seed;
  cal.per_qubit.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    std::uint64_t flips0 = 0, flips1 = 0;
    for (std::size_t o = 0; o < r0.histogram.size(); ++o) {
      if ((o >> q) & 1U) flips0 += r0.histogram[o];
      if (!((o >> q) & 1U)) flips1 += r1.histogram[o];
    }
    const double p01 = static_cast<double>(flips0) / static_cast<double>(shots);
    const double p10 = static_cast<double>(flips1) / static_cast<double>(shots);
    cal.per_qubit[q] = {1.0 - p01, p10, p01, 1.0 - p10};
  }
  return cal;
}

CalibrationMatrix exact_calibration(const ReadoutNoise& noise) {
  CalibrationMatrix cal;
  cal.per_qubit.resize(noise.size());
  for (std::size_t q = 0; q < noise.size(); ++q)
    cal.per_qubit[q] = {1.0 - noise.p01(q), noise.p10(q), noise.p01(q), 1.0 - noise.p10(q)};
  return cal;
}

std::vector<double> mitigate_distribution(std::span<const double> observed,
                                          std::span<const std::size_t> measured,
                                          const CalibrationMatrix& cal) {
  if (observed.size() != (std::size_t{1} << measured.size()))
    throw std::invalid_argument("distribution size does not match measured qubits");
  std::vector<std::array<double, 4>> maps;
  maps.reserve(measured.size());
  for (auto q : measured) {
    if (q >= cal.size())
      throw std::invalid_argument(fmt::format("no calibration for qubit {}", q));
    maps.push_back(cal.per_qubit[q]);
  }
  std::vector<double> p(observed.begin(), observed.end());
  for (std::size_t j = 0; j < maps.size(); ++j) apply_bit_map(p, j, inverse2(maps[j]));
  const bool negative =
      std::any_of(p.begin(), p.end(), [](double v) { return v < -kSingularTolerance; });
  if (negative) p = nnls(observed, maps, std::move(p));
  renormalize(p);
  return p;
}

std::vector<double> mitigate(const ShotResult& counts, const CalibrationMatrix& cal) {
  return mitigate_distribution(counts.frequencies(), counts.measured, cal);
}

// ---------------------------------------------------------------------------
// Estimator

Estimator::Estimator(PauliSum h, Backend backend)
    : h_(std::move(h)), backend_(std::move(backend)), all_non_identity_(h_.num_qubits()) {
  h_.normalize();
  if (h_.max_imag_weight() > kPruneTolerance)
    throw InputError("Hamiltonian has complex Pauli weights; a Hermitian sum is real");
  classes_ = classify_terms(h_);
  for (const auto& t : h_.terms())
    if (!t.string.is_identity()) all_non_identity_.add(t.weight, t.string);

  if (backend_.uses_shots() && backend_.shots == 0)
    throw InputError("shots must be positive");
  const std::size_t ancillas = backend_.style == MeasurementStyle::Indirect ? 2 : 1;
  const bool analytic_noise =
      backend_.kind == BackendKind::ExactCircuit && backend_.noise.size() > 0;
  if (backend_.kind == BackendKind::SampledNoisy || analytic_noise) {
    if (backend_.noise.size() < h_.num_qubits() + ancillas)
      throw InputError(fmt::format("readout noise covers {} qubits, circuits use {}",
                                   backend_.noise.size(), h_.num_qubits() + ancillas));
    if (backend_.mitigate && analytic_noise) {
      cal_ = exact_calibration(backend_.noise);
    } else if (backend_.mitigate) {
      const auto cal_shots =
          backend_.calibration_shots ? backend_.calibration_shots : backend_.shots;
      cal_ = build_calibration(backend_.noise, cal_shots,
                               derive_seed(backend_.seed, {stream(Stream::kCalibration)}));
    }
  }
}

const PauliSum& Estimator::interference_terms() const {
  return backend_.diagonals_on_circuit ? all_non_identity_ : classes_.offdiagonal;
}

std::vector<double> Estimator::distribution(const StateVector& psi,
                                            std::span<const std::size_t> measured,
                                            std::uint64_t seed) const {
  switch (backend_.kind) {
    case BackendKind::Oracle:
      return outcome_distribution(psi, measured);
    case BackendKind::ExactCircuit: {
      if (backend_.noise.size() == 0) return outcome_distribution(psi, measured);
      const auto p = outcome_distribution(psi, measured, &backend_.noise);
      if (cal_) return mitigate_distribution(p, measured, *cal_);
      return p;
    }
    case BackendKind::Sampled:
      return sample_state(psi, measured, backend_.shots, seed).frequencies();
    case BackendKind::SampledNoisy: {
      const auto r = sample_state(psi, measured, backend_.shots, seed, &backend_.noise);
      if (cal_) return mitigate(r, *cal_);
      return r.frequencies();
    }
  }
  throw std::logic_error("unhandled backend");
}

Estimate Estimator::measure_diagonal(const BasisState& n) const {
  if (n.size() != h_.num_qubits())
    throw InputError("basis state width differs from the Hamiltonian");
  Estimate e;
  if (backend_.kind == BackendKind::Oracle || !backend_.diagonals_on_circuit) {
    e.value = diagonal_energy(h_, n);
    return e;
  }
  const StateVector psi = run(build_diagonal_circuit(n));
  double variance = 0.0;
  for (std::size_t i = 0; i < classes_.diagonal.size(); ++i) {
    const auto& t = classes_.diagonal.terms()[i];
    const double w = t.weight.real();
    if (t.string.is_identity()) {
      e.value += w;
      continue;
    }
    const auto measured = support(t.string);
    const auto probs = distribution(
        psi, measured,
        derive_seed(backend_.seed, {stream(Stream::kSampling), kTagDiagonal, n.bits(), 0, 0, i}));
    const std::uint64_t all = (std::uint64_t{1} << measured.size()) - 1;
    const double z = parity_expectation(probs, all);
    e.value += w * z;
    ++e.executions;
    if (backend_.uses_shots())
      variance += w * w * std::max(0.0, 1.0 - z * z) / static_cast<double>(backend_.shots);
  }
  if (backend_.uses_shots()) e.shots = e.executions * backend_.shots;
  e.std_error = std::sqrt(variance);
  return e;
}

Estimator::PartResult Estimator::direct_part(const BasisState& n, const BasisState& n_prime,
                                             Part part, const Estimate& dn,
                                             const Estimate& dnp) const {
  const Circuit c = build_offdiagonal_circuit(n, n_prime, part);
  const StateVector psi = run(c);
  const std::size_t anc = c.num_targets;
  const auto& terms = interference_terms();

  double m0 = 0.0;
  double variance = 0.0;
  PartResult out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms.terms()[i];
    const double w = t.weight.real();
    const PauliString obs = widen(t.string, c.total_qubits());
    StateVector rotated = psi;
    rotated.apply(measurement_rotation(obs));
    auto measured = support(obs);
    measured.push_back(anc);  // highest index, so outcome bit measured.size()-1
    const std::size_t anc_bit = measured.size() - 1;
    const auto probs = distribution(
        rotated, measured,
        derive_seed(backend_.seed, {stream(Stream::kSampling), kTagDirect, n.bits(),
                                    n_prime.bits(), static_cast<std::uint64_t>(part), i}));
    const std::uint64_t parity_mask = (std::uint64_t{1} << anc_bit) - 1;
    double m = 0.0, p0 = 0.0;
    for (std::size_t o = 0; o < probs.size(); ++o) {
      if ((o >> anc_bit) & 1U) continue;
      p0 += probs[o];
      m += (std::popcount(o & parity_mask) & 1) ? -probs[o] : probs[o];
    }
    m0 += w * m;
    ++out.executions;
    if (backend_.uses_shots())
      variance += 4.0 * w * w * std::max(0.0, p0 - m * m) / static_cast<double>(backend_.shots);
  }
  const double diag_sum = dn.value + dnp.value;
  if (backend_.diagonals_on_circuit) {
    // Identity term: P(anc = 0) is exactly 1/2.
    for (const auto& t : classes_.diagonal.terms())
      if (t.string.is_identity()) m0 += 0.5 * t.weight.real();
  } else {
    m0 += 0.25 * diag_sum;
  }
  out.value = 2.0 * m0 - 0.5 * diag_sum;
  if (backend_.diagonals_on_circuit)
    variance += 0.25 * (dn.std_error * dn.std_error + dnp.std_error * dnp.std_error);
  out.variance = variance;
  if (part == Part::Imag) out.value = -out.value;
  return out;
}

Estimator::PartResult Estimator::indirect_part(const BasisState& n,
                                               const BasisState& n_prime,
                                               Part part) const {
  const auto& terms = interference_terms();
  PartResult out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms.terms()[i];
    const double w = t.weight.real();
    const Circuit c = build_indirect_circuit(n, n_prime, t.string, part);
    const StateVector psi = run(c);
    const auto probs = distribution(
        psi, c.measured,
        derive_seed(backend_.seed, {stream(Stream::kSampling), kTagIndirect, n.bits(),
                                    n_prime.bits(), static_cast<std::uint64_t>(part), i}));
    const double p00 = probs[0];
    const double d = string_matrix_element(n, t.string, n).real() +
                     string_matrix_element(n_prime, t.string, n_prime).real();
    const double e = 4.0 * p00 - 1.0 - 0.5 * d;
    out.value += w * e;
    ++out.executions;
    if (backend_.uses_shots())
      out.variance +=
          16.0 * w * w * p00 * (1.0 - p00) / static_cast<double>(backend_.shots);
  }
  if (part == Part::Imag) out.value = -out.value;
  return out;
}

ComplexEstimate Estimator::measure_offdiagonal(const BasisState& n,
                                               const BasisState& n_prime,
                                               const Estimate& diag_n,
                                               const Estimate& diag_n_prime) const {
  if (n.size() != h_.num_qubits() || n_prime.size() != h_.num_qubits())
    throw InputError("basis state width differs from the Hamiltonian");
  if (n == n_prime) throw InputError("off-diagonal element needs two distinct states");
  ComplexEstimate out;
  if (backend_.kind == BackendKind::Oracle) {
    out.value = sum_matrix_element(n, h_, n_prime);
    return out;
  }
  PartResult re, im;
  if (backend_.style == MeasurementStyle::Direct) {
    re = direct_part(n, n_prime, Part::Real, diag_n, diag_n_prime);
    im = direct_part(n, n_prime, Part::Imag, diag_n, diag_n_prime);
  } else {
    re = indirect_part(n, n_prime, Part::Real);
    im = indirect_part(n, n_prime, Part::Imag);
  }
  out.value = make_cplx(re.value, im.value);
  out.std_error_re = std::sqrt(re.variance);
  out.std_error_im = std::sqrt(im.variance);
  out.executions = re.executions + im.executions;
  if (backend_.uses_shots()) out.shots = out.executions * backend_.shots;
  return out;
}

RunCounts Estimator::expected_counts(std::size_t basis_size) const {
  RunCounts c;
  if (backend_.kind == BackendKind::Oracle) return c;
  const std::uint64_t ns = basis_size;
  const std::uint64_t pairs = binomial(ns, 2);
  const std::uint64_t strings = interference_terms().size();
  std::uint64_t diag_strings = 0;
  for (const auto& t : classes_.diagonal.terms())
    if (!t.string.is_identity()) ++diag_strings;
  if (backend_.diagonals_on_circuit) {
    c.diagonal_circuits = ns;
    c.executions += ns * diag_strings;
  }
  if (backend_.style == MeasurementStyle::Direct) {
    c.offdiagonal_circuits = 2 * pairs;
  } else {
    c.offdiagonal_circuits = 2 * pairs * strings;
  }
  c.executions += 2 * pairs * strings;
  if (backend_.uses_shots()) c.total_shots = c.executions * backend_.shots;
  return c;
}

EffectiveHamiltonian Estimator::build(const SubspaceBasis& basis) const {
  const std::size_t ns = basis.size();
  if (ns == 0) throw InputError("empty subspace");
  for (const auto& s : basis.states)
    if (s.size() != h_.num_qubits())
      throw InputError("basis state width differs from the Hamiltonian");

  EffectiveHamiltonian out;
  out.basis = basis;
  out.backend = backend_;
  out.calibration = cal_;
  out.matrix = CMatrix(ns, ns);
  out.entries.assign(ns * ns, ComplexEstimate{});

  std::vector<Estimate> diag(ns);
  for (std::size_t i = 0; i < ns; ++i) diag[i] = measure_diagonal(basis.states[i]);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = i + 1; j < ns; ++j) pairs.emplace_back(i, j);

  unsigned workers = backend_.threads ? backend_.threads : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(pairs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t k = next++; k < pairs.size(); k = next++) {
        const auto [i, j] = pairs[k];
        out.entries[i * ns + j] =
            measure_offdiagonal(basis.states[i], basis.states[j], diag[i], diag[j]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = pairs.size();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < ns; ++i) {
    auto& d = out.entries[i * ns + i];
    d.value = diag[i].value;
    d.std_error_re = diag[i].std_error;
    d.shots = diag[i].shots;
    d.executions = diag[i].executions;
    for (std::size_t j = i + 1; j < ns; ++j) {
      auto& lower = out.entries[j * ns + i];
      lower = out.entries[i * ns + j];
      lower.value = std::conj(lower.value);
    }
  }
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) out.matrix(i, j) = out.entries[i * ns + j].value;

  out.counts = expected_counts(ns);
  return out;
}

Estimate measure_diagonal(const PauliSum& h, const BasisState& n, const Backend& backend) {
  return Estimator(h, backend).measure_diagonal(n);
}

ComplexEstimate measure_offdiagonal(const PauliSum& h, const BasisState& n,
                                    const BasisState& n_prime, const Backend& backend,
                                    const Estimate& diag_n, const Estimate& diag_n_prime) {
  return Estimator(h, backend).measure_offdiagonal(n, n_prime, diag_n, diag_n_prime);
}

EffectiveHamiltonian build_effective_hamiltonian(const PauliSum& h,
                                                 const SubspaceBasis& basis,
                                                 const Backend& backend) {
  return Estimator(h, backend).build(basis);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Backend& b) {
  nlohmann::json j;
  j["kind"] = to_string(b.kind);
  j["style"] = to_string(b.style);
  j["diagonals_on_circuit"] = b.diagonals_on_circuit;
  if (b.uses_shots()) {
    j["shots"] = b.shots;
    j["seed"] = b.seed;
  }
  if (b.noise.size() > 0) {
    auto rates = nlohmann::json::array();
    for (std::size_t q = 0; q < b.noise.size(); ++q)
      rates.push_back({b.noise.p01(q), b.noise.p10(q)});
    j["readout_noise"] = rates;
    j["mitigate"] = b.mitigate;
  }
  return j;
}

nlohmann::json to_json(const CalibrationMatrix& c) {
  nlohmann::json j;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  auto q = nlohmann::json::array();
  for (const auto& m : c.per_qubit) q.push_back({{m[0], m[1]}, {m[2], m[3]}});
  j["per_qubit"] = q;
  return j;
}

nlohmann::json to_json(const EffectiveHamiltonian& heff) {
  nlohmann::json j;
  const std::size_t ns = heff.size();
  j["size"] = ns;
  j["reference"] = heff.basis.reference.str();
  auto states = nlohmann::json::array();
  for (const auto& s : heff.basis.states) states.push_back(s.str());
  j["basis"] = states;
  j["diagonal_energies"] = heff.basis.diagonal_energies;
  auto matrix = nlohmann::json::array();
  auto se_re = nlohmann::json::array();
  auto se_im = nlohmann::json::array();
  auto shots = nlohmann::json::array();
  auto execs = nlohmann::json::array();
  for (std::size_t i = 0; i < ns; ++i) {
    auto row = nlohmann::json::array();
    auto r_re = nlohmann::json::array(), r_im = nlohmann::json::array();
    auto r_shots = nlohmann::json::array(), r_exec = nlohmann::json::array();
    for (std::size_t j2 = 0; j2 < ns; ++j2) {
      const auto& e = heff.entries[i * ns + j2];
      row.push_back({heff.matrix(i, j2).real(), heff.matrix(i, j2).imag()});
      r_re.push_back(e.std_error_re);
      r_im.push_back(e.std_error_im);
      r_shots.push_back(e.shots);
      r_exec.push_back(e.executions);
    }
    matrix.push_back(row);
    se_re.push_back(r_re);
    se_im.push_back(r_im);
    shots.push_back(r_shots);
    execs.push_back(r_exec);
  }
  j["matrix"] = matrix;
  j["stderr_re"] = se_re;
  j["stderr_im"] = se_im;
  j["shots"] = shots;
  j["executions"] = execs;
  j["backend"] = to_json(heff.backend);
  j["counts"] = {{"diagonal_circuits", heff.counts.diagonal_circuits},
                 {"offdiagonal_circuits", heff.counts.offdiagonal_circuits},
                 {"executions", heff.counts.executions},
                 {"total_shots", heff.counts.total_shots}};
  if (!heff.basis.warnings.empty()) j["warnings"] = heff.basis.warnings;
  if (heff.calibration) j["calibration"] = to_json(*heff.calibration);
  return j;
}

void write_heff_json(std::ostream& out, const EffectiveHamiltonian& heff) {
  out << to_json(heff).dump(2) << '\n';
}

}  // namespace hqc
