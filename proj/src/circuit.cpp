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

#include "hqc/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "hqc/random.hpp"

namespace hqc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr std::size_t kMaxSimulatedQubits = 30;
constexpr std::size_t kMaxMeasured = 24;

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

std::vector<std::size_t> support(const PauliString& obs) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < obs.size(); ++q)
    if (obs.at(q) != PauliOp::I) out.push_back(q);
  return out;
}

}  // namespace

std::size_t Circuit::controlled_gate_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.controlled(); }));
}

std::size_t Circuit::single_qubit_gate_count() const {
  return gates.size() - controlled_gate_count();
}

const char* to_string(Part p) { return p == Part::Real ? "real" : "imag"; }

void write_netlist(std::ostream& out, const Circuit& c) {
  out << "QUBITS " << c.total_qubits() << '\n';
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "H " << g.target << '\n';
        break;
      case GateKind::S:
        out << "S " << g.target << '\n';
        break;
      case GateKind::Sdg:
        out << "SDG " << g.target << '\n';
        break;
      case GateKind::X:
        out << "X " << g.target << '\n';
        break;
      case GateKind::CX:
        out << "CX " << g.control << ' ' << g.target << '\n';
        break;
      case GateKind::CPauli:
        out << 'C' << to_char(g.pauli) << ' ' << g.control << ' ' << g.target << '\n';
        break;
    }
  }
  out << "MEASURE";
  for (auto q : c.measured) out << ' ' << q;
  out << '\n';
}

// ---------------------------------------------------------------------------
// Circuit builders

std::vector<Gate> controlled_prepare(const BasisState& n, std::size_t control,
                                     int control_value) {
  if (control < n.size())
    throw std::invalid_argument(fmt::format(
        "control qubit {} collides with the {}-qubit target register", control,
        n.size()));
  if (control_value != 0 && control_value != 1)
    throw std::invalid_argument("control value must be 0 or 1");
  std::vector<Gate> gates;
  if (n.bits() == 0) return gates;
  if (control_value == 0) gates.push_back(Gate::x(control));
  for (std::size_t q = 0; q < n.size(); ++q)
    if (n.test(q)) gates.push_back(Gate::cx(control, q));
  if (control_value == 0) gates.push_back(Gate::x(control));
  return gates;
}

Circuit build_offdiagonal_circuit(const BasisState& n, const BasisState& n_prime,
                                  Part part) {
  if (n.size() != n_prime.size())
    throw std::invalid_argument("basis states differ in size");
  if (n == n_prime)
    throw std::invalid_argument("off-diagonal circuit needs n != n'; use the diagonal path");
  const std::size_t anc = n.size();
  Circuit c{n.size(), 1, {}, {anc}};
  c.gates.push_back(Gate::h(anc));
  for (const auto& g : controlled_prepare(n_prime, anc, 0)) c.gates.push_back(g);
  for (const auto& g : controlled_prepare(n, anc, 1)) c.gates.push_back(g);
  if (part == Part::Imag) c.gates.push_back(Gate::sdg(anc));
  c.gates.push_back(Gate::h(anc));
  return c;
}

Circuit build_indirect_circuit(const BasisState& n, const BasisState& n_prime,
                               const PauliString& h, Part part) {
  if (n.size() != n_prime.size() || h.size() != n.size())
    throw std::invalid_argument("indirect circuit: register size mismatch");
  if (n == n_prime)
    throw std::invalid_argument("indirect circuit needs n != n'; use the diagonal path");
  const std::size_t prep = n.size();
  const std::size_t meas = n.size() + 1;
  Circuit c{n.size(), 2, {}, {prep, meas}};
  c.gates.push_back(Gate::h(prep));
  c.gates.push_back(Gate::h(meas));
  for (const auto& g : controlled_prepare(n_prime, prep, 0)) c.gates.push_back(g);
  for (const auto& g : controlled_prepare(n, prep, 1)) c.gates.push_back(g);
  for (std::size_t q = 0; q < h.size(); ++q)
    if (h.at(q) != PauliOp::I) c.gates.push_back(Gate::cpauli(meas, q, h.at(q)));
  if (part == Part::Imag) c.gates.push_back(Gate::sdg(prep));
  c.gates.push_back(Gate::h(prep));
  c.gates.push_back(Gate::h(meas));
  return c;
}

Circuit build_diagonal_circuit(const BasisState& n) {
  Circuit c{n.size(), 0, {}, {}};
  for (std::size_t q = 0; q < n.size(); ++q)
    if (n.test(q)) c.gates.push_back(Gate::x(q));
  return c;
}

// ---------------------------------------------------------------------------
// Statevector

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxSimulatedQubits)
    throw std::invalid_argument(fmt::format(
        "statevector size {} outside [1, {}]", num_qubits, kMaxSimulatedQubits));
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate& g) {
  if (g.target >= n_ || (g.controlled() && (g.control >= n_ || g.control == g.target)))
    throw std::out_of_range("gate qubit index out of range");
  const std::uint64_t t = bit(g.target);
  const std::uint64_t c = g.controlled() ? bit(g.control) : 0;
  const std::size_t dim = amps_.size();

  // Visit each (|..0_t..>, |..1_t..>) pair once, restricted to control = 1.
  auto for_pairs = [&](auto&& fn) {
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & t) || ((i & c) != c)) continue;
      fn(amps_[i], amps_[i | t]);
    }
  };

  switch (g.kind) {
    case GateKind::H:
      for_pairs([](cplx& a0, cplx& a1) {
        const cplx s = a0 + a1, d = a0 - a1;
        a0 = s * kInvSqrt2;
        a1 = d * kInvSqrt2;
      });
      break;
    case GateKind::S:
      for_pairs([](cplx&, cplx& a1) { a1 = cplx{-a1.imag(), a1.real()}; });
      break;
    case GateKind::Sdg:
      for_pairs([](cplx&, cplx& a1) { a1 = cplx{a1.imag(), -a1.real()}; });
      break;
    case GateKind::X:
    case GateKind::CX:
      for_pairs([](cplx& a0, cplx& a1) { std::swap(a0, a1); });
      break;
    case GateKind::CPauli:
      switch (g.pauli) {
        case PauliOp::I:
          break;
        case PauliOp::X:
          for_pairs([](cplx& a0, cplx& a1) { std::swap(a0, a1); });
          break;
        case PauliOp::Y:
          // Y|0> = i|1>, Y|1> = -i|0>.
          for_pairs([](cplx& a0, cplx& a1) {
            const cplx old0 = a0;
            a0 = cplx{a1.imag(), -a1.real()};
            a1 = cplx{-old0.imag(), old0.real()};
          });
          break;
        case PauliOp::Z:
          for_pairs([](cplx&, cplx& a1) { a1 = -a1; });
          break;
      }
      break;
  }
}

void StateVector::apply(std::span<const Gate> gates) {
  for (const auto& g : gates) apply(g);
}

StateVector run(const Circuit& c) {
  StateVector psi(c.total_qubits());
  psi.apply(c.gates);
  return psi;
}

double exact_expectation(const StateVector& psi, const PauliString& obs) {
  if (obs.size() != psi.num_qubits())
    throw std::invalid_argument("observable length differs from qubit count");
  const auto amps = psi.amplitudes();
  const std::uint64_t x = obs.x_mask();
  const std::uint64_t z = obs.z_mask();
  const cplx y_phase = Phase(static_cast<unsigned>(std::popcount(x & z))).value();
  cplx total{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] == cplx{0.0, 0.0}) continue;
    const double sign = (std::popcount(z & i) & 1) ? -1.0 : 1.0;
    total += std::conj(amps[i ^ x]) * sign * amps[i];
  }
  return (total * y_phase).real();
}

double exact_expectation(const Circuit& c, const PauliString& obs) {
  return exact_expectation(run(c), obs);
}

std::vector<Gate> measurement_rotation(const PauliString& obs) {
  std::vector<Gate> gates;
  for (std::size_t q = 0; q < obs.size(); ++q) {
    switch (obs.at(q)) {
      case PauliOp::X:
        gates.push_back(Gate::h(q));
        break;
      case PauliOp::Y:
        gates.push_back(Gate::sdg(q));
        gates.push_back(Gate::h(q));
        break;
      default:
        break;
    }
  }
  return gates;
}

// ---------------------------------------------------------------------------
// Readout noise and sampling

ReadoutNoise::ReadoutNoise(std::vector<std::pair<double, double>> per_qubit)
    : rates_(std::move(per_qubit)) {
  for (const auto& [p01, p10] : rates_)
    if (!(p01 >= 0.0 && p01 < 0.5 && p10 >= 0.0 && p10 < 0.5))
      throw std::invalid_argument(
          fmt::format("readout flip probabilities ({}, {}) outside [0, 0.5)", p01, p10));
}

ReadoutNoise ReadoutNoise::uniform(std::size_t num_qubits, double p01, double p10) {
  return ReadoutNoise(std::vector<std::pair<double, double>>(num_qubits, {p01, p10}));
}

bool ReadoutNoise::is_zero() const {
  return std::all_of(rates_.begin(), rates_.end(),
                     [](const auto& r) { return r.first == 0.0 && r.second == 0.0; });
}

std::map<std::string, std::uint64_t> ShotResult::counts() const {
  std::map<std::string, std::uint64_t> out;
  for (std::size_t o = 0; o < histogram.size(); ++o) {
    if (histogram[o] == 0) continue;
    std::string key(measured.size(), '0');
    for (std::size_t j = 0; j < measured.size(); ++j)
      if ((o >> j) & 1U) key[j] = '1';
    out.emplace(std::move(key), histogram[o]);
  }
  return out;
}

std::vector<double> ShotResult::frequencies() const {
  std::vector<double> p(histogram.size());
  for (std::size_t o = 0; o < histogram.size(); ++o)
    p[o] = static_cast<double>(histogram[o]) / static_cast<double>(shots);
  return p;
}

namespace {

std::vector<double> marginal(const StateVector& psi,
                             std::span<const std::size_t> measured) {
  if (measured.size() > kMaxMeasured)
    throw std::invalid_argument("too many measured qubits");
  for (auto q : measured)
    if (q >= psi.num_qubits()) throw std::out_of_range("measured qubit out of range");
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  const auto amps = psi.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::size_t o = 0;
    for (std::size_t j = 0; j < measured.size(); ++j)
      if ((i >> measured[j]) & 1U) o |= std::size_t{1} << j;
    probs[o] += p;
  }
  return probs;
}

}  // namespace

void apply_bit_map(std::span<double> probs, std::size_t position,
                   const std::array<double, 4>& m) {
  const std::size_t b = std::size_t{1} << position;
  for (std::size_t o = 0; o < probs.size(); ++o) {
    if (o & b) continue;
    const double t0 = probs[o], t1 = probs[o | b];
    probs[o] = m[0] * t0 + m[1] * t1;
    probs[o | b] = m[2] * t0 + m[3] * t1;
  }
}

std::vector<double> outcome_distribution(const StateVector& psi,
                                         std::span<const std::size_t> measured,
                                         const ReadoutNoise* noise) {
  auto probs = marginal(psi, measured);
  if (noise) {
    for (std::size_t j = 0; j < measured.size(); ++j) {
      const double p01 = noise->p01(measured[j]), p10 = noise->p10(measured[j]);
      apply_bit_map(probs, j, {1.0 - p01, p10, p01, 1.0 - p10});
    }
  }
  return probs;
}

ShotResult sample_state(const StateVector& psi,
                        std::span<const std::size_t> measured,
                        std::uint64_t shots, std::uint64_t seed,
                        const ReadoutNoise* noise) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const auto probs = marginal(psi, measured);
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();

  ShotResult result;
  result.measured.assign(measured.begin(), measured.end());
  result.histogram.assign(probs.size(), 0);
  result.shots = shots;
  result.seed = seed;

  Rng draw(derive_seed(seed, {static_cast<std::uint64_t>(Stream::kSampling)}));
  Rng flip(derive_seed(seed, {static_cast<std::uint64_t>(Stream::kReadoutNoise)}));
  const bool noisy = noise && !noise->is_zero();
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = draw.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip zero-probability outcomes sitting at the end of the CDF.
    while (it != cdf.begin() && (it == cdf.end() || probs[static_cast<std::size_t>(it - cdf.begin())] == 0.0))
      --it;
    std::size_t o = static_cast<std::size_t>(it - cdf.begin());
    if (noisy) {
      for (std::size_t j = 0; j < measured.size(); ++j) {
        const bool one = (o >> j) & 1U;
        const double p = one ? noise->p10(measured[j]) : noise->p01(measured[j]);
        if (flip.uniform() < p) o ^= std::size_t{1} << j;
      }
    }
    ++result.histogram[o];
  }
  return result;
}

double parity_expectation(std::span<const double> probs, std::uint64_t position_mask) {
  double e = 0.0;
  for (std::size_t o = 0; o < probs.size(); ++o)
    e += (std::popcount(o & position_mask) & 1) ? -probs[o] : probs[o];
  return e;
}

SampleEstimate sample(const Circuit& c, const PauliString& obs, std::uint64_t shots,
                      std::uint64_t seed, const ReadoutNoise* noise) {
  if (obs.size() != c.total_qubits())
    throw std::invalid_argument("observable length differs from qubit count");
  StateVector psi = run(c);
  psi.apply(measurement_rotation(obs));

  std::vector<std::size_t> measured = c.measured;
  for (auto q : support(obs)) measured.push_back(q);
  std::sort(measured.begin(), measured.end());
  measured.erase(std::unique(measured.begin(), measured.end()), measured.end());

  std::uint64_t positions = 0;
  for (std::size_t j = 0; j < measured.size(); ++j)
    if (obs.at(measured[j]) != PauliOp::I) positions |= bit(j);

  SampleEstimate out;
  out.result = sample_state(psi, measured, shots, seed, noise);
  out.estimate = parity_expectation(out.result.frequencies(), positions);
  out.std_error = std::sqrt(std::max(0.0, 1.0 - out.estimate * out.estimate) /
                            static_cast<double>(shots));
  return out;
}

}  // namespace hqc
