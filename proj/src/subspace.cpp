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

#include "hqc/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hqc/random.hpp"

namespace hqc {

namespace {

struct DiagonalTerm {
  std::uint64_t z;
  double weight;
};

/// I/Z part of H in a form that evaluates <n|H|n> with one popcount per term.
class DiagonalModel {
 public:
  explicit DiagonalModel(const PauliSum& h) {
    for (const auto& t : h.terms())
      if (t.string.is_diagonal()) terms_.push_back({t.string.z_mask(), t.weight.real()});
  }

  double energy(std::uint64_t bits) const {
    double e = 0.0;
    for (const auto& t : terms_)
      e += (std::popcount(t.z & bits) & 1) ? -t.weight : t.weight;
    return e;
  }

 private:
  std::vector<DiagonalTerm> terms_;
};

std::uint64_t reverse_bits(std::uint64_t w, std::size_t n) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i)
    if ((w >> i) & 1U) r |= std::uint64_t{1} << (n - 1 - i);
  return r;
}

/// Visits every k-of-n configuration in lexicographic order of the textual
/// form. Text character 0 is the most significant digit of the bit-reversed
/// word, so Gosper's increasing sequence of that word is the text order.
template <typename Fn>
void for_each_sector_state(std::size_t n, int k, Fn&& fn) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return;
  if (k == 0) {
    fn(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit_bit = std::uint64_t{1} << n;  // n < 64 here
  std::uint64_t w = (std::uint64_t{1} << k) - 1;
  while (w < limit_bit) {
    fn(reverse_bits(w, n));
    const std::uint64_t c = w & (~w + 1);
    const std::uint64_t r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
    if (r == 0) break;
  }
}

void check_particle_count(std::size_t n, int particle_count) {
  if (particle_count <= 0 || static_cast<std::size_t>(particle_count) >= n)
    throw InputError(fmt::format(
        "particle count {} must satisfy 0 < N_F < N = {}", particle_count, n));
}

bool energy_then_lex(double ea, const BasisState& a, double eb,
                     const BasisState& b) {
  if (ea != eb) return ea < eb;
  return lex_less(a, b);
}

BasisState random_configuration(std::size_t n, int particles, Rng& rng) {
  std::vector<std::size_t> modes(n);
  std::iota(modes.begin(), modes.end(), 0);
  std::uint64_t bits = 0;
  for (int i = 0; i < particles; ++i) {
    const auto j = i + rng.below(n - static_cast<std::size_t>(i));
    std::swap(modes[static_cast<std::size_t>(i)], modes[j]);
    bits |= std::uint64_t{1} << modes[static_cast<std::size_t>(i)];
  }
  return BasisState(n, bits);
}

BasisState anneal(const DiagonalModel& model, std::size_t n, int particles,
                  const MonteCarloSearch& mc) {
  Rng rng(derive_seed(mc.seed,
                      {static_cast<std::uint64_t>(Stream::kReferenceSearch)}));

  double t0 = 0.0;
  if (mc.initial_temperature) {
    t0 = *mc.initial_temperature;
  } else {
    constexpr int kProbe = 100;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < kProbe; ++i) {
      const double e = model.energy(random_configuration(n, particles, rng).bits());
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / kProbe;
    t0 = std::sqrt(std::max(0.0, sum_sq / kProbe - mean * mean));
  }
  if (!(t0 > 0.0)) t0 = 1.0;

  BasisState current = random_configuration(n, particles, rng);
  double energy = model.energy(current.bits());
  BasisState best = current;
  double best_energy = energy;

  const int holes = static_cast<int>(n) - particles;
  double temperature = t0;
  for (std::size_t sweep = 0; sweep < mc.sweeps; ++sweep) {
    for (std::size_t step = 0; step < n; ++step) {
      // Pick the r-th occupied and s-th empty mode.
      const auto r = static_cast<int>(rng.below(static_cast<std::uint64_t>(particles)));
      const auto s = static_cast<int>(rng.below(static_cast<std::uint64_t>(holes)));
      std::uint64_t occ = current.bits();
      std::uint64_t emp = ~current.bits() & ((std::uint64_t{1} << n) - 1);
      for (int i = 0; i < r; ++i) occ &= occ - 1;
      for (int i = 0; i < s; ++i) emp &= emp - 1;
      const std::uint64_t move = (occ & (~occ + 1)) | (emp & (~emp + 1));
      const std::uint64_t proposal = current.bits() ^ move;
      const double e_new = model.energy(proposal);
      const double delta = e_new - energy;
      const double u = rng.uniform();
      if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
        current = BasisState(n, proposal);
        energy = e_new;
        if (energy_then_lex(energy, current, best_energy, best)) {
          best = current;
          best_energy = energy;
        }
      }
    }
    temperature *= mc.cooling;
  }
  return best;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<BasisState> sector_states(std::size_t num_qubits,
                                      int particle_count) {
  if (num_qubits == 0 || num_qubits >= 64)
    throw std::invalid_argument("sector enumeration needs 0 < N < 64");
  std::vector<BasisState> out;
  for_each_sector_state(num_qubits, particle_count, [&](std::uint64_t bits) {
    out.emplace_back(num_qubits, bits);
  });
  return out;
}

BasisState find_reference(const PauliSum& h, int particle_count,
                          const SearchStrategy& strategy) {
  const std::size_t n = h.num_qubits();
  check_particle_count(n, particle_count);
  const DiagonalModel model(h);

  if (const auto* mc = std::get_if<MonteCarloSearch>(&strategy))
    return anneal(model, n, particle_count, *mc);

  if (n >= 64) throw std::invalid_argument("exhaustive search needs N < 64");
  std::optional<BasisState> best;
  double best_energy = 0.0;
  // Visiting in lexicographic order, so only a strict improvement replaces.
  for_each_sector_state(n, particle_count, [&](std::uint64_t bits) {
    const double e = model.energy(bits);
    if (!best || e < best_energy) {
      best = BasisState(n, bits);
      best_energy = e;
    }
  });
  return *best;
}

std::vector<BasisState> enumerate_excitations(const BasisState& ref, int order) {
  const std::size_t n = ref.size();
  std::vector<std::size_t> occupied, empty;
  for (std::size_t i = 0; i < n; ++i) (ref.test(i) ? occupied : empty).push_back(i);

  std::vector<BasisState> out;
  if (order < 0 || static_cast<std::size_t>(order) > occupied.size() ||
      static_cast<std::size_t>(order) > empty.size())
    return out;
  if (order == 0) return {ref};

  const auto k = static_cast<std::size_t>(order);
  // Index combinations, lexicographic over (removed, added).
  std::vector<std::size_t> rm(k), add(k);
  auto first = [&](std::vector<std::size_t>& c) { std::iota(c.begin(), c.end(), 0); };
  auto advance = [k](std::vector<std::size_t>& c, std::size_t pool) {
    for (std::size_t i = k; i-- > 0;) {
      if (c[i] < pool - k + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  out.reserve(binomial(occupied.size(), k) * binomial(empty.size(), k));
  first(rm);
  do {
    std::uint64_t clear = 0;
    for (auto i : rm) clear |= std::uint64_t{1} << occupied[i];
    first(add);
    do {
      std::uint64_t set = 0;
      for (auto i : add) set |= std::uint64_t{1} << empty[i];
      out.emplace_back(n, (ref.bits() & ~clear) | set);
    } while (advance(add, empty.size()));
  } while (advance(rm, occupied.size()));
  return out;
}

SubspaceBasis build_subspace(const PauliSum& h, const SubspaceSpec& spec) {
  const std::size_t n = h.num_qubits();
  check_particle_count(n, spec.particle_count);
  const int limit = std::min(spec.particle_count,
                             static_cast<int>(n) - spec.particle_count);
  if (spec.max_excitation_order < 0 || spec.max_excitation_order > limit)
    throw InputError(fmt::format(
        "excitation order {} outside [0, min(N_F, N - N_F) = {}]",
        spec.max_excitation_order, limit));
  if (spec.target_size && *spec.target_size == 0)
    throw InputError("subspace target size must be positive");

  const DiagonalModel model(h);
  SubspaceBasis basis;
  basis.reference = find_reference(h, spec.particle_count, spec.strategy);

  std::vector<std::pair<double, BasisState>> candidates;
  for (int order = 1; order <= spec.max_excitation_order; ++order)
    for (const auto& s : enumerate_excitations(basis.reference, order))
      candidates.emplace_back(model.energy(s.bits()), s);
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return energy_then_lex(a.first, a.second, b.first, b.second);
  });

  std::size_t keep = candidates.size();
  if (spec.target_size) {
    const std::size_t total = candidates.size() + 1;
    if (*spec.target_size > total)
      basis.warnings.push_back(fmt::format(
          "target size {} exceeds the {} enumerated states; keeping all",
          *spec.target_size, total));
    else
      keep = *spec.target_size - 1;
  }

  basis.states.push_back(basis.reference);
  basis.diagonal_energies.push_back(model.energy(basis.reference.bits()));
  for (std::size_t i = 0; i < keep; ++i) {
    basis.states.push_back(candidates[i].second);
    basis.diagonal_energies.push_back(candidates[i].first);
  }
  return basis;
}

SubspaceBasis make_subspace(const PauliSum& h, std::vector<BasisState> states) {
  if (states.empty()) throw InputError("subspace basis is empty");
  std::set<std::uint64_t> seen;
  for (const auto& s : states) {
    if (s.size() != h.num_qubits())
      throw InputError(fmt::format("basis state {} has {} qubits, expected {}",
                                   s.str(), s.size(), h.num_qubits()));
    if (s.particle_count() != states.front().particle_count())
      throw InputError(fmt::format("basis state {} has a different particle count",
                                   s.str()));
    if (!seen.insert(s.bits()).second)
      throw InputError(fmt::format("duplicate basis state {}", s.str()));
  }
  const DiagonalModel model(h);
  SubspaceBasis basis;
  basis.reference = states.front();
  for (const auto& s : states) basis.diagonal_energies.push_back(model.energy(s.bits()));
  basis.states = std::move(states);
  return basis;
}

std::vector<BasisState> read_bitstrings(std::istream& in) {
  std::vector<BasisState> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok, extra;
    if (!(ls >> tok)) continue;
    if (ls >> extra)
      throw InputError(fmt::format("line {}: expected one bitstring", line_no));
    try {
      out.push_back(BasisState::parse(tok));
    } catch (const InputError& e) {
      throw InputError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

std::vector<BasisState> read_bitstrings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  return read_bitstrings(in);
}

void write_bitstrings(std::ostream& out, const std::vector<BasisState>& states) {
  for (const auto& s : states) out << s.str() << '\n';
}

}  // namespace hqc
