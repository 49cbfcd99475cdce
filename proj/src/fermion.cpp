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

#include "hqc/fermion.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "hqc/random.hpp"

namespace hqc {

FermionHamiltonian::FermionHamiltonian(std::size_t mode_count, double constant)
    : modes_(mode_count), constant_(constant) {
  if (mode_count == 0 || mode_count > kMaxQubits)
    throw std::invalid_argument(
        fmt::format("mode count {} outside [1, {}]", mode_count, kMaxQubits));
}

void FermionHamiltonian::add(FermionTerm term) {
  if (term.factors.size() != 2 && term.factors.size() != 4)
    throw InputError(fmt::format("term has {} ladder factors, expected 2 or 4",
                                 term.factors.size()));
  int balance = 0;
  for (const auto& f : term.factors) {
    if (f.mode >= modes_)
      throw InputError(fmt::format("mode {} out of range for {} modes", f.mode,
                                   modes_));
    balance += f.dagger ? 1 : -1;
  }
  if (balance != 0)
    throw InputError("term does not conserve particle number");
  terms_.push_back(std::move(term));
}

// Occupation convention switch point: qubit value 1 = occupied mode. Under
// this choice the creation operator is |1><0| = (X - iY)/2 on its site, with
// the Z parity string over the lower modes. Flipping the sign of the Y term
// below (and Z eigenvalues elsewhere) would select 0 = occupied instead.
PauliSum jw_ladder(std::size_t mode, bool dagger, std::size_t num_qubits) {
  if (mode >= num_qubits)
    throw std::out_of_range(
        fmt::format("mode {} out of range for {} qubits", mode, num_qubits));
  const std::uint64_t tail = (std::uint64_t{1} << mode) - 1;
  const std::uint64_t site = std::uint64_t{1} << mode;
  PauliSum out(num_qubits);
  out.add({0.5, 0.0}, PauliString(num_qubits, site, tail));
  out.add({0.0, dagger ? -0.5 : 0.5}, PauliString(num_qubits, site, tail | site));
  return out;
}

PauliSum jw_transform(const FermionHamiltonian& h, bool keep_complex) {
  const std::size_t n = h.mode_count();
  PauliSum total(n);
  if (h.constant() != 0.0) total.add({h.constant(), 0.0}, PauliString(n));

  // Ladder images are reused across terms.
  std::map<std::pair<std::size_t, bool>, PauliSum> ladder;
  auto image = [&](const LadderFactor& f) -> const PauliSum& {
    auto key = std::make_pair(f.mode, f.dagger);
    auto it = ladder.find(key);
    if (it == ladder.end())
      it = ladder.emplace(key, jw_ladder(f.mode, f.dagger, n)).first;
    return it->second;
  };

  std::vector<PauliTerm> collected;
  for (const auto& term : h.terms()) {
    PauliSum product(n);
    product.add(term.coefficient, PauliString(n));
    for (const auto& f : term.factors) product = product * image(f);
    collected.insert(collected.end(), product.terms().begin(),
                     product.terms().end());
  }
  for (const auto& t : collected) total.add(t.weight, t.string);
  total.normalize();

  if (keep_complex) return total;
  if (total.max_imag_weight() > kHermitianTolerance)
    throw InputError(fmt::format(
        "fermion Hamiltonian is not Hermitian (imaginary Pauli weight {:.3e})",
        total.max_imag_weight()));
  PauliSum real(n);
  for (const auto& t : total.terms()) real.add({t.weight.real(), 0.0}, t.string);
  real.normalize();
  return real;
}

bool check_particle_conservation(const PauliSum& h, std::size_t trials,
                                 std::uint64_t seed) {
  if (h.empty()) return true;
  const std::size_t n = h.num_qubits();

  // Group weights by flip mask; only masks that move a particle matter.
  std::map<std::uint64_t, std::vector<const PauliTerm*>> by_flip;
  for (const auto& t : h.terms()) by_flip[t.string.x_mask()].push_back(&t);

  auto conserves_on = [&](std::uint64_t bits) {
    const BasisState state(n, bits);
    for (const auto& [flip, group] : by_flip) {
      const std::uint64_t image = bits ^ flip;
      if (std::popcount(image) == std::popcount(bits)) continue;
      cplx amp{0.0, 0.0};
      for (const auto* t : group)
        amp += t->weight * apply_string(t->string, state).first.value();
      if (std::abs(amp) > kPruneTolerance) return false;
    }
    return true;
  };

  if (n < 63 && (std::uint64_t{1} << n) <= trials) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
      if (!conserves_on(bits)) return false;
    return true;
  }
  Rng rng(seed);
  const std::uint64_t mask =
      n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t k = 0; k < trials; ++k)
    if (!conserves_on(rng.next() & mask)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text format

FermionHamiltonian read_fermion_hamiltonian(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  FermionHamiltonian h;
  bool have_modes = false;
  double constant = 0.0;

  auto fail = [&](const std::string& msg) {
    return InputError(fmt::format("line {}: {}", line_no, msg));
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;

    if (first == "modes") {
      std::size_t modes = 0;
      if (have_modes) throw fail("duplicate 'modes' header");
      if (!(ls >> modes) || modes == 0 || modes > kMaxQubits)
        throw fail("invalid mode count");
      h = FermionHamiltonian(modes);
      have_modes = true;
      continue;
    }
    if (first == "constant") {
      if (!(ls >> constant)) throw fail("invalid constant");
      continue;
    }
    if (!have_modes) throw fail("term before 'modes' header");

    std::string im_tok;
    if (!(ls >> im_tok)) throw fail("expected '<re> <im> <factor>...'");
    double re = 0.0, im = 0.0;
    try {
      std::size_t used_re = 0, used_im = 0;
      re = std::stod(first, &used_re);
      im = std::stod(im_tok, &used_im);
      if (used_re != first.size() || used_im != im_tok.size())
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw fail("invalid coefficient");
    }

    std::vector<LadderFactor> factors;
    std::string tok;
    while (ls >> tok) {
      LadderFactor f;
      std::string digits = tok;
      if (!digits.empty() && digits.back() == '^') {
        f.dagger = true;
        digits.pop_back();
      }
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw fail(fmt::format("malformed factor '{}'", tok));
      f.mode = std::stoul(digits);
      factors.push_back(f);
    }
    try {
      h.add({re, im}, std::move(factors));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
  }
  if (!have_modes) throw InputError("missing 'modes' header");
  h.set_constant(constant);
  return h;
}

FermionHamiltonian read_fermion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  try {
    return read_fermion_hamiltonian(in);
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", path, e.what()));
  }
}

void write_fermion_hamiltonian(std::ostream& out,
                               const FermionHamiltonian& h) {
  out << "modes " << h.mode_count() << '\n';
  if (h.constant() != 0.0) out << fmt::format("constant {:.17g}\n", h.constant());
  for (const auto& t : h.terms()) {
    out << fmt::format("{:.17g} {:.17g}", t.coefficient.real(),
                       t.coefficient.imag());
    for (const auto& f : t.factors) out << ' ' << f.mode << (f.dagger ? "^" : "");
    out << '\n';
  }
}

}  // namespace hqc
