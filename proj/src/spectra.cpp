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

#include "hqc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <tuple>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "hqc/subspace.hpp"

namespace hqc {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

std::pair<std::vector<double>, CMatrix> eigen_eigensystem(const CMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = h(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<double> values(h.rows());
  CMatrix vectors(h.rows(), h.rows());
  for (Eigen::Index k = 0; k < n; ++k) {
    values[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (Eigen::Index i = 0; i < n; ++i)
      vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
          solver.eigenvectors()(i, k);
  }
  return {values, vectors};
}

void check_residuals(const CMatrix& h, const std::vector<double>& values,
                     const CMatrix& vectors) {
  const std::size_t n = h.rows();
  const double bound = kResidualTolerance * std::max(h.frobenius_norm(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx hv = 0.0;
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * vectors(j, k);
      r2 += std::norm(hv - values[k] * vectors(i, k));
    }
    if (std::sqrt(r2) > bound)
      throw std::runtime_error(
          fmt::format("eigenpair {} residual {:.3g} exceeds {:.3g}", k, std::sqrt(r2), bound));
  }
}

}  // namespace

std::pair<std::vector<double>, CMatrix> jacobi_eigensystem(const CMatrix& h) {
  if (!h.square()) throw std::invalid_argument("matrix is not square");
  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(h.frobenius_norm(), 1e-300);
  const double target = 1e-30 * scale * scale;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b <= 1e-300) continue;
        const cplx phase = std::conj(a(p, q)) / b;  // e^{-i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on (p, q).
        const cplx gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  std::vector<double> values(n);
  CMatrix sorted(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) sorted(i, k) = v(i, order[k]);
  }
  return {values, sorted};
}

Spectrum eigendecompose(const CMatrix& h, const EigenOptions& options) {
  if (!h.square()) throw InputError("matrix is not square");
  if (h.rows() == 0) throw InputError("empty matrix");
  if (h.rows() > kMaxDenseDimension)
    throw CapacityError(fmt::format("dense dimension {} exceeds the limit {}", h.rows(),
                                    kMaxDenseDimension));
  const double defect = h.hermitian_defect();
  if (defect > kHermitianRejectTolerance)
    throw InputError(fmt::format("matrix is not Hermitian (defect {:.3g})", defect));

  bool use_jacobi = options.method == EigenMethod::Jacobi;
  if (options.method == EigenMethod::Auto) use_jacobi = h.rows() <= kJacobiMaxDimension;
  auto [values, vectors] = use_jacobi ? jacobi_eigensystem(h) : eigen_eigensystem(h);
  check_residuals(h, values, vectors);

  Spectrum out;
  out.constant_shift = options.constant_shift;
  out.eigenvalues = std::move(values);
  for (auto& e : out.eigenvalues) e += options.constant_shift;
  if (options.vectors) out.eigenvectors = std::move(vectors);
  return out;
}

Spectrum eigendecompose(const EffectiveHamiltonian& heff, const EigenOptions& options) {
  return eigendecompose(heff.matrix, options);
}

std::vector<double> eigenvalue_std_errors(const EffectiveHamiltonian& heff,
                                          const Spectrum& spectrum) {
  if (!spectrum.eigenvectors)
    throw std::invalid_argument("eigenvalue standard errors need eigenvectors");
  const auto& v = *spectrum.eigenvectors;
  const std::size_t n = heff.size();
  std::vector<double> out(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = heff.entries[i * n + i];
      var += std::pow(std::norm(v(i, k)), 2) * d.std_error_re * d.std_error_re;
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& e = heff.entries[i * n + j];
        const cplx w = std::conj(v(i, k)) * v(j, k);
        var += 4.0 * (w.real() * w.real() * e.std_error_re * e.std_error_re +
                      w.imag() * w.imag() * e.std_error_im * e.std_error_im);
      }
    }
    out[k] = std::sqrt(var);
  }
  return out;
}

CMatrix sector_matrix(const PauliSum& h, int particle_count, std::size_t capacity) {
  const std::size_t n = h.num_qubits();
  if (particle_count < 0 || static_cast<std::size_t>(particle_count) > n)
    throw InputError(fmt::format("particle count {} outside [0, {}]", particle_count, n));
  const std::uint64_t dim = binomial(n, static_cast<std::uint64_t>(particle_count));
  if (dim > capacity)
    throw CapacityError(fmt::format(
        "sector C({}, {}) = {} exceeds the dense capacity {}", n, particle_count, dim, capacity));
  const auto states = sector_states(n, particle_count);
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].bits(), i);

  CMatrix m(states.size(), states.size());
  for (std::size_t col = 0; col < states.size(); ++col) {
    for (const auto& t : h.terms()) {
      const auto [phase, image] = apply_string(t.string, states[col]);
      // Single strings may leave the sector; those amplitudes cancel in a
      // number-conserving sum and are outside the projection anyway.
      const auto it = index.find(image.bits());
      if (it != index.end()) m(it->second, col) += t.weight * phase.value();
    }
  }
  return m;
}

Spectrum exact_sector_spectrum(const PauliSum& h, int particle_count,
                               const EigenOptions& options, std::size_t capacity) {
  return eigendecompose(sector_matrix(h, particle_count, capacity), options);
}

std::size_t DosHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

DosHistogram dos(const std::vector<double>& eigenvalues, const DosOptions& options) {
  if (eigenvalues.empty()) throw InputError("density of states of an empty spectrum");
  if (options.bin_width && options.bin_count)
    throw InputError("give a bin width or a bin count, not both");
  if (options.bin_count && *options.bin_count == 0) throw InputError("zero bins");
  if (options.bin_width && !(*options.bin_width > 0.0))
    throw InputError("bin width must be positive");

  const auto [lo_it, hi_it] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  double lo = *lo_it, hi = *hi_it;
  if (options.range) std::tie(lo, hi) = *options.range;
  if (hi < lo) throw InputError("histogram range is inverted");

  std::size_t bins = 1;
  double width = hi - lo;
  if (options.bin_width) {
    width = *options.bin_width;
    bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
  } else if (options.bin_count && hi > lo) {
    bins = *options.bin_count;
    width = (hi - lo) / static_cast<double>(bins);
  }

  DosHistogram out;
  out.counts.assign(bins, 0);
  out.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) out.bin_edges[b] = lo + static_cast<double>(b) * width;
  if (!options.bin_width) out.bin_edges.back() = hi;
  const double top = out.bin_edges.back();
  for (double e : eigenvalues) {
    if (e < lo || e > top) continue;
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((e - lo) / width) : 0;
    b = std::min(b, bins - 1);
    ++out.counts[b];
  }
  return out;
}

DosHistogram dos(const Spectrum& spectrum, const DosOptions& options) {
  return dos(spectrum.eigenvalues, options);
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,eigenvalue\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k)
    out << fmt::format("{},{:.17g}\n", k, spectrum.eigenvalues[k]);
}

void write_dos_csv(std::ostream& out, const DosHistogram& hist) {
  out << "bin_left,bin_right,count\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b)
    out << fmt::format("{:.17g},{:.17g},{}\n", hist.bin_edges[b], hist.bin_edges[b + 1],
                       hist.counts[b]);
}

void write_error_csv(std::ostream& out, const Spectrum& estimate, const Spectrum& exact,
                     const std::vector<double>& std_errors) {
  out << "index,estimate,exact,abs_error,std_error,chemical_accuracy,within\n";
  const std::size_t n = std::min(estimate.size(), exact.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double err = std::abs(estimate.eigenvalues[k] - exact.eigenvalues[k]);
    const double se = k < std_errors.size() ? std_errors[k] : 0.0;
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", k,
                       estimate.eigenvalues[k], exact.eigenvalues[k], err, se,
                       kChemicalAccuracy, err <= kChemicalAccuracy ? 1 : 0);
  }
}

}  // namespace hqc
