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

#include "hqc/app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hqc/fermion.hpp"
#include "hqc/random.hpp"

namespace hqc {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
    out << content;
    if (!out) throw std::runtime_error(fmt::format("write failed: {}", path.string()));
  }
  fs::rename(tmp, path);
}

template <typename F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&] {
    try {
      for (std::size_t k = next++; k < count; k = next++) body(k);
    } catch (...) {
      std::lock_guard lock(m);
      if (!failure) failure = std::current_exception();
      next = count;
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
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DosOptions dos_options(const RunConfig& c) {
  DosOptions o;
  o.bin_width = c.bin_width;
  o.bin_count = c.bins;
  if (!o.bin_width && !o.bin_count) o.bin_count = 20;
  return o;
}

bool sector_fits(std::size_t qubits, int particles) {
  return binomial(qubits, static_cast<std::uint64_t>(particles)) <= kMaxDenseDimension;
}

SubspaceBasis make_basis(const PauliSum& h, const RunConfig& c) {
  if (c.basis_file) {
    auto states = read_bitstrings_file(*c.basis_file);
    if (c.particles >= 0)
      for (const auto& s : states)
        if (s.particle_count() != c.particles)
          throw InputError(fmt::format("basis state {} has {} particles, expected {}",
                                       s.str(), s.particle_count(), c.particles));
    return make_subspace(h, std::move(states));
  }
  return build_subspace(h, make_subspace_spec(c));
}

int particle_count(const RunConfig& c, const SubspaceBasis& basis) {
  return c.particles >= 0 ? c.particles : basis.reference.particle_count();
}

nlohmann::json hamiltonian_info(const RunConfig& c, const PauliSum& h) {
  return {{"path", c.input},
          {"qubits", h.num_qubits()},
          {"terms", h.size()},
          {"max_locality", h.max_locality()}};
}

nlohmann::json counts_json(const RunCounts& k) {
  return {{"diagonal_circuits", k.diagonal_circuits},
          {"offdiagonal_circuits", k.offdiagonal_circuits},
          {"executions", k.executions},
          {"total_shots", k.total_shots}};
}

void add_backend_options(CLI::App* sub, RunConfig& c, std::string& noise_text) {
  sub->add_option("--backend", c.backend, "oracle, exact, sampled or noisy")
      ->envname("HQC_BACKEND");
  sub->add_option("--shots", c.shots, "shots per circuit and measured string")
      ->envname("HQC_SHOTS");
  sub->add_option("--seed", c.seed, "master seed")->envname("HQC_SEED");
  sub->add_option("--noise", noise_text, "readout flip rates p01,p10")
      ->envname("HQC_NOISE");
  sub->add_flag("--mitigate", c.mitigate, "calibration-matrix mitigation")
      ->envname("HQC_MITIGATE");
  sub->add_option("--style", c.style, "direct or indirect")->envname("HQC_STYLE");
  sub->add_flag("--full-circuit", c.full_circuit,
                "measure diagonal terms and elements on circuits too")
      ->envname("HQC_FULL_CIRCUIT");
  sub->add_option("--calibration-shots", c.calibration_shots)
      ->envname("HQC_CALIBRATION_SHOTS");
  sub->add_option("--threads", c.threads)->envname("HQC_THREADS");
}

void add_subspace_options(CLI::App* sub, RunConfig& c, std::size_t& ns) {
  sub->add_option("--particles", c.particles, "electron count N_F")
      ->envname("HQC_PARTICLES");
  sub->add_option("--order", c.order, "maximum excitation order")->envname("HQC_ORDER");
  sub->add_option("--ns", ns, "subspace size N_s")->envname("HQC_NS");
  sub->add_option("--search", c.search, "reference search: exhaustive or anneal")
      ->envname("HQC_SEARCH");
  sub->add_option("--sweeps", c.sweeps, "annealing sweeps")->envname("HQC_SWEEPS");
}

void finish_config(RunConfig& c, const std::string& noise_text, std::size_t ns) {
  if (!noise_text.empty()) c.noise = parse_noise(noise_text);
  if (ns > 0) c.ns = ns;
  parse_backend_kind(c.backend);
  parse_measurement_style(c.style);
  if (c.search != "exhaustive" && c.search != "anneal")
    throw InputError(fmt::format("unknown search '{}'", c.search));
  if (c.shots == 0) throw InputError("shots must be positive");
  if (c.repeats == 0) throw InputError("repeats must be positive");
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["input"] = c.input;
  j["basis_file"] = c.basis_file ? nlohmann::json(*c.basis_file) : nlohmann::json(nullptr);
  j["backend"] = c.backend;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["noise"] = c.noise ? nlohmann::json{c.noise->first, c.noise->second}
                       : nlohmann::json(nullptr);
  j["mitigate"] = c.mitigate;
  j["style"] = c.style;
  j["full_circuit"] = c.full_circuit;
  j["calibration_shots"] = c.calibration_shots;
  j["particles"] = c.particles;
  j["order"] = c.order;
  j["ns"] = c.ns ? nlohmann::json(*c.ns) : nlohmann::json(nullptr);
  j["search"] = c.search;
  j["sweeps"] = c.sweeps;
  j["repeats"] = c.repeats;
  j["bins"] = c.bins ? nlohmann::json(*c.bins) : nlohmann::json(nullptr);
  j["bin_width"] = c.bin_width ? nlohmann::json(*c.bin_width) : nlohmann::json(nullptr);
  j["levels"] = c.levels;
  return j;
}

PauliSum load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open {}", path));
  std::string line, first;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!(ls >> first) || first[0] == '#') {
      first.clear();
      continue;
    }
    break;
  }
  if (first == "modes") return jw_transform(read_fermion_file(path));
  return read_pauli_sum_file(path);
}

std::pair<double, double> parse_noise(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw InputError(fmt::format("noise '{}' is not of the form p01,p10", text));
  double p01 = 0.0, p10 = 0.0;
  try {
    std::size_t used = 0;
    p01 = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(comma + 1);
    p10 = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw InputError(fmt::format("noise '{}' is not of the form p01,p10", text));
  }
  if (p01 < 0.0 || p01 >= 0.5 || p10 < 0.0 || p10 >= 0.5)
    throw InputError("noise rates must lie in [0, 0.5)");
  return {p01, p10};
}

Backend make_backend(const RunConfig& c, std::size_t num_qubits, std::uint64_t seed) {
  Backend b;
  b.kind = parse_backend_kind(c.backend);
  b.style = parse_measurement_style(c.style);
  b.shots = c.shots;
  b.seed = seed;
  b.diagonals_on_circuit = c.full_circuit;
  b.calibration_shots = c.calibration_shots;
  b.threads = c.threads;
  if (b.kind == BackendKind::SampledNoisy && !c.noise)
    throw InputError("the noisy backend needs --noise p01,p10");
  const bool takes_noise =
      b.kind == BackendKind::SampledNoisy || b.kind == BackendKind::ExactCircuit;
  if (c.noise && takes_noise) {
    const std::size_t ancillas = b.style == MeasurementStyle::Indirect ? 2 : 1;
    b.noise = ReadoutNoise::uniform(num_qubits + ancillas, c.noise->first, c.noise->second);
    b.mitigate = c.mitigate;
  } else if (c.noise) {
    throw InputError(fmt::format("--noise does not apply to the {} backend", c.backend));
  } else if (c.mitigate) {
    throw InputError("--mitigate needs --noise");
  }
  return b;
}

SubspaceSpec make_subspace_spec(const RunConfig& c) {
  if (c.particles < 0) throw InputError("--particles is required without a basis file");
  SubspaceSpec s;
  s.particle_count = c.particles;
  s.max_excitation_order = c.order;
  s.target_size = c.ns;
  if (c.search == "anneal") {
    MonteCarloSearch mc;
    mc.sweeps = c.sweeps;
    mc.seed = derive_seed(c.seed, {static_cast<std::uint64_t>(Stream::kReferenceSearch)});
    s.strategy = mc;
  }
  return s;
}

double parse_bond_length(const fs::path& file) {
  static const std::regex number(R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)");
  const std::string stem = file.stem().string();
  std::string last;
  for (auto it = std::sregex_iterator(stem.begin(), stem.end(), number);
       it != std::sregex_iterator(); ++it)
    last = it->str();
  if (last.empty())
    throw InputError(fmt::format("no bond length in file name {}", file.filename().string()));
  return std::stod(last);
}

SolveResult solve_once(const PauliSum& h, const SubspaceBasis& basis, const Backend& backend,
                       const RunConfig& c) {
  (void)c;
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  r.heff = Estimator(h, backend).build(basis);
  EigenOptions eo;
  eo.vectors = true;
  r.spectrum = eigendecompose(r.heff, eo);
  if (backend.uses_shots()) r.std_errors = eigenvalue_std_errors(r.heff, r.spectrum);
  r.seconds = seconds_since(t0);
  return r;
}

nlohmann::json run_solve(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const PauliSum h = load_hamiltonian(c.input);
  const SubspaceBasis basis = make_basis(h, c);
  if (basis.size() > kMaxDenseDimension)
    throw CapacityError(fmt::format("subspace of {} states exceeds the dense capacity {}",
                                    basis.size(), kMaxDenseDimension));
  const int nf = particle_count(c, basis);
  const double setup_seconds = seconds_since(t0);

  std::optional<Spectrum> exact;
  double exact_seconds = 0.0;
  if (sector_fits(h.num_qubits(), nf)) {
    const auto te = std::chrono::steady_clock::now();
    exact = exact_sector_spectrum(h, nf);
    exact_seconds = seconds_since(te);
  }

  std::vector<std::uint64_t> seeds(c.repeats, c.seed);
  if (c.repeats > 1)
    for (unsigned r = 0; r < c.repeats; ++r)
      seeds[r] = derive_seed(c.seed, {static_cast<std::uint64_t>(Stream::kRepeat), r});

  std::vector<SolveResult> results(c.repeats);
  parallel_for(c.repeats, c.repeats > 1 ? c.threads : 1U, [&](std::size_t r) {
    results[r] = solve_once(h, basis, make_backend(c, h.num_qubits(), seeds[r]), c);
  });

  const fs::path out = c.out_dir;
  fs::create_directories(out);
  const DosOptions dopt = dos_options(c);
  nlohmann::json runs = nlohmann::json::array();
  for (unsigned r = 0; r < c.repeats; ++r) {
    const auto& res = results[r];
    fs::path dir = out;
    if (c.repeats > 1) {
      dir = out / fmt::format("run_{:03}", r);
      fs::create_directories(dir);
    }
    write_atomic(dir / "heff.json", render([&](std::ostream& os) { write_heff_json(os, res.heff); }));
    write_atomic(dir / "spectrum.csv",
                 render([&](std::ostream& os) { write_spectrum_csv(os, res.spectrum); }));
    write_atomic(dir / "dos.csv",
                 render([&](std::ostream& os) { write_dos_csv(os, dos(res.spectrum, dopt)); }));
    if (exact)
      write_atomic(dir / "error.csv", render([&](std::ostream& os) {
                     write_error_csv(os, res.spectrum, *exact, res.std_errors);
                   }));
    nlohmann::json run;
    run["seed"] = seeds[r];
    run["backend"] = to_json(res.heff.backend);
    run["counts"] = counts_json(res.heff.counts);
    run["ground_energy"] = res.spectrum.ground();
    if (!res.std_errors.empty()) run["ground_std_error"] = res.std_errors.front();
    if (exact) run["ground_error"] = res.spectrum.ground() - exact->ground();
    if (res.heff.calibration) run["calibration_seed"] = res.heff.calibration->seed;
    if (c.repeats > 1) run["directory"] = dir.filename().string();
    runs.push_back(run);
  }

  if (c.repeats > 1) {
    std::string agg = exact ? "index,min,max,mean,exact,min_abs_error,max_abs_error\n"
                            : "index,min,max,mean\n";
    const std::size_t levels = results.front().spectrum.size();
    for (std::size_t k = 0; k < levels; ++k) {
      double lo = results[0].spectrum.eigenvalues[k], hi = lo, sum = 0.0;
      double elo = 0.0, ehi = 0.0;
      for (unsigned r = 0; r < c.repeats; ++r) {
        const double e = results[r].spectrum.eigenvalues[k];
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        sum += e;
        if (exact && k < exact->size()) {
          const double err = std::abs(e - exact->eigenvalues[k]);
          elo = r == 0 ? err : std::min(elo, err);
          ehi = r == 0 ? err : std::max(ehi, err);
        }
      }
      agg += fmt::format("{},{:.17g},{:.17g},{:.17g}", k, lo, hi, sum / c.repeats);
      if (exact && k < exact->size())
        agg += fmt::format(",{:.17g},{:.17g},{:.17g}", exact->eigenvalues[k], elo, ehi);
      else if (exact)
        agg += ",,,";
      agg += '\n';
    }
    write_atomic(out / "aggregate.csv", agg);
  }

  nlohmann::json manifest;
  manifest["tool"] = "hqc";
  manifest["version"] = kVersion;
  manifest["command"] = "solve";
  manifest["config"] = to_json(c);
  manifest["hamiltonian"] = hamiltonian_info(c, h);
  nlohmann::json sub;
  sub["reference"] = basis.reference.str();
  sub["size"] = basis.size();
  sub["particles"] = nf;
  sub["warnings"] = basis.warnings;
  if (c.search == "anneal")
    sub["search_seed"] =
        derive_seed(c.seed, {static_cast<std::uint64_t>(Stream::kReferenceSearch)});
  manifest["subspace"] = sub;
  manifest["expected_counts"] =
      counts_json(Estimator(h, make_backend(c, h.num_qubits(), c.seed))
                      .expected_counts(basis.size()));
  manifest["exact_sector"] =
      exact ? nlohmann::json{{"dimension", exact->size()}, {"ground_energy", exact->ground()}}
            : nlohmann::json{{"skipped", "sector exceeds dense capacity"}};
  manifest["chemical_accuracy"] = kChemicalAccuracy;
  manifest["runs"] = runs;
  write_atomic(out / "manifest.json", manifest.dump(2) + "\n");

  nlohmann::json timing;
  timing["setup_seconds"] = setup_seconds;
  timing["exact_sector_seconds"] = exact_seconds;
  auto per_run = nlohmann::json::array();
  for (const auto& r : results) per_run.push_back(r.seconds);
  timing["run_seconds"] = per_run;
  timing["total_seconds"] = seconds_since(t0);
  write_atomic(out / "timing.json", timing.dump(2) + "\n");
  return manifest;
}

nlohmann::json run_scan(const RunConfig& c, const std::vector<std::string>& backends) {
  const fs::path dir = c.input;
  if (!fs::is_directory(dir)) throw InputError(fmt::format("{} is not a directory", c.input));
  std::vector<std::pair<double, fs::path>> points;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) points.emplace_back(parse_bond_length(entry.path()), entry.path());
  if (points.empty()) throw InputError(fmt::format("no Hamiltonian files in {}", c.input));
  std::sort(points.begin(), points.end());
  if (backends.empty()) throw InputError("no backends given");
  for (const auto& b : backends)
    if (b != "sector") parse_backend_kind(b);

  std::vector<PauliSum> hams(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    hams[i] = load_hamiltonian(points[i].second.string());
    if (hams[i].num_qubits() != hams[0].num_qubits())
      throw InputError(fmt::format("{} has {} qubits, {} has {}",
                                   points[i].second.filename().string(), hams[i].num_qubits(),
                                   points[0].second.filename().string(), hams[0].num_qubits()));
  }

  // rows[point][backend] = eigenvalues
  std::vector<std::vector<std::vector<double>>> rows(
      points.size(), std::vector<std::vector<double>>(backends.size()));
  std::vector<std::size_t> sizes(points.size());
  parallel_for(points.size(), c.threads, [&](std::size_t i) {
    const SubspaceBasis basis = make_basis(hams[i], c);
    sizes[i] = basis.size();
    const int nf = particle_count(c, basis);
    for (std::size_t b = 0; b < backends.size(); ++b) {
      if (backends[b] == "sector") {
        if (!sector_fits(hams[i].num_qubits(), nf))
          throw CapacityError("sector exceeds dense capacity");
        rows[i][b] = exact_sector_spectrum(hams[i], nf).eigenvalues;
        continue;
      }
      RunConfig rc = c;
      rc.backend = backends[b];
      rc.threads = 1;
      const std::uint64_t seed = derive_seed(c.seed, {i, b});
      const Backend backend = make_backend(rc, hams[i].num_qubits(), seed);
      rows[i][b] = eigendecompose(Estimator(hams[i], backend).build(basis)).eigenvalues;
    }
  });

  std::string csv = "backend,R";
  for (std::size_t k = 0; k < c.levels; ++k) csv += fmt::format(",E{}", k);
  csv += '\n';
  for (std::size_t b = 0; b < backends.size(); ++b) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      csv += fmt::format("{},{:.17g}", backends[b], points[i].first);
      for (std::size_t k = 0; k < c.levels; ++k)
        csv += k < rows[i][b].size() ? fmt::format(",{:.17g}", rows[i][b][k]) : ",";
      csv += '\n';
    }
  }
  const fs::path out = c.out_dir;
  fs::create_directories(out);
  write_atomic(out / "pes.csv", csv);

  nlohmann::json manifest;
  manifest["tool"] = "hqc";
  manifest["version"] = kVersion;
  manifest["command"] = "scan";
  manifest["config"] = to_json(c);
  manifest["backends"] = backends;
  auto pts = nlohmann::json::array();
  for (std::size_t i = 0; i < points.size(); ++i)
    pts.push_back({{"R", points[i].first},
                   {"file", points[i].second.filename().string()},
                   {"terms", hams[i].size()},
                   {"subspace_size", sizes[i]}});
  manifest["points"] = pts;
  write_atomic(out / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Subspace effective-Hamiltonian solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  std::string noise_text;
  std::size_t ns = 0;
  std::string output;
  std::string scan_backends = "oracle";
  std::size_t cal_qubits = 0;

  auto* transform = app.add_subcommand("transform", "fermion file to Pauli sum");
  transform->add_option("input", cfg.input, "fermion Hamiltonian file")->required();
  transform->add_option("-o,--output", output, "Pauli output file (default stdout)");

  auto* subspace = app.add_subcommand("subspace", "select the excitation subspace");
  subspace->add_option("input", cfg.input, "Hamiltonian file")->required();
  subspace->add_option("-o,--output", output, "bitstring output file (default stdout)");
  add_subspace_options(subspace, cfg, ns);
  subspace->add_option("--seed", cfg.seed, "master seed")->envname("HQC_SEED");

  auto* solve = app.add_subcommand("solve", "build and diagonalize the effective Hamiltonian");
  solve->add_option("input", cfg.input, "Hamiltonian file")->required();
  solve->add_option("--basis", cfg.basis_file, "explicit basis bitstrings");
  solve->add_option("--out", cfg.out_dir, "output directory")->envname("HQC_OUT");
  solve->add_option("--repeats", cfg.repeats, "independent repeat runs")->envname("HQC_REPEATS");
  solve->add_option("--bins", cfg.bins, "DOS bin count")->envname("HQC_BINS");
  solve->add_option("--bin-width", cfg.bin_width, "DOS bin width")->envname("HQC_BIN_WIDTH");
  add_backend_options(solve, cfg, noise_text);
  add_subspace_options(solve, cfg, ns);

  auto* scan = app.add_subcommand("scan", "potential-energy scan over a directory");
  scan->add_option("input", cfg.input, "directory of per-R Hamiltonian files")->required();
  scan->add_option("--out", cfg.out_dir, "output directory")->envname("HQC_OUT");
  scan->add_option("--levels", cfg.levels, "eigenvalues per row")->envname("HQC_LEVELS");
  add_backend_options(scan, cfg, noise_text);
  scan->get_option("--backend")->description(
      "comma-separated backends; 'sector' adds exact sector diagonalization");
  scan->get_option("--backend")->envname("HQC_BACKEND");
  add_subspace_options(scan, cfg, ns);

  auto* calibrate = app.add_subcommand("calibrate", "estimate readout confusion matrices");
  calibrate->add_option("--qubits", cal_qubits, "register size")->required();
  calibrate->add_option("--noise", noise_text, "readout flip rates p01,p10")
      ->envname("HQC_NOISE")
      ->required();
  calibrate->add_option("--shots", cfg.shots)->envname("HQC_SHOTS");
  calibrate->add_option("--seed", cfg.seed)->envname("HQC_SEED");
  calibrate->add_option("-o,--output", output, "JSON output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (scan->parsed()) {
    scan_backends = cfg.backend;
    cfg.backend = "oracle";
  }

  try {
    finish_config(cfg, noise_text, ns);
    if (transform->parsed()) {
      const PauliSum h = jw_transform(read_fermion_file(cfg.input));
      const std::string text = render([&](std::ostream& os) { write_pauli_sum(os, h); });
      std::ostream& info = output.empty() ? std::cerr : std::cout;
      if (output.empty())
        std::cout << text;
      else
        write_atomic(output, text);
      info << fmt::format("terms: {}\nmax_locality: {}\n", h.size(), h.max_locality());
    } else if (subspace->parsed()) {
      const PauliSum h = load_hamiltonian(cfg.input);
      const SubspaceBasis basis = build_subspace(h, make_subspace_spec(cfg));
      const std::string text =
          render([&](std::ostream& os) { write_bitstrings(os, basis.states); });
      if (output.empty())
        std::cout << text;
      else
        write_atomic(output, text);
      std::cerr << fmt::format("reference: {}\nsize: {}\n", basis.reference.str(), basis.size());
      for (const auto& w : basis.warnings) std::cerr << "warning: " << w << '\n';
    } else if (solve->parsed()) {
      const auto m = run_solve(cfg);
      const auto& run0 = m["runs"][0];
      std::cout << fmt::format("subspace: {}\nground_energy: {:.12f}\n",
                               m["subspace"]["size"].get<std::size_t>(),
                               run0["ground_energy"].get<double>());
      if (run0.contains("ground_error"))
        std::cout << fmt::format("ground_error: {:.3e}\n", run0["ground_error"].get<double>());
      for (const auto& w : m["subspace"]["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    } else if (scan->parsed()) {
      std::vector<std::string> backends;
      std::stringstream ss(scan_backends);
      for (std::string b; std::getline(ss, b, ',');)
        if (!b.empty()) backends.push_back(b);
      const auto m = run_scan(cfg, backends);
      std::cout << fmt::format("points: {}\n", m["points"].size());
    } else if (calibrate->parsed()) {
      if (cal_qubits == 0) throw InputError("--qubits must be positive");
      const ReadoutNoise noise =
          ReadoutNoise::uniform(cal_qubits, cfg.noise->first, cfg.noise->second);
      const auto cal = build_calibration(noise, cfg.shots, cfg.seed);
      const std::string text = to_json(cal).dump(2) + "\n";
      if (output.empty())
        std::cout << text;
      else
        write_atomic(output, text);
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hqc
