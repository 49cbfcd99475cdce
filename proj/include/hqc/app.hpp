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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hqc/estimator.hpp"
#include "hqc/pauli.hpp"
#include "hqc/spectra.hpp"
#include "hqc/subspace.hpp"

namespace hqc {

/// Everything a solve or scan run depends on. Serialized in full into the
/// run manifest.
struct RunConfig {
  std::string input;
  std::optional<std::string> basis_file;
  std::string out_dir = "out";

  std::string backend = "oracle";
  std::uint64_t shots = 8000;
  std::uint64_t seed = 0;
  std::optional<std::pair<double, double>> noise;  // p01, p10
  bool mitigate = false;
  std::string style = "direct";
  bool full_circuit = false;
  std::uint64_t calibration_shots = 0;
  unsigned threads = 0;

  int particles = -1;
  int order = 2;
  std::optional<std::size_t> ns;
  std::string search = "exhaustive";
  std::size_t sweeps = 200;

  unsigned repeats = 1;
  std::optional<std::size_t> bins;
  std::optional<double> bin_width;
  std::size_t levels = 4;
};

nlohmann::json to_json(const RunConfig& c);

/// Reads a Pauli-sum file, or a fermion file (first keyword `modes`) which is
/// mapped with Jordan-Wigner.
PauliSum load_hamiltonian(const std::string& path);

/// "p01,p10" with both rates in [0, 0.5).
std::pair<double, double> parse_noise(const std::string& text);

/// Backend for an N-qubit Hamiltonian; noise covers the target register and
/// the ancillas of the chosen style.
Backend make_backend(const RunConfig& c, std::size_t num_qubits, std::uint64_t seed);

SubspaceSpec make_subspace_spec(const RunConfig& c);

/// Last decimal number in the file stem, e.g. `lih_R1.60.pauli` -> 1.60.
double parse_bond_length(const std::filesystem::path& file);

struct SolveResult {
  EffectiveHamiltonian heff;
  Spectrum spectrum;
  std::vector<double> std_errors;
  double seconds = 0.0;
};

SolveResult solve_once(const PauliSum& h, const SubspaceBasis& basis, const Backend& backend,
                       const RunConfig& c);

/// Writes the solve bundle into c.out_dir and returns the manifest.
nlohmann::json run_solve(const RunConfig& c);

/// Writes pes.csv into c.out_dir; `backends` are backend names.
nlohmann::json run_scan(const RunConfig& c, const std::vector<std::string>& backends);

/// Command-line entry; returns the process exit code (0 ok, 2 input error,
/// 3 capacity error, 1 anything else).
int run_cli(int argc, char** argv);

}  // namespace hqc
