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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>
#include <unistd.h>

#include "hqc/app.hpp"

namespace hqc {
namespace {

namespace fs = std::filesystem;

const std::string kData = HQC_DATA_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("hqc_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "hqc");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    auto* so = std::cout.rdbuf(out.rdbuf());
    auto* se = std::cerr.rdbuf(err.rdbuf());
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(so);
    std::cerr.rdbuf(se);
    out_ = out.str();
    err_ = err.str();
    return rc;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

  fs::path root_;
  std::string out_, err_;
};

TEST_F(Cli, TransformReportsCounts) {
  EXPECT_EQ(run({"transform", kData + "/h2.fermion", "-o", (root_ / "h.pauli").string()}), 0);
  EXPECT_NE(out_.find("terms: 15"), std::string::npos) << out_;
  EXPECT_NE(out_.find("max_locality: 4"), std::string::npos);
  EXPECT_EQ(slurp(root_ / "h.pauli"), slurp(kData + "/h2.pauli"));
}

TEST_F(Cli, TransformParseErrorIsInputError) {
  write(root_ / "bad.fermion", "modes 2\n1.0 0 0^ 1y\n");
  EXPECT_EQ(run({"transform", (root_ / "bad.fermion").string()}), 2);
  EXPECT_NE(err_.find("line 2"), std::string::npos) << err_;
}

TEST_F(Cli, SolveWritesBundle) {
  const fs::path out = root_ / "out";
  ASSERT_EQ(run({"solve", kData + "/h2.pauli", "--particles", "2", "--out", out.string()}), 0)
      << err_;
  for (const char* f : {"heff.json", "spectrum.csv", "dos.csv", "error.csv", "manifest.json",
                        "timing.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["config"]["shots"], 8000);
  EXPECT_EQ(manifest["subspace"]["size"], 6);
  std::istringstream err(slurp(out / "error.csv"));
  std::string line;
  std::getline(err, line);
  while (std::getline(err, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
    EXPECT_LE(std::stod(cell), 1e-10) << line;
  }
}

TEST_F(Cli, SolveWithBasisFile) {
  write(root_ / "basis.txt", "1100\n0011\n");
  ASSERT_EQ(run({"solve", kData + "/h2.pauli", "--basis", (root_ / "basis.txt").string(),
                 "--out", (root_ / "o").string()}),
            0)
      << err_;
  EXPECT_NE(out_.find("ground_energy: -1.137"), std::string::npos) << out_;
}

TEST_F(Cli, RepeatsAggregate) {
  const fs::path out = root_ / "rep";
  ASSERT_EQ(run({"solve", kData + "/h2.pauli", "--particles", "2", "--backend", "sampled",
                 "--shots", "500", "--repeats", "3", "--out", out.string()}),
            0)
      << err_;
  EXPECT_TRUE(fs::exists(out / "run_002" / "spectrum.csv"));
  const std::string agg = slurp(out / "aggregate.csv");
  EXPECT_EQ(agg.rfind("index,min,max,mean,exact,min_abs_error,max_abs_error\n", 0), 0u);
}

TEST_F(Cli, EnvironmentOverridesDefaults) {
  ::setenv("HQC_SHOTS", "123", 1);
  const int rc = run({"solve", kData + "/h2.pauli", "--particles", "2", "--backend", "sampled",
                      "--out", (root_ / "env").string()});
  ::unsetenv("HQC_SHOTS");
  ASSERT_EQ(rc, 0) << err_;
  const auto manifest = nlohmann::json::parse(slurp(root_ / "env" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["shots"], 123);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", (root_ / "missing.pauli").string(), "--particles", "2"}), 2);
  EXPECT_EQ(run({"solve", kData + "/h2.pauli", "--particles", "2", "--backend", "warp"}), 2);
  EXPECT_EQ(run({"solve", kData + "/h2.pauli", "--particles", "2", "--backend", "noisy"}), 2);
  EXPECT_EQ(run({"solve", kData + "/h2.pauli", "--particles", "2", "--noise", "0.1"}), 2);
  EXPECT_EQ(run({"solve", kData + "/h2.pauli"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  write(root_ / "big.pauli", "1 0 " + std::string(16, 'Z') + "\n");
  EXPECT_EQ(run({"solve", (root_ / "big.pauli").string(), "--particles", "8", "--order", "8",
                 "--out", (root_ / "big").string()}),
            3)
      << err_;
}

TEST_F(Cli, ScanBuildsTable) {
  const fs::path dir = root_ / "pes";
  fs::create_directories(dir);
  write(dir / "h_R0.5.pauli", "-1.0 0 II\n0.2 0 ZI\n0.1 0 XX\n0.1 0 YY\n");
  write(dir / "h_R1.5.pauli", "-0.5 0 II\n0.2 0 ZI\n0.1 0 XX\n0.1 0 YY\n");
  ASSERT_EQ(run({"scan", dir.string(), "--particles", "1", "--order", "1", "--backend",
                 "oracle,exact,sector", "--levels", "2", "--out", (root_ / "scan").string()}),
            0)
      << err_;
  const std::string csv = slurp(root_ / "scan" / "pes.csv");
  EXPECT_EQ(csv.rfind("backend,R,E0,E1\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("\noracle,0.5,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\nsector,1.5,"), std::string::npos) << csv;
}

TEST_F(Cli, ScanErrors) {
  const fs::path empty = root_ / "empty";
  fs::create_directories(empty);
  EXPECT_EQ(run({"scan", empty.string(), "--particles", "1"}), 2);
  const fs::path mixed = root_ / "mixed";
  fs::create_directories(mixed);
  write(mixed / "a_1.0.pauli", "1 0 ZI\n");
  write(mixed / "a_2.0.pauli", "1 0 ZII\n");
  EXPECT_EQ(run({"scan", mixed.string(), "--particles", "1"}), 2);
  EXPECT_NE(err_.find("qubits"), std::string::npos) << err_;
}

TEST_F(Cli, CalibratePrintsMatrices) {
  ASSERT_EQ(run({"calibrate", "--qubits", "2", "--noise", "0.02,0.05", "--shots", "4000"}), 0);
  const auto j = nlohmann::json::parse(out_);
  EXPECT_EQ(j["per_qubit"].size(), 2u);
  EXPECT_EQ(j["shots"], 4000);
}

TEST_F(Cli, SubspaceWritesBitstrings) {
  ASSERT_EQ(run({"subspace", kData + "/h2.pauli", "--particles", "2", "--order", "1"}), 0);
  EXPECT_EQ(out_.substr(0, 5), "1100\n");
  EXPECT_NE(err_.find("size: 5"), std::string::npos) << err_;
}

}  // namespace
}  // namespace hqc
