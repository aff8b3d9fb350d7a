// Copyright 2026 The pmmwm Authors
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

#include "pmmwm/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace pmmwm::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("pmmwm_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::vector<ManifestEntry> generate(Family f, std::size_t n, std::size_t replicates,
                                      const fs::path& sub = "gen") {
    GenerateOptions opt;
    opt.families = {f};
    opt.sizes = {n};
    opt.replicates = replicates;
    opt.seed = 1;
    opt.out_dir = dir_ / sub;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_generate(opt, out, err), kExitOk) << err.str();
    return read_manifest(opt.out_dir / "manifest.tsv");
  }

  nlohmann::json solve(const fs::path& instance, Variant v, std::size_t patience = 20,
                       std::optional<fs::path> solution = std::nullopt) {
    SolveOptions opt;
    opt.instance = instance;
    opt.variant = v;
    opt.patience = patience;
    opt.solution_out = solution;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_solve(opt, out, err), kExitOk) << err.str();
    return nlohmann::json::parse(out.str());
  }

  std::pair<int, std::string> verify(const fs::path& instance, const fs::path& solution) {
    std::ostringstream out, err;
    const int code = cmd_verify({instance, solution}, out, err);
    return {code, out.str() + err.str()};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateWritesEveryGridCellPerReplicate) {
  const auto entries = generate(Family::kRand, 100, 2);
  EXPECT_EQ(entries.size(), expand_grid(100).size() * 2);
  std::set<std::string> names;
  for (const auto& e : entries) {
    EXPECT_TRUE(fs::exists(e.path)) << e.path;
    names.insert(e.path.filename().string());
    const auto inst = read_instance(e.path);
    EXPECT_EQ(inst.m, e.m);
    EXPECT_EQ(inst.ubar, e.ubar);
  }
  EXPECT_EQ(names.size(), entries.size());
}

TEST_F(CliTest, GenerateIsByteDeterministic) {
  const auto a = generate(Family::kSparse30, 40, 2, "a");
  const auto b = generate(Family::kSparse30, 40, 2, "b");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].path.filename(), b[i].path.filename());
    EXPECT_EQ(slurp(a[i].path), slurp(b[i].path));
  }
  EXPECT_EQ(slurp(dir_ / "a" / "manifest.tsv"), slurp(dir_ / "b" / "manifest.tsv"));
}

TEST_F(CliTest, GenerateBpsWeightsDistinct) {
  for (const auto& e : generate(Family::kBps80, 10, 1)) {
    const auto g = read_instance(e.path).graph;
    std::set<Weight> w;
    for (const auto& edge : g.edges()) w.insert(edge.weight);
    EXPECT_EQ(w.size(), 100u);
  }
}

TEST_F(CliTest, GenerateReportsGridExhausted) {
  GenerateOptions opt;
  opt.families = {Family::kBps70};
  opt.sizes = {1000};
  opt.out_dir = dir_;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_generate(opt, out, err), kExitInternal);
  EXPECT_NE(err.str().find("distinct weights"), std::string::npos);
}

TEST_F(CliTest, SolveVariantsAgreeAndSolutionsVerify) {
  for (Family f : {Family::kBps70, Family::kRand, Family::kSparse20}) {
    for (const auto& e : generate(f, 30, 1, family_name(f))) {
      const auto sol_ls = dir_ / (e.path.stem().string() + ".ls.sol");
      const auto sol_kmm = dir_ / (e.path.stem().string() + ".kmm.sol");
      const auto ls = solve(e.path, Variant::kMpLs, 20, sol_ls);
      const auto kmm = solve(e.path, Variant::kMpKmM, 20, sol_kmm);
      EXPECT_EQ(ls["objective"], kmm["objective"]) << e.path;
      EXPECT_EQ(ls["variant"], "MP_LS");
      EXPECT_EQ(kmm["variant"], "MP_KM-M");
      EXPECT_EQ(verify(e.path, sol_ls).first, kExitOk);
      const auto [code, text] = verify(e.path, sol_kmm);
      EXPECT_EQ(code, kExitOk);
      EXPECT_EQ(text, "ok objective=" + kmm["objective"].get<std::string>() + "\n");
    }
  }
}

TEST_F(CliTest, SolveSummaryShape) {
  const auto e = generate(Family::kRand, 20, 1).front();
  const auto j = solve(e.path, Variant::kMpKmM, 1);
  EXPECT_LE(j["iterations"].get<int>(), 2 + 20);
  EXPECT_GE(j["iterations"].get<int>(), 2);
  EXPECT_TRUE(j["objective"].is_string());
  const std::string obj = j["objective"];
  EXPECT_EQ(obj.size() - obj.find('.'), 4u);
  EXPECT_TRUE(j["stage_ns"].contains("matching"));
  EXPECT_TRUE(j["stage_ns"].contains("partitioning"));
  EXPECT_TRUE(j["stage_ns"].contains("penalization"));
  const auto sum = j["stage_ns"]["matching"].get<std::int64_t>() +
                   j["stage_ns"]["partitioning"].get<std::int64_t>() +
                   j["stage_ns"]["penalization"].get<std::int64_t>();
  EXPECT_LE(sum, j["total_ns"].get<std::int64_t>());
}

TEST_F(CliTest, PatienceOneOnNonImprovingInstance) {
  // Every vertex has one edge, so penalisation cannot change anything.
  std::ofstream(dir_ / "fixed.pmm") << "3 3 2 2 3\n1 1 5\n2 2 3\n3 3 1\n";
  const auto j = solve(dir_ / "fixed.pmm", Variant::kMpKmM, 1);
  EXPECT_EQ(j["iterations"], 2);
  EXPECT_EQ(j["objective"], "5.000");  // {5} and {3, 1}
}

TEST_F(CliTest, VerifyRejectsTamperedSolutions) {
  std::ofstream(dir_ / "g.pmm") << "4 4 2 2 6\n1 1 1\n1 2 2\n2 2 3\n3 3 4\n4 4 5\n4 1 1\n";
  std::ofstream(dir_ / "good.sol") << "7.000\n1 2 3 4\n1 2 2 1\n";
  std::ofstream(dir_ / "objective.sol") << "6.000\n1 2 3 4\n1 2 2 1\n";
  std::ofstream(dir_ / "oversize.sol") << "10.000\n1 2 3 4\n1 1 1 2\n";
  std::ofstream(dir_ / "unmatched.sol") << "7.000\n1 0 3 4\n1 2 2 1\n";
  std::ofstream(dir_ / "garbage.sol") << "seven\n";
  EXPECT_EQ(verify(dir_ / "g.pmm", dir_ / "good.sol"), std::make_pair(0, std::string("ok objective=7.000\n")));
  auto [code, text] = verify(dir_ / "g.pmm", dir_ / "objective.sol");
  EXPECT_EQ(code, kExitVerifyFailed);
  EXPECT_EQ(text.rfind("objective-mismatch", 0), 0u) << text;
  std::tie(code, text) = verify(dir_ / "g.pmm", dir_ / "oversize.sol");
  EXPECT_EQ(code, kExitVerifyFailed);
  EXPECT_EQ(text.rfind("constraint-4", 0), 0u) << text;
  std::tie(code, text) = verify(dir_ / "g.pmm", dir_ / "unmatched.sol");
  EXPECT_EQ(code, kExitVerifyFailed);
  EXPECT_EQ(text.rfind("constraint-1", 0), 0u) << text;
  EXPECT_EQ(verify(dir_ / "g.pmm", dir_ / "garbage.sol").first, kExitParse);
}

TEST_F(CliTest, SolveExitCodes) {
  std::ofstream(dir_ / "bad.pmm") << "2 2 1 2 1\n1 1 x\n";
  std::ofstream(dir_ / "infeasible.pmm") << "2 2 1 2 2\n1 1 1\n2 1 1\n";
  SolveOptions opt;
  std::ostringstream out, err;
  opt.instance = dir_ / "bad.pmm";
  EXPECT_EQ(cmd_solve(opt, out, err), kExitParse);
  opt.instance = dir_ / "infeasible.pmm";
  EXPECT_EQ(cmd_solve(opt, out, err), kExitInfeasible);
  opt.instance = dir_ / "missing.pmm";
  EXPECT_NE(cmd_solve(opt, out, err), kExitOk);
}

TEST_F(CliTest, BenchWritesPairedRowsAndSummary) {
  generate(Family::kBps80, 20, 2);
  BenchOptions opt;
  opt.manifest = dir_ / "gen" / "manifest.tsv";
  opt.out_dir = dir_ / "bench";
  opt.parallelism = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_bench(opt, out, err), kExitOk) << err.str();
  EXPECT_TRUE(err.str().empty()) << err.str();
  std::istringstream runs(slurp(opt.out_dir / "bench_runs.csv"));
  std::string line;
  std::getline(runs, line);
  EXPECT_EQ(line, kBenchCsvHeader);
  std::size_t rows = 0;
  while (std::getline(runs, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "ok");
  }
  const auto entries = read_manifest(opt.manifest);
  EXPECT_EQ(rows, entries.size() * 2);
  // family,n,mean_ls_ns,mean_kmm_ns,ratio,paired,objectives_equal
  std::istringstream summary(out.str());
  std::getline(summary, line);
  std::getline(summary, line);
  EXPECT_EQ(line.substr(0, 9), "BPS80,20,");
  const auto tail = line.substr(line.rfind(',', line.rfind(',') - 1) + 1);
  EXPECT_EQ(tail, std::to_string(entries.size()) + "," + std::to_string(entries.size()));
  EXPECT_TRUE(fs::exists(opt.out_dir / "bench_stage1.csv"));
}

#ifdef PMMWM_CLI_BINARY
int run_binary(const std::string& args) {
  const std::string cmd = std::string(PMMWM_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("solve"), kExitParse);
  EXPECT_EQ(run_binary("solve x.pmm --variant nope"), kExitParse);
  EXPECT_EQ(run_binary("frobnicate"), kExitParse);
  const auto d = dir_.string();
  EXPECT_EQ(run_binary("generate --family RAND --n 16 --seed 3 --out " + d), 0);
  const auto e = read_manifest(dir_ / "manifest.tsv").front();
  EXPECT_EQ(run_binary("solve " + e.path.string() + " --variant MP_LS --out " + d + "/s.sol"), 0);
  EXPECT_EQ(run_binary("verify " + e.path.string() + " " + d + "/s.sol"), 0);
  EXPECT_EQ(run_binary("generate --family RAND,SPARSE20 --n 16,20 --out " + d + "/two"), 0);
  std::set<std::pair<std::string, std::size_t>> cells;
  for (const auto& entry : read_manifest(dir_ / "two" / "manifest.tsv")) {
    cells.insert({std::string(family_name(entry.family)), entry.n});
  }
  EXPECT_EQ(cells.size(), 4u);
}
#endif

}  // namespace
}  // namespace pmmwm::cli
