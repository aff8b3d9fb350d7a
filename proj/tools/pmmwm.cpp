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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmmwm/cli.hpp"

namespace {

using pmmwm::cli::Format;

// Accepts "100", "100,120" style lists (via CLI11) and "lo:hi:step" ranges.
std::vector<std::size_t> expand_sizes(const std::vector<std::string>& specs) {
  std::vector<std::size_t> out;
  for (const auto& s : specs) {
    const auto first = s.find(':');
    if (first == std::string::npos) {
      out.push_back(std::stoull(s));
      continue;
    }
    const auto second = s.find(':', first + 1);
    const std::size_t lo = std::stoull(s.substr(0, first));
    const std::size_t hi = std::stoull(s.substr(first + 1, second - first - 1));
    const std::size_t step =
        second == std::string::npos ? 1 : std::stoull(s.substr(second + 1));
    for (std::size_t n = lo; n <= hi && step > 0; n += step) out.push_back(n);
  }
  return out;
}

const std::map<std::string, Format> kFormats{{"csv", Format::kCsv},
                                             {"json", Format::kJson}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partitioning min-max weighted matching: MP_LS and MP_KM-M"};
  app.require_subcommand(1);

  std::vector<std::string> families{"RAND"};
  std::vector<std::string> sizes{"100"};
  pmmwm::cli::GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write a seeded instance suite");
  generate->add_option("--family", families, "family names or 'all'")->delimiter(',');
  generate->add_option("--n", sizes, "sizes: 100 or lo:hi:step")->delimiter(',');
  generate->add_option("--seed", gen.seed, "suite seed");
  generate->add_option("--out", gen.out_dir, "output directory");
  generate->add_option("--replicates", gen.replicates, "instances per cell");

  pmmwm::cli::SolveOptions solve;
  std::string solve_variant = "MP_KM-M";
  std::string solution_out;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  solve_cmd->add_option("instance", solve.instance)->required();
  solve_cmd->add_option("--variant", solve_variant, "MP_LS or MP_KM-M");
  solve_cmd->add_option("--patience", solve.patience);
  solve_cmd->add_option("--penalty-factor", solve.penalty_factor);
  solve_cmd->add_option("--out", solution_out, "solution file to write");
  solve_cmd->add_option("--format", solve.format)
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  pmmwm::cli::BenchOptions bench;
  bench.format = Format::kCsv;
  std::vector<std::string> bench_variants{"MP_LS", "MP_KM-M"};
  auto* bench_cmd = app.add_subcommand("bench", "compare the variants on a manifest");
  bench_cmd->add_option("--manifest", bench.manifest)->required();
  bench_cmd->add_option("--variants", bench_variants)->delimiter(',');
  bench_cmd->add_option("--parallelism", bench.parallelism);
  bench_cmd->add_option("--out", bench.out_dir, "directory for CSV output");
  bench_cmd->add_option("--format", bench.format)
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  pmmwm::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a solution file");
  verify_cmd->add_option("instance", verify.instance)->required();
  verify_cmd->add_option("solution", verify.solution)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pmmwm::cli::kExitParse;
  }

  if (generate->parsed()) {
    for (const auto& f : families) {
      if (f == "all") {
        gen.families.assign(pmmwm::kAllFamilies.begin(), pmmwm::kAllFamilies.end());
        continue;
      }
      const auto family = pmmwm::parse_family(f);
      if (!family) {
        std::cerr << "unknown family: " << f << '\n';
        return pmmwm::cli::kExitParse;
      }
      gen.families.push_back(*family);
    }
    try {
      gen.sizes = expand_sizes(sizes);
    } catch (const std::exception&) {
      std::cerr << "bad --n value\n";
      return pmmwm::cli::kExitParse;
    }
    return pmmwm::cli::cmd_generate(gen, std::cout, std::cerr);
  }
  if (solve_cmd->parsed()) {
    const auto v = pmmwm::parse_variant(solve_variant);
    if (!v) {
      std::cerr << "unknown variant: " << solve_variant << '\n';
      return pmmwm::cli::kExitParse;
    }
    solve.variant = *v;
    if (!solution_out.empty()) solve.solution_out = solution_out;
    return pmmwm::cli::cmd_solve(solve, std::cout, std::cerr);
  }
  if (bench_cmd->parsed()) {
    bench.variants.clear();
    for (const auto& name : bench_variants) {
      const auto v = pmmwm::parse_variant(name);
      if (!v) {
        std::cerr << "unknown variant: " << name << '\n';
        return pmmwm::cli::kExitParse;
      }
      bench.variants.push_back(*v);
    }
    return pmmwm::cli::cmd_bench(bench, std::cout, std::cerr);
  }
  return pmmwm::cli::cmd_verify(verify, std::cout, std::cerr);
}
