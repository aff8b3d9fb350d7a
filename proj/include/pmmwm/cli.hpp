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

// Command implementations behind the `pmmwm` executable. Each command writes
// its report to the given stream and returns the process exit code:
//   0 ok, 1 verification failed, 2 parse error, 3 infeasible, 4 internal.

#ifndef PMMWM_CLI_HPP_
#define PMMWM_CLI_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "pmmwm/core.hpp"
#include "pmmwm/error.hpp"
#include "pmmwm/instances.hpp"
#include "pmmwm/io.hpp"
#include "pmmwm/solver.hpp"

namespace pmmwm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitParse = 2,
  kExitInfeasible = 3,
  kExitInternal = 4,
};

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParseError: return kExitParse;
    case ErrorCode::kInfeasible:
    case ErrorCode::kInfeasibleMatching:
    case ErrorCode::kIsolatedVertex: return kExitInfeasible;
    default: return kExitInternal;
  }
}

enum class Format { kCsv, kJson };

// One line per generated file in manifest.tsv.
struct ManifestEntry {
  std::filesystem::path path;
  Family family = Family::kRand;
  std::size_t n = 0;
  PartIndex m = 1;
  std::size_t ubar = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kManifestHeader =
    "path\tfamily\tn\tm\tubar\treplicate\tseed";

inline std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == kManifestHeader) continue;
    std::istringstream row(line);
    ManifestEntry e;
    std::string file, family;
    if (!(row >> file >> family >> e.n >> e.m >> e.ubar >> e.replicate >> e.seed)) {
      throw ParseError(line_no, "malformed manifest row");
    }
    const auto f = parse_family(family);
    if (!f) throw ParseError(line_no, "unknown family " + family);
    e.family = *f;
    e.path = std::filesystem::path(file).is_absolute()
                 ? std::filesystem::path(file)
                 : path.parent_path() / file;
    out.push_back(std::move(e));
  }
  return out;
}

struct GenerateOptions {
  std::vector<Family> families;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  std::size_t replicates = 1;
};

// Writes one file per (family, n, (m, ubar), replicate). All (m, ubar) cells
// of a replicate share the same graph. Prints the manifest and stores it as
// manifest.tsv in out_dir.
inline int cmd_generate(const GenerateOptions& opt, std::ostream& out,
                        std::ostream& err) {
  try {
    std::filesystem::create_directories(opt.out_dir);
    std::ostringstream manifest;
    manifest << kManifestHeader << '\n';
    for (Family family : opt.families) {
      for (std::size_t n : opt.sizes) {
        for (std::size_t r = 0; r < opt.replicates; ++r) {
          const std::uint64_t seed = derive_seed(opt.seed, family, n, r);
          const BipartiteGraph g = generate({family, n, seed});
          for (const auto& [m, ubar] : expand_grid(n)) {
            const std::string name = instance_file_name(family, n, m, ubar, seed);
            write_instance(opt.out_dir / name, Instance{g, m, ubar});
            manifest << name << '\t' << family_name(family) << '\t' << n << '\t'
                     << m << '\t' << ubar << '\t' << r << '\t' << seed << '\n';
          }
        }
      }
    }
    std::ofstream file(opt.out_dir / "manifest.tsv", std::ios::binary);
    file << manifest.str();
    if (!file) throw Error(ErrorCode::kIo, "cannot write manifest.tsv");
    out << manifest.str();
    return kExitOk;
  } catch (const Error& e) {
    err << "generate: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << '\n';
    return kExitInternal;
  }
}

struct SolveOptions {
  std::filesystem::path instance;
  Variant variant = Variant::kMpKmM;
  std::size_t patience = 20;
  Weight penalty_factor = kDefaultPenaltyFactor;
  std::optional<std::filesystem::path> solution_out;
  Format format = Format::kJson;
};

inline nlohmann::json summary_json(const SolveResult& r, Variant variant) {
  std::int64_t s1 = 0, s2 = 0, s3 = 0;
  for (const auto& it : r.trace.iterations) {
    s1 += it.stage1_ns;
    s2 += it.stage2_ns;
    s3 += it.stage3_ns;
  }
  return {
      {"objective", format_milli(r.best.objective)},
      {"variant", std::string(variant_name(variant))},
      {"iterations", r.trace.iterations.size()},
      {"stage_ns", {{"matching", s1}, {"partitioning", s2}, {"penalization", s3}}},
      {"total_ns", r.trace.total_ns},
  };
}

inline int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Instance inst = read_instance(opt.instance);
    SolverConfig cfg;
    cfg.variant = opt.variant;
    cfg.patience = opt.patience;
    cfg.penalty_factor = opt.penalty_factor;
    const SolveResult r = run(inst.graph, inst.m, inst.ubar, cfg);
    if (opt.solution_out) {
      std::ofstream file(*opt.solution_out, std::ios::binary);
      if (!file) throw Error(ErrorCode::kIo, "cannot open " + opt.solution_out->string());
      write_solution(file, r.best);
    }
    const auto j = summary_json(r, opt.variant);
    if (opt.format == Format::kJson) {
      out << j.dump() << '\n';
    } else {
      out << "objective,variant,iterations,stage1_ns,stage2_ns,stage3_ns,total_ns\n"
          << format_milli(r.best.objective) << ',' << variant_name(opt.variant) << ','
          << r.trace.iterations.size() << ',' << j["stage_ns"]["matching"] << ','
          << j["stage_ns"]["partitioning"] << ',' << j["stage_ns"]["penalization"]
          << ',' << r.trace.total_ns << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "solve: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "solve: " << e.what() << '\n';
    return kExitInternal;
  }
}

struct VerifyOptions {
  std::filesystem::path instance;
  std::filesystem::path solution;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Instance inst = read_instance(opt.instance);
    std::ifstream in(opt.solution, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + opt.solution.string());
    const Solution s = read_solution(in, inst.graph.left_size(),
                                     inst.graph.right_size(), inst.m, inst.ubar);
    const ValidationReport report = validate_solution(inst.graph, s);
    if (report.ok()) {
      out << "ok objective=" << format_milli(s.objective) << '\n';
      return kExitOk;
    }
    out << violation_name(report.violation) << ": " << report.detail << '\n';
    return kExitVerifyFailed;
  } catch (const Error& e) {
    err << "verify: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << '\n';
    return kExitInternal;
  }
}

struct BenchRecord {
  std::string instance;
  Family family = Family::kRand;
  std::size_t n = 0;
  PartIndex m = 1;
  std::size_t ubar = 0;
  std::size_t replicate = 0;
  Variant variant = Variant::kMpKmM;
  Weight objective = 0;
  std::size_t iterations = 0;
  std::int64_t stage1_ns = 0;
  std::int64_t stage2_ns = 0;
  std::int64_t stage3_ns = 0;
  std::int64_t total_ns = 0;
  std::string status = "ok";
};

inline constexpr std::string_view kBenchCsvHeader =
    "instance,family,n,m,ubar,replicate,variant,objective,iterations,"
    "stage1_ns,stage2_ns,stage3_ns,total_ns,status";

inline void write_bench_row(std::ostream& out, const BenchRecord& r) {
  std::string status = r.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::replace(status.begin(), status.end(), '\n', ' ');
  out << r.instance << ',' << family_name(r.family) << ',' << r.n << ',' << r.m
      << ',' << r.ubar << ',' << r.replicate << ',' << variant_name(r.variant)
      << ',' << format_milli(r.objective) << ',' << r.iterations << ','
      << r.stage1_ns << ',' << r.stage2_ns << ',' << r.stage3_ns << ','
      << r.total_ns << ',' << status << '\n';
}

// Stage-1 time of one iteration, for the complexity-scaling fit.
struct Stage1Sample {
  std::string instance;
  std::size_t n = 0;
  Variant variant = Variant::kMpKmM;
  std::size_t iteration = 0;  // 1-based
  std::int64_t stage1_ns = 0;
};

inline BenchRecord bench_one(const ManifestEntry& entry, const Instance& inst,
                             Variant variant, std::vector<Stage1Sample>* series) {
  BenchRecord rec;
  rec.instance = entry.path.filename().string();
  rec.family = entry.family;
  rec.n = entry.n;
  rec.m = inst.m;
  rec.ubar = inst.ubar;
  rec.replicate = entry.replicate;
  rec.variant = variant;
  try {
    SolverConfig cfg;
    cfg.variant = variant;
    const SolveResult r = run(inst.graph, inst.m, inst.ubar, cfg);
    rec.objective = r.best.objective;
    rec.iterations = r.trace.iterations.size();
    for (std::size_t i = 0; i < r.trace.iterations.size(); ++i) {
      const auto& it = r.trace.iterations[i];
      rec.stage1_ns += it.stage1_ns;
      rec.stage2_ns += it.stage2_ns;
      rec.stage3_ns += it.stage3_ns;
      if (series) series->push_back({rec.instance, entry.n, variant, i + 1, it.stage1_ns});
    }
    rec.total_ns = r.trace.total_ns;
  } catch (const std::exception& e) {
    rec.status = e.what();
  }
  return rec;
}

struct BenchAggregate {
  Family family = Family::kRand;
  std::size_t n = 0;
  double mean_ls_ns = 0;
  double mean_kmm_ns = 0;
  std::size_t instances = 0;
  std::size_t objectives_equal = 0;

  double ratio() const { return mean_kmm_ns > 0 ? mean_ls_ns / mean_kmm_ns : 0.0; }
};

// Mean total runtime per (family, n, variant) over successful rows, plus how
// many paired instances agree on the objective.
inline std::vector<BenchAggregate> aggregate(const std::vector<BenchRecord>& rows) {
  struct Acc {
    double ls = 0, kmm = 0;
    std::size_t nls = 0, nkmm = 0;
  };
  std::map<std::pair<Family, std::size_t>, Acc> acc;
  std::map<std::string, std::vector<const BenchRecord*>> by_instance;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    auto& a = acc[{r.family, r.n}];
    if (r.variant == Variant::kMpLs) {
      a.ls += static_cast<double>(r.total_ns);
      ++a.nls;
    } else {
      a.kmm += static_cast<double>(r.total_ns);
      ++a.nkmm;
    }
    by_instance[r.instance].push_back(&r);
  }
  std::map<std::pair<Family, std::size_t>, std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [name, recs] : by_instance) {
    const BenchRecord* ls = nullptr;
    const BenchRecord* kmm = nullptr;
    for (const auto* r : recs) (r->variant == Variant::kMpLs ? ls : kmm) = r;
    if (!ls || !kmm) continue;
    auto& p = pairs[{ls->family, ls->n}];
    ++p.first;
    if (ls->objective == kmm->objective) ++p.second;
  }
  std::vector<BenchAggregate> out;
  for (const auto& [key, a] : acc) {
    BenchAggregate g;
    g.family = key.first;
    g.n = key.second;
    g.mean_ls_ns = a.nls ? a.ls / static_cast<double>(a.nls) : 0.0;
    g.mean_kmm_ns = a.nkmm ? a.kmm / static_cast<double>(a.nkmm) : 0.0;
    std::tie(g.instances, g.objectives_equal) = pairs[key];
    out.push_back(g);
  }
  return out;
}

struct BenchOptions {
  std::filesystem::path manifest;
  std::vector<Variant> variants{Variant::kMpLs, Variant::kMpKmM};
  std::size_t parallelism = 1;
  std::filesystem::path out_dir = ".";
  Format format = Format::kCsv;
};

// Solves every manifest instance under each variant. Each worker handles one
// instance at a time and runs its variants back to back, so the two
// variants of an instance never compete for a core. A warm-up solve is run
// first and discarded. Writes bench_runs.csv, bench_summary.csv and
// bench_stage1.csv into out_dir and prints the summary.
inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto entries = read_manifest(opt.manifest);
    std::filesystem::create_directories(opt.out_dir);
    if (!entries.empty()) {
      const Instance warm = read_instance(entries.front().path);
      for (Variant v : opt.variants) bench_one(entries.front(), warm, v, nullptr);
    }

    std::vector<std::vector<BenchRecord>> rows(entries.size());
    std::vector<std::vector<Stage1Sample>> series(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < entries.size(); i = next++) {
        std::optional<Instance> inst;
        std::string failure;
        try {
          inst = read_instance(entries[i].path);
        } catch (const std::exception& e) {
          failure = e.what();
        }
        for (Variant v : opt.variants) {
          if (inst) {
            rows[i].push_back(bench_one(entries[i], *inst, v, &series[i]));
          } else {
            BenchRecord rec;
            rec.instance = entries[i].path.filename().string();
            rec.family = entries[i].family;
            rec.n = entries[i].n;
            rec.m = entries[i].m;
            rec.ubar = entries[i].ubar;
            rec.replicate = entries[i].replicate;
            rec.variant = v;
            rec.status = failure;
            rows[i].push_back(rec);
          }
        }
      }
    };
    const std::size_t threads = std::max<std::size_t>(1, opt.parallelism);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<BenchRecord> flat;
    std::ofstream runs(opt.out_dir / "bench_runs.csv", std::ios::binary);
    runs << kBenchCsvHeader << '\n';
    for (const auto& group : rows) {
      for (const auto& r : group) {
        write_bench_row(runs, r);
        flat.push_back(r);
      }
    }
    std::ofstream stage1(opt.out_dir / "bench_stage1.csv", std::ios::binary);
    stage1 << "instance,n,variant,iteration,stage1_ns\n";
    for (const auto& group : series) {
      for (const auto& s : group) {
        stage1 << s.instance << ',' << s.n << ',' << variant_name(s.variant) << ','
               << s.iteration << ',' << s.stage1_ns << '\n';
      }
    }

    const auto agg = aggregate(flat);
    std::ostringstream csv;
    csv << "family,n,mean_ls_ns,mean_kmm_ns,ratio_ls_over_kmm,paired,objectives_equal\n";
    nlohmann::json js = nlohmann::json::array();
    for (const auto& a : agg) {
      csv << family_name(a.family) << ',' << a.n << ',' << std::fixed
          << std::setprecision(0) << a.mean_ls_ns << ',' << a.mean_kmm_ns << ','
          << std::setprecision(3) << a.ratio() << ',' << a.instances << ','
          << a.objectives_equal << '\n';
      js.push_back({{"family", std::string(family_name(a.family))},
                    {"n", a.n},
                    {"mean_ls_ns", a.mean_ls_ns},
                    {"mean_kmm_ns", a.mean_kmm_ns},
                    {"ratio_ls_over_kmm", a.ratio()},
                    {"paired", a.instances},
                    {"objectives_equal", a.objectives_equal}});
    }
    std::ofstream summary(opt.out_dir / "bench_summary.csv", std::ios::binary);
    summary << csv.str();
    if (opt.format == Format::kJson) {
      out << js.dump(2) << '\n';
    } else {
      out << csv.str();
    }
    for (const auto& r : flat) {
      if (r.status != "ok") {
        err << "bench: " << r.instance << " (" << variant_name(r.variant)
            << "): " << r.status << '\n';
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "bench: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "bench: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace pmmwm::cli

#endif  // PMMWM_CLI_HPP_
