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

// Generates one instance of each family, solves it with both frameworks and
// prints objective, iteration count and runtime side by side.
//
//   ./solve_families [n] [seed]

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "pmmwm/pmmwm.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 60;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
  const auto m = static_cast<pmmwm::PartIndex>(pmmwm::m_choices(n).back());
  const std::size_t ubar = pmmwm::ubar_choices(n, m).front();

  std::cout << "n=" << n << " m=" << m << " ubar=" << ubar << '\n';
  for (pmmwm::Family family : pmmwm::kAllFamilies) {
    const auto g = pmmwm::generate({family, n, seed});
    std::cout << std::left << std::setw(10) << pmmwm::family_name(family);
    for (auto variant : {pmmwm::Variant::kMpLs, pmmwm::Variant::kMpKmM}) {
      pmmwm::SolverConfig cfg;
      cfg.variant = variant;
      const auto r = pmmwm::run(g, m, ubar, cfg);
      std::cout << "  " << pmmwm::variant_name(variant) << ": f="
                << pmmwm::format_milli(r.best.objective)
                << " iters=" << r.trace.iterations.size() << " time="
                << std::fixed << std::setprecision(2)
                << static_cast<double>(r.trace.total_ns) / 1e6 << "ms";
    }
    std::cout << '\n';
  }
}
