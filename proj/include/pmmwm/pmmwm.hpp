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

// Umbrella header for the solver library (the CLI helpers live in cli.hpp).

#ifndef PMMWM_PMMWM_HPP_
#define PMMWM_PMMWM_HPP_

#include "pmmwm/core.hpp"
#include "pmmwm/cost.hpp"
#include "pmmwm/error.hpp"
#include "pmmwm/hungarian.hpp"
#include "pmmwm/incremental.hpp"
#include "pmmwm/instances.hpp"
#include "pmmwm/io.hpp"
#include "pmmwm/oracle.hpp"
#include "pmmwm/partitioning.hpp"
#include "pmmwm/solver.hpp"
#include "pmmwm/weight.hpp"

#endif  // PMMWM_PMMWM_HPP_
