// Copyright 2026 The qvlc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVLC_HARNESS_H_
#define QVLC_HARNESS_H_

#include "qvlc/config.h"
#include "qvlc/report.h"

namespace qvlc {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitResources = 3,
    kExitInvariant = 4,
    kExitBoundViolation = 5,
};

struct RunOptions {
    int jobs = 1;
    bool timings = false;
    /// Single-setting runs reject configs with more than one value on a sweep axis.
    bool sweep = true;
};

/// Number of independent cells the config expands to.
std::size_t cell_count(const ExperimentConfig &cfg);

/// Evaluates every cell, on `jobs` threads, and merges rows sorted by (n, rate).
/// Each cell draws its Monte Carlo seed from (config seed, cell index), so the
/// result does not depend on the number of threads.
SimulationReport run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

}  // namespace qvlc

#endif  // QVLC_HARNESS_H_
