// Copyright 2026 The hone Authors
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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hone/embed.hpp"

namespace hone {

struct BenchRow {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  StageTimings timings;
  std::optional<std::string> error;  // set when this size failed
};

// Runs the pipeline on G(n, avg_degree/(n-1)) for each size. The first
// failing size is recorded with its error and larger sizes are skipped.
std::vector<BenchRow> bench_scaling(const std::vector<std::size_t>& sizes, double avg_degree,
                                    const PipelineConfig& cfg);

void write_bench_tsv(std::ostream& os, const std::vector<BenchRow>& rows);

// Least-squares slope of log(total time) against log(nodes), over rows
// without errors.
double loglog_slope(const std::vector<BenchRow>& rows);

}  // namespace hone
