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

#include "hone/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <new>
#include <stdexcept>

#include "hone/generators.hpp"

namespace hone {

std::vector<BenchRow> bench_scaling(const std::vector<std::size_t>& sizes, double avg_degree,
                                    const PipelineConfig& cfg) {
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::invalid_argument("bench sizes must be ascending");
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    BenchRow row;
    row.nodes = n;
    try {
      if (n < 2) throw std::invalid_argument("bench size must be >= 2");
      const double p = std::min(1.0, avg_degree / static_cast<double>(n - 1));
      const Graph g = erdos_renyi(n, p, cfg.seed + i);
      row.edges = g.num_edges();
      row.timings = run_pipeline(g, cfg).timings;
    } catch (const std::bad_alloc&) {
      row.error = "out of memory";
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    const bool failed = row.error.has_value();
    rows.push_back(std::move(row));
    if (failed) break;
  }
  return rows;
}

void write_bench_tsv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "nodes\tedges\tcount_s\tlocal_s\tdiffusion_s\tglobal_s\ttotal_s\tstatus\n";
  os << std::setprecision(6);
  for (const auto& r : rows) {
    os << r.nodes << '\t' << r.edges << '\t' << r.timings.count_seconds << '\t'
       << r.timings.local_seconds << '\t' << r.timings.diffusion_seconds << '\t'
       << r.timings.global_seconds << '\t' << r.timings.total_seconds << '\t'
       << (r.error ? "error: " + *r.error : std::string("ok")) << '\n';
  }
}

double loglog_slope(const std::vector<BenchRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.error || r.timings.total_seconds <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(r.nodes)));
    ys.push_back(std::log(r.timings.total_seconds));
  }
  if (xs.size() < 2) throw std::invalid_argument("slope needs at least two successful rows");
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope needs distinct sizes");
  return sxy / sxx;
}

}  // namespace hone
