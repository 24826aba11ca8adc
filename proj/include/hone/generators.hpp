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
#include <vector>

#include "hone/graph.hpp"

namespace hone {

// G(n, p) by geometric skipping over the upper triangle; O(n + M) expected.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Undirected stochastic block model with blocks laid out contiguously.
Graph stochastic_block_model(const std::vector<std::size_t>& block_sizes, double p_in,
                             double p_out, std::uint64_t seed);

// Small named fixtures.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

// Relabels node u as perm[u]; labels follow their nodes.
Graph permute_nodes(const Graph& g, const std::vector<NodeId>& perm);

}  // namespace hone
