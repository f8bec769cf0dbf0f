// Copyright 2026 The influencer-topics Authors
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

#ifndef INFLUENCER_EXPORT_HPP_
#define INFLUENCER_EXPORT_HPP_

#include <filesystem>
#include <string>

#include "influencer/graph.hpp"
#include "influencer/partition.hpp"

namespace influencer::graph {

/// GEXF 1.2 document with node attributes authority, hub and group
/// ("leader" / "majority") and edge attribute kind. Throws Error when the
/// graph is empty or the scores or partition miss a node.
std::string to_gexf(const InteractionGraph& graph, const HitsScores& scores, const partition::Partition& partition);

/// Writes to_gexf() to `path`; UserError when the file cannot be written.
void export_gexf(const InteractionGraph& graph, const HitsScores& scores, const partition::Partition& partition,
                 const std::filesystem::path& path);

/// node_id,authority,hub,group
std::string nodes_csv(const HitsScores& scores, const partition::Partition& partition);

}  // namespace influencer::graph

#endif  // INFLUENCER_EXPORT_HPP_
