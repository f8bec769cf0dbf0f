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

#ifndef INFLUENCER_GRAPH_HPP_
#define INFLUENCER_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/corpus.hpp"

namespace influencer::graph {

enum class EdgeKind { kComment, kRetweet };

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

/// Edge between node indices.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  EdgeKind kind = EdgeKind::kComment;

  auto operator<=>(const Edge&) const = default;
};

/// Edge between user ids, for construction.
struct NamedEdge {
  std::string source;
  std::string target;
  EdgeKind kind = EdgeKind::kComment;
};

/// Simple directed graph over posting users. Nodes are kept sorted by user
/// id; edges are unique per (source, target, kind) and sorted.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  /// Throws Error on a self-loop or an endpoint that is not a node.
  /// Duplicate nodes and edges collapse.
  InteractionGraph(std::vector<std::string> nodes, std::span<const NamedEdge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(std::string_view user) const;

  bool operator==(const InteractionGraph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Why interactions did not become edges.
struct BuildStats {
  std::size_t interactions = 0;
  std::size_t missing_parent = 0;
  /// Acting user has no post, so has no node.
  std::size_t source_not_node = 0;
  /// Author of the tweet acted upon has no post.
  std::size_t target_not_node = 0;
  std::size_t self_interactions = 0;
  /// Repeats of an existing (source, target, kind) edge.
  std::size_t duplicates = 0;

  nlohmann::json to_json() const;
};

struct GraphBuild {
  InteractionGraph graph;
  BuildStats stats;
};

/// A node per user with at least one post; an edge i -> j for every comment
/// or retweet by i on a tweet authored by j, when both are nodes and i != j.
GraphBuild build_graph(std::span<const corpus::RawTweet> tweets);

struct HitsOptions {
  int max_iter = 200;
  double tol = 1e-8;
  bool operator==(const HitsOptions&) const = default;
};

/// Authority and hub scores aligned with `nodes`. Both vectors sum to 1.
struct HitsScores {
  std::vector<std::string> nodes;
  std::vector<double> authority;
  std::vector<double> hub;
  int iterations = 0;
  bool converged = false;

  std::optional<double> authority_of(std::string_view node) const;
  std::optional<double> hub_of(std::string_view node) const;
};

/// HITS by power iteration. Starting from uniform vectors, each sweep sets
/// authority(v) to the summed hub of v's in-neighbours, L1-normalises, then
/// sets hub(v) to the summed authority of v's out-neighbours and
/// L1-normalises. Stops once the combined L1 change of both vectors drops
/// below tol * N, or after max_iter sweeps.
///
/// Edge kinds are ignored (any kind counts as one edge). A graph without
/// edges yields uniform scores with converged = true. Throws Error on an
/// empty graph.
HitsScores hits(const InteractionGraph& graph, const HitsOptions& options = {});

}  // namespace influencer::graph

#endif  // INFLUENCER_GRAPH_HPP_
