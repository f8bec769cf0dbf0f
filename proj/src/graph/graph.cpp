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

#include "influencer/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace influencer::graph {

std::string_view to_string(EdgeKind kind) { return kind == EdgeKind::kRetweet ? "retweet" : "comment"; }

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "comment") return EdgeKind::kComment;
  if (text == "retweet") return EdgeKind::kRetweet;
  return std::nullopt;
}

InteractionGraph::InteractionGraph(std::vector<std::string> nodes, std::span<const NamedEdge> edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);

  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    auto s = index_of(e.source);
    auto t = index_of(e.target);
    if (!s || !t) throw Error(fmt::format("edge {} -> {} references a missing node", e.source, e.target));
    if (*s == *t) throw Error(fmt::format("self-loop on node {}", e.source));
    edges_.push_back({*s, *t, e.kind});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::optional<std::size_t> InteractionGraph::index_of(std::string_view user) const {
  auto it = index_.find(std::string(user));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json BuildStats::to_json() const {
  return {{"interactions", interactions},
          {"missing_parent", missing_parent},
          {"source_not_node", source_not_node},
          {"target_not_node", target_not_node},
          {"self_interactions", self_interactions},
          {"duplicates", duplicates}};
}

GraphBuild build_graph(std::span<const corpus::RawTweet> tweets) {
  using corpus::TweetKind;

  std::set<std::string> posters;
  std::unordered_map<std::string_view, const corpus::RawTweet*> by_id;
  for (const auto& t : tweets) {
    if (t.kind == TweetKind::kPost) posters.insert(t.user_id);
    by_id.emplace(t.id, &t);
  }

  BuildStats stats;
  std::vector<NamedEdge> edges;
  std::set<std::tuple<std::string_view, std::string_view, EdgeKind>> seen;
  for (const auto& t : tweets) {
    if (t.kind == TweetKind::kPost) continue;
    ++stats.interactions;
    auto parent = by_id.find(*t.parent_id);
    if (parent == by_id.end()) {
      ++stats.missing_parent;
      continue;
    }
    const std::string& source = t.user_id;
    const std::string& target = parent->second->user_id;
    if (source == target) {
      ++stats.self_interactions;
      continue;
    }
    if (!posters.contains(source)) {
      ++stats.source_not_node;
      continue;
    }
    if (!posters.contains(target)) {
      ++stats.target_not_node;
      continue;
    }
    auto kind = t.kind == TweetKind::kRetweet ? EdgeKind::kRetweet : EdgeKind::kComment;
    if (!seen.emplace(source, target, kind).second) {
      ++stats.duplicates;
      continue;
    }
    edges.push_back({source, target, kind});
  }
  return {InteractionGraph(std::vector<std::string>(posters.begin(), posters.end()), edges), stats};
}

namespace {

// Compressed adjacency: neighbours of node v are ids[offsets[v] .. offsets[v+1]).
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> ids;
};

Adjacency compress(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (auto [from, to] : pairs) ++adj.offsets[from + 1];
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.ids.resize(pairs.size());
  auto fill = adj.offsets;
  for (auto [from, to] : pairs) adj.ids[fill[from]++] = to;
  return adj;
}

void l1_normalize(std::vector<double>& v) {
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (sum > 0.0) {
    for (double& x : v) x /= sum;
  }
}

std::optional<double> lookup(const HitsScores& s, const std::vector<double>& values, std::string_view node) {
  auto it = std::lower_bound(s.nodes.begin(), s.nodes.end(), node);
  if (it != s.nodes.end() && *it == node) return values[static_cast<std::size_t>(it - s.nodes.begin())];
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (s.nodes[i] == node) return values[i];
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> HitsScores::authority_of(std::string_view node) const { return lookup(*this, authority, node); }
std::optional<double> HitsScores::hub_of(std::string_view node) const { return lookup(*this, hub, node); }

HitsScores hits(const InteractionGraph& graph, const HitsOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw Error("HITS needs at least one node");
  if (options.max_iter < 1) throw Error("HITS max_iter must be at least 1");

  // Edge kinds collapse: (s, t) is present if any kind is.
  std::vector<std::pair<std::size_t, std::size_t>> out_pairs;
  for (const auto& e : graph.edges()) out_pairs.emplace_back(e.source, e.target);
  std::sort(out_pairs.begin(), out_pairs.end());
  out_pairs.erase(std::unique(out_pairs.begin(), out_pairs.end()), out_pairs.end());
  std::vector<std::pair<std::size_t, std::size_t>> in_pairs;
  in_pairs.reserve(out_pairs.size());
  for (auto [s, t] : out_pairs) in_pairs.emplace_back(t, s);
  std::sort(in_pairs.begin(), in_pairs.end());

  HitsScores scores;
  scores.nodes = graph.nodes();
  scores.authority.assign(n, 1.0 / static_cast<double>(n));
  scores.hub.assign(n, 1.0 / static_cast<double>(n));
  if (out_pairs.empty()) {
    scores.converged = true;
    return scores;
  }

  const Adjacency in = compress(n, in_pairs);
  const Adjacency out = compress(n, out_pairs);
  std::vector<double> authority(n), hub(n);
  const double threshold = options.tol * static_cast<double>(n);

  for (int it = 1; it <= options.max_iter; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (std::size_t k = in.offsets[v]; k < in.offsets[v + 1]; ++k) sum += scores.hub[in.ids[k]];
      authority[v] = sum;
    }
    l1_normalize(authority);
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (std::size_t k = out.offsets[v]; k < out.offsets[v + 1]; ++k) sum += authority[out.ids[k]];
      hub[v] = sum;
    }
    l1_normalize(hub);

    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      delta += std::abs(authority[v] - scores.authority[v]) + std::abs(hub[v] - scores.hub[v]);
    }
    scores.authority.swap(authority);
    scores.hub.swap(hub);
    scores.iterations = it;
    if (delta < threshold) {
      scores.converged = true;
      break;
    }
  }
  return scores;
}

}  // namespace influencer::graph
