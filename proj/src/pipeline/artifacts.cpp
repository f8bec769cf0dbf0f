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

#include "pipeline/artifacts.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace influencer::pipeline::artifacts {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Malformed cached artifacts are the user's to fix by rerunning a stage.
template <typename F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw UserError(fmt::format("malformed {} artifact: {}", what, e.what()));
  } catch (const UserError&) {
    throw;
  } catch (const Error& e) {
    throw UserError(fmt::format("invalid {} artifact: {}", what, e.what()));
  }
}

}  // namespace

json tweets_to_json(std::span<const corpus::RawTweet> tweets) {
  json rows = json::array();
  for (const auto& t : tweets) {
    rows.push_back({{"id", t.id},
                    {"user_id", t.user_id},
                    {"created_at", format_timestamp(t.created_at)},
                    {"text", t.text},
                    {"kind", corpus::to_string(t.kind)},
                    {"parent_id", t.parent_id ? json(*t.parent_id) : json()}});
  }
  return {{"tweets", std::move(rows)}};
}

std::vector<corpus::RawTweet> tweets_from_json(const json& j) {
  return guarded("corpus", [&] {
    std::vector<corpus::RawTweet> out;
    for (const auto& row : j.at("tweets")) {
      corpus::RawTweet t;
      t.id = row.at("id").get<std::string>();
      t.user_id = row.at("user_id").get<std::string>();
      t.created_at = parse_timestamp(row.at("created_at").get<std::string>());
      t.text = row.at("text").get<std::string>();
      auto kind = corpus::parse_kind(row.at("kind").get<std::string>());
      if (!kind) throw Error(fmt::format("tweet {} has an unknown kind", t.id));
      t.kind = *kind;
      if (!row.at("parent_id").is_null()) t.parent_id = row.at("parent_id").get<std::string>();
      out.push_back(std::move(t));
    }
    return out;
  });
}

json documents_to_json(const corpus::DocumentSet& docs) {
  json rows = json::array();
  for (const auto& d : docs.documents) {
    rows.push_back({{"doc_id", d.doc_id}, {"user_id", d.user_id}, {"date", format_day(d.date)}, {"tokens", d.tokens}});
  }
  return {{"dropped_short", docs.dropped_short}, {"vocabulary", docs.vocabulary.terms()}, {"documents", std::move(rows)}};
}

corpus::DocumentSet documents_from_json(const json& j) {
  return guarded("documents", [&] {
    corpus::DocumentSet out;
    out.dropped_short = j.at("dropped_short").get<std::size_t>();
    out.vocabulary = corpus::Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    for (const auto& row : j.at("documents")) {
      out.documents.push_back({row.at("doc_id").get<std::string>(), row.at("user_id").get<std::string>(),
                               parse_day(row.at("date").get<std::string>()),
                               row.at("tokens").get<std::vector<std::string>>()});
    }
    return out;
  });
}

json graph_to_json(const graph::InteractionGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"source", g.nodes()[e.source]}, {"target", g.nodes()[e.target]}, {"kind", graph::to_string(e.kind)}});
  }
  return {{"nodes", g.nodes()}, {"edges", std::move(edges)}};
}

graph::InteractionGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    std::vector<graph::NamedEdge> edges;
    for (const auto& e : j.at("edges")) {
      auto kind = graph::parse_edge_kind(e.at("kind").get<std::string>());
      if (!kind) throw Error("unknown edge kind");
      edges.push_back({e.at("source").get<std::string>(), e.at("target").get<std::string>(), *kind});
    }
    return graph::InteractionGraph(j.at("nodes").get<std::vector<std::string>>(), edges);
  });
}

json hits_to_json(const graph::HitsScores& scores, const graph::HitsOptions& options) {
  json nodes = json::array();
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) {
    nodes.push_back({{"id", scores.nodes[i]}, {"authority", scores.authority[i]}, {"hub", scores.hub[i]}});
  }
  return {{"max_iter", options.max_iter},
          {"tol", options.tol},
          {"iterations", scores.iterations},
          {"converged", scores.converged},
          {"nodes", std::move(nodes)}};
}

graph::HitsScores hits_from_json(const json& j) {
  return guarded("hits", [&] {
    graph::HitsScores s;
    s.iterations = j.at("iterations").get<int>();
    s.converged = j.at("converged").get<bool>();
    for (const auto& n : j.at("nodes")) {
      s.nodes.push_back(n.at("id").get<std::string>());
      s.authority.push_back(n.at("authority").get<double>());
      s.hub.push_back(n.at("hub").get<double>());
    }
    return s;
  });
}

json partition_to_json(const partition::Partition& p) {
  return {{"threshold", p.threshold},
          {"leader_authority_share", p.leader_authority_share},
          {"leader_fraction", p.leader_fraction},
          {"leaders", p.leaders},
          {"majority", p.majority}};
}

partition::Partition partition_from_json(const json& j) {
  return guarded("partition", [&] {
    partition::Partition p;
    p.threshold = j.at("threshold").get<double>();
    p.leader_authority_share = j.at("leader_authority_share").get<double>();
    p.leader_fraction = j.at("leader_fraction").get<double>();
    p.leaders = j.at("leaders").get<std::vector<std::string>>();
    p.majority = j.at("majority").get<std::vector<std::string>>();
    return p;
  });
}

json read_json(const fs::path& dir, std::string_view name, std::string_view producer) {
  const auto path = dir / name;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UserError(fmt::format("missing artifact '{}'; run the '{}' stage first", path.string(), producer));
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UserError(fmt::format("cannot parse '{}': {}; rerun the '{}' stage", path.string(), e.what(), producer));
  }
  const auto version = j.is_object() && j.contains("schema_version") && j["schema_version"].is_string()
                           ? j["schema_version"].get<std::string>()
                           : std::string("(none)");
  if (version != kSchemaVersion) {
    throw UserError(fmt::format("artifact '{}' has schema version {}, expected {}; rerun the '{}' stage",
                                path.string(), version, kSchemaVersion, producer));
  }
  return j;
}

void write_text(const fs::path& dir, std::string_view name, std::string_view text) {
  const auto path = dir / name;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UserError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out.flush()) throw UserError(fmt::format("failed writing '{}'", path.string()));
}

void write_json(const fs::path& dir, std::string_view name, json j) {
  if (j.is_object()) j["schema_version"] = kSchemaVersion;
  write_text(dir, name, j.dump(2) + "\n");
}

}  // namespace influencer::pipeline::artifacts
