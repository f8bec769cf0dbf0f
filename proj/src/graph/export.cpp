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

#include "influencer/export.hpp"

#include <fstream>
#include <unordered_set>

#include <fmt/format.h>

#include "influencer/csv.hpp"

namespace influencer::graph {
namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Node index -> position in scores, checking coverage.
std::vector<std::size_t> align_scores(const InteractionGraph& graph, const HitsScores& scores) {
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) pos.emplace(scores.nodes[i], i);
  std::vector<std::size_t> out;
  out.reserve(graph.node_count());
  for (const auto& node : graph.nodes()) {
    auto it = pos.find(node);
    if (it == pos.end()) throw Error(fmt::format("no HITS score for node {}", node));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

std::string to_gexf(const InteractionGraph& graph, const HitsScores& scores, const partition::Partition& partition) {
  if (graph.node_count() == 0) throw Error("cannot export an empty graph");
  const auto score_pos = align_scores(graph, scores);
  const auto leaders = partition.leader_set();
  const std::unordered_set<std::string_view> majority(partition.majority.begin(), partition.majority.end());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out += "  <meta>\n    <creator>influencer-topics</creator>\n    <description>comment/retweet interaction network</description>\n  </meta>\n";
  out += "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
  out += "    <attributes class=\"node\">\n";
  out += "      <attribute id=\"authority\" title=\"authority\" type=\"double\"/>\n";
  out += "      <attribute id=\"hub\" title=\"hub\" type=\"double\"/>\n";
  out += "      <attribute id=\"group\" title=\"group\" type=\"string\"/>\n";
  out += "    </attributes>\n";
  out += "    <attributes class=\"edge\">\n";
  out += "      <attribute id=\"kind\" title=\"kind\" type=\"string\"/>\n";
  out += "    </attributes>\n";

  out += "    <nodes>\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    const auto& id = graph.nodes()[v];
    const char* group = nullptr;
    if (leaders.contains(id)) {
      group = "leader";
    } else if (majority.contains(id)) {
      group = "majority";
    } else {
      throw Error(fmt::format("node {} is in neither partition group", id));
    }
    const auto s = score_pos[v];
    const auto esc = xml_escape(id);
    out += fmt::format(
        "      <node id=\"{0}\" label=\"{0}\">\n        <attvalues>\n"
        "          <attvalue for=\"authority\" value=\"{1}\"/>\n"
        "          <attvalue for=\"hub\" value=\"{2}\"/>\n"
        "          <attvalue for=\"group\" value=\"{3}\"/>\n"
        "        </attvalues>\n      </node>\n",
        esc, scores.authority[s], scores.hub[s], group);
  }
  out += "    </nodes>\n";

  out += "    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& e : graph.edges()) {
    out += fmt::format(
        "      <edge id=\"{}\" source=\"{}\" target=\"{}\">\n        <attvalues>\n"
        "          <attvalue for=\"kind\" value=\"{}\"/>\n        </attvalues>\n      </edge>\n",
        edge_id++, xml_escape(graph.nodes()[e.source]), xml_escape(graph.nodes()[e.target]), to_string(e.kind));
  }
  out += "    </edges>\n";
  out += "  </graph>\n</gexf>\n";
  return out;
}

void export_gexf(const InteractionGraph& graph, const HitsScores& scores, const partition::Partition& partition,
                 const std::filesystem::path& path) {
  const auto doc = to_gexf(graph, scores, partition);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UserError(fmt::format("cannot write '{}'", path.string()));
  out << doc;
  if (!out.flush()) throw UserError(fmt::format("failed writing '{}'", path.string()));
}

std::string nodes_csv(const HitsScores& scores, const partition::Partition& partition) {
  const auto leaders = partition.leader_set();
  std::string out = "node_id,authority,hub,group\n";
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) {
    out += fmt::format("{},{},{},{}\n", csv::escape(scores.nodes[i]), scores.authority[i], scores.hub[i],
                       leaders.contains(scores.nodes[i]) ? "leader" : "majority");
  }
  return out;
}

}  // namespace influencer::graph
