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

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "influencer/export.hpp"
#include "influencer/graph.hpp"
#include "influencer/partition.hpp"
#include "support/test_support.hpp"

namespace influencer::graph {
namespace {

using ::testing::ElementsAre;
using corpus::RawTweet;
using corpus::TweetKind;

RawTweet post(std::string id, std::string user) {
  return {std::move(id), std::move(user), parse_timestamp("2018-01-01"), "text", TweetKind::kPost, std::nullopt};
}

RawTweet reply(std::string id, std::string user, std::string parent, TweetKind kind = TweetKind::kComment) {
  return {std::move(id), std::move(user), parse_timestamp("2018-01-01"), "text", kind, std::move(parent)};
}

TEST(BuildGraphTest, CommentAddsEdgeToAuthor) {
  const std::vector<RawTweet> tweets = {post("1", "A"), post("2", "B"), reply("3", "B", "1")};
  const auto build = build_graph(tweets);
  EXPECT_THAT(build.graph.nodes(), ElementsAre("A", "B"));
  ASSERT_EQ(build.graph.edges().size(), 1u);
  EXPECT_EQ(build.graph.edges()[0], (Edge{1, 0, EdgeKind::kComment}));
}

TEST(BuildGraphTest, UserWithoutPostGetsNoNode) {
  const std::vector<RawTweet> tweets = {post("1", "A"), reply("2", "C", "1")};
  const auto build = build_graph(tweets);
  EXPECT_THAT(build.graph.nodes(), ElementsAre("A"));
  EXPECT_TRUE(build.graph.edges().empty());
  EXPECT_EQ(build.stats.source_not_node, 1u);
}

TEST(BuildGraphTest, NoSelfLoops) {
  const std::vector<RawTweet> tweets = {post("1", "A"), reply("2", "A", "1")};
  const auto build = build_graph(tweets);
  EXPECT_TRUE(build.graph.edges().empty());
  EXPECT_EQ(build.stats.self_interactions, 1u);
}

TEST(BuildGraphTest, MissingParentsAndDuplicatesAreCounted) {
  const std::vector<RawTweet> tweets = {post("1", "A"), post("2", "B"), reply("3", "B", "1"), reply("4", "B", "1"),
                                        reply("5", "B", "1", TweetKind::kRetweet), reply("6", "B", "gone")};
  const auto build = build_graph(tweets);
  EXPECT_EQ(build.graph.edges().size(), 2u);
  EXPECT_EQ(build.stats.interactions, 4u);
  EXPECT_EQ(build.stats.duplicates, 1u);
  EXPECT_EQ(build.stats.missing_parent, 1u);
}

TEST(BuildGraphTest, InteractionWithCommentTargetsItsAuthor) {
  // A comment on a comment points at the commenter, who must also have a post.
  const std::vector<RawTweet> tweets = {post("1", "A"), post("2", "B"), reply("3", "B", "1"), reply("4", "A", "3")};
  const auto build = build_graph(tweets);
  ASSERT_EQ(build.graph.edges().size(), 2u);
  EXPECT_EQ(build.graph.edges()[0], (Edge{0, 1, EdgeKind::kComment}));
}

TEST(InteractionGraphTest, RejectsBadEdges) {
  const std::vector<NamedEdge> self = {{"a", "a", EdgeKind::kComment}};
  EXPECT_THROW(InteractionGraph({"a"}, self), Error);
  const std::vector<NamedEdge> dangling = {{"a", "z", EdgeKind::kComment}};
  EXPECT_THROW(InteractionGraph({"a"}, dangling), Error);
}

InteractionGraph make_graph(std::vector<std::string> nodes, std::vector<std::pair<std::string, std::string>> edges) {
  std::vector<NamedEdge> named;
  for (auto& [s, t] : edges) named.push_back({s, t, EdgeKind::kComment});
  return InteractionGraph(std::move(nodes), named);
}

TEST(HitsTest, SingleEdge) {
  const auto s = hits(make_graph({"A", "B"}, {{"B", "A"}}));
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.authority_of("A"), 1.0);
  EXPECT_EQ(s.authority_of("B"), 0.0);
  EXPECT_EQ(s.hub_of("A"), 0.0);
  EXPECT_EQ(s.hub_of("B"), 1.0);
}

TEST(HitsTest, SymmetricTriangleIsUniform) {
  const auto s = hits(make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}, {"c", "b"}}));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.authority[i], 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(s.hub[i], 1.0 / 3.0, 1e-9);
  }
}

TEST(HitsTest, EdgelessGraphIsUniformFixedPoint) {
  const auto s = hits(make_graph({"a", "b", "c", "d"}, {}));
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.iterations, 0);
  EXPECT_THAT(s.authority, ElementsAre(0.25, 0.25, 0.25, 0.25));
  EXPECT_THAT(s.hub, ElementsAre(0.25, 0.25, 0.25, 0.25));
}

TEST(HitsTest, EmptyGraphIsAnError) { EXPECT_THROW(hits(InteractionGraph()), Error); }

TEST(HitsTest, StarCentreTakesAllAuthority) {
  const auto s = hits(make_graph({"c", "l1", "l2", "l3", "l4"}, {{"l1", "c"}, {"l2", "c"}, {"l3", "c"}, {"l4", "c"}}));
  EXPECT_NEAR(*s.authority_of("c"), 1.0, 1e-12);
  EXPECT_NEAR(*s.hub_of("l1"), 0.25, 1e-12);
}

TEST(HitsTest, IsolatedNodeStaysInScores) {
  const auto s = hits(make_graph({"a", "b", "z"}, {{"a", "b"}}));
  ASSERT_EQ(s.nodes.size(), 3u);
  EXPECT_EQ(s.authority_of("z"), 0.0);
}

TEST(HitsTest, ScoresAreNormalisedAndNonNegative) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph(rng, 1 + trial % 40, 0.15);
    const auto s = hits(g);
    EXPECT_NEAR(std::accumulate(s.authority.begin(), s.authority.end(), 0.0), 1.0, 1e-9);
    EXPECT_NEAR(std::accumulate(s.hub.begin(), s.hub.end(), 0.0), 1.0, 1e-9);
    for (double v : s.authority) EXPECT_GE(v, 0.0);
    for (double v : s.hub) EXPECT_GE(v, 0.0);
  }
}

// The default stopping rule is loose on sparse graphs with a small eigengap,
// so the comparison runs the same iteration to a tight tolerance.
TEST(HitsTest, MatchesDenseOracleOnRandomGraphs) {
  std::mt19937_64 rng(22);
  const HitsOptions tight{10000, 1e-13};
  for (double p : {0.05, 0.2, 0.5}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = testing::random_graph(rng, 2 + static_cast<std::size_t>(trial) % 49, p);
      const auto s = hits(g, tight);
      EXPECT_TRUE(s.converged);
      EXPECT_LT(testing::l1_distance(s.authority, testing::dense_authority_oracle(g)), 1e-6)
          << "p=" << p << " trial=" << trial;
    }
  }
}

TEST(HitsTest, InvariantUnderRelabelling) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, 12, 0.25);
    // Relabel by reversing the name order: node i becomes "m<11-i>".
    auto rename = [&](std::size_t i) { return fmt::format("m{:02d}", g.node_count() - 1 - i); };
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < g.node_count(); ++i) nodes.push_back(rename(i));
    std::vector<NamedEdge> edges;
    for (const auto& e : g.edges()) edges.push_back({rename(e.source), rename(e.target), e.kind});
    const InteractionGraph h(nodes, edges);

    const auto a = hits(g), b = hits(h);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      EXPECT_NEAR(a.authority[i], *b.authority_of(rename(i)), 1e-12);
      EXPECT_NEAR(a.hub[i], *b.hub_of(rename(i)), 1e-12);
    }
  }
}

TEST(HitsTest, DuplicateInteractionDoesNotChangeScores) {
  std::vector<RawTweet> tweets = {post("1", "A"), post("2", "B"), post("3", "C"), reply("4", "B", "1"),
                                  reply("5", "C", "1"), reply("6", "A", "3")};
  const auto before = hits(build_graph(tweets).graph);
  tweets.push_back(reply("7", "B", "1"));
  const auto after = hits(build_graph(tweets).graph);
  EXPECT_EQ(before.authority, after.authority);
  EXPECT_EQ(before.hub, after.hub);
}

TEST(HitsTest, RetweetAndCommentEdgesCountOnce) {
  std::vector<NamedEdge> both = {{"b", "a", EdgeKind::kComment}, {"b", "a", EdgeKind::kRetweet}, {"c", "b", EdgeKind::kComment}};
  std::vector<NamedEdge> one = {{"b", "a", EdgeKind::kComment}, {"c", "b", EdgeKind::kComment}};
  const auto x = hits(InteractionGraph({"a", "b", "c"}, both));
  const auto y = hits(InteractionGraph({"a", "b", "c"}, one));
  EXPECT_EQ(x.authority, y.authority);
}

namespace pt = boost::property_tree;

pt::ptree parse_gexf(const std::string& xml) {
  std::istringstream in(xml);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

std::map<std::string, std::string> attvalues(const pt::ptree& element) {
  std::map<std::string, std::string> out;
  for (const auto& [tag, v] : element.get_child("attvalues")) {
    if (tag == "attvalue") out[v.get<std::string>("<xmlattr>.for")] = v.get<std::string>("<xmlattr>.value");
  }
  return out;
}

TEST(GexfTest, TwoNodesOneEdge) {
  const auto g = make_graph({"A", "B"}, {{"B", "A"}});
  const auto s = hits(g);
  const auto p = partition::partition_by_authority(s);
  const auto tree = parse_gexf(to_gexf(g, s, p));
  const auto& graph = tree.get_child("gexf.graph");
  EXPECT_EQ(graph.get<std::string>("<xmlattr>.defaultedgetype"), "directed");
  EXPECT_EQ(graph.get_child("nodes").count("node"), 2u);
  EXPECT_EQ(graph.get_child("edges").count("edge"), 1u);
  const auto& edge = graph.get_child("edges.edge");
  EXPECT_EQ(edge.get<std::string>("<xmlattr>.source"), "B");
  EXPECT_EQ(edge.get<std::string>("<xmlattr>.target"), "A");
  EXPECT_EQ(attvalues(edge).at("kind"), "comment");
}

TEST(GexfTest, AttributesRoundTrip) {
  std::mt19937_64 rng(31);
  const auto g = testing::random_graph(rng, 30, 0.1);
  const auto s = hits(g);
  const auto p = partition::partition_by_authority(s);
  const auto tree = parse_gexf(to_gexf(g, s, p));
  std::size_t seen = 0;
  for (const auto& [tag, node] : tree.get_child("gexf.graph.nodes")) {
    if (tag != "node") continue;
    ++seen;
    const auto id = node.get<std::string>("<xmlattr>.id");
    const auto values = attvalues(node);
    EXPECT_NEAR(std::stod(values.at("authority")), *s.authority_of(id), 1e-6);
    EXPECT_NEAR(std::stod(values.at("hub")), *s.hub_of(id), 1e-6);
    EXPECT_EQ(values.at("group"), p.is_leader(id) ? "leader" : "majority");
  }
  EXPECT_EQ(seen, g.node_count());
}

TEST(GexfTest, EscapesNodeIds) {
  const auto g = make_graph({"a&b", "<c>"}, {{"a&b", "<c>"}});
  const auto s = hits(g);
  const auto tree = parse_gexf(to_gexf(g, s, partition::partition_by_authority(s)));
  EXPECT_EQ(tree.get<std::string>("gexf.graph.edges.edge.<xmlattr>.source"), "a&b");
}

TEST(GexfTest, EmptyGraphIsAnError) {
  EXPECT_THROW(to_gexf(InteractionGraph(), HitsScores{}, partition::Partition{}), Error);
}

TEST(GexfTest, UnwritablePathIsAUserError) {
  const auto g = make_graph({"A", "B"}, {{"B", "A"}});
  const auto s = hits(g);
  EXPECT_THROW(export_gexf(g, s, partition::partition_by_authority(s), "/nonexistent/dir/x.gexf"), UserError);
}

TEST(GexfTest, NodesCsv) {
  const auto g = make_graph({"A", "B"}, {{"B", "A"}});
  const auto s = hits(g);
  EXPECT_EQ(nodes_csv(s, partition::partition_by_authority(s)),
            "node_id,authority,hub,group\nA,1,0,leader\nB,0,1,majority\n");
}

}  // namespace
}  // namespace influencer::graph
