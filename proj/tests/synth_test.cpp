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
#include <set>

#include <gtest/gtest.h>

#include "influencer/synth.hpp"
#include "support/test_support.hpp"

namespace influencer::synth {
namespace {

SynthOptions small(std::uint64_t seed = 7) {
  SynthOptions o;
  o.docs = 300;
  o.doc_length = 20;
  o.seed = seed;
  return o;
}

TEST(SynthTest, PlantedTopicsAreGridRows) {
  const auto d = make_synthetic(small());
  ASSERT_EQ(d.terms.size(), 25u);
  ASSERT_EQ(d.phi.rows(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    double sum = 0.0;
    for (std::size_t c = 0; c < 25; ++c) {
      sum += d.phi(k, c);
      EXPECT_EQ(d.phi(k, c) > 0.0, c / 5 == k);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  for (std::size_t i = 0; i < d.theta.rows(); ++i) {
    double sum = 0.0;
    for (double v : d.theta.row(i)) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(SynthTest, ColumnTopicsBeyondFive) {
  auto o = small();
  o.topics = 7;
  const auto d = make_synthetic(o);
  for (std::size_t c = 0; c < 25; ++c) EXPECT_EQ(d.phi(6, c) > 0.0, c % 5 == 1);
}

TEST(SynthTest, TweetsAreValidAndParentsResolve) {
  const auto d = make_synthetic(small());
  ASSERT_EQ(d.tweets.size(), 300u);
  std::set<std::string> seen;
  for (const auto& t : d.tweets) {
    EXPECT_FALSE(corpus::validate(t).has_value()) << t.id;
    if (t.parent_id) {
      EXPECT_TRUE(seen.count(*t.parent_id)) << t.id;
    }
    seen.insert(t.id);
  }
  for (const auto& p : d.prices.points()) EXPECT_GT(p.value, 0.0);
}

TEST(SynthTest, SameSeedSameFiles) {
  testing::TempDir dir;
  const auto o = small(11);
  write_dataset(make_synthetic(o), o, dir.path() / "a");
  write_dataset(make_synthetic(o), o, dir.path() / "b");
  for (const char* f : {"tweets.jsonl", "prices.csv", "ground_truth.json", "config.toml"}) {
    EXPECT_EQ(testing::read_file(dir.path() / "a" / f), testing::read_file(dir.path() / "b" / f)) << f;
  }
  const auto other = small(12);
  write_dataset(make_synthetic(other), other, dir.path() / "c");
  EXPECT_NE(testing::read_file(dir.path() / "a" / "tweets.jsonl"),
            testing::read_file(dir.path() / "c" / "tweets.jsonl"));
}

TEST(SynthTest, RejectsBadOptions) {
  auto o = small();
  o.docs = 0;
  EXPECT_THROW(make_synthetic(o), UserError);
  o = small();
  o.doc_length = 2;
  EXPECT_THROW(make_synthetic(o), UserError);
  o = small();
  o.topics = 11;
  EXPECT_THROW(make_synthetic(o), UserError);
}

TEST(SynthTest, RecoveryOfThePlantedModelItselfIsPerfect) {
  const auto d = make_synthetic(small());
  topics::TopicModel m;
  m.vocabulary = corpus::Vocabulary(d.terms);
  m.phi = topics::Matrix(5, 25);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t c = 0; c < 25; ++c) m.phi(k, *m.vocabulary.index(d.terms[c])) = d.phi(k, c);
  }
  for (double c : topic_recovery(m, d.phi, d.terms)) EXPECT_NEAR(c, 1.0, 1e-12);
}

}  // namespace
}  // namespace influencer::synth
