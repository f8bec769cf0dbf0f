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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero if any fail. Usage: acceptance <path to influencer-topics>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "influencer/analysis.hpp"
#include "influencer/corpus.hpp"
#include "influencer/graph.hpp"
#include "influencer/partition.hpp"
#include "influencer/synth.hpp"
#include "influencer/topics.hpp"
#include "support/test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace influencer;

/// Collects the first few failure messages of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string s = fmt::format("{} failure(s)", failures_);
    for (const auto& m : messages_) s += "; " + m;
    return s;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. HITS against a dense eigenvector oracle.
std::string hits_oracle(Check& check) {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(2, 50);
  // Sparse graphs can have a small eigengap, so iterate to a tight tolerance.
  const graph::HitsOptions tight{10000, 1e-13};
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int graphs = 0;
  for (double p : {0.05, 0.2, 0.5}) {
    for (int trial = 0; trial < 70; ++trial, ++graphs) {
      const auto g = testing::random_graph(rng, size(rng), p);
      const auto s = graph::hits(g, tight);
      const double d = testing::l1_distance(s.authority, testing::dense_authority_oracle(g));
      worst = std::max(worst, d);
      check.expect(d <= 1e-6, fmt::format("p={} n={} L1={:.3g}", p, g.node_count(), d));
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 10.0, fmt::format("took {:.2f}s", elapsed));
  return fmt::format("{} graphs, worst L1 {:.2e}, {:.2f}s", graphs, worst, elapsed);
}

// 2. Closed-form HITS cases.
std::string hits_closed_forms(Check& check) {
  const std::vector<graph::NamedEdge> single = {{"A", "B"}};
  const auto s = graph::hits(graph::InteractionGraph({"A", "B"}, single));
  check.expect(*s.authority_of("A") == 0.0 && *s.authority_of("B") == 1.0, "single edge authority != {0, 1}");

  std::vector<graph::NamedEdge> complete;
  for (const char* a : {"x", "y", "z"}) {
    for (const char* b : {"x", "y", "z"}) {
      if (std::string(a) != b) complete.push_back({a, b});
    }
  }
  const auto c = graph::hits(graph::InteractionGraph({"x", "y", "z"}, complete));
  for (double v : c.authority) check.expect(std::abs(v - 1.0 / 3.0) <= 1e-9, fmt::format("complete: {}", v));
  for (double v : c.hub) check.expect(std::abs(v - 1.0 / 3.0) <= 1e-9, fmt::format("complete hub: {}", v));
  return "single edge {0, 1}; complete 3-digraph uniform";
}

// 3. Partition properties.
std::string partition_properties(Check& check) {
  const auto make = [](std::vector<std::string> ids, std::vector<double> a) {
    graph::HitsScores s;
    s.nodes = std::move(ids);
    s.authority = std::move(a);
    s.hub.assign(s.nodes.size(), 0.0);
    return s;
  };
  const auto worked = partition::partition_by_authority(make({"a", "b", "c"}, {0.5, 0.3, 0.2}), 0.8);
  check.expect(worked.leaders == std::vector<std::string>{"a", "b"}, "worked example leaders != [a, b]");
  check.expect(partition::round4(2559.0 / 355139.0) == 0.0072, "2559 / 355139 does not round to 0.0072");

  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> size(1, 80), level(0, 8);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::exponential_distribution<double> heavy(1.0);
  std::bernoulli_distribution coarse(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    std::vector<std::string> ids;
    std::vector<double> a;
    for (int i = 0; i < n; ++i) {
      ids.push_back(fmt::format("u{:03d}", i));
      a.push_back(coarse(rng) ? level(rng) * 0.25 : std::pow(heavy(rng), 2.0));
    }
    if (std::accumulate(a.begin(), a.end(), 0.0) == 0.0) a[0] = 1.0;
    const auto s = make(ids, a);
    const double total = std::accumulate(a.begin(), a.end(), 0.0);
    const double threshold = trial % 10 == 0 ? 1.0 : unit(rng);
    const auto p = partition::partition_by_authority(s, threshold);

    // Prefix rule: the leaders are the first |L| users in (-authority, id)
    // order, that prefix reaches the threshold, and one fewer would not.
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x] != a[y] ? a[x] > a[y] : ids[x] < ids[y]; });
    double cum = 0.0, before_last = 0.0;
    bool prefix = p.leaders.size() + p.majority.size() == ids.size();
    for (std::size_t i = 0; i < p.leaders.size() && prefix; ++i) {
      prefix = p.leaders[i] == ids[order[i]];
      before_last = cum;
      cum += a[order[i]];
    }
    check.expect(prefix, fmt::format("trial {}: leaders are not the sorted prefix", trial));
    check.expect(cum / total >= threshold - partition::kShareTolerance, fmt::format("trial {}: share too low", trial));
    if (threshold < 1.0) {
      check.expect(before_last / total < threshold - partition::kShareTolerance,
                   fmt::format("trial {}: prefix not minimal", trial));
    }

    auto scaled = s;
    for (double& v : scaled.authority) v *= 123.25;
    check.expect(partition::partition_by_authority(scaled, threshold).leaders == p.leaders,
                 fmt::format("trial {}: not scale invariant", trial));

    const auto lower = partition::partition_by_authority(s, threshold * 0.7);
    check.expect(lower.leaders.size() <= p.leaders.size() &&
                     std::equal(lower.leaders.begin(), lower.leaders.end(), p.leaders.begin()),
                 fmt::format("trial {}: not monotone in threshold", trial));

    auto shuffled = s;
    std::vector<std::size_t> perm(order);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.nodes[i] = s.nodes[perm[i]];
      shuffled.authority[i] = s.authority[perm[i]];
    }
    const auto q = partition::partition_by_authority(shuffled, threshold);
    check.expect(q.leaders == p.leaders && q.majority == p.majority,
                 fmt::format("trial {}: depends on input order", trial));
  }
  return "worked example [a, b]; 2559/355139 = 0.72%; 1000 random score maps";
}

// 4. Word-frequency factor reproduction.
std::string frequency_factors(Check& check) {
  double worst = 0.0;
  for (const auto& row : testing::printed_frequency_rows()) {
    const double f = analysis::relative_difference(row.op_pct, row.maj_pct);
    worst = std::max(worst, std::abs(f - row.printed_factor));
    check.expect(testing::factor_matches(f, row.printed_factor),
                 fmt::format("{}: {:.4f} vs {}", row.word, f, row.printed_factor));
  }
  const double price = analysis::relative_difference(0.85, 1.89);
  check.expect(std::abs(price - 1.22) <= 0.005, fmt::format("price factor {:.4f}", price));
  return fmt::format("10 rows, price {:.4f}, largest gap {:.3f}", price, worst);
}

bool row_stochastic(const topics::Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (double v : m.row(r)) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) return false;
  }
  return true;
}

struct PlantedRun {
  synth::SyntheticDataset data;
  corpus::DocumentSet docs;
  topics::LdaConfig config;
};

const PlantedRun& planted() {
  static const PlantedRun run = [] {
    synth::SynthOptions o;
    o.docs = 1000;
    o.doc_length = 50;
    o.topics = 5;
    o.seed = 7;
    PlantedRun r{synth::make_synthetic(o), {}, topics::LdaConfig::with_topics(5)};
    r.docs = corpus::build_documents(r.data.tweets, corpus::StopwordList::bundled());
    r.config.seed = 7;
    return r;
  }();
  return run;
}

// 5. Planted-topic recovery.
std::string planted_recovery(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  const auto& run = planted();
  check.expect(run.docs.vocabulary.size() == 25, fmt::format("vocabulary has {} terms", run.docs.vocabulary.size()));
  const auto m = topics::train_lda(run.docs.documents, run.docs.vocabulary, run.config);
  const auto cos = synth::topic_recovery(m, run.data.phi, run.data.terms);
  for (std::size_t k = 0; k < cos.size(); ++k) {
    check.expect(cos[k] >= 0.9, fmt::format("planted topic {} best cosine {:.4f}", k, cos[k]));
  }
  const auto& t = m.log_likelihood_trace;
  const std::size_t q = t.size() / 4;
  const double first = std::accumulate(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(q), 0.0) / q;
  const double last = std::accumulate(t.end() - static_cast<std::ptrdiff_t>(q), t.end(), 0.0) / q;
  check.expect(last > first, fmt::format("log-likelihood quartiles {:.1f} -> {:.1f}", first, last));
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 120.0, fmt::format("took {:.1f}s", elapsed));
  return fmt::format("min cosine {:.4f}, log-likelihood {:.0f} -> {:.0f}, {:.1f}s",
                     *std::min_element(cos.begin(), cos.end()), first, last, elapsed);
}

// 6. Row-stochastic factors and bit-identical reruns.
std::string stochastic_and_deterministic(Check& check) {
  const auto& run = planted();
  auto config = run.config;
  config.iterations = 300;
  config.burn_in = 150;
  const auto a = topics::train_lda(run.docs.documents, run.docs.vocabulary, config);
  const auto b = topics::train_lda(run.docs.documents, run.docs.vocabulary, config);
  check.expect(row_stochastic(a.phi) && row_stochastic(a.theta), "rows do not sum to 1");
  check.expect(topics::to_json(a).dump() == topics::to_json(b).dump(), "same seed gave different model files");

  // A group-sized model as well.
  std::vector<corpus::Document> half(run.docs.documents.begin(),
                                     run.docs.documents.begin() + static_cast<std::ptrdiff_t>(run.docs.documents.size() / 2));
  const auto c = topics::train_lda(half, run.docs.vocabulary, config);
  check.expect(row_stochastic(c.phi) && row_stochastic(c.theta), "half-corpus rows do not sum to 1");
  return "3 models row-stochastic within 1e-9; reruns byte-identical";
}

// 7. Similarity self-test and cosine trivials.
std::string similarity_self_test(Check& check) {
  const auto& run = planted();
  auto config = run.config;
  config.iterations = 100;
  config.burn_in = 50;
  const auto community = topics::train_lda(run.docs.documents, run.docs.vocabulary, config);
  auto permuted = community;
  const std::size_t K = community.topic_count();
  for (std::size_t k = 0; k < K; ++k) {
    const auto src = community.phi.row((k + 2) % K);
    std::copy(src.begin(), src.end(), permuted.phi.row(k).begin());
  }
  const auto report = analysis::group_similarity(community, permuted);
  check.expect(report.average == 1.0, fmt::format("permuted average {:.17g}", report.average));

  const std::vector<double> u{0.1, 0.2, 0.7}, e1{1, 0, 0}, e2{0, 1, 0}, h{1, 1, 0};
  check.expect(std::abs(analysis::cosine_similarity(u, u) - 1.0) <= 1e-12, "identical != 1");
  check.expect(analysis::cosine_similarity(e1, e2) == 0.0, "orthogonal != 0");
  const double hand = analysis::cosine_similarity(h, e1);
  check.expect(std::abs(hand - 1.0 / std::sqrt(2.0)) <= 1e-9, fmt::format("hand case {:.12f}", hand));
  return fmt::format("permuted average {:.1f}; 1/sqrt(2) case {:.9f}", report.average, hand);
}

// 8. Pearson r and p-values.
std::string pearson(Check& check) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7};
  std::vector<double> up, down;
  for (double v : x) {
    up.push_back(3.0 * v - 2.0);
    down.push_back(-0.5 * v + 4.0);
  }
  check.expect(std::abs(analysis::pearson_r(x, up).r - 1.0) <= 1e-12, "y = 3x - 2 is not r = 1");
  check.expect(std::abs(analysis::pearson_r(x, down).r + 1.0) <= 1e-12, "y = -x/2 + 4 is not r = -1");

  const std::vector<double> hx{1, 2, 3, 4, 5}, hy{2, 1, 4, 3, 5};
  const auto hand = analysis::pearson_r(hx, hy);
  check.expect(std::abs(hand.r - 0.8) <= 1e-12, fmt::format("hand case r = {:.15f}", hand.r));
  check.expect(std::abs(hand.p_value - testing::kHandCaseP) <= 1e-6, fmt::format("hand case p = {:.9f}", hand.p_value));

  double worst = 0.0;
  for (const auto& row : testing::student_t_table()) {
    const double p = analysis::student_t_two_tailed(row.t, row.df);
    worst = std::max(worst, std::abs(p - row.p));
    check.expect(std::abs(p - row.p) <= 1e-6, fmt::format("df={} t={}: {:.9f} vs {:.9f}", row.df, row.t, p, row.p));
  }
  return fmt::format("r = {:.12f}, p = {:.9f}; t table worst gap {:.1e}", hand.r, hand.p_value, worst);
}

struct Cli {
  std::string binary;
  fs::path log;

  int operator()(const std::string& args) const {
    const auto cmd = fmt::format("INFLUENCER_TOPICS_LOG=warn '{}' {} >> '{}' 2>&1", binary, args, log.string());
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

std::vector<fs::path> relative_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), dir));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json manifest_of(const fs::path& out) {
  return nlohmann::json::parse(testing::read_file(out / "manifest.json"));
}

// 9. End-to-end determinism through the command-line tool.
std::string end_to_end(Check& check, const std::string& binary) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path config = fs::path(INFLUENCER_SOURCE_DIR) / "data" / "synthetic" / "config.toml";
  if (!fs::exists(config)) {
    check.expect(false, "bundled dataset missing: " + config.string());
    return "";
  }
  testing::TempDir dir;
  const Cli cli{binary, dir.path() / "cli.log"};
  const auto first = dir.path() / "first", second = dir.path() / "second", chained = dir.path() / "chained";
  check.expect(cli(fmt::format("run --config '{}' --out '{}'", config.string(), first.string())) == 0, "first run failed");
  check.expect(cli(fmt::format("run --config '{}' --out '{}'", config.string(), second.string())) == 0, "second run failed");
  for (const char* stage : {"ingest", "graph", "hits", "partition", "lda", "similarity", "frequencies", "correlate",
                            "export-gexf"}) {
    check.expect(cli(fmt::format("{} --config '{}' --out '{}'", stage, config.string(), chained.string())) == 0,
                 fmt::format("stage {} failed", stage));
  }
  if (!check.ok()) {
    fmt::print(stderr, "{}", testing::read_file(cli.log));
    return "";
  }

  const auto m1 = manifest_of(first), m2 = manifest_of(second), m3 = manifest_of(chained);
  check.expect(m1["complete"].get<bool>(), "first manifest incomplete");
  check.expect(m1["files"] == m2["files"], "rerun changed manifest hashes");
  check.expect(m1["files"] == m3["files"], "chained stages differ from the single run");

  // File-for-file comparison, manifest aside (its config echoes the out directory).
  const auto files = relative_files(first);
  check.expect(files == relative_files(chained), "chained run wrote a different file set");
  std::size_t compared = 0;
  for (const auto& f : files) {
    if (f == "manifest.json") continue;
    ++compared;
    check.expect(testing::read_file(first / f) == testing::read_file(chained / f), "differs: " + f.string());
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 300.0, fmt::format("took {:.1f}s", elapsed));
  return fmt::format("{} files identical across 2 runs and 9 chained stages, {:.1f}s", compared, elapsed);
}

// 10. Preprocessing contract on random unicode.
std::string random_unicode_documents(Check& check) {
  std::mt19937_64 rng(1010);
  // Code points from several planes, plus ASCII words so that documents survive.
  const std::vector<std::pair<char32_t, char32_t>> ranges = {
      {0x20, 0x7e}, {0xa0, 0x24f}, {0x370, 0x3ff}, {0x400, 0x4ff}, {0x4e00, 0x9fff}, {0x1f300, 0x1faff}, {0x10000, 0x10ffff}};
  const std::vector<std::string> words = {"Blockchain", "MINING", "node", "prices", "protocols", "Trading", "wallets"};
  std::uniform_int_distribution<std::size_t> pick_range(0, ranges.size() - 1), pick_word(0, words.size() - 1);
  std::uniform_int_distribution<int> pieces(0, 30);
  std::bernoulli_distribution use_word(0.35);
  const auto encode = [](char32_t c, std::string& out) {
    if (c >= 0xd800 && c <= 0xdfff) c = 0xfffd;
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xc0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3f));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xe0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3f));
      out += static_cast<char>(0x80 | (c & 0x3f));
    } else {
      out += static_cast<char>(0xf0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3f));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3f));
      out += static_cast<char>(0x80 | (c & 0x3f));
    }
  };

  std::vector<corpus::RawTweet> tweets;
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    for (int n = pieces(rng); n > 0; --n) {
      if (use_word(rng)) {
        text += words[pick_word(rng)];
      } else {
        const auto [lo, hi] = ranges[pick_range(rng)];
        std::uniform_int_distribution<std::uint32_t> cp(lo, hi);
        for (int len = 1 + static_cast<int>(rng() % 6); len > 0; --len) encode(static_cast<char32_t>(cp(rng)), text);
      }
      text += ' ';
    }
    corpus::RawTweet t;
    t.id = fmt::format("r{:05d}", i);
    t.user_id = "u";
    t.text = text;
    tweets.push_back(std::move(t));
  }
  const auto set = corpus::build_documents(tweets, corpus::StopwordList::bundled());
  std::size_t tokens = 0;
  for (const auto& d : set.documents) {
    check.expect(d.tokens.size() >= corpus::kMinDocumentTokens, d.doc_id + ": too few tokens");
    for (const auto& t : d.tokens) {
      ++tokens;
      check.expect(t.size() >= corpus::kMinTokenLength, d.doc_id + ": short token " + t);
      check.expect(std::all_of(t.begin(), t.end(), [](char c) { return c >= 'a' && c <= 'z'; }),
                   d.doc_id + ": token not lowercase alphabetic");
    }
  }
  check.expect(!set.documents.empty(), "no documents survived");
  return fmt::format("{} tweets -> {} documents, {} tokens", tweets.size(), set.documents.size(), tokens);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    fmt::print(stderr, "usage: acceptance <influencer-topics binary>\n");
    return 2;
  }
  const std::string binary = argv[1];

  struct Criterion {
    int id;
    const char* name;
    std::function<std::string(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "HITS matches dense eigenvector oracle", hits_oracle},
      {2, "HITS closed-form cases", hits_closed_forms},
      {3, "partition properties", partition_properties},
      {4, "word-frequency factor reproduction", frequency_factors},
      {5, "LDA planted-topic recovery", planted_recovery},
      {6, "row-stochastic factors and deterministic models", stochastic_and_deterministic},
      {7, "similarity self-test", similarity_self_test},
      {8, "Pearson correctness", pearson},
      {9, "end-to-end determinism", [&](Check& c) { return end_to_end(c, binary); }},
      {10, "preprocessing contract", random_unicode_documents},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    std::string detail;
    try {
      detail = c.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.ok()) {
      fmt::print("PASS {:2d} {}: {}\n", c.id, c.name, detail);
    } else {
      ++failed;
      fmt::print("FAIL {:2d} {}: {}\n", c.id, c.name, check.summary());
    }
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
