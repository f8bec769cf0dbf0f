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
#include <array>
#include <cmath>
#include <fstream>
#include <future>
#include <memory>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "influencer/csv.hpp"
#include "influencer/export.hpp"
#include "influencer/partition.hpp"
#include "influencer/pipeline.hpp"
#include "influencer/svg.hpp"
#include "pipeline/artifacts.hpp"

namespace influencer::pipeline {
namespace {

namespace fs = std::filesystem;
namespace art = artifacts;
using nlohmann::json;

constexpr std::string_view kManifest = "manifest.json";
constexpr std::array<std::string_view, 3> kGroups = {"community", "leaders", "majority"};

void require_file(const fs::path& path, std::string_view what) {
  if (path.empty()) throw UserError(fmt::format("no {} file configured", what));
  if (!fs::is_regular_file(path)) throw UserError(fmt::format("{} file not found: {}", what, path.string()));
}

void check_inputs(const PipelineConfig& c, Stage stage) {
  if (stage == Stage::kIngest) {
    require_file(c.tweets, "tweets");
    if (!c.stopwords.empty()) require_file(c.stopwords, "stopword");
  }
  if (stage == Stage::kCorrelate && c.correlate) require_file(c.prices, "price");
}

std::string num(double v) { return fmt::format("{}", v); }

// Documents authored by each group, in corpus order.
struct GroupDocs {
  std::vector<corpus::Document> leaders;
  std::vector<corpus::Document> majority;
};

GroupDocs split_documents(const std::vector<corpus::Document>& docs, const partition::Partition& p) {
  const auto leaders = p.leader_set();
  const std::unordered_set<std::string> majority(p.majority.begin(), p.majority.end());
  GroupDocs out;
  for (const auto& d : docs) {
    if (leaders.contains(d.user_id)) {
      out.leaders.push_back(d);
    } else if (majority.contains(d.user_id)) {
      out.majority.push_back(d);
    }
  }
  if (out.leaders.empty()) throw UserError("the opinion-leader group has no documents");
  if (out.majority.empty()) {
    throw UserError(fmt::format("the majority group has no documents (threshold {})", p.threshold));
  }
  return out;
}

void ingest_stage(const PipelineConfig& c) {
  const auto format = c.tweets_format.value_or(corpus::format_for_path(c.tweets));
  auto result = corpus::ingest(c.tweets, format);
  std::size_t outside = 0;
  std::erase_if(result.tweets, [&](const corpus::RawTweet& t) {
    const auto day = day_of(t.created_at);
    const bool drop = (c.date_start && day < *c.date_start) || (c.date_end && day > *c.date_end);
    outside += drop;
    return drop;
  });
  spdlog::info("ingested {} tweets ({} rejected, {} duplicate ids, {} outside the date range)", result.accepted,
               result.errors.size(), result.duplicate_ids, outside);

  auto report = result.report();
  report["outside_date_range"] = outside;
  report["tweets"] = result.tweets.size();
  art::write_json(c.out, "corpus.json", art::tweets_to_json(result.tweets));

  std::optional<corpus::DocumentSet> docs;
  try {
    docs = corpus::build_documents(result.tweets, c.stopword_list());
  } catch (const Error&) {
    art::write_json(c.out, "ingestion_report.json", report);
    throw;
  }
  report["documents"] = docs->documents.size();
  report["dropped_short"] = docs->dropped_short;
  report["vocabulary_size"] = docs->vocabulary.size();
  art::write_json(c.out, "ingestion_report.json", report);
  art::write_json(c.out, "documents.json", art::documents_to_json(*docs));
  spdlog::info("{} documents over a vocabulary of {} terms", docs->documents.size(), docs->vocabulary.size());
}

void graph_stage(const PipelineConfig& c) {
  const auto tweets = art::tweets_from_json(art::read_json(c.out, "corpus.json", "ingest"));
  const auto build = graph::build_graph(tweets);
  auto stats = build.stats.to_json();
  stats["nodes"] = build.graph.node_count();
  stats["edges"] = build.graph.edges().size();
  art::write_json(c.out, "graph.json", art::graph_to_json(build.graph));
  art::write_json(c.out, "graph_stats.json", stats);
  spdlog::info("graph has {} nodes and {} edges", build.graph.node_count(), build.graph.edges().size());
}

void hits_stage(const PipelineConfig& c) {
  const auto g = art::graph_from_json(art::read_json(c.out, "graph.json", "graph"));
  if (g.node_count() == 0) throw UserError("the interaction graph is empty: no user has a post");
  const auto scores = graph::hits(g, c.hits);
  if (!scores.converged) spdlog::warn("HITS stopped after {} iterations without converging", scores.iterations);
  art::write_json(c.out, "hits.json", art::hits_to_json(scores, c.hits));
  spdlog::info("HITS finished after {} iterations", scores.iterations);
}

void partition_stage(const PipelineConfig& c) {
  const auto scores = art::hits_from_json(art::read_json(c.out, "hits.json", "hits"));
  const auto p = partition::partition_by_authority(scores, c.threshold);
  art::write_json(c.out, "partition.json", art::partition_to_json(p));
  art::write_json(c.out, "partition_stats.json", partition::partition_stats(p, scores).to_json());

  std::vector<std::size_t> order(scores.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.authority[a] != scores.authority[b]) return scores.authority[a] > scores.authority[b];
    return scores.nodes[a] < scores.nodes[b];
  });
  long double total = 0.0L;
  for (double a : scores.authority) total += a;
  const auto leaders = p.leader_set();
  std::string table = "rank,user_id,authority,cumulative_share,group\n";
  long double running = 0.0L;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto i = order[r];
    running += scores.authority[i];
    table += fmt::format("{},{},{},{},{}\n", r, csv::escape(scores.nodes[i]), num(scores.authority[i]),
                         num(static_cast<double>(running / total)),
                         leaders.contains(scores.nodes[i]) ? "leader" : "majority");
  }
  art::write_text(c.out, "partition.csv", table);

  const auto dist = partition::authority_distribution(scores);
  std::string dist_csv = "rank,authority,log10_authority\n";
  svg::LineSeries linear{"authority", {}}, logged{"log10 authority", {}};
  for (const auto& d : dist) {
    dist_csv += fmt::format("{},{},{}\n", d.rank, num(d.authority), num(d.log10_authority));
    linear.points.emplace_back(static_cast<double>(d.rank), d.authority);
    logged.points.emplace_back(static_cast<double>(d.rank), d.log10_authority);
  }
  art::write_text(c.out, "authority_distribution.csv", dist_csv);
  art::write_text(c.out, "plots/authority_distribution.svg",
                  svg::line_chart({"Authority by rank", "rank", "authority", {}}, std::span(&linear, 1)));
  art::write_text(c.out, "plots/authority_distribution_log.svg",
                  svg::line_chart({"Authority by rank (log scale)", "rank", "log10 authority", {}},
                                  std::span(&logged, 1)));
  spdlog::info("{} opinion leaders, {} majority users", p.leaders.size(), p.majority.size());
}

void lda_stage(const PipelineConfig& c) {
  const auto docs = art::documents_from_json(art::read_json(c.out, "documents.json", "ingest"));
  const auto p = art::partition_from_json(art::read_json(c.out, "partition.json", "partition"));
  const auto groups = split_documents(docs.documents, p);
  const auto config = c.lda_config();
  if (static_cast<std::size_t>(config.topics) > docs.vocabulary.size()) {
    throw UserError(fmt::format("lda_k = {} exceeds the vocabulary size {}", config.topics, docs.vocabulary.size()));
  }

  const std::array<const std::vector<corpus::Document>*, 3> corpora = {&docs.documents, &groups.leaders,
                                                                       &groups.majority};
  std::array<std::future<topics::TopicModel>, 3> jobs;
  for (std::size_t g = 0; g < kGroups.size(); ++g) {
    spdlog::info("training {} model on {} documents", kGroups[g], corpora[g]->size());
    jobs[g] = std::async(std::launch::async,
                         [&, g] { return topics::train_lda(*corpora[g], docs.vocabulary, config); });
  }
  std::array<topics::TopicModel, 3> models;
  for (std::size_t g = 0; g < jobs.size(); ++g) models[g] = jobs[g].get();

  for (std::size_t g = 0; g < kGroups.size(); ++g) {
    art::write_json(c.out, fmt::format("model_{}.json", kGroups[g]), topics::to_json(models[g]));
    std::string table = "topic,rank,term,probability\n";
    for (std::size_t k = 0; k < models[g].topic_count(); ++k) {
      const auto words = topics::top_words_with_probability(models[g], k, static_cast<std::size_t>(c.top_words));
      for (std::size_t r = 0; r < words.size(); ++r) {
        table += fmt::format("{},{},{},{}\n", k, r, csv::escape(words[r].first), num(words[r].second));
      }
    }
    art::write_text(c.out, fmt::format("top_words_{}.csv", kGroups[g]), table);
  }
}

topics::TopicModel load_model(const PipelineConfig& c, std::string_view group) {
  return topics::model_from_json(art::read_json(c.out, fmt::format("model_{}.json", group), "lda"));
}

void similarity_stage(const PipelineConfig& c) {
  const auto community = load_model(c, "community");
  const auto leaders = analysis::group_similarity(community, load_model(c, "leaders"));
  const auto majority = analysis::group_similarity(community, load_model(c, "majority"));

  json rows = json::array();
  std::vector<svg::BarGroup> bars;
  for (std::size_t k = 0; k < community.topic_count(); ++k) {
    const auto& l = leaders.per_topic[k];
    const auto& m = majority.per_topic[k];
    rows.push_back({{"community_topic", k},
                    {"leaders", {{"best_group_topic", l.best_group_topic}, {"similarity", l.similarity}}},
                    {"majority", {{"best_group_topic", m.best_group_topic}, {"similarity", m.similarity}}}});
    bars.push_back({fmt::format("topic {}", k), {l.similarity, m.similarity}});
  }
  bars.push_back({"average", {leaders.average, majority.average}});
  art::write_json(c.out, "similarity.json",
                  {{"topics", std::move(rows)}, {"average", {{"leaders", leaders.average}, {"majority", majority.average}}}});
  const std::vector<std::string> names = {"opinion leaders", "majority users"};
  art::write_text(c.out, "plots/similarity.svg",
                  svg::bar_chart({"Topic similarity to the entire community", "community topic", "cosine similarity", {}},
                                 names, bars));
  spdlog::info("average similarity: leaders {:.4f}, majority {:.4f}", leaders.average, majority.average);
}

void frequencies_stage(const PipelineConfig& c) {
  const auto docs = art::documents_from_json(art::read_json(c.out, "documents.json", "ingest"));
  const auto p = art::partition_from_json(art::read_json(c.out, "partition.json", "partition"));
  const auto groups = split_documents(docs.documents, p);

  std::vector<std::string> words;
  for (const auto& w : c.frequency_words) words.push_back(w.word);
  const auto op = corpus::word_frequencies(groups.leaders, words);
  const auto maj = corpus::word_frequencies(groups.majority, words);

  std::string table = "category,word,leaders_pct,majority_pct,relative_difference\n";
  for (const auto& w : c.frequency_words) {
    const double a = op.at(w.word), b = maj.at(w.word);
    table += fmt::format("{},{},{},{},{}\n", csv::escape(w.category), csv::escape(w.word), num(a), num(b),
                         a > 0.0 ? num(analysis::relative_difference(a, b)) : "NA");
  }
  art::write_text(c.out, "word_frequencies.csv", table);
}

void correlate_stage(const PipelineConfig& c) {
  if (!c.correlate) {
    spdlog::info("correlation disabled; skipping");
    return;
  }
  const auto prices = analysis::read_price_csv(c.prices);
  const auto model = load_model(c, "community");
  const auto docs = art::documents_from_json(art::read_json(c.out, "documents.json", "ingest"));

  std::string series_csv = "topic,date,raw,smoothed,scaled\n";
  std::vector<analysis::WindowCorrelation> results;
  std::vector<svg::LineSeries> lines;
  auto x_of = [](Day d) { return static_cast<double>(d.time_since_epoch().count()); };

  for (std::size_t k = 0; k < model.topic_count(); ++k) {
    const auto ts = analysis::topic_weight_series(model, docs.documents, k, c.window_days);
    svg::LineSeries line{fmt::format("topic {}", k), {}};
    for (std::size_t i = 0; i < ts.raw.size(); ++i) {
      series_csv += fmt::format("{},{},{},{},{}\n", k, format_day(ts.raw[i].day), num(ts.raw[i].value),
                                num(ts.smoothed[i].value), num(ts.scaled[i].value));
      line.points.emplace_back(x_of(ts.scaled[i].day), ts.scaled[i].value);
    }
    lines.push_back(std::move(line));
    for (auto& r : analysis::windowed_correlation(ts, prices, c.windows)) results.push_back(std::move(r));
  }
  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    if (a.window.start != b.window.start) return a.window.start < b.window.start;
    return a.window.end < b.window.end;
  });

  std::set<Day> price_days;
  for (const auto& pt : prices.points()) price_days.insert(pt.day);
  std::set<Day> doc_days;
  for (const auto& d : docs.documents) doc_days.insert(d.date);

  std::string corr_csv = "window_start,window_end,topic,r,p,n\n";
  for (const auto& r : results) {
    const auto start = format_day(r.window.start), end = format_day(r.window.end);
    if (r.result) {
      corr_csv += fmt::format("{},{},{},{},{},{}\n", start, end, r.topic, num(r.result->r), num(r.result->p_value),
                              r.result->n);
    } else {
      std::size_t shared = 0;
      for (auto it = doc_days.lower_bound(r.window.start); it != doc_days.end() && *it <= r.window.end; ++it) {
        shared += price_days.contains(*it);
      }
      spdlog::warn("window {}..{} topic {}: {}", start, end, r.topic, r.error);
      corr_csv += fmt::format("{},{},{},NA,NA,{}\n", start, end, r.topic, shared);
    }
  }
  art::write_text(c.out, "topic_series.csv", series_csv);
  art::write_text(c.out, "correlations.csv", corr_csv);

  // Price mapped onto [0, 1] like the topic weights so both share one axis.
  svg::LineSeries price_line{"price (scaled)", {}};
  if (!prices.points().empty()) {
    auto [lo, hi] = std::minmax_element(prices.points().begin(), prices.points().end(),
                                        [](const auto& a, const auto& b) { return a.value < b.value; });
    const double range = hi->value - lo->value;
    for (const auto& pt : prices.points()) {
      price_line.points.emplace_back(x_of(pt.day), range > 0.0 ? (pt.value - lo->value) / range : 0.0);
    }
  }
  lines.insert(lines.begin(), std::move(price_line));
  svg::Axes axes{"Price and topic weights over time", "date", "scaled value",
                 [](double x) { return format_day(Day{std::chrono::days{static_cast<int>(std::lround(x))}}); }};
  art::write_text(c.out, "plots/price_topics.svg", svg::line_chart(axes, lines));
}

void export_stage(const PipelineConfig& c) {
  const auto g = art::graph_from_json(art::read_json(c.out, "graph.json", "graph"));
  const auto scores = art::hits_from_json(art::read_json(c.out, "hits.json", "hits"));
  const auto p = art::partition_from_json(art::read_json(c.out, "partition.json", "partition"));
  graph::export_gexf(g, scores, p, c.out / "network.gexf");
  art::write_text(c.out, "nodes.csv", graph::nodes_csv(scores, p));
}

void dispatch(const PipelineConfig& c, Stage stage) {
  switch (stage) {
    case Stage::kIngest: return ingest_stage(c);
    case Stage::kGraph: return graph_stage(c);
    case Stage::kHits: return hits_stage(c);
    case Stage::kPartition: return partition_stage(c);
    case Stage::kLda: return lda_stage(c);
    case Stage::kSimilarity: return similarity_stage(c);
    case Stage::kFrequencies: return frequencies_stage(c);
    case Stage::kCorrelate: return correlate_stage(c);
    case Stage::kExportGexf: return export_stage(c);
  }
}

void try_write_manifest(const PipelineConfig& c, Stage failed) {
  try {
    write_manifest(c, failed);
  } catch (const std::exception& e) {
    spdlog::error("could not update the manifest: {}", e.what());
  }
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kGraph: return "graph";
    case Stage::kHits: return "hits";
    case Stage::kPartition: return "partition";
    case Stage::kLda: return "lda";
    case Stage::kSimilarity: return "similarity";
    case Stage::kFrequencies: return "frequencies";
    case Stage::kCorrelate: return "correlate";
    case Stage::kExportGexf: return "export-gexf";
  }
  return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (auto s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<std::string> stage_outputs(Stage stage, const PipelineConfig& config) {
  switch (stage) {
    case Stage::kIngest: return {"ingestion_report.json", "corpus.json", "documents.json"};
    case Stage::kGraph: return {"graph.json", "graph_stats.json"};
    case Stage::kHits: return {"hits.json"};
    case Stage::kPartition:
      return {"partition.json", "partition_stats.json", "partition.csv", "authority_distribution.csv",
              "plots/authority_distribution.svg", "plots/authority_distribution_log.svg"};
    case Stage::kLda: {
      std::vector<std::string> out;
      for (auto g : kGroups) {
        out.push_back(fmt::format("model_{}.json", g));
        out.push_back(fmt::format("top_words_{}.csv", g));
      }
      return out;
    }
    case Stage::kSimilarity: return {"similarity.json", "plots/similarity.svg"};
    case Stage::kFrequencies: return {"word_frequencies.csv"};
    case Stage::kCorrelate:
      if (!config.correlate) return {};
      return {"topic_series.csv", "correlations.csv", "plots/price_topics.svg"};
    case Stage::kExportGexf: return {"network.gexf", "nodes.csv"};
  }
  return {};
}

std::string sha256_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read '{}' for hashing", file.string()));
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 initialisation failed");
  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) throw Error("SHA-256 finalisation failed");
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json build_manifest(const PipelineConfig& config, std::optional<Stage> failed_stage) {
  std::vector<std::string> paths;
  if (fs::is_directory(config.out)) {
    for (const auto& entry : fs::recursive_directory_iterator(config.out)) {
      if (!entry.is_regular_file()) continue;
      auto rel = entry.path().lexically_relative(config.out).generic_string();
      if (rel != kManifest) paths.push_back(std::move(rel));
    }
  }
  std::sort(paths.begin(), paths.end());

  json files = json::array();
  for (const auto& p : paths) {
    const auto full = config.out / p;
    files.push_back({{"path", p}, {"bytes", fs::file_size(full)}, {"sha256", sha256_hex(full)}});
  }
  bool complete = !failed_stage;
  for (auto s : kAllStages) {
    for (const auto& f : stage_outputs(s, config)) complete = complete && std::binary_search(paths.begin(), paths.end(), f);
  }
  return {{"schema_version", kSchemaVersion},
          {"complete", complete},
          {"failed_stage", failed_stage ? json(to_string(*failed_stage)) : json()},
          {"config", config.to_json()},
          {"files", std::move(files)}};
}

void write_manifest(const PipelineConfig& config, std::optional<Stage> failed_stage) {
  art::write_text(config.out, kManifest, build_manifest(config, failed_stage).dump(2) + "\n");
}

void run_stage(const PipelineConfig& config, Stage stage) {
  config.validate();
  check_inputs(config, stage);
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw UserError(fmt::format("cannot create output directory '{}': {}", config.out.string(), ec.message()));

  spdlog::info("stage {}", to_string(stage));
  try {
    dispatch(config, stage);
  } catch (const UserError& e) {
    try_write_manifest(config, stage);
    throw UserError(fmt::format("stage {} failed: {}", to_string(stage), e.what()));
  } catch (const std::exception& e) {
    try_write_manifest(config, stage);
    throw Error(fmt::format("stage {} failed: {}", to_string(stage), e.what()));
  }
  write_manifest(config, std::nullopt);
}

void run_pipeline(const PipelineConfig& config) {
  config.validate();
  for (auto s : kAllStages) check_inputs(config, s);
  for (auto s : kAllStages) run_stage(config, s);
}

}  // namespace influencer::pipeline
