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

// Command-line driver: the full pipeline, single stages, and the synthetic
// dataset generator.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "influencer/pipeline.hpp"
#include "influencer/synth.hpp"

namespace {

namespace fs = std::filesystem;
using influencer::pipeline::PipelineConfig;
using influencer::pipeline::Stage;

constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

struct Flags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  int k = 0;
  int max_iter = 0;
  int window_days = 0;
  std::string format;

  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* max_iter_opt = nullptr;
  CLI::Option* window_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

void add_pipeline_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "Pipeline config file")->required()->check(CLI::ExistingFile);
  f.out_opt = cmd.add_option("--out", f.out, "Output directory (overrides 'out')");
  f.seed_opt = cmd.add_option("--seed", f.seed, "Random seed (overrides 'seed')");
  f.threshold_opt = cmd.add_option("--threshold", f.threshold, "Cumulative authority share for opinion leaders");
  f.k_opt = cmd.add_option("--k", f.k, "Number of LDA topics");
  f.max_iter_opt = cmd.add_option("--max-iter", f.max_iter, "HITS iteration cap");
  f.window_opt = cmd.add_option("--window-days", f.window_days, "Rolling-average window in days");
  f.format_opt = cmd.add_option("--format", f.format, "Tweet file format")
                     ->check(CLI::IsMember({"json", "jsonl", "csv"}));
}

PipelineConfig effective_config(const Flags& f) {
  auto c = PipelineConfig::load(f.config);
  if (f.out_opt->count()) c.out = fs::absolute(f.out).lexically_normal();
  if (f.seed_opt->count()) c.seed = f.seed;
  if (f.threshold_opt->count()) c.threshold = f.threshold;
  if (f.k_opt->count()) c.lda_k = f.k;
  if (f.max_iter_opt->count()) c.hits.max_iter = f.max_iter;
  if (f.window_opt->count()) c.window_days = f.window_days;
  if (f.format_opt->count()) c.tweets_format = influencer::corpus::parse_format(f.format);
  return c;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("influencer-topics");
  logger->set_pattern("%^%l%$: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("INFLUENCER_TOPICS_LOG")) {
    const std::string level = env;
    if (level == "error") {
      spdlog::set_level(spdlog::level::err);
    } else if (level == "warn") {
      spdlog::set_level(spdlog::level::warn);
    } else if (level == "info") {
      spdlog::set_level(spdlog::level::info);
    } else if (level == "debug") {
      spdlog::set_level(spdlog::level::debug);
    } else {
      spdlog::warn("ignoring INFLUENCER_TOPICS_LOG={} (expected error, warn, info or debug)", level);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Opinion-leader detection and per-group topic analysis for tweet corpora",
               "influencer-topics"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Run every stage from ingestion to reports");
  add_pipeline_flags(*run, run_flags);

  std::vector<std::pair<Stage, CLI::App*>> stage_cmds;
  std::vector<Flags> stage_flags(std::size(influencer::pipeline::kAllStages));
  for (std::size_t i = 0; i < std::size(influencer::pipeline::kAllStages); ++i) {
    const auto stage = influencer::pipeline::kAllStages[i];
    auto* cmd = app.add_subcommand(std::string(influencer::pipeline::to_string(stage)),
                                   fmt::format("Run the {} stage on cached artifacts", to_string(stage)));
    add_pipeline_flags(*cmd, stage_flags[i]);
    stage_cmds.emplace_back(stage, cmd);
  }

  influencer::synth::SynthOptions synth_options;
  std::string synth_out = "synthetic";
  auto* synth = app.add_subcommand("synth", "Write the deterministic planted-topic dataset");
  synth->add_option("--docs", synth_options.docs, "Number of tweets")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_options.seed, "Random seed");
  synth->add_option("--out", synth_out, "Output directory");
  synth->add_option("--topics", synth_options.topics, "Planted topics (1-10)");
  synth->add_option("--doc-length", synth_options.doc_length, "Words per tweet");
  synth->add_option("--users", synth_options.users, "Number of users (0 picks docs / 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  try {
    if (run->parsed()) {
      influencer::pipeline::run_pipeline(effective_config(run_flags));
      spdlog::info("done");
      return 0;
    }
    for (std::size_t i = 0; i < stage_cmds.size(); ++i) {
      if (stage_cmds[i].second->parsed()) {
        influencer::pipeline::run_stage(effective_config(stage_flags[i]), stage_cmds[i].first);
        return 0;
      }
    }
    if (synth->parsed()) {
      const auto data = influencer::synth::make_synthetic(synth_options);
      influencer::synth::write_dataset(data, synth_options, synth_out);
      spdlog::info("wrote {} tweets to {}", data.tweets.size(), synth_out);
      return 0;
    }
  } catch (const influencer::UserError& e) {
    spdlog::error("{}", e.what());
    return kExitUser;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
