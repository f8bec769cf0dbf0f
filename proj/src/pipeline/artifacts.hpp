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

#ifndef INFLUENCER_PIPELINE_ARTIFACTS_HPP_
#define INFLUENCER_PIPELINE_ARTIFACTS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/corpus.hpp"
#include "influencer/graph.hpp"
#include "influencer/partition.hpp"

namespace influencer::pipeline::artifacts {

nlohmann::json tweets_to_json(std::span<const corpus::RawTweet> tweets);
std::vector<corpus::RawTweet> tweets_from_json(const nlohmann::json& j);

nlohmann::json documents_to_json(const corpus::DocumentSet& docs);
corpus::DocumentSet documents_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const graph::InteractionGraph& g);
graph::InteractionGraph graph_from_json(const nlohmann::json& j);

nlohmann::json hits_to_json(const graph::HitsScores& scores, const graph::HitsOptions& options);
graph::HitsScores hits_from_json(const nlohmann::json& j);

nlohmann::json partition_to_json(const partition::Partition& p);
partition::Partition partition_from_json(const nlohmann::json& j);

/// Loads `dir / name`, checking the schema version. Missing files and
/// version mismatches are UserErrors that name `producer`, the stage to rerun.
nlohmann::json read_json(const std::filesystem::path& dir, std::string_view name, std::string_view producer);

/// Stamps schema_version into objects and writes with two-space indent.
void write_json(const std::filesystem::path& dir, std::string_view name, nlohmann::json j);
void write_text(const std::filesystem::path& dir, std::string_view name, std::string_view text);

}  // namespace influencer::pipeline::artifacts

#endif  // INFLUENCER_PIPELINE_ARTIFACTS_HPP_
