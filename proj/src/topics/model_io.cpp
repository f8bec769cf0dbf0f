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

#include <fmt/format.h>

#include "influencer/topics.hpp"

namespace influencer::topics {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::size_t cols, std::string_view what) {
  if (!j.is_array()) throw UserError(fmt::format("model field '{}' must be an array of rows", what));
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw UserError(fmt::format("model field '{}' row {} has the wrong length", what, r));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace

json to_json(const LdaConfig& c) {
  return {{"topics", c.topics},       {"alpha", c.alpha},     {"beta", c.beta},
          {"iterations", c.iterations}, {"burn_in", c.burn_in}, {"seed", c.seed}};
}

LdaConfig lda_config_from_json(const json& j) {
  LdaConfig c;
  c.topics = j.at("topics").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.iterations = j.at("iterations").get<int>();
  c.burn_in = j.at("burn_in").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json to_json(const TopicModel& model) {
  return {{"schema_version", kSchemaVersion},
          {"config", to_json(model.config)},
          {"vocabulary", model.vocabulary.terms()},
          {"doc_ids", model.doc_ids},
          {"phi", matrix_to_json(model.phi)},
          {"theta", matrix_to_json(model.theta)},
          {"log_likelihood_trace", model.log_likelihood_trace}};
}

TopicModel model_from_json(const json& j) {
  if (!j.is_object() || j.value("schema_version", std::string()) != kSchemaVersion) {
    throw UserError(fmt::format("model file schema version is not {}", kSchemaVersion));
  }
  try {
    TopicModel m;
    m.config = lda_config_from_json(j.at("config"));
    m.vocabulary = corpus::Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    m.phi = matrix_from_json(j.at("phi"), m.vocabulary.size(), "phi");
    m.theta = matrix_from_json(j.at("theta"), m.phi.rows(), "theta");
    m.log_likelihood_trace = j.at("log_likelihood_trace").get<std::vector<double>>();
    if (m.doc_ids.size() != m.theta.rows()) throw UserError("model doc_ids do not match theta rows");
    return m;
  } catch (const json::exception& e) {
    throw UserError(fmt::format("malformed model file: {}", e.what()));
  }
}

}  // namespace influencer::topics
