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

#ifndef INFLUENCER_SRC_BUNDLED_DATA_HPP_
#define INFLUENCER_SRC_BUNDLED_DATA_HPP_

#include <string_view>

namespace influencer::data {

// Contents of data/stopwords_en.txt and data/lemma_rules.txt, embedded at
// build time.
extern const std::string_view kStopwords;
extern const std::string_view kLemmaRules;

}  // namespace influencer::data

#endif  // INFLUENCER_SRC_BUNDLED_DATA_HPP_
