// Copyright 2026 The kcrag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KCRAG_TOKEN_MODEL_HPP_
#define KCRAG_TOKEN_MODEL_HPP_

#include <cstdint>
#include <string_view>

namespace kcrag {

// Deterministic stand-in for an LLM tokenizer: one token per
// `chars_per_token` UTF-8 code points, rounded up.
struct TokenModel {
  enum class Mode { kExplicit, kEstimated };

  Mode mode = Mode::kEstimated;
  double chars_per_token = 4.0;

  // 0 for empty text, otherwise >= 1.
  std::uint64_t estimate(std::string_view text) const;
};

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view text);

}  // namespace kcrag

#endif  // KCRAG_TOKEN_MODEL_HPP_
