// Copyright 2026 The radlabel Authors
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

#ifndef RADLABEL_LLM_H_
#define RADLABEL_LLM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "radlabel/corpus.h"

namespace radlabel {

struct LlmExchange {
  std::string system;
  std::string user;
  std::string response;
  LabelVector labels;
};

// Key used for a category in the index legend: the short name when one is
// given, the name when it is all upper case, otherwise the lowercased name.
std::string legend_key(const Category& category);

// "{'cyst': 0, 'HCC': 1, ...}"
std::string category_legend(const std::vector<Category>& categories);

struct IclOptions {
  const Corpus* train = nullptr;
  std::size_t k = 3;
  std::uint64_t seed = 0;
};

// System and user messages for one report. With `icl`, k labeled exemplars
// drawn from icl->train (seeded, never the report itself) precede the
// request.
LlmExchange build_llm_request(const Report& report, const std::vector<Category>& categories,
                              const IclOptions* icl = nullptr);

struct LlmParse {
  LabelVector labels;
  std::vector<std::string> notes;  // ignored indices and similar oddities
};

// Total: never throws. A category is positive when its legend index starts a
// line ("3." / "3)" / "3"), when a line holds only a list of indices, or when
// its name, short name or legend key appears word-bounded anywhere.
LlmParse parse_llm_response_detailed(std::string_view text,
                                     const std::vector<Category>& categories);
LabelVector parse_llm_response(std::string_view text, const std::vector<Category>& categories);

class LlmTransport {
 public:
  virtual ~LlmTransport() = default;
  virtual std::string complete(const std::string& system, const std::string& user) = 0;
};

// SHA-256 of system + '\n' + user; the fixture map key.
std::string request_key(const std::string& system, const std::string& user);

// Replays recorded responses from a JSON object {request_key: response}.
class FixtureTransport final : public LlmTransport {
 public:
  explicit FixtureTransport(std::map<std::string, std::string> responses);
  static FixtureTransport load(const std::filesystem::path& path);

  // Throws Error when no response is recorded for the request.
  std::string complete(const std::string& system, const std::string& user) override;

 private:
  std::map<std::string, std::string> responses_;
};

class CallbackTransport final : public LlmTransport {
 public:
  using Fn = std::function<std::string(const std::string&, const std::string&)>;
  explicit CallbackTransport(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const std::string& system, const std::string& user) override {
    return fn_(system, user);
  }

 private:
  Fn fn_;
};

LlmExchange run_llm_labeler(LlmTransport& transport, const Report& report,
                            const std::vector<Category>& categories,
                            const IclOptions* icl = nullptr);

}  // namespace radlabel

#endif  // RADLABEL_LLM_H_
