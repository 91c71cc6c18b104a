/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "editlens/resources.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "editlens/error.hpp"
#include "resources_data.hpp"

namespace editlens {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<std::vector<std::string>> parse_group_lines(std::string_view text) {
  std::vector<std::vector<std::string>> groups;
  for (std::string_view line : content_lines(text)) {
    std::vector<std::string> group;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string_view::npos) end = line.size();
      std::string entry(trim(line.substr(pos, end - pos)));
      std::transform(entry.begin(), entry.end(), entry.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (!entry.empty()) group.push_back(std::move(entry));
      pos = end + 1;
    }
    if (!group.empty()) groups.push_back(std::move(group));
  }
  return groups;
}

std::vector<std::string> parse_line_list(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view line : content_lines(text)) out.emplace_back(line);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SynonymTable::SynonymTable(std::vector<std::vector<std::string>> groups) : groups_(std::move(groups)) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (const auto& word : groups_[g]) {
      auto [it, inserted] = index_.emplace(word, g);
      if (!inserted && it->second != g) {
        fail(ErrorKind::kInvalidInput, "word '" + word + "' appears in more than one synonym group");
      }
    }
  }
}

const SynonymTable& SynonymTable::builtin() {
  static const SynonymTable table = parse(resources::kSynonyms);
  return table;
}

std::optional<std::size_t> SynonymTable::group_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string_view SynonymTable::canonical(std::string_view word) const {
  auto g = group_of(word);
  return g ? std::string_view(groups_[*g].front()) : word;
}

const std::vector<std::string>& builtin_templates() {
  static const std::vector<std::string> templates = parse_line_list(resources::kTemplates);
  return templates;
}

const std::vector<std::string>& builtin_lexicon() {
  static const std::vector<std::string> lexicon = [] {
    std::vector<std::string> words;
    for (auto& group : parse_group_lines(resources::kLexicon)) {
      for (auto& w : group) words.push_back(std::move(w));
    }
    return words;
  }();
  return lexicon;
}

}  // namespace editlens
