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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace editlens {

// Comma-separated groups, one per line. Blank lines and '#' comments are
// skipped; entries are trimmed and lowercased.
std::vector<std::vector<std::string>> parse_group_lines(std::string_view text);
std::vector<std::string> parse_line_list(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

class SynonymTable {
 public:
  SynonymTable() = default;
  explicit SynonymTable(std::vector<std::vector<std::string>> groups);

  static SynonymTable parse(std::string_view text) { return SynonymTable(parse_group_lines(text)); }
  static const SynonymTable& builtin();

  const std::vector<std::vector<std::string>>& groups() const { return groups_; }
  std::optional<std::size_t> group_of(std::string_view word) const;
  // First member of the word's group, or the word itself.
  std::string_view canonical(std::string_view word) const;
  bool empty() const { return groups_.empty(); }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Sentence templates with {s} {S} {a} {A} {b} {B} {p} placeholders.
const std::vector<std::string>& builtin_templates();
// Replacement vocabulary for the rule-based editor and synthetic mirrors.
const std::vector<std::string>& builtin_lexicon();

}  // namespace editlens
