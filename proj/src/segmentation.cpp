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

#include "editlens/segmentation.hpp"

#include <algorithm>
#include <cstdint>

#include "editlens/error.hpp"

namespace editlens::segmentation {

namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
};

// Malformed sequences decode as one byte each with value U+FFFD, so
// tokenization never fails on arbitrary bytes.
CodePoint decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (i + len > s.size()) return {0xFFFD, 1};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  if (cp >= 0xA1 && cp <= 0xBF) return cp != 0xAA && cp != 0xB5 && cp != 0xBA;
  if (cp >= 0x2010 && cp <= 0x2027) return true;
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x3003) return true;
  if (cp >= 0x3008 && cp <= 0x3011) return true;
  return cp >= 0xFF01 && cp <= 0xFF0F;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0x80) return cp;
  if ((cp >= 0xC0 && cp <= 0xDE) && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    // Latin Extended-A alternates upper/lower with a few odd-aligned runs.
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::vector<char32_t> current;

  auto flush = [&] {
    auto first = std::find_if_not(current.begin(), current.end(), is_punct);
    auto last = std::find_if_not(current.rbegin(), current.rend(), is_punct).base();
    if (first < last) {
      std::string token;
      for (auto it = first; it != last; ++it) encode(to_lower(*it), token);
      tokens.push_back(std::move(token));
    }
    current.clear();
  };

  for (std::size_t i = 0; i < text.size();) {
    CodePoint cp = decode(text, i);
    i += cp.length;
    if (is_space(cp.value)) {
      flush();
    } else {
      current.push_back(cp.value);
    }
  }
  flush();
  return tokens;
}

std::size_t phrase_count(std::size_t length, std::size_t a, std::size_t b) {
  require(a >= 1 && a <= b, "phrase bounds must satisfy 1 <= a <= b");
  if (length == 0) return 0;
  if (length < a) return 1;
  std::size_t total = 0;
  for (std::size_t n = a; n <= std::min(b, length); ++n) total += length - n + 1;
  return total;
}

std::vector<Phrase> enumerate_phrases(const std::vector<std::string>& words, std::size_t a, std::size_t b) {
  std::vector<Phrase> phrases;
  phrases.reserve(phrase_count(words.size(), a, b));
  auto make = [&](std::size_t start, std::size_t n) {
    Phrase p;
    p.start_index = start;
    p.words.assign(words.begin() + static_cast<std::ptrdiff_t>(start),
                   words.begin() + static_cast<std::ptrdiff_t>(start + n));
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) p.text.push_back(' ');
      p.text += p.words[k];
    }
    phrases.push_back(std::move(p));
  };
  if (words.empty()) return phrases;
  if (words.size() < a) {
    make(0, words.size());
    return phrases;
  }
  for (std::size_t n = a; n <= std::min(b, words.size()); ++n) {
    for (std::size_t start = 0; start + n <= words.size(); ++start) make(start, n);
  }
  return phrases;
}

}  // namespace editlens::segmentation
