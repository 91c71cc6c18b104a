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

#include "editlens/perturb.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/random.hpp"

namespace editlens::perturb {

namespace {

struct Rates {
  double substitute = 0.0;
  double remove = 0.0;
  double typo = 0.0;
  double swap = 0.0;     // swaps per sentence
  double rewrite = 0.0;  // per-sentence template probability
};

Rates rates_for(Profile profile) {
  switch (profile) {
    case Profile::kProofread: return {0.0, 0.0, 0.08, 0.0, 0.0};
    case Profile::kParaphrase: return {0.40, 0.05, 0.0, 0.0, 0.0};
    case Profile::kRestructure: return {0.15, 0.05, 0.0, 0.5, 0.0};
    case Profile::kRewrite: return {0.45, 0.05, 0.0, 0.3, 0.5};
  }
  return {};
}

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",    "an",   "and",  "or",   "but",  "the",  "we",   "they", "i",    "my",   "our",  "was",
      "were", "is",   "are",  "to",   "of",   "in",   "on",   "at",   "with", "for",  "it",   "that",
      "this", "very", "so",   "then", "there", "when", "he",  "she",  "his",  "her",  "their", "be",
      "been", "by",   "as",   "from", "not",  "no",   "had",  "has",  "have", "do",   "did",  "its"};
  return words;
}

bool is_edge_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) && c != '\'' ; }

struct TokenParts {
  std::string prefix;
  std::string core;
  std::string suffix;
};

TokenParts split_token(const std::string& token) {
  std::size_t begin = 0;
  while (begin < token.size() && is_edge_punct(token[begin])) ++begin;
  std::size_t end = token.size();
  while (end > begin && is_edge_punct(token[end - 1])) --end;
  return {token.substr(0, begin), token.substr(begin, end - begin), token.substr(end)};
}

std::string lower_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool starts_upper(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

std::string with_first(std::string s, bool upper) {
  if (!s.empty()) {
    s[0] = static_cast<char>(upper ? std::toupper(static_cast<unsigned char>(s[0]))
                                   : std::tolower(static_cast<unsigned char>(s[0])));
  }
  return s;
}

bool ascii_only(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

std::string typo_of(const std::string& core) {
  std::string out = core;
  if (out.size() >= 3 && ascii_only(out)) {
    if (out[1] != out[2]) {
      std::swap(out[1], out[2]);
    } else {
      out.erase(1, 1);
    }
  } else {
    out.push_back(out.back());
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t k = begin; k < end; ++k) {
    if (k > begin) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool ends_sentence(const std::string& token) {
  const char c = token.back();
  return c == '.' || c == '!' || c == '?';
}

std::string render_template(const std::string& tmpl, const std::vector<std::string>& tokens) {
  // Terminal punctuation is peeled off the last token.
  std::vector<std::string> body = tokens;
  std::string punct;
  while (!body.back().empty() && ends_sentence(body.back())) {
    punct.insert(punct.begin(), body.back().back());
    body.back().pop_back();
  }
  if (body.back().empty()) body.pop_back();
  if (punct.empty()) punct = ".";
  if (body.empty()) return join(tokens, 0, tokens.size());

  const std::string full = join(body, 0, body.size());
  std::string first_half = full;
  std::string second_half = full;
  if (body.size() >= 2) {
    const std::size_t mid = body.size() / 2;
    first_half = join(body, 0, mid);
    second_half = join(body, mid, body.size());
  }
  std::string out;
  for (std::size_t k = 0; k < tmpl.size(); ++k) {
    if (tmpl[k] == '{' && k + 2 < tmpl.size() && tmpl[k + 2] == '}') {
      switch (tmpl[k + 1]) {
        case 's': out += with_first(full, false); k += 2; continue;
        case 'S': out += with_first(full, true); k += 2; continue;
        case 'a': out += with_first(first_half, false); k += 2; continue;
        case 'A': out += with_first(first_half, true); k += 2; continue;
        case 'b': out += with_first(second_half, false); k += 2; continue;
        case 'B': out += with_first(second_half, true); k += 2; continue;
        case 'p': out += punct; k += 2; continue;
        default: break;
      }
    }
    out.push_back(tmpl[k]);
  }
  return out;
}

std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace

std::string_view profile_name(Profile profile) {
  switch (profile) {
    case Profile::kProofread: return "proofread";
    case Profile::kParaphrase: return "paraphrase";
    case Profile::kRestructure: return "restructure";
    case Profile::kRewrite: return "rewrite";
  }
  return "unknown";
}

Profile parse_profile(std::string_view name) {
  for (Profile p : {Profile::kProofread, Profile::kParaphrase, Profile::kRestructure, Profile::kRewrite}) {
    if (profile_name(p) == name) return p;
  }
  fail(ErrorKind::kInvalidInput, "unknown profile '" + std::string(name) + "'");
}

const EditResources& EditResources::builtin() {
  static const EditResources resources;
  return resources;
}

std::vector<std::vector<std::string>> split_sentences(const std::string& text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  for (auto& token : whitespace_tokens(text)) {
    current.push_back(std::move(token));
    if (ends_sentence(current.back())) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::string replay(const EditTrace& trace, const std::string& source, const EditResources& resources) {
  if (trace.ops.empty()) return source;
  auto sentences = split_sentences(source);

  std::vector<std::pair<std::size_t, std::size_t>> position;  // word index -> (sentence, token)
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (std::size_t t = 0; t < sentences[s].size(); ++t) position.emplace_back(s, t);
  }

  std::vector<std::vector<bool>> deleted(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) deleted[s].assign(sentences[s].size(), false);
  std::vector<std::optional<std::size_t>> rewrite(sentences.size());
  std::vector<std::pair<std::size_t, std::size_t>> swaps;

  for (const auto& op : trace.ops) {
    switch (op.kind) {
      case MicroEdit::Kind::kDeleteWord:
      case MicroEdit::Kind::kSubstituteWord:
      case MicroEdit::Kind::kInjectTypo: {
        require(op.i < position.size(), "edit trace word index " + std::to_string(op.i) + " out of range");
        auto [s, t] = position[op.i];
        if (op.kind == MicroEdit::Kind::kDeleteWord) {
          deleted[s][t] = true;
          break;
        }
        TokenParts parts = split_token(sentences[s][t]);
        require(!parts.core.empty(), "edit trace targets a punctuation-only token");
        parts.core = op.kind == MicroEdit::Kind::kInjectTypo ? typo_of(parts.core) : op.replacement;
        require(!parts.core.empty(), "substitution must not be empty");
        sentences[s][t] = parts.prefix + parts.core + parts.suffix;
        break;
      }
      case MicroEdit::Kind::kRewriteSentence:
        require(op.i < sentences.size(), "edit trace sentence index out of range");
        require(op.template_id < resources.templates.size(), "edit trace template id out of range");
        rewrite[op.i] = op.template_id;
        break;
      case MicroEdit::Kind::kSwapSentences:
        require(op.i < sentences.size() && op.j < sentences.size(), "edit trace sentence index out of range");
        swaps.emplace_back(op.i, op.j);
        break;
    }
  }

  std::vector<std::string> rendered(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    std::vector<std::string> kept;
    for (std::size_t t = 0; t < sentences[s].size(); ++t) {
      if (!deleted[s][t]) kept.push_back(sentences[s][t]);
    }
    if (kept.empty()) continue;
    rendered[s] = rewrite[s] ? render_template(resources.templates[*rewrite[s]], kept) : join(kept, 0, kept.size());
  }
  std::vector<std::size_t> order(sentences.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  for (auto [a, b] : swaps) std::swap(order[a], order[b]);

  std::string out;
  for (std::size_t s : order) {
    if (rendered[s].empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += rendered[s];
  }
  return out;
}

EditResult apply_edit(const std::string& source, double lambda, std::uint64_t seed, Profile profile,
                      const EditResources& resources) {
  require(std::isfinite(lambda) && lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  const auto sentences = split_sentences(source);
  require(!sentences.empty(), "cannot edit an empty source");

  EditResult result;
  result.trace.lambda = lambda;
  result.trace.seed = seed;
  if (lambda == 0.0) {
    result.edited = source;
    return result;
  }

  const Rates rates = rates_for(profile);
  const std::string pname(profile_name(profile));
  auto& ops = result.trace.ops;

  std::size_t word = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (std::size_t t = 0; t < sentences[s].size(); ++t, ++word) {
      const std::string index = std::to_string(word);
      // The draw for a word depends only on (seed, profile, index), so a
      // larger lambda touches a superset of words.
      Rng rng(hash64(seed, {"word", pname, index}));
      const double u = rng.uniform();
      const TokenParts parts = split_token(sentences[s][t]);
      if (parts.core.empty()) continue;
      const std::string lower = lower_ascii(parts.core);
      const bool last_in_sentence = t + 1 == sentences[s].size();

      const double word_rate = rates.substitute + rates.remove + rates.typo;
      if (u >= lambda * word_rate) continue;
      // Edit kind, drawn independently of lambda.
      const double v = rng.uniform() * word_rate;

      if (v < rates.substitute) {
        if (stopwords().count(lower) != 0) continue;
        std::string replacement;
        const auto group = resources.synonyms->group_of(lower);
        const auto& lex = resources.lexicon;
        if (group && resources.synonyms->groups()[*group].size() > 1) {
          const auto& members = resources.synonyms->groups()[*group];
          do {
            replacement = members[rng.below(members.size())];
          } while (replacement == lower);
        } else if (!lex.empty()) {
          const bool in_lexicon = std::find(lex.begin(), lex.end(), lower) != lex.end();
          if (in_lexicon && lex.size() < 2) continue;
          do {
            replacement = lex[rng.below(lex.size())];
          } while (replacement == lower);
        } else {
          continue;
        }
        ops.push_back({MicroEdit::Kind::kSubstituteWord, word, 0, with_first(replacement, starts_upper(parts.core)), 0});
      } else if (v < rates.substitute + rates.remove) {
        if (last_in_sentence) continue;
        ops.push_back({MicroEdit::Kind::kDeleteWord, word, 0, {}, 0});
      } else {
        ops.push_back({MicroEdit::Kind::kInjectTypo, word, 0, {}, 0});
      }
    }
  }

  if (rates.rewrite > 0.0 && !resources.templates.empty()) {
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      Rng rng(hash64(seed, {"rewrite", pname, std::to_string(s)}));
      if (rng.uniform() < lambda * rates.rewrite) {
        ops.push_back({MicroEdit::Kind::kRewriteSentence, s, 0, {}, rng.below(resources.templates.size())});
      }
    }
  }

  if (rates.swap > 0.0 && sentences.size() >= 2) {
    Rng rng(hash64(seed, {"swap", pname, std::to_string(double_bits(lambda))}));
    const auto count = static_cast<std::size_t>(std::llround(lambda * rates.swap * static_cast<double>(sentences.size())));
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t a = rng.below(sentences.size());
      std::size_t b = rng.below(sentences.size() - 1);
      if (b >= a) ++b;
      ops.push_back({MicroEdit::Kind::kSwapSentences, a, b, {}, 0});
    }
  }

  result.edited = replay(result.trace, source, resources);
  return result;
}

std::vector<EditResult> apply_edit_sequence(const std::string& source, std::size_t k, std::span<const double> lambdas,
                                            std::span<const std::uint64_t> seeds, std::span<const Profile> profiles,
                                            const EditResources& resources) {
  require(lambdas.size() == k && seeds.size() == k && profiles.size() == k,
          "apply_edit_sequence: k must equal the number of lambdas, seeds and profiles");
  std::vector<EditResult> out;
  out.reserve(k);
  std::string current = source;
  for (std::size_t step = 0; step < k; ++step) {
    out.push_back(apply_edit(current, lambdas[step], seeds[step], profiles[step], resources));
    current = out.back().edited;
  }
  return out;
}

nlohmann::json trace_to_json(const EditTrace& trace) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& op : trace.ops) {
    switch (op.kind) {
      case MicroEdit::Kind::kDeleteWord: ops.push_back({{"op", "delete_word"}, {"i", op.i}}); break;
      case MicroEdit::Kind::kSubstituteWord:
        ops.push_back({{"op", "substitute_word"}, {"i", op.i}, {"new", op.replacement}});
        break;
      case MicroEdit::Kind::kSwapSentences: ops.push_back({{"op", "swap_sentences"}, {"i", op.i}, {"j", op.j}}); break;
      case MicroEdit::Kind::kInjectTypo: ops.push_back({{"op", "inject_typo"}, {"i", op.i}}); break;
      case MicroEdit::Kind::kRewriteSentence:
        ops.push_back({{"op", "rewrite_sentence"}, {"i", op.i}, {"template_id", op.template_id}});
        break;
    }
  }
  return {{"lambda", trace.lambda}, {"seed", trace.seed}, {"ops", ops}};
}

EditTrace trace_from_json(const nlohmann::json& j) {
  try {
    EditTrace trace;
    trace.lambda = j.at("lambda").get<double>();
    trace.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& item : j.at("ops")) {
      MicroEdit op;
      const auto name = item.at("op").get<std::string>();
      op.i = item.at("i").get<std::size_t>();
      if (name == "delete_word") {
        op.kind = MicroEdit::Kind::kDeleteWord;
      } else if (name == "substitute_word") {
        op.kind = MicroEdit::Kind::kSubstituteWord;
        op.replacement = item.at("new").get<std::string>();
      } else if (name == "swap_sentences") {
        op.kind = MicroEdit::Kind::kSwapSentences;
        op.j = item.at("j").get<std::size_t>();
      } else if (name == "inject_typo") {
        op.kind = MicroEdit::Kind::kInjectTypo;
      } else if (name == "rewrite_sentence") {
        op.kind = MicroEdit::Kind::kRewriteSentence;
        op.template_id = item.at("template_id").get<std::size_t>();
      } else {
        fail(ErrorKind::kInvalidInput, "unknown edit op '" + name + "'");
      }
      trace.ops.push_back(std::move(op));
    }
    return trace;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidInput, std::string("malformed edit trace: ") + e.what());
  }
}

}  // namespace editlens::perturb
