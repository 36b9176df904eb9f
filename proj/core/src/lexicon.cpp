// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "namerec/hash.hpp"

namespace namerec::lexicon {

namespace {

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
// Non-ASCII bytes are treated as lower-case letters so they stay in words.
bool is_lower(unsigned char c) { return (c >= 'a' && c <= 'z') || c >= 0x80; }

char to_lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

}  // namespace

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::verb: return "verb";
    case PartOfSpeech::noun: return "noun";
    case PartOfSpeech::other: return "other";
  }
  return "other";
}

std::vector<std::string> split_identifier(std::string_view name) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };

  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (is_upper(c)) {
      if (!current.empty() && i > 0) {
        const auto prev = static_cast<unsigned char>(name[i - 1]);
        const bool next_lower =
            i + 1 < name.size() && is_lower(static_cast<unsigned char>(name[i + 1]));
        if (is_lower(prev) || (is_upper(prev) && next_lower)) flush();
      }
      current.push_back(to_lower(c));
    } else if (is_lower(c)) {
      current.push_back(static_cast<char>(c));
    } else {
      flush();  // digits, '_', '$' and anything else
    }
  }
  flush();
  return words;
}

Lexicon Lexicon::parse(std::string_view contents) {
  Lexicon lex;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string word = line.substr(begin, end - begin + 1);
    if (word.find_first_of(" \t") != std::string::npos) {
      throw LexiconError("lexicon entries must be single words: '" + word + "'");
    }
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return to_lower(c); });
    lex.verbs_.insert(std::move(word));
  }

  std::vector<std::string_view> sorted(lex.verbs_.begin(), lex.verbs_.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = fnv1a64("");
  for (auto w : sorted) {
    h = fnv1a64(w, h);
    h = fnv1a64("\n", h);
  }
  lex.fingerprint_ = h;
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse(detail::builtin_verb_list());
  return lex;
}

bool Lexicon::is_verb(std::string_view word) const {
  return verbs_.contains(std::string(word));
}

WordTag Lexicon::tag(std::string_view word) const {
  WordTag out{std::string(word), PartOfSpeech::other};
  if (is_verb(word)) {
    out.tag = PartOfSpeech::verb;
  } else if (!word.empty() && std::all_of(word.begin(), word.end(), [](unsigned char c) {
               return std::isalpha(c) || c >= 0x80;
             })) {
    out.tag = PartOfSpeech::noun;
  }
  return out;
}

std::optional<std::string> Lexicon::verb_of(std::string_view name) const {
  auto words = split_identifier(name);
  if (words.empty() || !is_verb(words.front())) return std::nullopt;
  return std::move(words.front());
}

std::set<std::string> Lexicon::nouns_of(std::string_view name) const {
  std::set<std::string> nouns;
  for (auto& w : split_identifier(name)) {
    if (tag(w).tag == PartOfSpeech::noun) nouns.insert(std::move(w));
  }
  return nouns;
}

}  // namespace namerec::lexicon
