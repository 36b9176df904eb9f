// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace namerec::lexicon {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PartOfSpeech { verb, noun, other };

std::string_view to_string(PartOfSpeech pos);

struct WordTag {
  std::string word;
  PartOfSpeech tag = PartOfSpeech::other;

  friend bool operator==(const WordTag&, const WordTag&) = default;
};

/// Splits an identifier into lowercase words at camelCase boundaries,
/// underscores, dollar signs and letter/digit transitions. Upper-case runs
/// form one acronym word ("parseHTTPHeader" -> parse, http, header). Digit
/// runs are dropped.
std::vector<std::string> split_identifier(std::string_view name);

/// A verb list used to tag method-name words. Anything not listed is a noun
/// when purely alphabetic, otherwise `other`.
class Lexicon {
 public:
  /// The lexicon compiled into the library from core/data/verbs.txt.
  static const Lexicon& builtin();

  /// Parses the one-verb-per-line format; '#' starts a comment.
  static Lexicon parse(std::string_view contents);
  static Lexicon load(const std::filesystem::path& path);

  WordTag tag(std::string_view word) const;
  bool is_verb(std::string_view word) const;

  /// First word of `name` when it is a verb.
  std::optional<std::string> verb_of(std::string_view name) const;
  /// Every noun-tagged word of `name`.
  std::set<std::string> nouns_of(std::string_view name) const;

  std::size_t size() const { return verbs_.size(); }
  /// FNV-1a over the sorted verb list; identifies the tagging function.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::unordered_set<std::string> verbs_;
  std::uint64_t fingerprint_ = 0;
};

namespace detail {
const char* builtin_verb_list();
}  // namespace detail

}  // namespace namerec::lexicon
