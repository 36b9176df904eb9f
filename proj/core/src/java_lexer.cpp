// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "namerec/corpus.hpp"

namespace namerec::corpus {
namespace detail {

namespace {

constexpr std::array<std::string_view, 53> kReserved{
    "abstract", "assert",     "boolean",   "break",      "byte",      "case",
    "catch",    "char",       "class",     "const",      "continue",  "default",
    "do",       "double",     "else",      "enum",       "extends",   "false",
    "final",    "finally",    "float",     "for",        "goto",      "if",
    "implements", "import",   "instanceof", "int",       "interface", "long",
    "native",   "new",        "null",      "package",    "private",   "protected",
    "public",   "return",     "short",     "static",     "strictfp",  "super",
    "switch",   "synchronized", "this",    "throw",      "throws",    "transient",
    "true",     "try",        "void",      "volatile",   "while"};

}  // namespace

bool is_reserved_word(std::string_view word) {
  static const std::set<std::string_view> reserved(kReserved.begin(), kReserved.end());
  return reserved.contains(word);
}

bool is_identifier_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_identifier_part(unsigned char c) {
  return is_identifier_start(c) || std::isdigit(c);
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_identifier_start(c)) {
      while (i < s.size() && is_identifier_part(static_cast<unsigned char>(s[i]))) ++i;
      tokens.push_back({TokenKind::identifier, s.substr(start, i - start), line});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < s.size()) {
        const auto d = static_cast<unsigned char>(s[i]);
        if (std::isalnum(d) || d == '_' || d == '.') {
          ++i;
        } else {
          break;
        }
      }
      tokens.push_back({TokenKind::number, s.substr(start, i - start), line});
      continue;
    }
    if (i + 1 < s.size()) {
      const std::string_view two = s.substr(i, 2);
      if (two == "->" || two == "::") {
        tokens.push_back({TokenKind::punct, two, line});
        i += 2;
        continue;
      }
    }
    tokens.push_back({TokenKind::punct, s.substr(i, 1), line});
    ++i;
  }
  return tokens;
}

}  // namespace detail

using detail::Token;
using detail::TokenKind;

std::string strip_comments_and_literals(std::string_view text) {
  std::string out(text);
  const std::size_t n = text.size();
  auto blank = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to && k < n; ++k) {
      if (out[k] != '\n' && out[k] != '\r') out[k] = ' ';
    }
  };

  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      std::size_t end = text.find('\n', i);
      if (end == std::string_view::npos) end = n;
      blank(i, end);
      i = end;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      std::size_t end = text.find("*/", i + 2);
      end = end == std::string_view::npos ? n : end + 2;
      blank(i, end);
      i = end;
    } else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
      std::size_t k = i + 3;
      while (k < n && text.substr(k, 3) != "\"\"\"") {
        k += text[k] == '\\' ? 2 : 1;
      }
      const std::size_t end = std::min(n, k + 3);
      blank(i, end);
      i = end;
    } else if (c == '"' || c == '\'') {
      std::size_t k = i + 1;
      while (k < n && text[k] != c && text[k] != '\n') {
        k += text[k] == '\\' ? 2 : 1;
      }
      const std::size_t end = (k < n && text[k] == c) ? k + 1 : std::min(k, n);
      blank(i, end);
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

std::string parse_package_name(std::string_view text) {
  const std::string stripped = strip_comments_and_literals(text);
  const auto tokens = detail::tokenize(stripped);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::identifier || tokens[i].text != "package") continue;
    std::string name;
    std::size_t k = i + 1;
    while (k < tokens.size() && tokens[k].text != ";") {
      if (tokens[k].kind == TokenKind::identifier || tokens[k].text == ".") {
        name += tokens[k].text;
      } else {
        return {};
      }
      ++k;
    }
    return name;
  }
  return {};
}

namespace {

enum class Scope { file, class_body, method_body, block };

struct Frame {
  Scope scope;
  std::string class_name;  // class_body only; empty for anonymous bodies
  std::optional<std::size_t> method;  // index into Parser::methods_
};

bool is_primitive_type(std::string_view w) {
  return w == "void" || w == "int" || w == "long" || w == "boolean" || w == "byte" ||
         w == "char" || w == "short" || w == "float" || w == "double";
}

class Parser {
 public:
  Parser(const SourceUnit& unit, std::vector<Token> tokens)
      : unit_(unit), tokens_(std::move(tokens)), match_(tokens_.size(), kNone) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].text == "(") {
        open.push_back(i);
      } else if (tokens_[i].text == ")" && !open.empty()) {
        match_[i] = open.back();
        open.pop_back();
      }
    }
  }

  Extraction run() {
    std::vector<Frame> stack{{Scope::file, {}, std::nullopt}};
    std::vector<std::size_t> open_methods;
    std::size_t segment_start = 0;

    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const Token& tok = tokens_[i];
      if (tok.kind == TokenKind::identifier) {
        const Scope inner = stack.back().scope;
        if (!open_methods.empty() && (inner == Scope::method_body || inner == Scope::block) &&
            is_call(i)) {
          for (std::size_t m : open_methods) methods_[m].callees.insert(std::string(tok.text));
        }
        continue;
      }
      if (tok.text == ";") {
        segment_start = i + 1;
      } else if (tok.text == "{") {
        Frame frame = classify_brace(i, segment_start, stack.back());
        if (frame.scope == Scope::method_body) {
          open_methods.push_back(*frame.method);
        }
        stack.push_back(std::move(frame));
        segment_start = i + 1;
      } else if (tok.text == "}") {
        if (stack.size() == 1) {
          result_.diagnostics.push_back(
              {tok.line, "unmatched '}'; ignoring the rest of the file"});
          break;
        }
        if (stack.back().method) {
          methods_[*stack.back().method].complete = true;
          open_methods.pop_back();
        }
        stack.pop_back();
        segment_start = i + 1;
      }
    }

    if (stack.size() > 1) {
      const std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      result_.diagnostics.push_back(
          {line, std::to_string(stack.size() - 1) + " unclosed '{' at end of file"});
    }
    for (auto& m : methods_) {
      if (!m.complete) continue;
      result_.records.push_back(
          {m.name, unit_.package_name, unit_.path,
           std::vector<std::string>(m.callees.begin(), m.callees.end())});
    }
    return std::move(result_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct OpenMethod {
    std::string name;
    std::set<std::string> callees;
    bool complete = false;
  };

  bool is_ident(std::size_t i) const {
    return i < tokens_.size() && tokens_[i].kind == TokenKind::identifier;
  }
  bool is_text(std::size_t i, std::string_view text) const {
    return i < tokens_.size() && tokens_[i].text == text;
  }
  bool is_plain_ident(std::size_t i) const {
    return is_ident(i) && !detail::is_reserved_word(tokens_[i].text);
  }

  // Start of a dotted chain `a.b.c` ending at `end`.
  std::size_t chain_start(std::size_t end) const {
    std::size_t k = end;
    while (k >= 2 && is_text(k - 1, ".") && is_ident(k - 2)) k -= 2;
    return k;
  }

  bool is_call(std::size_t i) const {
    if (!is_text(i + 1, "(") || !is_plain_ident(i)) return false;
    const std::size_t k = chain_start(i);
    if (k == 0) return true;
    return !is_text(k - 1, "new") && !is_text(k - 1, "@");
  }

  bool is_type_like(std::size_t i) const {
    if (i >= tokens_.size()) return false;
    const std::string_view t = tokens_[i].text;
    if (t == "]" || t == ">") return true;
    if (!is_ident(i)) return false;
    if (is_primitive_type(t)) return true;
    if (detail::is_reserved_word(t)) return false;
    // `@Inject Foo(...)`: an annotation, not a return type.
    const std::size_t k = chain_start(i);
    return k == 0 || !is_text(k - 1, "@");
  }

  // Name token index of a method definition whose body opens at `brace`.
  std::optional<std::size_t> method_name_at(std::size_t brace) const {
    if (brace == 0) return std::nullopt;
    std::size_t j = brace - 1;
    if (!is_text(j, ")")) {
      // Optional `throws A, b.C<D>` clause.
      while (j > 0 && !is_text(j, "throws")) {
        const std::string_view t = tokens_[j].text;
        const bool clause_token = (is_ident(j) && !detail::is_reserved_word(t)) ||
                                  t == "." || t == "," || t == "<" || t == ">" || t == "?";
        if (!clause_token) return std::nullopt;
        --j;
      }
      if (!is_text(j, "throws") || j == 0) return std::nullopt;
      --j;
    }
    if (!is_text(j, ")") || match_[j] == kNone) return std::nullopt;
    const std::size_t open = match_[j];
    if (open < 2 || !is_plain_ident(open - 1)) return std::nullopt;
    if (!is_type_like(open - 2)) return std::nullopt;
    return open - 1;
  }

  std::optional<std::string> class_header(std::size_t begin, std::size_t brace) const {
    for (std::size_t k = begin; k < brace; ++k) {
      if (!is_ident(k) || (k > 0 && is_text(k - 1, "."))) continue;
      const std::string_view t = tokens_[k].text;
      if (t == "class" || t == "interface" || t == "enum") {
        return is_ident(k + 1) ? std::string(tokens_[k + 1].text) : std::string();
      }
      if (t == "record" && is_plain_ident(k + 1) &&
          (is_text(k + 2, "(") || is_text(k + 2, "<"))) {
        return std::string(tokens_[k + 1].text);
      }
    }
    return std::nullopt;
  }

  // `new a.b.Type<...>(...) {`
  bool is_anonymous_class(std::size_t brace) const {
    if (brace == 0 || !is_text(brace - 1, ")") || match_[brace - 1] == kNone) return false;
    std::size_t k = match_[brace - 1];
    if (k == 0) return false;
    --k;
    if (is_text(k, ">")) {
      int depth = 0;
      for (;; --k) {
        if (is_text(k, ">")) ++depth;
        if (is_text(k, "<") && --depth == 0) break;
        if (k == 0) return false;
      }
      if (k == 0) return false;
      --k;
    }
    if (!is_ident(k)) return false;
    const std::size_t start = chain_start(k);
    return start > 0 && is_text(start - 1, "new");
  }

  Frame classify_brace(std::size_t brace, std::size_t segment_start, const Frame& parent) {
    if (auto name = class_header(segment_start, brace)) {
      return {Scope::class_body, std::move(*name), std::nullopt};
    }
    switch (parent.scope) {
      case Scope::class_body: {
        if (auto name_index = method_name_at(brace)) {
          const std::string name(tokens_[*name_index].text);
          if (name == parent.class_name) {
            return {Scope::block, {}, std::nullopt};  // constructor
          }
          methods_.push_back({name, {}, false});
          return {Scope::method_body, {}, methods_.size() - 1};
        }
        const bool initializer = brace == segment_start || is_text(brace - 1, "static");
        const bool expression = is_text(brace - 1, "->") || is_text(brace - 1, "=") ||
                                is_text(brace - 1, ",") || is_text(brace - 1, "{");
        if (initializer || expression) return {Scope::block, {}, std::nullopt};
        // Enum constant bodies and field-initializer anonymous classes.
        return {Scope::class_body, {}, std::nullopt};
      }
      case Scope::method_body:
      case Scope::block:
        if (is_anonymous_class(brace)) return {Scope::class_body, {}, std::nullopt};
        return {Scope::block, {}, std::nullopt};
      case Scope::file:
        // Bare method snippets with no enclosing class.
        if (auto name_index = method_name_at(brace)) {
          methods_.push_back({std::string(tokens_[*name_index].text), {}, false});
          return {Scope::method_body, {}, methods_.size() - 1};
        }
        break;
    }
    return {Scope::block, {}, std::nullopt};
  }

  const SourceUnit& unit_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> match_;
  std::vector<OpenMethod> methods_;
  Extraction result_;
};

}  // namespace

Extraction extract_methods(const SourceUnit& unit) {
  const std::string stripped = strip_comments_and_literals(unit.text);
  Parser parser(unit, detail::tokenize(stripped));
  return parser.run();
}

}  // namespace namerec::corpus
