// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace namerec::corpus {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One source file of the corpus.
struct SourceUnit {
  std::string path;          // relative to the scan root, '/'-separated
  std::string package_name;  // empty when the file declares no package
  std::string text;

  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

/// One extracted method definition. `callees` is sorted and duplicate-free.
struct MethodRecord {
  std::string name;
  std::string package_name;
  std::string path;
  std::vector<std::string> callees;

  friend bool operator==(const MethodRecord&, const MethodRecord&) = default;
};

struct ScanOptions {
  std::vector<std::string> extensions{".java"};
};

struct ScanResult {
  std::vector<SourceUnit> units;
  std::size_t skipped_files = 0;  // unreadable or not valid UTF-8
};

/// Recursively collects source files under `root` in lexicographic path
/// order. Throws CorpusError when `root` is not a readable directory.
ScanResult scan_corpus(const std::filesystem::path& root,
                       const ScanOptions& options = {});

/// Dotted name from the first `package` declaration, or "" if none.
std::string parse_package_name(std::string_view text);

/// Replaces comments, string/char literals and text blocks with spaces.
/// Newlines are kept so offsets and line numbers survive.
std::string strip_comments_and_literals(std::string_view text);

struct Diagnostic {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Extraction {
  std::vector<MethodRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Lexical method extraction. Never throws on malformed input: unbalanced
/// braces stop the scan at the longest consistent prefix and leave a
/// diagnostic.
Extraction extract_methods(const SourceUnit& unit);

/// A unit together with the records extracted from it.
struct ExtractedUnit {
  SourceUnit unit;
  std::vector<MethodRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Runs extract_methods over every unit, optionally on several threads.
/// Output order follows input order regardless of `threads`.
std::vector<ExtractedUnit> extract_all(std::vector<SourceUnit> units,
                                       unsigned threads = 1);

struct CleanseStats {
  std::size_t test_package = 0;
  std::size_t serial_numbered = 0;

  friend bool operator==(const CleanseStats&, const CleanseStats&) = default;
};

struct CleanseResult {
  std::vector<ExtractedUnit> kept;
  CleanseStats dropped;
};

/// True when the package name contains "test" in any letter case.
bool is_test_package(std::string_view package_name);

/// True for units of at least three methods whose names are all one shared
/// alphabetic base followed by a decimal suffix (get0, get1, ... get100).
bool is_serial_numbered(const std::vector<MethodRecord>& records);

CleanseResult cleanse(std::vector<ExtractedUnit> units);

/// Flattens the records of `units` in unit order.
std::vector<MethodRecord> all_records(const std::vector<ExtractedUnit>& units);

// JSON Lines: one object per record with keys name, package, path, callees.
void write_records_jsonl(std::ostream& out,
                         const std::vector<MethodRecord>& records);
/// Throws CorpusError naming the line on malformed input.
std::vector<MethodRecord> read_records_jsonl(std::istream& in);

}  // namespace namerec::corpus
