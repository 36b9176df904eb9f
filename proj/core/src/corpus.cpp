// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace namerec::corpus {

namespace fs = std::filesystem;

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

bool read_file(const fs::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return false;
  out = std::move(buffer).str();
  return true;
}

}  // namespace

ScanResult scan_corpus(const fs::path& root, const ScanOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw CorpusError("corpus root is not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    throw CorpusError("cannot read corpus root " + root.string() + ": " + ec.message());
  }

  std::vector<fs::path> files;
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file(ec)) continue;
    const std::string ext = it->path().extension().string();
    if (std::find(options.extensions.begin(), options.extensions.end(), ext) !=
        options.extensions.end()) {
      files.push_back(it->path());
    }
  }

  ScanResult result;
  std::vector<SourceUnit> units;
  for (const auto& file : files) {
    SourceUnit unit;
    unit.path = fs::relative(file, root, ec).generic_string();
    if (ec || !read_file(file, unit.text) || !valid_utf8(unit.text)) {
      ++result.skipped_files;
      continue;
    }
    unit.package_name = parse_package_name(unit.text);
    units.push_back(std::move(unit));
  }
  std::sort(units.begin(), units.end(),
            [](const SourceUnit& a, const SourceUnit& b) { return a.path < b.path; });
  result.units = std::move(units);
  return result;
}

std::vector<ExtractedUnit> extract_all(std::vector<SourceUnit> units, unsigned threads) {
  std::vector<ExtractedUnit> out(units.size());
  auto work = [&](std::size_t i) {
    Extraction e = extract_methods(units[i]);
    out[i] = {std::move(units[i]), std::move(e.records), std::move(e.diagnostics)};
  };

  if (threads <= 1 || units.size() < 2) {
    for (std::size_t i = 0; i < units.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(units.size()));
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < units.size(); i = next++) work(i);
    });
  }
  pool.clear();
  return out;
}

bool is_test_package(std::string_view package_name) {
  std::string lower(package_name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.find("test") != std::string::npos;
}

bool is_serial_numbered(const std::vector<MethodRecord>& records) {
  if (records.size() < 3) return false;
  std::string_view base;
  for (const auto& r : records) {
    const std::string_view name = r.name;
    std::size_t split = 0;
    while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
    if (split == 0 || split == name.size()) return false;
    for (std::size_t k = split; k < name.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(name[k]))) return false;
    }
    const std::string_view this_base = name.substr(0, split);
    if (base.empty()) {
      base = this_base;
    } else if (this_base != base) {
      return false;
    }
  }
  return true;
}

CleanseResult cleanse(std::vector<ExtractedUnit> units) {
  CleanseResult result;
  for (auto& u : units) {
    if (is_test_package(u.unit.package_name)) {
      ++result.dropped.test_package;
    } else if (is_serial_numbered(u.records)) {
      ++result.dropped.serial_numbered;
    } else {
      result.kept.push_back(std::move(u));
    }
  }
  return result;
}

std::vector<MethodRecord> all_records(const std::vector<ExtractedUnit>& units) {
  std::vector<MethodRecord> out;
  for (const auto& u : units) out.insert(out.end(), u.records.begin(), u.records.end());
  return out;
}

void write_records_jsonl(std::ostream& out, const std::vector<MethodRecord>& records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["package"] = r.package_name;
    j["path"] = r.path;
    std::vector<std::string> callees = r.callees;
    std::sort(callees.begin(), callees.end());
    callees.erase(std::unique(callees.begin(), callees.end()), callees.end());
    j["callees"] = callees;
    out << j.dump() << '\n';
  }
}

std::vector<MethodRecord> read_records_jsonl(std::istream& in) {
  std::vector<MethodRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      MethodRecord r;
      r.name = j.at("name").get<std::string>();
      r.package_name = j.at("package").get<std::string>();
      r.path = j.at("path").get<std::string>();
      r.callees = j.at("callees").get<std::vector<std::string>>();
      std::sort(r.callees.begin(), r.callees.end());
      r.callees.erase(std::unique(r.callees.begin(), r.callees.end()), r.callees.end());
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace namerec::corpus
