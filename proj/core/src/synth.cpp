// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "namerec/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "namerec/eval.hpp"
#include "namerec/random.hpp"

namespace namerec::eval {

namespace {

constexpr std::array<std::string_view, 16> kFamilyVerbs{
    "load", "save", "parse", "render", "send", "compute", "validate", "build",
    "merge", "encode", "fetch", "sort", "filter", "export", "schedule", "publish"};

constexpr std::array<std::string_view, 16> kFamilyNouns{
    "Config", "Image", "Invoice", "Profile", "Message", "Document", "Account", "Ticket",
    "Playlist", "Contract", "Shipment", "Budget", "Sensor", "Recipe", "Course", "Vehicle"};

constexpr std::array<std::string_view, 12> kQualifiers{
    "Async", "Fast", "Safely", "Later", "Now", "Quietly",
    "Locally", "Remotely", "Partially", "Fully", "Eagerly", "Lazily"};

constexpr std::array<std::string_view, 10> kHelperVerbs{
    "read", "check", "open", "close", "update", "find", "create", "lookup", "append", "mark"};

constexpr std::array<std::string_view, 12> kHelperNouns{
    "Buffer", "Cache", "Entry", "Header", "Slot", "Token",
    "Field", "Frame", "Handle", "Marker", "Region", "Segment"};

constexpr std::array<std::string_view, 26> kTags{
    "Alpha", "Bravo", "Charlie", "Delta", "Echo", "Foxtrot", "Golf", "Hotel", "India",
    "Juliet", "Kilo", "Lima", "Mike", "November", "Oscar", "Papa", "Quebec", "Romeo",
    "Sierra", "Tango", "Uniform", "Victor", "Whiskey", "Xray", "Yankee", "Zulu"};

// Bijective base-N spelling of n >= 1 using `words` as digits; distinct n
// give distinct, digit-free strings.
template <std::size_t N>
std::string spell(std::size_t n, const std::array<std::string_view, N>& words) {
  std::string out;
  while (n > 0) {
    --n;
    out.insert(0, words[n % N]);
    n /= N;
  }
  return out;
}

std::string two_digits(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02zu", n);
  return buf;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SynthConfig& config) {
  if (config.families < 2) throw EvalError("synthetic corpus needs at least 2 families");
  if (config.methods_per_family < 1 || config.methods_per_file < 1) {
    throw EvalError("methods per family and per file must be positive");
  }
  if (config.min_callees < 1 || config.min_callees > config.max_callees ||
      config.callee_pool_size < config.max_callees) {
    throw EvalError("callee counts must satisfy 1 <= min <= max <= pool size");
  }

  SyntheticCorpus out;
  Rng rng(config.seed);

  for (std::size_t f = 0; f < config.families; ++f) {
    const std::string verb(kFamilyVerbs[f % kFamilyVerbs.size()]);
    const std::string noun = spell(f + 1, kFamilyNouns);
    const std::string tag = spell(f + 1, kTags);

    std::vector<std::string> pool;
    for (std::size_t k = 0; k < config.callee_pool_size; ++k) {
      pool.push_back(std::string(kHelperVerbs[k % kHelperVerbs.size()]) + tag +
                     spell(k / kHelperVerbs.size() + 1, kHelperNouns));
    }
    std::vector<std::string> methods;
    for (std::size_t j = 0; j < config.methods_per_family; ++j) {
      methods.push_back(verb + noun + spell(j + 1, kQualifiers));
    }
    for (const auto& name : pool) out.family_of[name] = f;
    for (const auto& name : methods) out.family_of[name] = f;

    const std::string package = "synth.family" + two_digits(f);
    for (std::size_t first = 0; first < methods.size(); first += config.methods_per_file) {
      const std::size_t last = std::min(methods.size(), first + config.methods_per_file);
      const std::string cls = noun + "Service" + two_digits(first / config.methods_per_file);
      corpus::SourceUnit unit;
      unit.path = "family" + two_digits(f) + "/" + cls + ".java";
      unit.package_name = package;

      std::ostringstream src;
      src << "package " << package << ";\n\n"
          << "import java.util.List;\n\n"
          << "/** Generated service for family " << f << " (see also(), ignored()). */\n"
          << "public class " << cls << " {\n"
          << "    private final Helper helper = new Helper();\n\n"
          << "    public " << cls << "() {\n"
          << "        super();\n"
          << "    }\n";

      for (std::size_t j = first; j < last; ++j) {
        const std::size_t count =
            config.min_callees +
            static_cast<std::size_t>(rng.uniform_index(config.max_callees - config.min_callees + 1));
        std::vector<std::size_t> picks(pool.size());
        std::iota(picks.begin(), picks.end(), std::size_t{0});
        rng.shuffle(std::span(picks));
        picks.resize(count);

        corpus::MethodRecord record{methods[j], package, unit.path, {}};
        for (std::size_t p : picks) record.callees.push_back(pool[p]);
        std::sort(record.callees.begin(), record.callees.end());

        src << "\n    // " << methods[j] << " delegates to helpers; notThisOne() is a comment.\n"
            << "    public List<String> " << methods[j] << "(String input, int[] sizes)"
            << (j % 2 == 0 ? " throws java.io.IOException" : "") << " {\n"
            << "        String label = \"literal(call) \\\" not counted()\";\n";
        for (std::size_t i = 0; i < picks.size(); ++i) {
          const std::string& callee = pool[picks[i]];
          switch (rng.uniform_index(4)) {
            case 0:
              src << "        " << callee << "(input);\n";
              break;
            case 1:
              src << "        helper." << callee << "(label, sizes[0]);\n";
              break;
            case 2:
              if (i + 1 < picks.size()) {
                src << "        if (" << callee << "(" << pool[picks[i + 1]] << "(input))) {\n"
                    << "            label = input;\n"
                    << "        }\n";
                ++i;
                break;
              }
              [[fallthrough]];
            default:
              src << "        Object r" << i << " = this." << callee << "('c', new int[] {1, 2});\n";
              break;
          }
        }
        std::sort(record.callees.begin(), record.callees.end());
        record.callees.erase(std::unique(record.callees.begin(), record.callees.end()),
                             record.callees.end());
        src << "        return null;\n    }\n";
        out.planned.push_back(std::move(record));
      }
      src << "}\n";
      unit.text = src.str();
      out.units.push_back(std::move(unit));
    }
    out.family_methods.push_back(std::move(methods));
    out.family_pools.push_back(std::move(pool));
  }
  return out;
}

void write_corpus(const std::vector<corpus::SourceUnit>& units, const std::filesystem::path& root) {
  for (const auto& unit : units) {
    const auto path = root / unit.path;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw EvalError("cannot write " + path.string());
    file << unit.text;
  }
}

}  // namespace namerec::eval
