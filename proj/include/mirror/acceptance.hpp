#pragma once

/**
 * @file acceptance.hpp
 * @brief The twelve acceptance criteria as one runnable battery.
 *
 * Every criterion is exact; a criterion passes only when all of its
 * sub-checks do. The quick profile caps series orders at 60 and scan
 * ranges at 10^4, filtering the expected hit sets to the capped range.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mirror {

enum class AcceptanceProfile { quick, full };

std::string to_string(AcceptanceProfile profile);
AcceptanceProfile parse_profile(const std::string& text);

struct CriterionResult {
  unsigned id = 0;
  std::string title;
  bool pass = false;
  /// Sub-check summary; names the failing sub-checks when pass is false.
  std::string detail;
  double seconds = 0;
};

struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  AcceptanceProfile profile = AcceptanceProfile::full;
  std::map<std::string, std::uint64_t> orders;
  std::map<std::string, std::string> module_versions;
  double wall_seconds = 0;
  std::vector<CriterionResult> results;

  std::size_t passed() const;
  bool all_passed() const { return passed() == results.size(); }
};

/// Runs the criteria in `only` (all twelve when empty) in increasing id,
/// calling `on_result` as each finishes.
RunManifest run_acceptance(
    AcceptanceProfile profile, std::uint64_t seed,
    const std::vector<unsigned>& only = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  sequence fixtures: ..." style line.
std::string format_criterion_line(const CriterionResult& r);

/// JSON manifest; timings are omitted when include_timing is false so that
/// reruns with the same seed compare byte-for-byte.
std::string manifest_to_json(const RunManifest& manifest, bool include_timing = true);

/// Library version baked in at build time.
const char* library_version();

}  // namespace mirror
