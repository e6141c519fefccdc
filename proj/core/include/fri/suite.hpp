#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fri/analysis.hpp"
#include "fri/fis_io.hpp"

namespace fri {

struct BenchInstance {
  int example_id = 1;  // 1..7
  RuleBase rb;
  Observation obs;
  std::string provenance;  // "fixed-seed(s)" or "searched(seed, iteration)"
  std::uint64_t seed = 0;
};

struct SearchBudget {
  std::size_t max_samples = 100000;
  std::uint64_t seed = 42;
};

enum class SearchTarget { kAbnormal, kNonlinear };

struct SearchLogEntry {
  int example_id;
  MethodId method;
  SearchTarget target;
  std::size_t samples = 0;
  std::size_t errors = 0;
  bool found = false;
  std::size_t iteration = 0;  // of the witness, when found
};

struct SearchResult {
  std::optional<BenchInstance> witness;
  SearchLogEntry log;
};

// Deterministic instance for a Table-1 row: 1..5 single input dimension,
// 6..7 three input dimensions; partitions are congruent translated families,
// the observation is flanked by the middle pair of the diagonal rule base.
BenchInstance build_example(int id, std::uint64_t seed);

// Free sampling within the same skeleton (independent flanks, spacings and
// observation shape), used by the witness searches.
BenchInstance sample_example(int id, std::uint64_t seed, std::size_t iteration);

SearchResult search_witness(int example_id, MethodId method,
                            SearchTarget target, const SearchBudget& budget,
                            const InterpolationConfig& cfg = {});

struct SuiteCell {
  std::string status;
  std::optional<bool> abnormal;
  std::optional<bool> linear;
  std::optional<AlphaCut> support;
  std::optional<AlphaCut> core;
  std::string provenance;
};

struct SuiteExpectation {
  std::optional<bool> abnormal;  // unset: no claim recorded
  std::optional<bool> linear;
};

struct SuiteMismatch {
  int example_id;
  MethodId method;
  std::string what;
};

struct SuiteReport {
  std::map<std::pair<int, MethodId>, SuiteCell> cells;
  std::map<std::pair<int, MethodId>, SuiteExpectation> expected;
  std::vector<SuiteMismatch> mismatches;
  std::vector<std::string> not_reproduced;  // search targets that stayed open
  std::vector<SearchLogEntry> search_log;
  std::string to_csv() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  SearchBudget budget;
  std::optional<std::filesystem::path> out_dir;  // artifacts written when set
};

SuiteReport run_suite(const SuiteOptions& options,
                      const InterpolationConfig& cfg = {});

// Writes one figure: per-dimension antecedent/observation panels plus the
// consequent/conclusion panel. Byte output is deterministic for fixed input.
void render_svg(const BenchInstance& instance,
                std::span<const std::pair<MethodId, Conclusion>> conclusions,
                const std::filesystem::path& path);

std::string render_svg_text(
    const BenchInstance& instance,
    std::span<const std::pair<MethodId, Conclusion>> conclusions);

}  // namespace fri
