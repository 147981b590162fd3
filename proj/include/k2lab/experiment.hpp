#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "k2lab/ffield.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultBudget = 20000;
inline constexpr std::uint64_t kMinSample = 500;

// Exact four-way split of the aggregate sum of L(2, chi_{gamma D}) over the
// even-degree square-free family of conductor degree 2g+2: each L-value is a
// finite character sum, and the terms regroup by whether the summand
// polynomial f is a perfect square and whether it sits in the leading
// ("main") or trailing ("dual") block of the expansion.
struct SumDecomposition {
  Rat piece_sq_main;
  Rat piece_nonsq_main;
  Rat piece_sq_dual;
  Rat piece_nonsq_dual;
  Rat total;  // sum of the four pieces == sum over D of L(2, chi_{gamma D})
};

SumDecomposition decompose_sum_l(const FieldSpec& F, int g, int threads = 1,
                                 std::uint64_t budget = kDefaultBudget);

// Deterministic distinct-index sample of k values from [0, n), sorted
// ascending. Partial Fisher-Yates over an explicit index array driven by
// mt19937_64(seed); independent of platform and thread count.
std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, std::uint64_t seed);

struct ResultRow {
  std::string name;
  std::optional<Rat> empirical_rat;      // exact statistics
  std::optional<double> empirical_real;  // floating statistics
  std::vector<std::pair<std::string, double>> candidates;
  std::vector<std::pair<std::string, double>> rel_errors;
  std::optional<bool> pass;  // empty => comparison-only row
  nlohmann::ordered_json lpolynomial;  // witness rows only, else null

  // Fixture plumbing (not serialized into reports): rows with a non-empty
  // fixture_constant can be pinned into, and checked against, the fixtures
  // file.
  std::string fixture_constant;
  std::string fixture_grid;
};

struct ExperimentConfig {
  std::int64_t q = 5;
  int g = 0;
  std::string experiment;  // avg-odd | avg-even | sum-l | identities | bounds
  std::int64_t gamma_override = 0;  // 0 => canonical least non-square generator
  std::uint64_t sample = 0;         // 0 => exhaustive
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  int threads = 1;
  std::uint64_t budget = kDefaultBudget;
  std::string fixtures_path;    // empty => no fixture comparison
  bool write_fixtures = false;  // generation runs skip comparison
  std::string command_line;     // recorded into regenerated fixture entries
};

struct ExperimentReport {
  std::int64_t q = 0;
  int g = 0;
  std::int64_t gamma = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::uint64_t sample_size = 0;  // 0 => exhaustive (stderr diagnostics only)
  double epsilon = 0.1;
  std::string fixtures_version = "none";
  std::vector<ResultRow> rows;

  bool all_passed() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Rows carrying a fixture constant, rendered as fixture entries with the
// reproducing command attached.
std::vector<struct FixtureEntry> fixture_entries_from_report(const ExperimentReport& rep,
                                                             const std::string& command);

}  // namespace k2lab
