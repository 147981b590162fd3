#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace k2lab {

// One pinned constant: which statistic, on which field and grid, the exact
// rendered value, and the command line that produced it.
struct FixtureEntry {
  std::string lemma;
  std::int64_t q;
  std::string grid;
  std::string constant;
  std::string command;
};

struct Fixtures {
  std::string version;
  std::vector<FixtureEntry> entries;

  const FixtureEntry* find(const std::string& lemma, std::int64_t q) const;
};

bool fixtures_exist(const std::string& path);
Fixtures load_fixtures(const std::string& path);

// Replaces entries with the same (lemma, q), keeps the rest, writes the file
// sorted by (q, lemma) so regeneration is diff-friendly.
void merge_and_save_fixtures(const std::string& path, const std::vector<FixtureEntry>& fresh,
                             const std::string& version);

}  // namespace k2lab
