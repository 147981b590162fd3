#include "k2lab/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace k2lab {

const FixtureEntry* Fixtures::find(const std::string& lemma, std::int64_t q) const {
  for (const auto& e : entries) {
    if (e.lemma == lemma && e.q == q) return &e;
  }
  return nullptr;
}

bool fixtures_exist(const std::string& path) { return std::filesystem::exists(path); }

Fixtures load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fixtures file: " + path);
  nlohmann::json j;
  in >> j;
  Fixtures fx;
  fx.version = j.at("version").get<std::string>();
  for (const auto& je : j.at("entries")) {
    FixtureEntry e;
    e.lemma = je.at("lemma").get<std::string>();
    e.q = je.at("q").get<std::int64_t>();
    e.grid = je.at("grid").get<std::string>();
    e.constant = je.at("constant").get<std::string>();
    e.command = je.at("command").get<std::string>();
    fx.entries.push_back(std::move(e));
  }
  return fx;
}

void merge_and_save_fixtures(const std::string& path, const std::vector<FixtureEntry>& fresh,
                             const std::string& version) {
  Fixtures fx;
  fx.version = version;
  if (fixtures_exist(path)) {
    fx = load_fixtures(path);
    fx.version = version;
  }
  for (const auto& e : fresh) {
    auto hit = std::find_if(fx.entries.begin(), fx.entries.end(), [&](const FixtureEntry& old) {
      return old.lemma == e.lemma && old.q == e.q;
    });
    if (hit != fx.entries.end()) {
      *hit = e;
    } else {
      fx.entries.push_back(e);
    }
  }
  std::sort(fx.entries.begin(), fx.entries.end(), [](const FixtureEntry& a, const FixtureEntry& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.lemma < b.lemma;
  });

  nlohmann::ordered_json j;
  j["version"] = fx.version;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : fx.entries) {
    nlohmann::ordered_json je;
    je["lemma"] = e.lemma;
    je["q"] = e.q;
    je["grid"] = e.grid;
    je["constant"] = e.constant;
    je["command"] = e.command;
    j["entries"].push_back(std::move(je));
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write fixtures file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace k2lab
