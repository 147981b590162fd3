#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "k2lab/experiment.hpp"
#include "k2lab/fixtures.hpp"
#include "k2lab/lfunc.hpp"
#include "k2lab/report.hpp"

using namespace k2lab;

namespace {

ExperimentConfig base_cfg(std::int64_t q, int g, std::string mode) {
  ExperimentConfig cfg;
  cfg.q = q;
  cfg.g = g;
  cfg.experiment = std::move(mode);
  return cfg;
}

const ResultRow& row_named(const ExperimentReport& rep, const std::string& name) {
  for (const auto& r : rep.rows)
    if (r.name == name) return r;
  throw std::runtime_error("missing row: " + name);
}

double lookup(const std::vector<std::pair<std::string, double>>& pairs,
              const std::string& key) {
  for (const auto& [k, v] : pairs)
    if (k == key) return v;
  throw std::runtime_error("missing key: " + key);
}

std::string argmin_name(const std::vector<std::pair<std::string, double>>& pairs) {
  REQUIRE(!pairs.empty());
  return std::min_element(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
           return a.second < b.second;
         })->first;
}

}  // namespace

TEST_CASE("aggregate L-value sum splits into frozen exact pieces") {
  const FieldSpec F = make_field(5);
  SumDecomposition d = decompose_sum_l(F, 0);
  CHECK(d.piece_sq_main == Rat(20));
  CHECK(d.piece_nonsq_main == 0);
  CHECK(d.piece_sq_dual == Rat(4, 5));
  CHECK(d.piece_nonsq_dual == 0);
  CHECK(d.total == Rat(104, 5));

  d = decompose_sum_l(F, 1);
  CHECK(d.piece_sq_main == Rat(62916, 125));
  CHECK(d.piece_nonsq_main == Rat(88, 125));
  CHECK(d.piece_sq_dual == Rat(516, 3125));
  CHECK(d.piece_nonsq_dual == Rat(-16, 3125));
  CHECK(d.total == Rat(63024, 125));
}

TEST_CASE("identity sweep passes every case and reports the family sizes") {
  ExperimentReport rep = run_experiment(base_cfg(5, 1, "identities"));
  REQUIRE(rep.rows.size() == 13);
  CHECK(rep.mode == "identities");
  const char* stems[] = {"twist-sign",        "trivial-zero",      "completed-cross-check",
                         "functional-equation", "charsum-expansion", "unit-zero"};
  for (int gg = 0; gg <= 1; ++gg) {
    const std::int64_t family = (gg == 0) ? 20 : 500;
    for (const char* stem : stems) {
      const ResultRow& r = row_named(rep, std::string(stem) + "-g" + std::to_string(gg));
      REQUIRE(r.pass.has_value());
      CHECK(*r.pass);
      CHECK(*r.empirical_rat == family);
      CHECK(lookup(r.candidates, "cases") == static_cast<double>(family));
    }
  }
  const ResultRow& mp = row_named(rep, "mobius-product-identity");
  CHECK(*mp.pass);
  CHECK(*mp.empirical_rat == 7);
  CHECK(rep.all_passed());
}

TEST_CASE("odd-family mean at the smallest degree is exactly one") {
  ExperimentReport rep = run_experiment(base_cfg(5, 0, "avg-odd"));
  CHECK(rep.mode == "avg-odd");
  const ResultRow& r = row_named(rep, "mean-k2-odd-g0");
  CHECK(*r.empirical_rat == Rat(1));
  CHECK(lookup(r.candidates, "main") > 0.0);
  CHECK(!r.fixture_constant.empty());
}

TEST_CASE("even-family mean and the two scaling candidates") {
  ExperimentReport g0 = run_experiment(base_cfg(5, 0, "avg-even"));
  CHECK(g0.mode == "avg-even-twisted");
  const ResultRow& r0 = row_named(g0, "mean-k2-even-twisted-g0");
  CHECK(*r0.empirical_rat == Rat(6));
  CHECK(lookup(r0.candidates, "half-power") == doctest::Approx(14.046831).epsilon(1e-6));
  CHECK(lookup(r0.candidates, "integer-power") == doctest::Approx(5.808001).epsilon(1e-6));
  CHECK(lookup(r0.rel_errors, "integer-power") ==
        doctest::Approx(0.0330576929844).epsilon(1e-9));

  ExperimentReport g1 = run_experiment(base_cfg(5, 1, "avg-even"));
  const ResultRow& r1 = row_named(g1, "mean-k2-even-twisted-g1");
  CHECK(*r1.empirical_rat == Rat(3636, 5));
  CHECK(lookup(r1.candidates, "half-power") == doctest::Approx(1755.853865).epsilon(1e-6));
  CHECK(lookup(r1.candidates, "integer-power") == doctest::Approx(726.000111).epsilon(1e-6));
  CHECK(lookup(r1.rel_errors, "integer-power") ==
        doctest::Approx(0.00165273911772).epsilon(1e-9));

  // The better-fitting candidate is the same at both sizes, and fits well.
  CHECK(argmin_name(r0.rel_errors) == argmin_name(r1.rel_errors));
  CHECK(std::min_element(r1.rel_errors.begin(), r1.rel_errors.end(),
                         [](const auto& a, const auto& b) { return a.second < b.second; })
            ->second < 0.10);
}

TEST_CASE("means are independent of the generator used for twisting") {
  ExperimentConfig cfg = base_cfg(5, 0, "avg-even");
  cfg.gamma_override = 2;
  ExperimentReport a = run_experiment(cfg);
  cfg.gamma_override = 3;
  ExperimentReport b = run_experiment(cfg);
  CHECK(a.gamma == 2);
  CHECK(b.gamma == 3);
  CHECK(*row_named(a, "mean-k2-even-twisted-g0").empirical_rat ==
        *row_named(b, "mean-k2-even-twisted-g0").empirical_rat);
}

TEST_CASE("seeded index sampling is deterministic, sorted, and distinct") {
  const auto a = sample_indices(100, 10, 7);
  const auto b = sample_indices(100, 10, 7);
  CHECK(a == b);
  REQUIRE(a.size() == 10);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
  for (std::uint64_t v : a) CHECK(v < 100);
  CHECK(sample_indices(100, 10, 8) != a);

  const auto full = sample_indices(5, 5, 3);
  CHECK(full == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(sample_indices(5, 0, 3).empty());
}

TEST_CASE("sampled runs reproduce byte-for-byte under a fixed seed") {
  ExperimentConfig cfg = base_cfg(5, 2, "sum-l");
  cfg.sample = 500;
  cfg.seed = 1;
  const std::string a = render_report(run_experiment(cfg), "json");
  const std::string b = render_report(run_experiment(cfg), "json");
  CHECK(a == b);
  CHECK(a.find("\"mode\": \"sum-l\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across worker counts") {
  ExperimentConfig cfg = base_cfg(5, 1, "sum-l");
  cfg.threads = 1;
  const std::string serial = render_report(run_experiment(cfg), "json");
  cfg.threads = 3;
  const std::string parallel = render_report(run_experiment(cfg), "json");
  CHECK(serial == parallel);
}

TEST_CASE("oversized exhaustive runs are rejected with sampling advice") {
  CHECK_THROWS_WITH_AS(
      run_experiment(base_cfg(5, 3, "avg-even")),
      "family of degree 8 needs 390625 enumerations, over the budget of 20000; "
      "pass --sample <n> (n >= 500) with --seed, or raise --budget",
      std::invalid_argument);
  ExperimentConfig cfg = base_cfg(5, 2, "sum-l");
  cfg.sample = 100;
  cfg.seed = 1;
  CHECK_THROWS_WITH_AS(run_experiment(cfg), "sample size must be at least 500",
                       std::invalid_argument);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run_experiment(base_cfg(5, -1, "identities")), std::invalid_argument);
  ExperimentConfig cfg = base_cfg(5, 0, "identities");
  cfg.threads = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = base_cfg(5, 0, "sum-l");
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  CHECK_THROWS_WITH_AS(run_experiment(base_cfg(5, 0, "banana")),
                       "unknown experiment 'banana' (expected avg-odd, avg-even, sum-l, "
                       "identities, or bounds)",
                       std::invalid_argument);
}

TEST_CASE("pinned constants round-trip through a fixtures file") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "k2lab_fixture_roundtrip.json";
  fs::remove(path);
  const ExperimentConfig cfg = base_cfg(5, 1, "bounds");

  ExperimentReport fresh = run_experiment(cfg);
  const auto entries = fixture_entries_from_report(fresh, "unit-test");
  REQUIRE(entries.size() == 9);
  merge_and_save_fixtures(path.string(), entries, "1");
  REQUIRE(fixtures_exist(path.string()));

  ExperimentConfig checked = cfg;
  checked.fixtures_path = path.string();
  ExperimentReport rep = run_experiment(checked);
  CHECK(rep.fixtures_version == "1");
  for (const auto& r : rep.rows) {
    REQUIRE(r.pass.has_value());
    CHECK(*r.pass);
  }
  CHECK(rep.all_passed());

  // A drifted constant must be flagged, not silently accepted.
  Fixtures fx = load_fixtures(path.string());
  for (auto& e : fx.entries)
    if (e.lemma == "mobius-product-tail-g1") e.constant += "9";
  merge_and_save_fixtures(path.string(), fx.entries, fx.version);
  rep = run_experiment(checked);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(*row_named(rep, "mobius-product-tail-g1").pass);
  CHECK(*row_named(rep, "mobius-product-tail-g0").pass);

  // A changed grid is just as much of a mismatch as a changed value.
  fx = load_fixtures(path.string());
  for (auto& e : fx.entries) {
    if (e.lemma == "mobius-product-tail-g1") e.constant.pop_back();
    if (e.lemma == "dual-piece-decay-g1") e.grid = "sample=500;seed=9";
  }
  merge_and_save_fixtures(path.string(), fx.entries, fx.version);
  rep = run_experiment(checked);
  CHECK_FALSE(*row_named(rep, "dual-piece-decay-g1").pass);

  // Rows without a pinned entry stay comparison-only.
  fx = load_fixtures(path.string());
  fx.entries.erase(std::remove_if(fx.entries.begin(), fx.entries.end(),
                                  [](const FixtureEntry& e) {
                                    return e.lemma == "coprime-count-deviation-g0";
                                  }),
                   fx.entries.end());
  fs::remove(path);
  merge_and_save_fixtures(path.string(), fx.entries, fx.version);
  rep = run_experiment(checked);
  CHECK_FALSE(row_named(rep, "coprime-count-deviation-g0").pass.has_value());
  fs::remove(path);
}

TEST_CASE("missing fixtures file is an error when comparison is requested") {
  ExperimentConfig cfg = base_cfg(5, 0, "bounds");
  cfg.fixtures_path = "/nonexistent/fixtures.json";
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("JSON report schema is stable") {
  ExperimentReport rep = run_experiment(base_cfg(5, 0, "avg-odd"));
  const nlohmann::ordered_json j = report_to_json(rep);
  REQUIRE(j.contains("meta"));
  REQUIRE(j.contains("results"));
  REQUIRE(j.contains("fixtures_version"));

  std::vector<std::string> meta_keys;
  for (const auto& [k, v] : j.at("meta").items()) {
    (void)v;
    meta_keys.push_back(k);
  }
  CHECK(meta_keys == std::vector<std::string>{"q", "g", "gamma", "mode", "seed", "version"});
  CHECK(j.at("meta").at("q") == 5);
  CHECK(j.at("meta").at("g") == 0);
  CHECK(j.at("meta").at("gamma") == 2);
  CHECK(j.at("meta").at("mode") == "avg-odd");
  CHECK(j.at("meta").at("seed") == 0);
  CHECK(j.at("meta").at("version") == "1.0.0");
  CHECK(j.at("fixtures_version") == "none");

  REQUIRE(j.at("results").size() == 1);
  const auto& row = j.at("results").at(0);
  CHECK(row.at("name") == "mean-k2-odd-g0");
  CHECK(row.at("empirical").at("num") == "1");
  CHECK(row.at("empirical").at("den") == "1");
  CHECK(row.at("candidates").contains("main"));
  CHECK(row.at("rel_errors").contains("main"));
  CHECK(row.at("pass").is_null());
}

TEST_CASE("CSV rendering has a frozen header and metadata comment") {
  ExperimentReport rep = run_experiment(base_cfg(5, 0, "avg-odd"));
  const std::string csv = report_to_csv(rep);
  const std::size_t first_nl = csv.find('\n');
  const std::size_t second_nl = csv.find('\n', first_nl + 1);
  REQUIRE(first_nl != std::string::npos);
  REQUIRE(second_nl != std::string::npos);
  CHECK(csv.substr(0, first_nl) ==
        "# q=5 g=0 gamma=2 mode=avg-odd seed=0 version=1.0.0 fixtures_version=none");
  CHECK(csv.substr(first_nl + 1, second_nl - first_nl - 1) ==
        "name,empirical,candidates,rel_errors,pass");
  CHECK(csv.substr(second_nl + 1).rfind("mean-k2-odd-g0,1,", 0) == 0);
  CHECK_THROWS_AS(render_report(rep, "xml"), std::invalid_argument);
}

TEST_CASE("witness rows carry machine-readable coefficient lists") {
  ExperimentConfig cfg = base_cfg(5, 0, "sum-l");
  ExperimentReport rep = run_experiment(cfg);
  const ResultRow& raw = row_named(rep, "l-polynomial-witness-raw-g0");
  const ResultRow& star = row_named(rep, "l-polynomial-witness-completed-g0");
  REQUIRE(!raw.lpolynomial.is_null());
  REQUIRE(!star.lpolynomial.is_null());
  const LPolynomial praw = lpoly_from_json(raw.lpolynomial);
  const LPolynomial pstar = lpoly_from_json(star.lpolynomial);
  CHECK(praw.kind == LKind::raw);
  CHECK(pstar.kind == LKind::completed);
  CHECK(l_value_at_2(praw) == *raw.empirical_rat);
  CHECK(l_value_at_2(pstar) == *star.empirical_rat);

  // The decomposition rows of the same run agree with the direct splitter.
  const FieldSpec F = make_field(5);
  const SumDecomposition d = decompose_sum_l(F, 0);
  CHECK(*row_named(rep, "piece-square-main-g0").empirical_rat == d.piece_sq_main);
  CHECK(*row_named(rep, "sum-decomposition-total-g0").empirical_rat == d.total);
  CHECK(*row_named(rep, "l-sum-main-term-g0").empirical_rat == d.total);
  CHECK(*row_named(rep, "sum-decomposition-total-g0").pass);
}
