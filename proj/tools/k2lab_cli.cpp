#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "k2lab/experiment.hpp"
#include "k2lab/fixtures.hpp"
#include "k2lab/report.hpp"

namespace {

// Canonical re-invocation string recorded next to pinned constants.
std::string command_string(const k2lab::ExperimentConfig& cfg, const std::string& format) {
  std::string cmd = "k2lab --q " + std::to_string(cfg.q) + " --g " + std::to_string(cfg.g) +
                    " --experiment " + cfg.experiment;
  if (cfg.gamma_override != 0) cmd += " --gamma " + std::to_string(cfg.gamma_override);
  if (cfg.sample != 0)
    cmd += " --sample " + std::to_string(cfg.sample) + " --seed " + std::to_string(cfg.seed);
  else if (cfg.seed != 0)
    cmd += " --seed " + std::to_string(cfg.seed);
  if (cfg.epsilon != 0.1) cmd += " --epsilon " + k2lab::display_real(cfg.epsilon, 12);
  if (cfg.budget != k2lab::kDefaultBudget) cmd += " --budget " + std::to_string(cfg.budget);
  if (format != "json") cmd += " --format " + format;
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic function-field K2 statistics"};
  app.get_formatter()->column_width(34);

  k2lab::ExperimentConfig cfg;
  std::string format = "json";
  std::string out_path;

  app.add_option("--q", cfg.q, "Field size (odd prime >= 5)")->required();
  app.add_option("--g", cfg.g, "Genus parameter (>= 0)")->required();
  app.add_option("--experiment", cfg.experiment, "One of avg-odd, avg-even, sum-l, identities, bounds")
      ->required()
      ->check(CLI::IsMember({"avg-odd", "avg-even", "sum-l", "identities", "bounds"}));
  app.add_option("--gamma", cfg.gamma_override,
                 "Unit-group generator override (default: smallest generator)");
  app.add_option("--sample", cfg.sample, "Sample size (>= 500); 0 means exhaustive");
  app.add_option("--seed", cfg.seed, "Sampling seed");
  app.add_option("--epsilon", cfg.epsilon, "Envelope exponent slack (default 0.1)");
  app.add_option("--threads", cfg.threads, "Worker threads (default 1)");
  app.add_option("--format", format, "Report format: json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--budget", cfg.budget,
                 "Largest family enumerated exhaustively (default 20000)");
  app.add_option("--fixtures", cfg.fixtures_path,
                 "Pinned-constants file to check reproducible statistics against");
  app.add_flag("--write-fixtures", cfg.write_fixtures,
               "Re-pin this run's constants into the --fixtures file instead of checking");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cfg.write_fixtures && cfg.fixtures_path.empty())
      throw std::invalid_argument("--write-fixtures requires --fixtures <path>");

    const auto t0 = std::chrono::steady_clock::now();
    const k2lab::ExperimentReport rep = k2lab::run_experiment(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    k2lab::write_report(rep, format, out_path);

    if (cfg.write_fixtures) {
      const auto entries =
          k2lab::fixture_entries_from_report(rep, command_string(cfg, format));
      k2lab::merge_and_save_fixtures(cfg.fixtures_path, entries, "1");
      std::cerr << "pinned " << entries.size() << " constant(s) into " << cfg.fixtures_path
                << "\n";
    }

    int failed = 0, checked = 0;
    for (const auto& r : rep.rows) {
      if (!r.pass.has_value()) continue;
      checked += 1;
      if (!*r.pass) {
        failed += 1;
        std::cerr << "FAIL " << r.name << "\n";
      }
    }
    std::cerr << "mode=" << rep.mode << " rows=" << rep.rows.size() << " checked=" << checked
              << " failed=" << failed << " runtime=" << k2lab::display_real(secs, 6) << "s\n";
    return failed == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
