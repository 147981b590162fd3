#include "k2lab/report.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace k2lab {
namespace {

nlohmann::ordered_json rat_to_json(const Rat& v) {
  nlohmann::ordered_json j;
  j["num"] = v.get_num().get_str();
  j["den"] = v.get_den().get_str();
  return j;
}

nlohmann::ordered_json pairs_to_json(const std::vector<std::pair<std::string, double>>& pairs) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : pairs) j[k] = v;
  return j;
}

std::string empirical_cell(const ResultRow& r) {
  if (r.empirical_rat) {
    const Rat& v = *r.empirical_rat;
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
  }
  if (r.empirical_real) return display_real(*r.empirical_real, 12);
  return "";
}

std::string pairs_cell(const std::vector<std::pair<std::string, double>>& pairs) {
  std::string out;
  for (const auto& [k, v] : pairs) {
    if (!out.empty()) out += ';';
    out += k + "=" + display_real(v, 12);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& rep) {
  nlohmann::ordered_json j;
  j["meta"] = {{"q", rep.q},         {"g", rep.g},       {"gamma", rep.gamma},
               {"mode", rep.mode},   {"seed", rep.seed}, {"version", kVersion}};
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    if (r.empirical_rat) {
      row["empirical"] = rat_to_json(*r.empirical_rat);
    } else if (r.empirical_real) {
      row["empirical"] = *r.empirical_real;
    } else {
      row["empirical"] = nullptr;
    }
    row["candidates"] = pairs_to_json(r.candidates);
    row["rel_errors"] = pairs_to_json(r.rel_errors);
    if (r.pass.has_value()) {
      row["pass"] = *r.pass;
    } else {
      row["pass"] = nullptr;
    }
    if (!r.lpolynomial.is_null()) row["lpolynomial"] = r.lpolynomial;
    j["results"].push_back(std::move(row));
  }
  j["fixtures_version"] = rep.fixtures_version;
  return j;
}

std::string report_to_csv(const ExperimentReport& rep) {
  std::string out;
  out += "# q=" + std::to_string(rep.q) + " g=" + std::to_string(rep.g) +
         " gamma=" + std::to_string(rep.gamma) + " mode=" + rep.mode +
         " seed=" + std::to_string(rep.seed) + " version=" + kVersion +
         " fixtures_version=" + rep.fixtures_version + "\n";
  out += "name,empirical,candidates,rel_errors,pass\n";
  for (const auto& r : rep.rows) {
    std::string pass;
    if (r.pass.has_value()) pass = *r.pass ? "true" : "false";
    out += r.name + "," + empirical_cell(r) + "," + pairs_cell(r.candidates) + "," +
           pairs_cell(r.rel_errors) + "," + pass + "\n";
  }
  return out;
}

std::string render_report(const ExperimentReport& rep, const std::string& format) {
  if (format == "json") return report_to_json(rep).dump(2) + "\n";
  if (format == "csv") return report_to_csv(rep);
  throw std::invalid_argument("unknown format '" + format + "' (expected json or csv)");
}

void write_report(const ExperimentReport& rep, const std::string& format,
                  const std::string& out_path) {
  const std::string text = render_report(rep, format);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

}  // namespace k2lab
