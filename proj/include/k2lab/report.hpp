#pragma once

#include <string>

#include "json.hpp"
#include "k2lab/experiment.hpp"

namespace k2lab {

// {"meta": {q, g, gamma, mode, seed, version}, "results": [...],
//  "fixtures_version": ...}; exact statistics appear as {"num","den"} decimal
// strings, floating statistics as JSON numbers.
nlohmann::ordered_json report_to_json(const ExperimentReport& rep);

// One row per result; meta as leading comment lines; cell-internal maps are
// flattened as key=value pairs joined with ';'.
std::string report_to_csv(const ExperimentReport& rep);

std::string render_report(const ExperimentReport& rep, const std::string& format);

// Writes to `out_path`, or to stdout when the path is empty.
void write_report(const ExperimentReport& rep, const std::string& format,
                  const std::string& out_path);

}  // namespace k2lab
