#include "emergent/report.hpp"

#include <cstdio>
#include <fstream>

namespace emg {

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string report_to_csv(const json& report) {
  if (!report.contains("schedule_abs") || !report.contains("values"))
    throw Error("report has no (schedule_abs, values) sweep to export");
  const auto& eps = report.at("schedule_abs");
  const auto& vals = report.at("values");
  if (eps.size() != vals.size()) throw Error("schedule_abs and values lengths differ");
  std::string out = "k,abs_eps,value\n";
  char line[96];
  for (std::size_t k = 0; k < eps.size(); ++k) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", k + 1, eps[k].get<double>(),
                  vals[k].get<double>());
    out += line;
  }
  return out;
}

}  // namespace emg
