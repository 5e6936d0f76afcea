// Deterministic report serialization helpers: identical inputs and seeds
// must produce byte-identical JSON and CSV.
#pragma once

#include <string>
#include <vector>

#include "emergent/model.hpp"

namespace emg {

std::string dump_report(const json& report);  // stable 2-space indentation
void write_file(const std::string& path, const std::string& contents);

// Extracts (k, |eps|, value) triples from any report carrying "schedule_abs"
// and "values" arrays.
std::string report_to_csv(const json& report);

}  // namespace emg
