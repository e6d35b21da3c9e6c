// Result serialization: JSON documents for run results and speedup reports,
// CSV for convergence series. Output is byte-stable for fixed seeds and
// flags apart from the wall-clock fields.

#ifndef GRIDSCHED_REPORT_IO_HPP
#define GRIDSCHED_REPORT_IO_HPP

#include <string>

#include "gridsched/classic.hpp"
#include "gridsched/idfpa.hpp"
#include "gridsched/parallel.hpp"

namespace gridsched {

std::string dsm_result_to_json(const std::string& algorithm, const DsmRunResult& result,
                               const MetricsReport& metrics, int indent = 2);

std::string tsp_result_to_json(const std::string& algorithm, const std::string& strategy,
                               const TspRunResult& result, int indent = 2);

std::string speedup_report_to_json(const SpeedupReport& report, int indent = 2);

// Header "iteration,best_value", 1-based iteration numbers.
std::string convergence_csv(const std::vector<double>& trajectory);

}  // namespace gridsched

#endif
