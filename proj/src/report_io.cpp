#include "gridsched/report_io.hpp"

#include <sstream>

#include "json.hpp"

namespace gridsched {

namespace {

using nlohmann::json;

json base_result(const std::string& algorithm, long evaluations, double wall_seconds,
                 std::uint64_t seed, double best_value, std::size_t iterations) {
    json doc;
    doc["algorithm"] = algorithm;
    doc["best_value"] = best_value;
    doc["evaluations"] = evaluations;
    doc["iterations"] = iterations;
    doc["seed"] = seed;
    doc["wall_seconds"] = wall_seconds;
    return doc;
}

}  // namespace

std::string dsm_result_to_json(const std::string& algorithm, const DsmRunResult& result,
                               const MetricsReport& metrics, int indent) {
    json doc = base_result(algorithm, result.evaluations, result.wall_seconds,
                           result.seed, result.best_value, result.trajectory.size());
    doc["metrics"] = {{"cost", metrics.cost},
                      {"par", metrics.par},
                      {"discomfort", metrics.discomfort},
                      {"peak_kw", metrics.peak_kw},
                      {"capacity_violations", metrics.capacity_violations},
                      {"feasible", metrics.feasible}};
    json rows = json::array();
    for (const auto& row : result.best_solution.activation)
        rows.push_back(std::vector<int>(row.begin(), row.end()));
    doc["schedule"] = std::move(rows);
    return doc.dump(indent) + "\n";
}

std::string tsp_result_to_json(const std::string& algorithm, const std::string& strategy,
                               const TspRunResult& result, int indent) {
    json doc = base_result(algorithm, result.evaluations, result.wall_seconds,
                           result.seed, result.best_value, result.trajectory.size());
    doc["strategy"] = strategy;
    doc["tour"] = result.best_solution.order;
    doc["tour_length"] = result.best_solution.length;
    return doc.dump(indent) + "\n";
}

std::string speedup_report_to_json(const SpeedupReport& report, int indent) {
    json doc;
    doc["serial_seconds"] = report.serial_seconds;
    doc["parallel_seconds"] = report.parallel_seconds;
    doc["speedup"] = report.speedup;
    doc["efficiency"] = report.efficiency;
    doc["workers"] = report.workers;
    doc["quality_ratio"] = report.quality_ratio;
    return doc.dump(indent) + "\n";
}

std::string convergence_csv(const std::vector<double>& trajectory) {
    std::ostringstream out;
    out << "iteration,best_value\n";
    out.precision(17);
    for (std::size_t i = 0; i < trajectory.size(); ++i)
        out << (i + 1) << "," << trajectory[i] << "\n";
    return out.str();
}

}  // namespace gridsched
