// Shared solver machinery: termination settings, run results with best-so-far
// trajectories, and the feasibility-first comparator used for constrained
// acceptance.

#ifndef GRIDSCHED_CORE_HPP
#define GRIDSCHED_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridsched/errors.hpp"

namespace gridsched {

struct Termination {
    int max_iterations = 500;
    std::optional<int> stagnation_window;  // stop after this many non-improving iterations
    std::optional<long> max_evaluations;   // checked at iteration boundaries

    void validate() const {
        if (max_iterations < 1)
            throw ParameterError("max_iterations must be at least 1");
        if (stagnation_window && *stagnation_window < 1)
            throw ParameterError("stagnation_window must be at least 1");
        if (max_evaluations && *max_evaluations < 1)
            throw ParameterError("max_evaluations must be at least 1");
    }
};

// Outcome of one solver run. `trajectory` holds the best-so-far objective
// after each executed iteration and is monotone non-increasing.
template <typename Solution>
struct RunResult {
    Solution best_solution{};
    double best_value = 0.0;
    std::vector<double> trajectory;
    long evaluations = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    std::map<std::string, std::uint64_t> counters;
};

// A solution's standing for constrained comparison.
struct Candidate {
    double fitness = 0.0;
    long violations = 0;

    bool feasible() const { return violations == 0; }
};

// Three-way constrained comparison: negative when a is preferred, positive
// when b is preferred, zero on an exact tie. Feasible beats infeasible; two
// feasible compare on fitness; two infeasible compare on violation count.
int deb_compare(const Candidate& a, const Candidate& b);

// Selection form: ties retain the first argument.
inline const Candidate& deb_select(const Candidate& a, const Candidate& b) {
    return deb_compare(a, b) <= 0 ? a : b;
}

// True when `challenger` strictly beats `incumbent`.
inline bool deb_improves(const Candidate& challenger, const Candidate& incumbent) {
    return deb_compare(challenger, incumbent) < 0;
}

// Tracks best-so-far values and enforces the monotone trajectory contract.
class TrajectoryRecorder {
public:
    void observe(double value) {
        if (!has_best_ || value < best_) {
            best_ = value;
            has_best_ = true;
        }
    }
    void end_iteration() { trajectory_.push_back(best_); }
    double best() const { return best_; }
    bool has_best() const { return has_best_; }
    const std::vector<double>& trajectory() const { return trajectory_; }
    std::vector<double> take_trajectory() { return std::move(trajectory_); }

private:
    double best_ = 0.0;
    bool has_best_ = false;
    std::vector<double> trajectory_;
};

}  // namespace gridsched

#endif
