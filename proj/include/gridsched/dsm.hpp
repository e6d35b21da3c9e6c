// Demand-side management domain: a household scheduling day modelled as a
// multiple knapsack. Time slots are the knapsacks, per-slot grid capacity the
// knapsack limits, appliance activations the items. Schedules are binary
// appliance-by-slot activation matrices; evaluation covers energy cost,
// peak-to-average ratio, start-shift discomfort and capacity feasibility.

#ifndef GRIDSCHED_DSM_HPP
#define GRIDSCHED_DSM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridsched/errors.hpp"

namespace gridsched {

enum class ApplianceCategory {
    Fixed,            // pinned to the user's placement
    Shiftable,        // may run in any slots inside its window
    Uninterruptible,  // one contiguous run, start may move inside the window
};

std::string to_string(ApplianceCategory c);
ApplianceCategory appliance_category_from_string(const std::string& s);

struct SlotWindow {
    int lo = 0;
    int hi = 0;  // inclusive

    int length() const { return hi - lo + 1; }
};

struct Appliance {
    std::string id;
    ApplianceCategory category = ApplianceCategory::Shiftable;
    double power_kw = 1.0;   // drawn per active slot
    int duration = 1;        // active slots required
    int preferred_start = 0;
    SlotWindow window;

    // Latest slot a duration-long run can start on and still fit the window.
    int latest_start() const { return window.hi - duration + 1; }
    int max_shift() const {
        return std::max(preferred_start - window.lo,
                        latest_start() - preferred_start);
    }
};

struct Tariff {
    std::vector<double> prices;  // currency per kWh, one per slot
    double slot_hours = 1.0;
};

struct DsmInstance {
    int horizon = 0;
    std::vector<Appliance> appliances;
    Tariff tariff;
    std::vector<double> capacity;  // per-slot kW limit

    // Throws InstanceError when any declared invariant fails.
    void validate() const;
};

// Binary activation matrix indexed [appliance][slot].
struct Schedule {
    std::vector<std::vector<std::uint8_t>> activation;

    std::size_t appliance_count() const { return activation.size(); }
    std::size_t slot_count() const {
        return activation.empty() ? 0 : activation.front().size();
    }
    // First active slot of one row; -1 when the row is all zero.
    int first_active_slot(std::size_t appliance) const;

    bool operator==(const Schedule&) const = default;
};

struct MetricsReport {
    double cost = 0.0;
    double par = 1.0;
    double discomfort = 0.0;
    double peak_kw = 0.0;
    long capacity_violations = 0;
    bool feasible = true;
};

enum class ViolationKind {
    DurationMismatch,
    FixedDeviation,
    NonContiguousRun,
    WindowEscape,
    CapacityExceeded,
};

struct Violation {
    ViolationKind kind;
    int appliance = -1;  // -1 for per-slot capacity findings
    int slot = -1;
    std::string detail;
};

struct ObjectiveWeights {
    double cost = 1.0;
    double par = 0.0;
    double discomfort = 0.0;
    double violation_penalty = 10.0;

    void validate() const;
};

// Per-slot total kW drawn by a schedule.
std::vector<double> load_profile(const Schedule& schedule, const DsmInstance& instance);

// Sum over slots of price * load * slot_hours. Ignores feasibility.
double evaluate_cost(const Schedule& schedule, const DsmInstance& instance);

// Peak load over mean load; exactly 1 for a flat or all-zero profile.
double evaluate_par(const Schedule& schedule, const DsmInstance& instance);

// Mean normalized start shift over non-Fixed appliances, in [0, 1].
// Appliances whose window permits no shift contribute zero.
double evaluate_discomfort(const Schedule& schedule, const DsmInstance& instance);

// All category and capacity violations; empty list means feasible.
std::vector<Violation> check_feasibility(const Schedule& schedule,
                                         const DsmInstance& instance);

// Full report; capacity_violations counts offending slots.
MetricsReport evaluate_metrics(const Schedule& schedule, const DsmInstance& instance);

// Scalar fitness: w_c * cost/baseline_cost + w_p * par + w_d * discomfort
// + penalty * capacity_violations. Lower is better.
double weighted_objective(const MetricsReport& report, const ObjectiveWeights& weights,
                          double baseline_cost);

// Every appliance runs contiguously from its preferred start.
Schedule baseline_schedule(const DsmInstance& instance);

struct BruteForceLimits {
    long max_total_combinations = 1'000'000;
    long max_subsets_per_appliance = 10'000;
};

// Exhaustive minimizer of the weighted objective over category-feasible
// schedules. Shiftable rows range over slot subsets of the window, the others
// over contiguous starts. Ties resolve to the first schedule in enumeration
// order, which is lexicographic in the per-appliance start/pattern sequence.
Schedule brute_force_schedule(const DsmInstance& instance, const ObjectiveWeights& weights,
                              const BruteForceLimits& limits = {});

// Binds an instance and weights; caches the baseline cost so solvers can
// score candidate schedules with one call. Immutable and safe to share.
class ScheduleObjective {
public:
    ScheduleObjective(const DsmInstance& instance, ObjectiveWeights weights);

    const DsmInstance& instance() const { return *instance_; }
    const ObjectiveWeights& weights() const { return weights_; }
    double baseline_cost() const { return baseline_cost_; }

    MetricsReport metrics(const Schedule& schedule) const;
    double objective(const Schedule& schedule) const;
    // Objective plus the violation count used by feasibility-first acceptance.
    std::pair<double, long> score(const Schedule& schedule) const;

private:
    const DsmInstance* instance_;
    ObjectiveWeights weights_;
    double baseline_cost_;
};

}  // namespace gridsched

#endif
