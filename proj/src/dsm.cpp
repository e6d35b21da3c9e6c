#include "gridsched/dsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gridsched {

std::string to_string(ApplianceCategory c) {
    switch (c) {
        case ApplianceCategory::Fixed: return "Fixed";
        case ApplianceCategory::Shiftable: return "Shiftable";
        case ApplianceCategory::Uninterruptible: return "Uninterruptible";
    }
    return "Unknown";
}

ApplianceCategory appliance_category_from_string(const std::string& s) {
    if (s == "Fixed") return ApplianceCategory::Fixed;
    if (s == "Shiftable") return ApplianceCategory::Shiftable;
    if (s == "Uninterruptible") return ApplianceCategory::Uninterruptible;
    throw ParseError("unknown appliance category: " + s);
}

void DsmInstance::validate() const {
    if (horizon < 1) throw InstanceError("horizon must be at least 1");
    if (static_cast<int>(tariff.prices.size()) != horizon)
        throw InstanceError("tariff length must equal horizon");
    if (!(tariff.slot_hours > 0.0))
        throw InstanceError("slot_hours must be positive");
    for (double p : tariff.prices)
        if (!(p > 0.0)) throw InstanceError("all tariff prices must be positive");
    if (static_cast<int>(capacity.size()) != horizon)
        throw InstanceError("capacity length must equal horizon");
    for (const Appliance& a : appliances) {
        if (!(a.power_kw > 0.0))
            throw InstanceError("appliance " + a.id + ": power must be positive");
        if (a.duration < 1)
            throw InstanceError("appliance " + a.id + ": duration must be at least 1");
        if (a.window.lo < 0 || a.window.hi >= horizon || a.window.lo > a.window.hi)
            throw InstanceError("appliance " + a.id + ": window outside horizon");
        if (a.window.length() < a.duration)
            throw InstanceError("appliance " + a.id + ": window shorter than duration");
        if (a.preferred_start < a.window.lo || a.preferred_start > a.latest_start())
            throw InstanceError("appliance " + a.id +
                                ": preferred placement escapes window");
        if (a.category == ApplianceCategory::Fixed &&
            (a.window.lo != a.preferred_start ||
             a.window.hi != a.preferred_start + a.duration - 1))
            throw InstanceError("appliance " + a.id +
                                ": fixed window must collapse to the preferred run");
    }
}

int Schedule::first_active_slot(std::size_t appliance) const {
    const auto& row = activation[appliance];
    for (std::size_t t = 0; t < row.size(); ++t)
        if (row[t]) return static_cast<int>(t);
    return -1;
}

void ObjectiveWeights::validate() const {
    if (cost < 0.0 || par < 0.0 || discomfort < 0.0 || violation_penalty < 0.0)
        throw ParameterError("objective weights must be nonnegative");
}

namespace {

void require_shape(const Schedule& schedule, const DsmInstance& instance) {
    if (schedule.appliance_count() != instance.appliances.size())
        throw ShapeError("schedule row count does not match appliance count");
    for (const auto& row : schedule.activation)
        if (static_cast<int>(row.size()) != instance.horizon)
            throw ShapeError("schedule column count does not match horizon");
}

}  // namespace

std::vector<double> load_profile(const Schedule& schedule, const DsmInstance& instance) {
    require_shape(schedule, instance);
    std::vector<double> load(instance.horizon, 0.0);
    for (std::size_t a = 0; a < schedule.appliance_count(); ++a) {
        const double p = instance.appliances[a].power_kw;
        const auto& row = schedule.activation[a];
        for (int t = 0; t < instance.horizon; ++t)
            if (row[t]) load[t] += p;
    }
    return load;
}

double evaluate_cost(const Schedule& schedule, const DsmInstance& instance) {
    const auto load = load_profile(schedule, instance);
    double cost = 0.0;
    for (int t = 0; t < instance.horizon; ++t)
        cost += instance.tariff.prices[t] * load[t] * instance.tariff.slot_hours;
    return cost;
}

double evaluate_par(const Schedule& schedule, const DsmInstance& instance) {
    const auto load = load_profile(schedule, instance);
    const double total = std::accumulate(load.begin(), load.end(), 0.0);
    if (total <= 0.0) return 1.0;
    const double peak = *std::max_element(load.begin(), load.end());
    const double mean = total / static_cast<double>(load.size());
    return peak / mean;
}

double evaluate_discomfort(const Schedule& schedule, const DsmInstance& instance) {
    require_shape(schedule, instance);
    double sum = 0.0;
    int counted = 0;
    for (std::size_t a = 0; a < instance.appliances.size(); ++a) {
        const Appliance& app = instance.appliances[a];
        if (app.category == ApplianceCategory::Fixed) continue;
        ++counted;
        const int max_shift = app.max_shift();
        if (max_shift == 0) continue;
        const int start = schedule.first_active_slot(a);
        if (start < 0) continue;  // degenerate all-zero row; counted as no shift
        sum += std::abs(start - app.preferred_start) /
               static_cast<double>(max_shift);
    }
    return counted == 0 ? 0.0 : sum / counted;
}

std::vector<Violation> check_feasibility(const Schedule& schedule,
                                         const DsmInstance& instance) {
    require_shape(schedule, instance);
    std::vector<Violation> out;
    for (std::size_t a = 0; a < instance.appliances.size(); ++a) {
        const Appliance& app = instance.appliances[a];
        const auto& row = schedule.activation[a];
        const int active = static_cast<int>(
            std::count(row.begin(), row.end(), std::uint8_t{1}));
        if (active != app.duration)
            out.push_back({ViolationKind::DurationMismatch, static_cast<int>(a), -1,
                           app.id + ": " + std::to_string(active) + " active slots, needs " +
                               std::to_string(app.duration)});
        for (int t = 0; t < instance.horizon; ++t)
            if (row[t] && (t < app.window.lo || t > app.window.hi)) {
                out.push_back({ViolationKind::WindowEscape, static_cast<int>(a), t,
                               app.id + ": active outside window"});
                break;
            }
        if (app.category == ApplianceCategory::Fixed) {
            bool deviates = false;
            for (int t = 0; t < instance.horizon; ++t) {
                const bool expected =
                    t >= app.preferred_start && t < app.preferred_start + app.duration;
                if (static_cast<bool>(row[t]) != expected) deviates = true;
            }
            if (deviates)
                out.push_back({ViolationKind::FixedDeviation, static_cast<int>(a), -1,
                               app.id + ": deviates from the user placement"});
        }
        if (app.category == ApplianceCategory::Uninterruptible && active > 0) {
            const int start = schedule.first_active_slot(a);
            bool contiguous = true;
            for (int t = start; t < start + active; ++t)
                if (t >= instance.horizon || !row[t]) contiguous = false;
            for (int t = start + active; t < instance.horizon; ++t)
                if (row[t]) contiguous = false;
            if (!contiguous)
                out.push_back({ViolationKind::NonContiguousRun, static_cast<int>(a), -1,
                               app.id + ": run is interrupted"});
        }
    }
    const auto load = load_profile(schedule, instance);
    for (int t = 0; t < instance.horizon; ++t)
        if (load[t] > instance.capacity[t] + 1e-9)
            out.push_back({ViolationKind::CapacityExceeded, -1, t,
                           "slot " + std::to_string(t) + ": load " + std::to_string(load[t]) +
                               " kW exceeds capacity " + std::to_string(instance.capacity[t])});
    return out;
}

MetricsReport evaluate_metrics(const Schedule& schedule, const DsmInstance& instance) {
    MetricsReport report;
    report.cost = evaluate_cost(schedule, instance);
    report.par = evaluate_par(schedule, instance);
    report.discomfort = evaluate_discomfort(schedule, instance);
    const auto load = load_profile(schedule, instance);
    report.peak_kw = load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
    const auto violations = check_feasibility(schedule, instance);
    for (const Violation& v : violations)
        if (v.kind == ViolationKind::CapacityExceeded) ++report.capacity_violations;
    report.feasible = violations.empty();
    return report;
}

double weighted_objective(const MetricsReport& report, const ObjectiveWeights& weights,
                          double baseline_cost) {
    weights.validate();
    if (!(baseline_cost > 0.0))
        throw ParameterError("baseline cost must be positive");
    return weights.cost * (report.cost / baseline_cost) + weights.par * report.par +
           weights.discomfort * report.discomfort +
           weights.violation_penalty * static_cast<double>(report.capacity_violations);
}

Schedule baseline_schedule(const DsmInstance& instance) {
    Schedule schedule;
    schedule.activation.assign(instance.appliances.size(),
                               std::vector<std::uint8_t>(instance.horizon, 0));
    for (std::size_t a = 0; a < instance.appliances.size(); ++a) {
        const Appliance& app = instance.appliances[a];
        for (int t = app.preferred_start; t < app.preferred_start + app.duration; ++t)
            schedule.activation[a][t] = 1;
    }
    return schedule;
}

namespace {

// All category-feasible placements of one appliance, each a sorted slot set.
// Enumeration order is lexicographic in the slot sequence, so the brute-force
// scan visits schedules in lexicographic start-vector order.
std::vector<std::vector<int>> enumerate_placements(const Appliance& app,
                                                   const BruteForceLimits& limits) {
    std::vector<std::vector<int>> placements;
    if (app.category == ApplianceCategory::Fixed) {
        std::vector<int> slots(app.duration);
        std::iota(slots.begin(), slots.end(), app.preferred_start);
        placements.push_back(std::move(slots));
        return placements;
    }
    if (app.category == ApplianceCategory::Uninterruptible) {
        for (int s = app.window.lo; s <= app.latest_start(); ++s) {
            std::vector<int> slots(app.duration);
            std::iota(slots.begin(), slots.end(), s);
            placements.push_back(std::move(slots));
        }
        return placements;
    }
    // Shiftable: every subset of the window with cardinality duration,
    // generated in lexicographic order via the combination odometer.
    const int w = app.window.length();
    const int k = app.duration;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> slots(k);
        for (int i = 0; i < k; ++i) slots[i] = app.window.lo + idx[i];
        placements.push_back(std::move(slots));
        if (static_cast<long>(placements.size()) > limits.max_subsets_per_appliance)
            throw InstanceTooLargeError("appliance " + app.id +
                                        " exceeds the placement enumeration cap");
        int i = k - 1;
        while (i >= 0 && idx[i] == w - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return placements;
}

}  // namespace

Schedule brute_force_schedule(const DsmInstance& instance, const ObjectiveWeights& weights,
                              const BruteForceLimits& limits) {
    instance.validate();
    weights.validate();
    ScheduleObjective objective(instance, weights);

    std::vector<std::vector<std::vector<int>>> placements;
    placements.reserve(instance.appliances.size());
    long combinations = 1;
    for (const Appliance& app : instance.appliances) {
        placements.push_back(enumerate_placements(app, limits));
        const long count = static_cast<long>(placements.back().size());
        if (combinations > limits.max_total_combinations / count)
            throw InstanceTooLargeError("placement combinations exceed the brute-force guard");
        combinations *= count;
    }

    Schedule current;
    current.activation.assign(instance.appliances.size(),
                              std::vector<std::uint8_t>(instance.horizon, 0));
    Schedule best;
    double best_value = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> choice(instance.appliances.size(), 0);
    const auto apply_row = [&](std::size_t a) {
        auto& row = current.activation[a];
        std::fill(row.begin(), row.end(), std::uint8_t{0});
        for (int slot : placements[a][choice[a]]) row[slot] = 1;
    };
    for (std::size_t a = 0; a < choice.size(); ++a) apply_row(a);

    while (true) {
        const double value = objective.objective(current);
        if (value < best_value) {  // strict: ties keep the earliest in lex order
            best_value = value;
            best = current;
        }
        std::size_t a = choice.size();
        while (a > 0) {
            --a;
            if (++choice[a] < placements[a].size()) {
                apply_row(a);
                break;
            }
            choice[a] = 0;
            apply_row(a);
            if (a == 0) return best;
        }
        if (choice.size() == 0) return best;
    }
}

ScheduleObjective::ScheduleObjective(const DsmInstance& instance, ObjectiveWeights weights)
    : instance_(&instance), weights_(weights) {
    weights_.validate();
    baseline_cost_ = evaluate_cost(baseline_schedule(instance), instance);
    if (!(baseline_cost_ > 0.0))
        throw InstanceError("baseline cost must be positive for objective scaling");
}

MetricsReport ScheduleObjective::metrics(const Schedule& schedule) const {
    return evaluate_metrics(schedule, *instance_);
}

double ScheduleObjective::objective(const Schedule& schedule) const {
    return weighted_objective(metrics(schedule), weights_, baseline_cost_);
}

std::pair<double, long> ScheduleObjective::score(const Schedule& schedule) const {
    const MetricsReport report = metrics(schedule);
    return {weighted_objective(report, weights_, baseline_cost_),
            report.capacity_violations};
}

}  // namespace gridsched
