// Shared instance builders for the test suites.

#ifndef GRIDSCHED_TESTS_TEST_UTIL_HPP
#define GRIDSCHED_TESTS_TEST_UTIL_HPP

#include <vector>

#include "gridsched/dsm.hpp"
#include "gridsched/tsp.hpp"

namespace gridsched::test {

inline Appliance make_appliance(std::string id, ApplianceCategory category,
                                double power, int duration, int preferred,
                                SlotWindow window) {
    Appliance a;
    a.id = std::move(id);
    a.category = category;
    a.power_kw = power;
    a.duration = duration;
    a.preferred_start = preferred;
    a.window = window;
    return a;
}

inline DsmInstance make_instance(int horizon, std::vector<Appliance> appliances,
                                 std::vector<double> prices, double slot_hours = 1.0,
                                 double capacity = 1e9) {
    DsmInstance instance;
    instance.horizon = horizon;
    instance.appliances = std::move(appliances);
    instance.tariff.prices = std::move(prices);
    instance.tariff.slot_hours = slot_hours;
    instance.capacity.assign(horizon, capacity);
    return instance;
}

// One fixed appliance anchored at slot `preferred`.
inline Appliance fixed_app(std::string id, double power, int duration, int preferred) {
    return make_appliance(std::move(id), ApplianceCategory::Fixed, power, duration,
                          preferred, {preferred, preferred + duration - 1});
}

inline TspInstance unit_square() {
    return build_distance_matrix({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace gridsched::test

#endif
