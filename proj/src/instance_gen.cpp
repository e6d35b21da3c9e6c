#include "gridsched/instance_gen.hpp"

#include <algorithm>
#include <cmath>

#include "gridsched/rng.hpp"

namespace gridsched {

TariffShape tariff_shape_from_string(const std::string& s) {
    if (s == "flat") return TariffShape::Flat;
    if (s == "two_tier") return TariffShape::TwoTier;
    if (s == "random") return TariffShape::Random;
    throw ParameterError("unknown tariff shape: " + s);
}

DsmInstance generate_dsm_instance(int n_appliances, int horizon, TariffShape shape,
                                  std::uint64_t seed) {
    if (n_appliances < 1) throw ParameterError("need at least one appliance");
    if (horizon < 2) throw ParameterError("horizon must be at least 2");
    RngStream rng(seed);

    DsmInstance instance;
    instance.horizon = horizon;
    instance.tariff.slot_hours = 24.0 / static_cast<double>(horizon);
    instance.tariff.prices.assign(horizon, 1.0);
    switch (shape) {
        case TariffShape::Flat:
            break;
        case TariffShape::TwoTier: {
            // peak block: [horizon/2, 3*horizon/4), at least one slot
            const int peak_lo = horizon / 2;
            const int peak_hi = std::max(peak_lo + 1, 3 * horizon / 4);
            for (int t = peak_lo; t < peak_hi && t < horizon; ++t)
                instance.tariff.prices[t] = 3.0;
            break;
        }
        case TariffShape::Random:
            for (double& p : instance.tariff.prices) p = rng.uniform(0.5, 2.5);
            break;
    }

    const int n_fixed = static_cast<int>(std::llround(0.2 * n_appliances));
    const int n_shiftable = static_cast<int>(std::llround(0.5 * n_appliances));
    const int n_uninterruptible = std::max(0, n_appliances - n_fixed - n_shiftable);
    std::vector<ApplianceCategory> categories;
    categories.insert(categories.end(), n_fixed, ApplianceCategory::Fixed);
    categories.insert(categories.end(), n_shiftable, ApplianceCategory::Shiftable);
    categories.insert(categories.end(), n_uninterruptible,
                      ApplianceCategory::Uninterruptible);
    categories.resize(n_appliances, ApplianceCategory::Shiftable);
    for (int i = n_appliances - 1; i > 0; --i)
        std::swap(categories[i], categories[rng.uniform_int(0, i)]);

    const int max_duration = std::min(6L, std::max(1L, static_cast<long>(horizon) / 3));
    for (int i = 0; i < n_appliances; ++i) {
        Appliance a;
        a.id = "app-" + std::to_string(i);
        a.category = categories[i];
        a.power_kw = rng.uniform(0.5, 3.0);
        a.duration = static_cast<int>(rng.uniform_int(1, max_duration));
        const int lo = static_cast<int>(rng.uniform_int(0, horizon - a.duration));
        const int hi = static_cast<int>(rng.uniform_int(lo + a.duration - 1, horizon - 1));
        a.window = {lo, hi};
        a.preferred_start = static_cast<int>(rng.uniform_int(lo, hi - a.duration + 1));
        if (a.category == ApplianceCategory::Fixed)
            a.window = {a.preferred_start, a.preferred_start + a.duration - 1};
        instance.appliances.push_back(std::move(a));
    }

    const auto baseline_load = load_profile(baseline_schedule(instance), instance);
    const double peak = *std::max_element(baseline_load.begin(), baseline_load.end());
    instance.capacity.assign(horizon, 1.5 * peak);

    instance.validate();
    return instance;
}

TspInstance generate_tsp_instance(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw ParameterError("need at least 3 nodes");
    RngStream rng(seed);
    std::vector<Point> coords(n);
    for (Point& p : coords) {
        p.x = rng.uniform(0.0, 100.0);
        p.y = rng.uniform(0.0, 100.0);
    }
    TspInstance instance = build_distance_matrix(coords);
    instance.name = "random-" + std::to_string(n) + "-" + std::to_string(seed);
    return instance;
}

}  // namespace gridsched
