#include "gridsched/genotype.hpp"

#include <algorithm>
#include <cmath>

namespace gridsched {

GenotypeSpace::GenotypeSpace(const DsmInstance& instance) : instance_(&instance) {
    for (std::size_t a = 0; a < instance.appliances.size(); ++a) {
        const Appliance& app = instance.appliances[a];
        if (app.category == ApplianceCategory::Fixed) continue;
        appliance_index_.push_back(a);
        lower_.push_back(static_cast<double>(app.window.lo));
        upper_.push_back(static_cast<double>(app.latest_start()));
    }
}

Genotype GenotypeSpace::random(RngStream& rng) const {
    Genotype genes(dimension());
    for (std::size_t g = 0; g < genes.size(); ++g)
        genes[g] = rng.uniform(lower_[g], upper_[g]);
    return genes;
}

void GenotypeSpace::clamp(Genotype& genes) const {
    for (std::size_t g = 0; g < genes.size(); ++g)
        genes[g] = std::clamp(genes[g], lower_[g], upper_[g]);
}

Schedule GenotypeSpace::decode(std::span<const double> genes) const {
    Schedule schedule = baseline_schedule(*instance_);
    for (std::size_t g = 0; g < dimension(); ++g) {
        const Appliance& app = instance_->appliances[appliance_index_[g]];
        auto& row = schedule.activation[appliance_index_[g]];
        std::fill(row.begin(), row.end(), std::uint8_t{0});
        const int start = static_cast<int>(std::lround(
            std::clamp(genes[g], lower_[g], upper_[g])));
        if (app.category == ApplianceCategory::Uninterruptible) {
            for (int t = start; t < start + app.duration; ++t) row[t] = 1;
        } else {
            // Shiftable: cheapest `duration` slots on [start, window.hi],
            // earliest first among equal prices.
            std::vector<int> slots;
            for (int t = start; t <= app.window.hi; ++t) slots.push_back(t);
            std::stable_sort(slots.begin(), slots.end(), [&](int a, int b) {
                return instance_->tariff.prices[a] < instance_->tariff.prices[b];
            });
            for (int i = 0; i < app.duration; ++i) row[slots[i]] = 1;
        }
    }
    return schedule;
}

}  // namespace gridsched
