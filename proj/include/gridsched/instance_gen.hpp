// Seeded synthetic instances: DSM households with flat, two-tier or random
// tariffs, and random Euclidean TSP instances. Generation is deterministic
// per seed, byte for byte.

#ifndef GRIDSCHED_INSTANCE_GEN_HPP
#define GRIDSCHED_INSTANCE_GEN_HPP

#include <cstdint>
#include <string>

#include "gridsched/dsm.hpp"
#include "gridsched/tsp.hpp"

namespace gridsched {

enum class TariffShape { Flat, TwoTier, Random };

TariffShape tariff_shape_from_string(const std::string& s);

// Category mix is 20% Fixed / 50% Shiftable / 30% Uninterruptible (rounded);
// the two-tier tariff prices its peak block at 3x the off-peak rate; per-slot
// capacity is 1.5x the baseline peak so the user's own schedule always fits.
DsmInstance generate_dsm_instance(int n_appliances, int horizon, TariffShape shape,
                                  std::uint64_t seed);

// Uniform points on [0, 100)^2.
TspInstance generate_tsp_instance(std::size_t n, std::uint64_t seed);

}  // namespace gridsched

#endif
