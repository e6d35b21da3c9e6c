// iDFPA adapted from tours to appliance scheduling. Agents visit the
// non-Fixed appliances in a fixed order and pick one start slot each from a
// per-appliance desirability row, using the same local/global selection
// machinery as the tour construction; the local radius is measured in slots
// against the previously chosen start. A completed assignment decodes to a
// schedule whose weighted objective serves as the surrogate tour distance,
// so evaporation, best-assignment reinforcement and the rejection flow all
// carry over unchanged.

#ifndef GRIDSCHED_IDFPA_SCHEDULE_HPP
#define GRIDSCHED_IDFPA_SCHEDULE_HPP

#include <cstdint>

#include "gridsched/classic.hpp"
#include "gridsched/dsm.hpp"
#include "gridsched/idfpa.hpp"

namespace gridsched {

DsmRunResult idfpa_schedule_run(const DsmInstance& instance, const IdfpaParams& params,
                                const ObjectiveWeights& weights, std::uint64_t seed);

}  // namespace gridsched

#endif
