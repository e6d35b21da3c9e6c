// The four hybrid solvers, each a composition of the base algorithms'
// operators: the bat loop with a pollination step, the genetic loop with
// pollination variation, teaching/learning phases swapped for pollination,
// and teaching/learning followed by genetic mutation.

#ifndef GRIDSCHED_HYBRID_HPP
#define GRIDSCHED_HYBRID_HPP

#include "gridsched/classic.hpp"

namespace gridsched {

// Bat loop where the pulse-gated local walk is a pollination move
// (switch_p applies inside the replaced step). Also registered as "hfba";
// the two published names describe the same composition.
DsmRunResult fbat_run(const DsmInstance& instance, const AlgoParams& params,
                      std::uint64_t seed);

// Genetic loop with selection, replacement and elitism intact; crossover and
// mutation are replaced by one pollination move per selected parent.
DsmRunResult fga_run(const DsmInstance& instance, const AlgoParams& params,
                     std::uint64_t seed);

// Teaching and learning phases both replaced by pollination moves; candidates
// keep feasibility-first acceptance and are compared against the global best.
DsmRunResult ftlbo_run(const DsmInstance& instance, const AlgoParams& params,
                       std::uint64_t seed);

// Full teacher/learner iteration, then per-gene genetic mutation across the
// population with feasibility-first acceptance. With mutation_rate zero the
// mutation stage is skipped entirely and the run replays tlbo_run exactly.
DsmRunResult gtlbo_run(const DsmInstance& instance, const AlgoParams& params,
                       std::uint64_t seed);

}  // namespace gridsched

#endif
