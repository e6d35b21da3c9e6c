// The four base population metaheuristics over DSM schedules. All share the
// start-slot genotype, the weighted objective, and the seeded-run contract:
// identical (instance, params, seed) replays an identical trajectory.

#ifndef GRIDSCHED_CLASSIC_HPP
#define GRIDSCHED_CLASSIC_HPP

#include <cstdint>

#include "gridsched/core.hpp"
#include "gridsched/dsm.hpp"
#include "gridsched/levy.hpp"

namespace gridsched {

struct GaParams {
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    int tournament_k = 3;
    int elitism_count = 2;
};

struct BaParams {
    double f_min = 0.0;
    double f_max = 2.0;
    double loudness_A0 = 0.95;
    double loudness_decay = 0.9;
    double pulse_r0 = 0.5;
    double pulse_gamma = 0.9;
};

struct FpaParams {
    double switch_p = 0.8;  // probability of the local pollination move
};

// One record carries every family's knobs; the hybrids draw on the union of
// their parents' fields, so keeping them together avoids parallel structs.
struct AlgoParams {
    int population = 30;
    Termination termination;
    ObjectiveWeights weights;
    GaParams ga;
    BaParams ba;
    FpaParams fpa;
    LevyParams levy;

    void validate() const;
};

using DsmRunResult = RunResult<Schedule>;

// Tournament selection, single-point crossover, per-gene uniform mutation,
// offspring replace the worst, elites preserved.
DsmRunResult ga_run(const DsmInstance& instance, const AlgoParams& params,
                    std::uint64_t seed);

// Frequency-driven velocity moves toward the best, pulse-gated random walk
// around the best scaled by mean loudness, loudness-gated greedy acceptance.
DsmRunResult ba_run(const DsmInstance& instance, const AlgoParams& params,
                    std::uint64_t seed);

// Levy-flight global pollination toward the best and uniform local
// pollination between random flowers, gated by switch_p; greedy acceptance.
DsmRunResult fpa_run(const DsmInstance& instance, const AlgoParams& params,
                     std::uint64_t seed);

// Teacher then learner phase per iteration with feasibility-first acceptance.
DsmRunResult tlbo_run(const DsmInstance& instance, const AlgoParams& params,
                      std::uint64_t seed);

// Per-bat state change applied on an accepted move: loudness decays
// geometrically, pulse rate rises toward pulse_r0.
void ba_accept_update(double& loudness, double& pulse_rate, const BaParams& params,
                      int iteration);

// Teacher move for one gene: x + r * (teacher - t_f * mean).
inline double tlbo_teacher_step(double x, double teacher, double mean, double t_f,
                                double r) {
    return x + r * (teacher - t_f * mean);
}

// Learner move for one gene: toward a fitter partner, away from a weaker one.
inline double tlbo_learner_step(double x, double partner, bool partner_fitter,
                                double r) {
    return x + r * (partner_fitter ? partner - x : x - partner);
}

}  // namespace gridsched

#endif
