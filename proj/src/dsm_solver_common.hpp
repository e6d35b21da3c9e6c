// Internal machinery shared by the classic and hybrid DSM solvers: evaluated
// individuals, the run loop with budget/stagnation handling, and the
// pollination move. Not part of the public API.

#ifndef GRIDSCHED_DSM_SOLVER_COMMON_HPP
#define GRIDSCHED_DSM_SOLVER_COMMON_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "gridsched/classic.hpp"
#include "gridsched/core.hpp"
#include "gridsched/genotype.hpp"
#include "gridsched/levy.hpp"
#include "gridsched/rng.hpp"

namespace gridsched::detail {

struct Individual {
    Genotype genes;
    double fitness = 0.0;
    long violations = 0;

    Candidate candidate() const { return {fitness, violations}; }
};

class DsmSolverContext {
public:
    DsmSolverContext(const DsmInstance& instance, const AlgoParams& params,
                     std::uint64_t seed)
        : params_(params),
          objective_(instance, params.weights),
          space_(instance),
          rng_(seed) {
        params.validate();
    }

    const AlgoParams& params() const { return params_; }
    const GenotypeSpace& space() const { return space_; }
    RngStream& rng() { return rng_; }
    long evaluations() const { return evaluations_; }
    TrajectoryRecorder& recorder() { return recorder_; }

    Individual evaluate(Genotype genes) {
        space_.clamp(genes);
        Schedule schedule = space_.decode(genes);
        const auto [fitness, violations] = objective_.score(schedule);
        ++evaluations_;
        if (!recorder_.has_best() || fitness < recorder_.best()) {
            best_schedule_ = std::move(schedule);
        }
        recorder_.observe(fitness);
        return {std::move(genes), fitness, violations};
    }

    std::vector<Individual> init_population() {
        std::vector<Individual> pop;
        pop.reserve(params_.population);
        for (int i = 0; i < params_.population; ++i)
            pop.push_back(evaluate(space_.random(rng_)));
        return pop;
    }

    // Population index with the lowest scalar fitness; ties keep the lowest index.
    static std::size_t best_index(const std::vector<Individual>& pop) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop[i].fitness < pop[best].fitness) best = i;
        return best;
    }

    // Population index preferred under feasibility-first comparison.
    static std::size_t deb_best_index(const std::vector<Individual>& pop) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (deb_improves(pop[i].candidate(), pop[best].candidate())) best = i;
        return best;
    }

    bool budget_exhausted() const {
        return params_.termination.max_evaluations &&
               evaluations_ >= *params_.termination.max_evaluations;
    }

    DsmRunResult finish(std::uint64_t seed, double wall_seconds) {
        DsmRunResult result;
        result.best_solution = std::move(best_schedule_);
        result.best_value = recorder_.best();
        result.trajectory = recorder_.take_trajectory();
        result.evaluations = evaluations_;
        result.wall_seconds = wall_seconds;
        result.seed = seed;
        result.counters = std::move(counters_);
        return result;
    }

    std::map<std::string, std::uint64_t>& counters() { return counters_; }

private:
    AlgoParams params_;
    ScheduleObjective objective_;
    GenotypeSpace space_;
    RngStream rng_;
    TrajectoryRecorder recorder_;
    Schedule best_schedule_;
    long evaluations_ = 0;
    std::map<std::string, std::uint64_t> counters_;
};

// Shared outer loop: init, iterate until the budget, iteration limit or
// stagnation window is hit, then assemble the result. The iteration callable
// receives (context, population, iteration_number).
template <typename IterationFn>
DsmRunResult run_population_solver(const DsmInstance& instance, const AlgoParams& params,
                                   std::uint64_t seed, IterationFn&& iteration) {
    const auto start = std::chrono::steady_clock::now();
    instance.validate();
    DsmSolverContext ctx(instance, params, seed);
    std::vector<Individual> pop = ctx.init_population();

    double last_best = ctx.recorder().best();
    int stale = 0;
    for (int t = 1; t <= params.termination.max_iterations; ++t) {
        if (ctx.budget_exhausted()) break;
        iteration(ctx, pop, t);
        ctx.recorder().end_iteration();
        if (params.termination.stagnation_window) {
            if (ctx.recorder().best() < last_best) {
                stale = 0;
                last_best = ctx.recorder().best();
            } else if (++stale >= *params.termination.stagnation_window) {
                break;
            }
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return ctx.finish(seed, wall);
}

// One pollination move. Local: step along the difference of two distinct
// population members scaled by a fresh uniform. Global: per-gene Levy step
// toward the population best.
inline Genotype pollinate(const Genotype& x, const std::vector<Individual>& pop,
                          const Genotype& best, const AlgoParams& params,
                          const GenotypeSpace& space, RngStream& rng,
                          std::map<std::string, std::uint64_t>& counters) {
    Genotype cand = x;
    if (rng.uniform() < params.fpa.switch_p) {
        ++counters["fpa_local_moves"];
        const long j = rng.uniform_int(0, static_cast<long>(pop.size()) - 1);
        long k = j;
        while (k == j) k = rng.uniform_int(0, static_cast<long>(pop.size()) - 1);
        const double u = rng.uniform();
        for (std::size_t g = 0; g < cand.size(); ++g)
            cand[g] += u * (pop[j].genes[g] - pop[k].genes[g]);
    } else {
        ++counters["fpa_global_moves"];
        const auto steps = levy_step(rng, params.levy.lambda, cand.size());
        for (std::size_t g = 0; g < cand.size(); ++g)
            cand[g] += steps[g] * (best[g] - cand[g]);
    }
    space.clamp(cand);
    return cand;
}

// One full teacher+learner iteration, shared between the plain solver and
// the mutation-augmented hybrid.
void tlbo_iteration(DsmSolverContext& ctx, std::vector<Individual>& pop);

}  // namespace gridsched::detail

#endif
