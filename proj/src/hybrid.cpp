#include "gridsched/hybrid.hpp"

#include <cmath>

#include "dsm_solver_common.hpp"

namespace gridsched {

using detail::DsmSolverContext;
using detail::Individual;

DsmRunResult fbat_run(const DsmInstance& instance, const AlgoParams& params,
                      std::uint64_t seed) {
    struct BatState {
        Genotype velocity;
        double loudness;
        double pulse_rate;
    };
    std::vector<BatState> bats;
    Genotype best_genes;
    double best_fitness = 0.0;
    bool initialized = false;

    return detail::run_population_solver(
        instance, params, seed,
        [&](DsmSolverContext& ctx, std::vector<Individual>& pop, int t) {
            const AlgoParams& p = ctx.params();
            const std::size_t dim = ctx.space().dimension();
            if (!initialized) {
                bats.assign(pop.size(), {Genotype(dim, 0.0), p.ba.loudness_A0, 0.0});
                const std::size_t b = DsmSolverContext::best_index(pop);
                best_genes = pop[b].genes;
                best_fitness = pop[b].fitness;
                initialized = true;
            }
            for (std::size_t i = 0; i < pop.size(); ++i) {
                BatState& bat = bats[i];
                const double freq =
                    p.ba.f_min + (p.ba.f_max - p.ba.f_min) * ctx.rng().uniform();
                Genotype cand = pop[i].genes;
                for (std::size_t g = 0; g < dim; ++g) {
                    bat.velocity[g] += (pop[i].genes[g] - best_genes[g]) * freq;
                    const double vmax = std::max(ctx.space().span(g), 1.0);
                    bat.velocity[g] = std::clamp(bat.velocity[g], -vmax, vmax);
                    cand[g] += bat.velocity[g];
                }
                if (ctx.rng().uniform() > bat.pulse_rate) {
                    // the flower swarm step stands in for the random walk
                    cand = detail::pollinate(pop[i].genes, pop, best_genes, p,
                                             ctx.space(), ctx.rng(), ctx.counters());
                }
                Individual evaluated = ctx.evaluate(std::move(cand));
                if (evaluated.fitness <= pop[i].fitness &&
                    ctx.rng().uniform() < bat.loudness) {
                    pop[i] = std::move(evaluated);
                    ba_accept_update(bat.loudness, bat.pulse_rate, p.ba, t);
                }
                if (pop[i].fitness < best_fitness) {
                    best_fitness = pop[i].fitness;
                    best_genes = pop[i].genes;
                }
            }
        });
}

namespace {

std::size_t tournament(const std::vector<Individual>& pop, int k, RngStream& rng) {
    std::size_t winner = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<long>(pop.size()) - 1));
    for (int i = 1; i < k; ++i) {
        const std::size_t c = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long>(pop.size()) - 1));
        if (pop[c].fitness < pop[winner].fitness) winner = c;
    }
    return winner;
}

}  // namespace

DsmRunResult fga_run(const DsmInstance& instance, const AlgoParams& params,
                     std::uint64_t seed) {
    return detail::run_population_solver(
        instance, params, seed,
        [](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            const AlgoParams& p = ctx.params();
            std::vector<std::size_t> ranked(pop.size());
            std::iota(ranked.begin(), ranked.end(), 0);
            std::stable_sort(ranked.begin(), ranked.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return pop[a].fitness < pop[b].fitness;
                             });
            const Genotype best_genes = pop[ranked.front()].genes;

            std::vector<Individual> next;
            next.reserve(pop.size());
            for (int e = 0; e < p.ga.elitism_count; ++e) next.push_back(pop[ranked[e]]);
            while (next.size() < pop.size()) {
                const Individual& parent = pop[tournament(pop, p.ga.tournament_k, ctx.rng())];
                Genotype child = detail::pollinate(parent.genes, pop, best_genes, p,
                                                   ctx.space(), ctx.rng(), ctx.counters());
                next.push_back(ctx.evaluate(std::move(child)));
            }
            pop = std::move(next);
        });
}

DsmRunResult ftlbo_run(const DsmInstance& instance, const AlgoParams& params,
                       std::uint64_t seed) {
    Genotype best_genes;
    double best_fitness = 0.0;
    bool initialized = false;

    return detail::run_population_solver(
        instance, params, seed,
        [&](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            if (!initialized) {
                const std::size_t b = DsmSolverContext::best_index(pop);
                best_genes = pop[b].genes;
                best_fitness = pop[b].fitness;
                initialized = true;
            }
            // Two pollination sweeps stand in for the teacher and learner
            // phases; acceptance stays feasibility-first and every candidate
            // is also held against the global best.
            for (int phase = 0; phase < 2; ++phase) {
                for (std::size_t i = 0; i < pop.size(); ++i) {
                    Genotype cand =
                        detail::pollinate(pop[i].genes, pop, best_genes, ctx.params(),
                                          ctx.space(), ctx.rng(), ctx.counters());
                    Individual evaluated = ctx.evaluate(std::move(cand));
                    if (evaluated.fitness < best_fitness) {
                        best_fitness = evaluated.fitness;
                        best_genes = evaluated.genes;
                    }
                    if (deb_improves(evaluated.candidate(), pop[i].candidate()))
                        pop[i] = std::move(evaluated);
                }
            }
        });
}

DsmRunResult gtlbo_run(const DsmInstance& instance, const AlgoParams& params,
                       std::uint64_t seed) {
    return detail::run_population_solver(
        instance, params, seed,
        [](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            detail::tlbo_iteration(ctx, pop);
            const AlgoParams& p = ctx.params();
            if (p.ga.mutation_rate <= 0.0) return;  // exact TLBO replay
            for (Individual& ind : pop) {
                Genotype cand = ind.genes;
                bool changed = false;
                for (std::size_t g = 0; g < cand.size(); ++g)
                    if (ctx.rng().uniform() < p.ga.mutation_rate) {
                        cand[g] = ctx.rng().uniform(ctx.space().lower(g),
                                                    ctx.space().upper(g));
                        changed = true;
                    }
                if (!changed) continue;
                Individual evaluated = ctx.evaluate(std::move(cand));
                if (deb_improves(evaluated.candidate(), ind.candidate()))
                    ind = std::move(evaluated);
            }
        });
}

}  // namespace gridsched
