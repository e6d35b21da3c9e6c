#include "gridsched/classic.hpp"

#include <cmath>

#include "dsm_solver_common.hpp"

namespace gridsched {

using detail::DsmSolverContext;
using detail::Individual;

void AlgoParams::validate() const {
    if (population < 2) throw ParameterError("population must be at least 2");
    termination.validate();
    weights.validate();
    levy.validate();
    if (ga.crossover_rate < 0.0 || ga.crossover_rate > 1.0)
        throw ParameterError("crossover_rate must lie in [0, 1]");
    if (ga.mutation_rate < 0.0 || ga.mutation_rate > 1.0)
        throw ParameterError("mutation_rate must lie in [0, 1]");
    if (ga.tournament_k < 1) throw ParameterError("tournament_k must be at least 1");
    if (ga.elitism_count < 0 || ga.elitism_count >= population)
        throw ParameterError("elitism_count must lie in [0, population)");
    if (ba.f_min > ba.f_max) throw ParameterError("f_min must not exceed f_max");
    if (!(ba.loudness_A0 > 0.0)) throw ParameterError("loudness_A0 must be positive");
    if (ba.loudness_decay < 0.0 || ba.loudness_decay > 1.0)
        throw ParameterError("loudness_decay must lie in [0, 1]");
    if (ba.pulse_r0 < 0.0 || ba.pulse_r0 > 1.0)
        throw ParameterError("pulse_r0 must lie in [0, 1]");
    if (!(ba.pulse_gamma >= 0.0)) throw ParameterError("pulse_gamma must be nonnegative");
    if (!(fpa.switch_p > 0.0 && fpa.switch_p < 1.0))
        throw ParameterError("switch_p must lie in (0, 1)");
}

namespace {

// Tournament winner by scalar fitness; draws with replacement.
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

std::vector<std::size_t> indices_by_fitness(const std::vector<Individual>& pop) {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pop[a].fitness < pop[b].fitness;
    });
    return idx;
}

}  // namespace

DsmRunResult ga_run(const DsmInstance& instance, const AlgoParams& params,
                    std::uint64_t seed) {
    return detail::run_population_solver(
        instance, params, seed,
        [](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            const AlgoParams& p = ctx.params();
            const auto ranked = indices_by_fitness(pop);
            std::vector<Individual> next;
            next.reserve(pop.size());
            for (int e = 0; e < p.ga.elitism_count; ++e) next.push_back(pop[ranked[e]]);

            const std::size_t dim = ctx.space().dimension();
            while (next.size() < pop.size()) {
                const Individual& a = pop[tournament(pop, p.ga.tournament_k, ctx.rng())];
                const Individual& b = pop[tournament(pop, p.ga.tournament_k, ctx.rng())];
                Genotype child = a.genes;
                if (dim >= 2 && ctx.rng().uniform() < p.ga.crossover_rate) {
                    const std::size_t point = static_cast<std::size_t>(
                        ctx.rng().uniform_int(1, static_cast<long>(dim) - 1));
                    for (std::size_t g = point; g < dim; ++g) child[g] = b.genes[g];
                }
                for (std::size_t g = 0; g < dim; ++g)
                    if (ctx.rng().uniform() < p.ga.mutation_rate)
                        child[g] = ctx.rng().uniform(ctx.space().lower(g),
                                                     ctx.space().upper(g));
                next.push_back(ctx.evaluate(std::move(child)));
            }
            pop = std::move(next);
        });
}

void ba_accept_update(double& loudness, double& pulse_rate, const BaParams& params,
                      int iteration) {
    loudness *= params.loudness_decay;
    pulse_rate = params.pulse_r0 *
                 (1.0 - std::exp(-params.pulse_gamma * static_cast<double>(iteration)));
}

DsmRunResult ba_run(const DsmInstance& instance, const AlgoParams& params,
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
                bats.assign(pop.size(),
                            {Genotype(dim, 0.0), p.ba.loudness_A0, 0.0});
                const std::size_t b = DsmSolverContext::best_index(pop);
                best_genes = pop[b].genes;
                best_fitness = pop[b].fitness;
                initialized = true;
            }
            double mean_loudness = 0.0;
            for (const BatState& bat : bats) mean_loudness += bat.loudness;
            mean_loudness /= static_cast<double>(bats.size());

            for (std::size_t i = 0; i < pop.size(); ++i) {
                BatState& bat = bats[i];
                const double freq =
                    p.ba.f_min + (p.ba.f_max - p.ba.f_min) * ctx.rng().uniform();
                Genotype cand = pop[i].genes;
                for (std::size_t g = 0; g < dim; ++g) {
                    bat.velocity[g] += (pop[i].genes[g] - best_genes[g]) * freq;
                    // keep velocities bounded by the gene range so long runs
                    // cannot pin every bat to the box edge
                    const double vmax = std::max(ctx.space().span(g), 1.0);
                    bat.velocity[g] = std::clamp(bat.velocity[g], -vmax, vmax);
                    cand[g] += bat.velocity[g];
                }
                if (ctx.rng().uniform() > bat.pulse_rate) {
                    // random walk around the best, scaled by mean loudness
                    for (std::size_t g = 0; g < dim; ++g)
                        cand[g] = best_genes[g] +
                                  mean_loudness * ctx.rng().uniform(-1.0, 1.0);
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

DsmRunResult fpa_run(const DsmInstance& instance, const AlgoParams& params,
                     std::uint64_t seed) {
    return detail::run_population_solver(
        instance, params, seed,
        [](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            const std::size_t best = DsmSolverContext::best_index(pop);
            const Genotype best_genes = pop[best].genes;
            for (std::size_t i = 0; i < pop.size(); ++i) {
                Genotype cand =
                    detail::pollinate(pop[i].genes, pop, best_genes, ctx.params(),
                                      ctx.space(), ctx.rng(), ctx.counters());
                Individual evaluated = ctx.evaluate(std::move(cand));
                if (evaluated.fitness < pop[i].fitness) pop[i] = std::move(evaluated);
            }
        });
}

namespace detail {

void tlbo_iteration(DsmSolverContext& ctx, std::vector<Individual>& pop) {
    const std::size_t dim = ctx.space().dimension();

    // Teacher phase: move toward the best, away from T_F times the mean.
    Genotype mean(dim, 0.0);
    for (const Individual& ind : pop)
        for (std::size_t g = 0; g < dim; ++g) mean[g] += ind.genes[g];
    for (double& m : mean) m /= static_cast<double>(pop.size());
    const Genotype teacher = pop[DsmSolverContext::deb_best_index(pop)].genes;

    for (Individual& ind : pop) {
        const double tf = std::round(1.0 + ctx.rng().uniform());
        Genotype cand = ind.genes;
        for (std::size_t g = 0; g < dim; ++g)
            cand[g] = tlbo_teacher_step(cand[g], teacher[g], mean[g], tf,
                                        ctx.rng().uniform());
        Individual evaluated = ctx.evaluate(std::move(cand));
        if (deb_improves(evaluated.candidate(), ind.candidate()))
            ind = std::move(evaluated);
    }

    // Learner phase: move toward a fitter partner, away from a weaker one.
    for (std::size_t i = 0; i < pop.size(); ++i) {
        long j = static_cast<long>(i);
        while (j == static_cast<long>(i))
            j = ctx.rng().uniform_int(0, static_cast<long>(pop.size()) - 1);
        const Individual& partner = pop[j];
        const bool partner_fitter =
            deb_improves(partner.candidate(), pop[i].candidate());
        Genotype cand = pop[i].genes;
        for (std::size_t g = 0; g < dim; ++g)
            cand[g] = tlbo_learner_step(cand[g], partner.genes[g], partner_fitter,
                                        ctx.rng().uniform());
        Individual evaluated = ctx.evaluate(std::move(cand));
        if (deb_improves(evaluated.candidate(), pop[i].candidate()))
            pop[i] = std::move(evaluated);
    }
}

}  // namespace detail

DsmRunResult tlbo_run(const DsmInstance& instance, const AlgoParams& params,
                      std::uint64_t seed) {
    return detail::run_population_solver(
        instance, params, seed,
        [](DsmSolverContext& ctx, std::vector<Individual>& pop, int) {
            detail::tlbo_iteration(ctx, pop);
        });
}

}  // namespace gridsched
