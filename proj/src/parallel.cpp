#include "gridsched/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "gridsched/thread_pool.hpp"

namespace gridsched {

std::string to_string(ParallelStrategy s) {
    switch (s) {
        case ParallelStrategy::Independent: return "independent";
        case ParallelStrategy::Interacting: return "interacting";
        case ParallelStrategy::ParallelAnts: return "parallel-ants";
        case ParallelStrategy::ParallelEval: return "parallel-eval";
        case ParallelStrategy::Combined: return "combined";
    }
    return "unknown";
}

ParallelStrategy parallel_strategy_from_string(const std::string& s) {
    if (s == "independent") return ParallelStrategy::Independent;
    if (s == "interacting") return ParallelStrategy::Interacting;
    if (s == "parallel-ants") return ParallelStrategy::ParallelAnts;
    if (s == "parallel-eval") return ParallelStrategy::ParallelEval;
    if (s == "combined") return ParallelStrategy::Combined;
    throw ParameterError("unknown parallel strategy: " + s);
}

void ParallelPlan::validate() const {
    if (workers < 1) throw ParameterError("workers must be at least 1");
    if (exchange_every < 1) throw ParameterError("exchange_every must be at least 1");
    if (paco) {
        if (paco->initial_period < 1)
            throw ParameterError("paco initial_period must be at least 1");
        if (!(paco->period_scale > 0.0))
            throw ParameterError("paco period_scale must be positive");
    }
}

SpeedupReport make_speedup_report(double serial_seconds, double parallel_seconds,
                                  int workers, double serial_best,
                                  double parallel_best) {
    if (workers < 1) throw ParameterError("workers must be at least 1");
    if (!(serial_seconds > 0.0) || !(parallel_seconds > 0.0))
        throw ParameterError("timings must be positive");
    SpeedupReport report;
    report.serial_seconds = serial_seconds;
    report.parallel_seconds = parallel_seconds;
    report.speedup = serial_seconds / parallel_seconds;
    report.efficiency = report.speedup / static_cast<double>(workers);
    report.workers = workers;
    report.quality_ratio = serial_best > 0.0 ? parallel_best / serial_best : 1.0;
    return report;
}

namespace {

using Memory = IdfpaEngine::Memory;

Memory memory_of(TspSolverKind kind) {
    return kind == TspSolverKind::Idfpa ? Memory::Iterative : Memory::Static;
}

// Winner among engine results: lowest best value, earliest index on ties.
std::size_t winner_index(const std::vector<TspRunResult>& results) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].best_value < results[best].best_value) best = i;
    return best;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

TspRunResult run_independent(TspSolverKind kind, const TspInstance& instance,
                             const ParallelPlan& plan,
                             const std::vector<IdfpaParams>& param_sets,
                             const std::vector<std::uint64_t>& seeds) {
    plan.validate();
    if (static_cast<int>(param_sets.size()) != plan.workers ||
        seeds.size() != param_sets.size())
        throw ParameterError("need one parameter set and one seed per worker");
    const auto start = std::chrono::steady_clock::now();

    std::vector<TspRunResult> results(param_sets.size());
    {
        ThreadPool pool(param_sets.size() > 1 ? param_sets.size() - 1 : 0);
        pool.parallel_for(param_sets.size(), [&](std::size_t i) {
            results[i] = kind == TspSolverKind::Idfpa
                             ? idfpa_run(instance, param_sets[i], seeds[i])
                             : dfpa_run(instance, param_sets[i], seeds[i]);
        });
    }
    const std::size_t w = winner_index(results);
    TspRunResult result = std::move(results[w]);
    long evals = 0;
    for (std::size_t i = 0; i < results.size(); ++i)
        evals += (i == w) ? result.evaluations : results[i].evaluations;
    result.evaluations = evals;
    result.counters["winning_colony"] = w;
    result.wall_seconds = seconds_since(start);
    return result;
}

TspRunResult run_interacting(TspSolverKind kind, const TspInstance& instance,
                             const ParallelPlan& plan, const IdfpaParams& params,
                             const std::vector<std::uint64_t>& seeds) {
    plan.validate();
    if (static_cast<int>(seeds.size()) != plan.workers)
        throw ParameterError("need one seed per worker");
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::unique_ptr<IdfpaEngine>> colonies;
    colonies.reserve(seeds.size());
    for (std::uint64_t seed : seeds)
        colonies.push_back(
            std::make_unique<IdfpaEngine>(instance, params, seed, memory_of(kind)));

    ThreadPool pool(seeds.size() > 1 ? seeds.size() - 1 : 0);
    std::uint64_t broadcasts = 0;
    for (int t = 1; t <= params.termination.max_iterations; ++t) {
        pool.parallel_for(colonies.size(),
                          [&](std::size_t i) { colonies[i]->run_iteration(); });
        if (t % plan.exchange_every == 0) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < colonies.size(); ++i)
                if (colonies[i]->best().length < colonies[best]->best().length)
                    best = i;
            const SquareMatrix& entries = colonies[best]->state().entries;
            for (std::size_t i = 0; i < colonies.size(); ++i)
                if (i != best) colonies[i]->replace_matrix(entries);
            ++broadcasts;
        }
    }

    std::vector<TspRunResult> results;
    results.reserve(colonies.size());
    for (const auto& colony : colonies) results.push_back(colony->result(0.0));
    const std::size_t w = winner_index(results);
    TspRunResult result = std::move(results[w]);
    long evals = 0;
    for (const auto& colony : colonies) evals += colony->evaluations();
    result.evaluations = evals;
    result.counters["winning_colony"] = w;
    result.counters["broadcasts"] = broadcasts;
    result.wall_seconds = seconds_since(start);
    return result;
}

namespace {

TspRunResult run_single_colony(TspSolverKind kind, const TspInstance& instance,
                               const ParallelPlan& plan, const IdfpaParams& params,
                               std::uint64_t seed, IdfpaEngine::Dispatch dispatch) {
    plan.validate();
    const auto start = std::chrono::steady_clock::now();
    ThreadPool pool(plan.workers > 1 ? plan.workers - 1 : 0);
    IdfpaEngine engine(instance, params, seed, memory_of(kind),
                       plan.workers > 1 ? &pool : nullptr, plan.workers, dispatch);
    for (int t = 1; t <= params.termination.max_iterations; ++t) {
        if (params.termination.max_evaluations &&
            engine.evaluations() >= *params.termination.max_evaluations)
            break;
        engine.run_iteration();
    }
    return engine.result(seconds_since(start));
}

}  // namespace

TspRunResult run_parallel_ants(TspSolverKind kind, const TspInstance& instance,
                               const ParallelPlan& plan, const IdfpaParams& params,
                               std::uint64_t seed) {
    return run_single_colony(kind, instance, plan, params, seed,
                             IdfpaEngine::Dispatch::PerAgent);
}

TspRunResult run_combined(TspSolverKind kind, const TspInstance& instance,
                          const ParallelPlan& plan, const IdfpaParams& params,
                          std::uint64_t seed) {
    return run_single_colony(kind, instance, plan, params, seed,
                             IdfpaEngine::Dispatch::Grouped);
}

std::vector<MetricsReport> run_parallel_eval(const DsmInstance& instance,
                                             const ParallelPlan& plan,
                                             const std::vector<Schedule>& batch) {
    plan.validate();
    std::vector<MetricsReport> reports(batch.size());
    if (batch.empty()) return reports;
    ThreadPool pool(plan.workers > 1 ? plan.workers - 1 : 0);
    pool.parallel_for(batch.size(), [&](std::size_t i) {
        reports[i] = evaluate_metrics(batch[i], instance);
    });
    return reports;
}

int common_edges(const std::vector<std::size_t>& tour_a,
                 const std::vector<std::size_t>& tour_b) {
    if (tour_a.size() != tour_b.size())
        throw ParameterError("tours must visit the same number of nodes");
    const auto edge_set = [](const std::vector<std::size_t>& order) {
        std::set<std::pair<std::size_t, std::size_t>> edges;
        const std::size_t n = order.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = order[k];
            const std::size_t j = order[(k + 1) % n];
            edges.emplace(std::min(i, j), std::max(i, j));
        }
        return edges;
    };
    const auto ea = edge_set(tour_a);
    const auto eb = edge_set(tour_b);
    int shared = 0;
    for (const auto& e : ea)
        if (eb.contains(e)) ++shared;
    return shared;
}

TspRunResult paco_run(const TspInstance& instance, const ParallelPlan& plan,
                      const IdfpaParams& params,
                      const std::vector<std::uint64_t>& seeds) {
    plan.validate();
    if (plan.workers < 2)
        throw ParameterError("partner exchange needs at least 2 groups");
    if (static_cast<int>(seeds.size()) != plan.workers)
        throw ParameterError("need one seed per group");
    const PacoSettings paco = plan.paco.value_or(PacoSettings{});
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::unique_ptr<IdfpaEngine>> groups;
    groups.reserve(seeds.size());
    for (std::uint64_t seed : seeds)
        groups.push_back(std::make_unique<IdfpaEngine>(instance, params, seed,
                                                       Memory::Iterative));
    std::vector<int> next_exchange(seeds.size(), paco.initial_period);

    ThreadPool pool(seeds.size() > 1 ? seeds.size() - 1 : 0);
    std::uint64_t exchanges = 0;
    const std::size_t n = instance.n;
    for (int t = 1; t <= params.termination.max_iterations; ++t) {
        pool.parallel_for(groups.size(),
                          [&](std::size_t i) { groups[i]->run_iteration(); });
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (t < next_exchange[i]) continue;
            // partner sharing the fewest edges with this group's best tour
            std::size_t partner = i == 0 ? 1 : 0;
            int fewest = std::numeric_limits<int>::max();
            for (std::size_t j = 0; j < groups.size(); ++j) {
                if (j == i) continue;
                const int shared =
                    common_edges(groups[i]->best().order, groups[j]->best().order);
                if (shared < fewest) {
                    fewest = shared;
                    partner = j;
                }
            }
            groups[i]->commit_partner_best(groups[partner]->best());
            ++exchanges;
            const double similarity =
                static_cast<double>(common_edges(groups[i]->best().order,
                                                 groups[partner]->best().order)) /
                static_cast<double>(n);
            const int period = std::max(
                1L, std::lround(paco.initial_period * (1.0 - similarity) *
                                paco.period_scale));
            next_exchange[i] = t + period;
        }
    }

    std::vector<TspRunResult> results;
    results.reserve(groups.size());
    for (const auto& group : groups) results.push_back(group->result(0.0));
    const std::size_t w = winner_index(results);
    TspRunResult result = std::move(results[w]);
    long evals = 0;
    for (const auto& group : groups) evals += group->evaluations();
    result.evaluations = evals;
    result.counters["winning_group"] = w;
    result.counters["exchanges"] = exchanges;
    result.wall_seconds = seconds_since(start);
    return result;
}

}  // namespace gridsched
