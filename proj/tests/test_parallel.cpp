#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "gridsched/instance_gen.hpp"
#include "gridsched/parallel.hpp"
#include "test_util.hpp"

using namespace gridsched;
using namespace gridsched::test;

namespace {

IdfpaParams quick_params(int m = 6, int iterations = 30) {
    IdfpaParams p;
    p.m = m;
    p.termination.max_iterations = iterations;
    return p;
}

ParallelPlan plan_for(ParallelStrategy strategy, int workers, int exchange_every = 1) {
    ParallelPlan plan;
    plan.strategy = strategy;
    plan.workers = workers;
    plan.exchange_every = exchange_every;
    return plan;
}

}  // namespace

TEST_CASE("independent colonies with one worker match the plain run") {
    const auto instance = generate_tsp_instance(10, 40);
    const auto params = quick_params();
    const auto reference = idfpa_run(instance, params, 5);
    const auto parallel =
        run_independent(TspSolverKind::Idfpa, instance,
                        plan_for(ParallelStrategy::Independent, 1), {params}, {5});
    CHECK(parallel.best_value == reference.best_value);
    CHECK(parallel.trajectory == reference.trajectory);
    CHECK(parallel.evaluations == reference.evaluations);
}

TEST_CASE("independent colonies equal their sequential references") {
    const auto instance = generate_tsp_instance(12, 41);
    std::vector<IdfpaParams> param_sets;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < 4; ++i) {
        auto p = quick_params(4 + i, 25);
        p.rho = 0.6 + 0.08 * i;
        param_sets.push_back(p);
        seeds.push_back(100 + i);
    }
    std::vector<TspRunResult> sequential;
    for (int i = 0; i < 4; ++i)
        sequential.push_back(idfpa_run(instance, param_sets[i], seeds[i]));
    std::size_t best = 0;
    long total_evals = 0;
    for (std::size_t i = 0; i < sequential.size(); ++i) {
        total_evals += sequential[i].evaluations;
        if (sequential[i].best_value < sequential[best].best_value) best = i;
    }

    const auto parallel =
        run_independent(TspSolverKind::Idfpa, instance,
                        plan_for(ParallelStrategy::Independent, 4), param_sets, seeds);
    CHECK(parallel.best_value == sequential[best].best_value);
    CHECK(parallel.trajectory == sequential[best].trajectory);
    CHECK(parallel.evaluations == total_evals);
    CHECK(parallel.counters.at("winning_colony") == best);
}

TEST_CASE("independent colonies reject mismatched counts") {
    const auto instance = unit_square();
    CHECK_THROWS_AS(
        run_independent(TspSolverKind::Idfpa, instance,
                        plan_for(ParallelStrategy::Independent, 2), {quick_params()},
                        {1, 2}),
        ParameterError);
}

TEST_CASE("interacting colonies with no exchange reduce to independent ones") {
    const auto instance = generate_tsp_instance(10, 42);
    const auto params = quick_params(5, 20);
    const std::vector<std::uint64_t> seeds = {7, 8};
    const auto interacting = run_interacting(
        TspSolverKind::Idfpa, instance,
        plan_for(ParallelStrategy::Interacting, 2, /*exchange_every=*/1000), params,
        seeds);
    const auto independent =
        run_independent(TspSolverKind::Idfpa, instance,
                        plan_for(ParallelStrategy::Independent, 2), {params, params},
                        seeds);
    CHECK(interacting.best_value == independent.best_value);
    CHECK(interacting.trajectory == independent.trajectory);
    CHECK(interacting.counters.at("broadcasts") == 0);
}

TEST_CASE("interacting broadcast replaces the receivers' matrices") {
    const auto instance = generate_tsp_instance(8, 43);
    const auto params = quick_params(4, 10);
    IdfpaEngine good(instance, params, 1, IdfpaEngine::Memory::Iterative);
    IdfpaEngine bad(instance, params, 2, IdfpaEngine::Memory::Iterative);
    good.run_iteration();
    bad.run_iteration();
    CHECK(good.state().entries != bad.state().entries);
    bad.replace_matrix(good.state().entries);
    CHECK(good.state().entries == bad.state().entries);
}

TEST_CASE("interacting colonies converge onto the broadcast optimum") {
    const auto instance = generate_tsp_instance(7, 44);
    const auto oracle = brute_force_tsp(instance);
    const auto params = quick_params(8, 40);
    const auto result = run_interacting(
        TspSolverKind::Idfpa, instance, plan_for(ParallelStrategy::Interacting, 2, 5),
        params, {11, 12});
    CHECK(result.counters.at("broadcasts") == 8);
    CHECK(result.best_value == doctest::Approx(oracle.length));
}

TEST_CASE("parallel ants equal the single-worker engine bitwise") {
    const auto instance = generate_tsp_instance(15, 45);
    const auto params = quick_params(8, 20);
    const auto reference = idfpa_run(instance, params, 3);

    for (int workers : {1, 2, 4}) {
        CAPTURE(workers);
        const auto parallel = run_parallel_ants(
            TspSolverKind::Idfpa, instance,
            plan_for(ParallelStrategy::ParallelAnts, workers), params, 3);
        CHECK(parallel.best_value == reference.best_value);
        CHECK(parallel.trajectory == reference.trajectory);
        CHECK(parallel.best_solution.order == reference.best_solution.order);
    }
}

TEST_CASE("combined grouping equals the sequential reference, any group count") {
    const auto instance = generate_tsp_instance(13, 46);
    const auto params = quick_params(8, 15);
    const auto reference = idfpa_run(instance, params, 9);
    for (int workers : {1, 3, 4}) {  // 3 does not divide 8: round-robin remainder
        CAPTURE(workers);
        const auto combined =
            run_combined(TspSolverKind::Idfpa, instance,
                         plan_for(ParallelStrategy::Combined, workers), params, 9);
        CHECK(combined.best_value == reference.best_value);
        CHECK(combined.trajectory == reference.trajectory);
    }
}

TEST_CASE("parallel evaluation matches sequential evaluation element-wise") {
    const auto instance = generate_dsm_instance(6, 12, TariffShape::TwoTier, 47);
    std::vector<Schedule> batch;
    RngStream rng(4);
    for (int i = 0; i < 9; ++i) {
        auto schedule = baseline_schedule(instance);
        // jitter one appliance row to vary the batch
        const std::size_t a = rng.uniform_int(0, instance.appliances.size() - 1);
        std::rotate(schedule.activation[a].begin(), schedule.activation[a].begin() + 1,
                    schedule.activation[a].end());
        batch.push_back(std::move(schedule));
    }
    const auto parallel =
        run_parallel_eval(instance, plan_for(ParallelStrategy::ParallelEval, 3), batch);
    REQUIRE(parallel.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const MetricsReport sequential = evaluate_metrics(batch[i], instance);
        CHECK(parallel[i].cost == sequential.cost);
        CHECK(parallel[i].par == sequential.par);
        CHECK(parallel[i].discomfort == sequential.discomfort);
        CHECK(parallel[i].capacity_violations == sequential.capacity_violations);
    }

    CHECK(run_parallel_eval(instance, plan_for(ParallelStrategy::ParallelEval, 3), {})
              .empty());
    const auto single = run_parallel_eval(
        instance, plan_for(ParallelStrategy::ParallelEval, 1), {batch[0]});
    CHECK(single.size() == 1);
    CHECK(single[0].cost == evaluate_metrics(batch[0], instance).cost);
}

TEST_CASE("common edge counting") {
    CHECK(common_edges({0, 1, 2, 3}, {0, 1, 2, 3}) == 4);
    CHECK(common_edges({0, 1, 2, 3}, {3, 2, 1, 0}) == 4);   // reversal
    CHECK(common_edges({0, 1, 2, 3}, {1, 2, 3, 0}) == 4);   // rotation
    CHECK(common_edges({0, 1, 2, 3}, {0, 2, 1, 3}) == 2);   // perimeter vs crossing
    CHECK(common_edges({0, 1, 2, 3}, {0, 2, 1, 3}) ==
          common_edges({0, 2, 1, 3}, {0, 1, 2, 3}));        // symmetry
    CHECK_THROWS_AS(common_edges({0, 1, 2}, {0, 1, 2, 3}), ParameterError);
}

TEST_CASE("partner exchange requires at least two groups") {
    const auto instance = unit_square();
    ParallelPlan plan = plan_for(ParallelStrategy::Independent, 1);
    CHECK_THROWS_AS(paco_run(instance, plan, quick_params(), {1}), ParameterError);
}

TEST_CASE("identical groups exchange every iteration once their period expires") {
    // identical seeds give similarity 1, so the next period floors at 1
    const auto instance = generate_tsp_instance(9, 48);
    auto params = quick_params(4, 12);
    ParallelPlan plan = plan_for(ParallelStrategy::Independent, 2);
    plan.paco = PacoSettings{5, 1.0};
    const auto result = paco_run(instance, plan, params, {3, 3});
    // each group exchanges at t = 5, 6, ..., 12
    CHECK(result.counters.at("exchanges") == 2 * (12 - 5 + 1));
}

TEST_CASE("partner exchange keeps pace with the single-group engine on oracles") {
    int paco_hits = 0;
    int single_hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto instance = generate_tsp_instance(7 + seed % 3, 200 + seed);
        const auto oracle = brute_force_tsp(instance);
        auto params = quick_params(6, 60);
        ParallelPlan plan = plan_for(ParallelStrategy::Independent, 2);
        plan.paco = PacoSettings{10, 1.0};
        const auto exchanged = paco_run(instance, plan, params, {seed, seed + 50});
        if (exchanged.best_value <= oracle.length + 1e-9) ++paco_hits;
        const auto single = idfpa_run(instance, params, seed);
        if (single.best_value <= oracle.length + 1e-9) ++single_hits;
    }
    CHECK(paco_hits >= single_hits);
}

TEST_CASE("speedup report satisfies its defining identities") {
    const auto report = make_speedup_report(10.0, 4.0, 4, 100.0, 101.0);
    CHECK(report.speedup == doctest::Approx(2.5));
    CHECK(report.efficiency == doctest::Approx(0.625));
    CHECK(report.speedup == report.serial_seconds / report.parallel_seconds);
    CHECK(report.efficiency == report.speedup / report.workers);
    CHECK(report.quality_ratio == doctest::Approx(1.01));
    CHECK_THROWS_AS(make_speedup_report(0.0, 1.0, 2, 1.0, 1.0), ParameterError);
}

TEST_CASE("strategy names round-trip") {
    for (ParallelStrategy s :
         {ParallelStrategy::Independent, ParallelStrategy::Interacting,
          ParallelStrategy::ParallelAnts, ParallelStrategy::ParallelEval,
          ParallelStrategy::Combined})
        CHECK(parallel_strategy_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(parallel_strategy_from_string("psychic"), ParameterError);
}
