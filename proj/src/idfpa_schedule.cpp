#include "gridsched/idfpa_schedule.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "gridsched/genotype.hpp"

namespace gridsched {

namespace {

constexpr std::uint64_t kMasterStream = std::numeric_limits<std::uint64_t>::max();

struct Assignment {
    std::vector<std::size_t> starts;  // chosen start slot per gene
    double distance = 0.0;            // surrogate: the weighted objective
};

}  // namespace

DsmRunResult idfpa_schedule_run(const DsmInstance& instance, const IdfpaParams& params,
                                const ObjectiveWeights& weights, std::uint64_t seed) {
    const auto start_time = std::chrono::steady_clock::now();
    instance.validate();
    IdfpaParams p = params;
    p.validate();
    const GenotypeSpace space(instance);
    if (space.dimension() == 0)
        throw InstanceError("no schedulable appliance: every appliance is Fixed");
    const ScheduleObjective objective(instance, weights);
    if (p.r_dist <= 0.0)
        p.r_dist = std::max(1.0, static_cast<double>(instance.horizon) / 4.0);

    // One desirability row per gene, spanning its feasible start slots.
    const std::size_t dim = space.dimension();
    std::vector<std::vector<std::size_t>> starts(dim);
    std::vector<std::vector<double>> desirability(dim);
    for (std::size_t g = 0; g < dim; ++g) {
        for (long s = std::lround(space.lower(g)); s <= std::lround(space.upper(g)); ++s)
            starts[g].push_back(static_cast<std::size_t>(s));
        desirability[g].assign(starts[g].size(), 1.0);
    }

    std::vector<RngStream> agent_rngs;
    agent_rngs.reserve(p.m);
    for (int a = 0; a < p.m; ++a) agent_rngs.emplace_back(seed, a);
    RngStream master_rng(seed, kMasterStream);

    const auto choose_start = [&](std::size_t g, long anchor, RngStream& rng) {
        const auto& row = desirability[g];
        const double total = std::accumulate(row.begin(), row.end(), 0.0);
        std::vector<double> probs(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) probs[i] = row[i] / total;
        const double r = rng.uniform();
        if (r > p.rho) return global_select(starts[g], probs, p.levy, rng);
        // local: categorical over starts within r_dist slots of the anchor
        std::vector<std::size_t> cluster;
        double mass = 0.0;
        for (std::size_t i = 0; i < starts[g].size(); ++i)
            if (std::abs(static_cast<long>(starts[g][i]) - anchor) <= p.r_dist) {
                cluster.push_back(i);
                mass += probs[i];
            }
        if (cluster.empty() || mass <= 0.0)
            return global_select(starts[g], probs, p.levy, rng);
        const double u = rng.uniform();
        double cum = 0.0;
        for (std::size_t i : cluster) {
            cum += probs[i] / mass;
            if (cum >= u) return starts[g][i];
        }
        return starts[g][cluster.back()];
    };

    TrajectoryRecorder recorder;
    Schedule best_schedule;
    Assignment best_assignment;
    bool have_best = false;
    AcceptedTours accepted(p.accepted_capacity);
    std::vector<double> agent_prev(p.m, 0.0);
    long evaluations = 0;

    const auto index_of = [&](std::size_t g, std::size_t slot) {
        return slot - starts[g].front();
    };

    double last_best = std::numeric_limits<double>::infinity();
    int stale = 0;
    for (int t = 1; t <= p.termination.max_iterations; ++t) {
        if (p.termination.max_evaluations &&
            evaluations >= *p.termination.max_evaluations)
            break;
        if (p.termination.stagnation_window && stale >= *p.termination.stagnation_window)
            break;

        std::vector<Assignment> assignments(p.m);
        std::size_t iter_best = 0;
        for (int a = 0; a < p.m; ++a) {
            Assignment& asg = assignments[a];
            asg.starts.resize(dim);
            long anchor = 0;
            for (std::size_t g = 0; g < dim; ++g) {
                if (g == 0)
                    anchor = instance.appliances[space.appliance_index(0)].preferred_start;
                asg.starts[g] = choose_start(g, anchor, agent_rngs[a]);
                anchor = static_cast<long>(asg.starts[g]);
            }
            Genotype genes(dim);
            for (std::size_t g = 0; g < dim; ++g)
                genes[g] = static_cast<double>(asg.starts[g]);
            const Schedule schedule = space.decode(genes);
            const auto [fitness, violations] = objective.score(schedule);
            (void)violations;  // the penalty term already folds violations in
            ++evaluations;
            asg.distance = std::max(fitness, 1e-9);
            if (!have_best || fitness < recorder.best()) {
                best_schedule = schedule;
                best_assignment = asg;
                have_best = true;
            }
            recorder.observe(fitness);
            if (asg.distance < assignments[iter_best].distance)
                iter_best = static_cast<std::size_t>(a);
        }

        // Iteration barrier: decay, reinforce the best assignment, run the
        // annealed acceptance flow over this iteration's assignments.
        for (auto& row : desirability)
            for (double& d : row) d = std::max((1.0 - p.alpha) * d, p.cost_floor);
        if (p.gamma > 0.0 && have_best) {
            const Assignment& r = p.reinforce_global_best ? best_assignment
                                                          : assignments[iter_best];
            for (std::size_t g = 0; g < dim; ++g)
                desirability[g][index_of(g, r.starts[g])] += p.gamma / r.distance;
        }
        const double temp =
            annealing_temperature(t, p.termination.max_iterations, p.omega, p.q);
        if (t == 1) agent_prev.assign(p.m, assignments[iter_best].distance);
        for (int a = 0; a < p.m; ++a) {
            if (rejection_accept(assignments[a].distance, agent_prev[a], temp,
                                 master_rng)) {
                agent_prev[a] = assignments[a].distance;
                accepted.push({assignments[a].starts, assignments[a].distance});
            }
        }
        if (p.beta > 0.0) {
            for (const auto& entry : accepted.entries()) {
                const double bump = p.beta / entry.distance;
                for (std::size_t g = 0; g < dim; ++g)
                    desirability[g][index_of(g, entry.order[g])] += bump;
            }
        }
        recorder.end_iteration();
        if (recorder.best() < last_best) {
            stale = 0;
            last_best = recorder.best();
        } else {
            ++stale;
        }
    }

    DsmRunResult result;
    result.best_solution = std::move(best_schedule);
    result.best_value = recorder.best();
    result.trajectory = recorder.take_trajectory();
    result.evaluations = evaluations;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
            .count();
    result.seed = seed;
    return result;
}

}  // namespace gridsched
