// The five parallel execution strategies and the partner-exchange protocol,
// all built on shared-memory worker threads with barrier synchronization per
// iteration. Cross-worker communication happens by value at barriers only,
// and every strategy other than the exchanging ones is contractually
// bit-identical to its sequential reference under fixed seeds.

#ifndef GRIDSCHED_PARALLEL_HPP
#define GRIDSCHED_PARALLEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gridsched/dsm.hpp"
#include "gridsched/idfpa.hpp"

namespace gridsched {

enum class ParallelStrategy {
    Independent,   // isolated colonies, best result wins
    Interacting,   // periodic broadcast of the best colony's cost matrix
    ParallelAnts,  // one colony, agents fanned across workers
    ParallelEval,  // batch objective evaluation across workers
    Combined,      // agent groups that evaluate their own solution elements
};

std::string to_string(ParallelStrategy s);
ParallelStrategy parallel_strategy_from_string(const std::string& s);

struct PacoSettings {
    int initial_period = 10;   // iterations before a group's first exchange
    double period_scale = 1.0; // scales the similarity-derived next period
};

struct ParallelPlan {
    ParallelStrategy strategy = ParallelStrategy::Independent;
    int workers = 1;
    int exchange_every = 1;
    std::optional<PacoSettings> paco;

    void validate() const;
};

struct SpeedupReport {
    double serial_seconds = 0.0;
    double parallel_seconds = 0.0;
    double speedup = 0.0;     // serial_seconds / parallel_seconds
    double efficiency = 0.0;  // speedup / workers
    int workers = 1;
    double quality_ratio = 1.0;  // parallel best / serial best
};

SpeedupReport make_speedup_report(double serial_seconds, double parallel_seconds,
                                  int workers, double serial_best,
                                  double parallel_best);

enum class TspSolverKind { Dfpa, Idfpa };

// Isolated colonies, one parameter set and seed each; returns the winning
// colony's result with evaluations summed over all colonies.
TspRunResult run_independent(TspSolverKind kind, const TspInstance& instance,
                             const ParallelPlan& plan,
                             const std::vector<IdfpaParams>& param_sets,
                             const std::vector<std::uint64_t>& seeds);

// Colonies share one parameter set; every exchange_every iterations the
// colony holding the best tour broadcasts its cost matrix and the receivers
// replace theirs wholesale.
TspRunResult run_interacting(TspSolverKind kind, const TspInstance& instance,
                             const ParallelPlan& plan, const IdfpaParams& params,
                             const std::vector<std::uint64_t>& seeds);

// One colony; each iteration the agents' constructions are distributed over
// the workers against a frozen matrix snapshot, and the master applies the
// updates at the barrier. Identical to the single-worker run.
TspRunResult run_parallel_ants(TspSolverKind kind, const TspInstance& instance,
                               const ParallelPlan& plan, const IdfpaParams& params,
                               std::uint64_t seed);

// Batch metric evaluation fanned across workers; output order matches input.
std::vector<MetricsReport> run_parallel_eval(const DsmInstance& instance,
                                             const ParallelPlan& plan,
                                             const std::vector<Schedule>& batch);

// Parallel-ants grouping where each worker also evaluates its own group's
// tours; agents are assigned to groups round-robin.
TspRunResult run_combined(TspSolverKind kind, const TspInstance& instance,
                          const ParallelPlan& plan, const IdfpaParams& params,
                          std::uint64_t seed);

// Undirected arcs present in both closed tours; range [0, n].
int common_edges(const std::vector<std::size_t>& tour_a,
                 const std::vector<std::size_t>& tour_b);

// Independent groups with adaptive partner exchange: when a group's period
// expires it picks the partner sharing the fewest common edges with its best
// tour, commits that partner's best tour onto its own matrix as a best-tour
// update, and derives the next period from the observed similarity.
TspRunResult paco_run(const TspInstance& instance, const ParallelPlan& plan,
                      const IdfpaParams& params,
                      const std::vector<std::uint64_t>& seeds);

}  // namespace gridsched

#endif
