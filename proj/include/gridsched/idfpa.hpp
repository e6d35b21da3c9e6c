// Discrete flower pollination over tours, plus the iterative extension that
// adds cost-matrix memory. Agents build tours step by step from the current
// node's cost row: each step normalizes the row over the remaining nodes,
// then either samples inside a radial neighbourhood (local search) or pushes
// the ordered probabilities through the discrete Levy transform (global
// search). The iterative variant mutates the matrix between iterations:
// multiplicative evaporation, reinforcement of the best tour's arcs, and
// reinforcement from an annealing-gated accepted set.

#ifndef GRIDSCHED_IDFPA_HPP
#define GRIDSCHED_IDFPA_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "gridsched/core.hpp"
#include "gridsched/levy.hpp"
#include "gridsched/matrix.hpp"
#include "gridsched/rng.hpp"
#include "gridsched/tsp.hpp"

namespace gridsched {

class ThreadPool;

struct IdfpaParams {
    int m = 10;           // concurrent agents per iteration
    double rho = 0.8;     // probability of the local search at each step
    double r_dist = 0.0;  // local radius; <= 0 derives one from the instance
    double alpha = 0.05;  // evaporation rate
    double gamma = 0.5;   // best tour update magnitude
    double beta = 0.5;    // rejection update magnitude
    double omega = 1.0;   // annealing region constant
    double q = 1.0;       // annealing shape constant
    Termination termination;
    LevyParams levy;

    double cost_floor = 1e-12;           // positivity floor under evaporation
    std::size_t accepted_capacity = 64;  // ring-buffer cap for the accepted set
    bool reinforce_global_best = true;   // false: reinforce the iteration best
    bool validate_construction = false;  // per-step prob/permutation checks

    void validate() const;
};

// The mutable memory: entry (i, j) is the desirability of travelling i -> j
// during iteration `iteration`.
struct CostMatrixState {
    SquareMatrix entries;
    long iteration = 0;
};

// Bounded list of accepted tours feeding the rejection update. Oldest entries
// fall out once the capacity is reached.
class AcceptedTours {
public:
    struct Entry {
        std::vector<std::size_t> order;
        double distance = 0.0;
    };

    explicit AcceptedTours(std::size_t capacity = 64) : capacity_(capacity) {}

    void push(Entry entry) {
        entries_.push_back(std::move(entry));
        if (entries_.size() > capacity_) entries_.pop_front();
    }
    const std::deque<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::size_t capacity_;
    std::deque<Entry> entries_;
};

// Normalized probabilities over `remaining`, read from the cost row of
// `from`.
std::vector<double> node_probabilities(const CostMatrixState& state, std::size_t from,
                                       std::span<const std::size_t> remaining);

// Levy-transformed selection over the remaining nodes: order by descending
// probability, apply the discrete Levy transform, pick the minimal index
// whose cumulative mass reaches r. Returns the chosen node id.
std::size_t global_select(std::span<const std::size_t> remaining,
                          std::span<const double> probs, const LevyParams& levy,
                          double r);
std::size_t global_select(std::span<const std::size_t> remaining,
                          std::span<const double> probs, const LevyParams& levy,
                          RngStream& rng);

// Categorical selection restricted to nodes within r_dist of v_prev,
// renormalized; falls back to the global search when the radial cluster is
// empty. Returns the chosen node id.
std::size_t local_select(std::size_t v_prev, std::span<const std::size_t> remaining,
                         const SquareMatrix& distances, double r_dist,
                         std::span<const double> probs, const LevyParams& levy,
                         RngStream& rng);

// One complete tour built on a frozen matrix snapshot. When length_out is
// given it receives the closed-cycle length, accumulated arc by arc in
// construction order (the same summation order tour_length uses).
std::vector<std::size_t> construct_tour(const CostMatrixState& state,
                                        const TspInstance& instance,
                                        const IdfpaParams& params, RngStream& rng,
                                        double* length_out = nullptr);

// Multiplicative decay of every off-diagonal entry, floored for positivity.
void evaporate(CostMatrixState& state, double alpha, double floor = 1e-12);

// Adds gamma * d_ij / d(s_star) to both orientations of every arc on s_star.
void best_tour_update(CostMatrixState& state, const Tour& s_star,
                      const TspInstance& instance, double gamma);

// exp(-omega * n_curr / (q * n_total)).
double annealing_temperature(int n_curr, int n_total, double omega, double q);

// Non-worsening tours are always accepted; longer ones pass with probability
// exp(-delta / (t_curr * d_prev)) against a fresh uniform draw.
bool rejection_accept(double d_new, double d_prev, double t_curr, RngStream& rng);
bool rejection_accept(double d_new, double d_prev, double t_curr, double r);

// Adds beta * sum over accepted tours containing the arc of 1/distance.
void rejection_update(CostMatrixState& state, const AcceptedTours& accepted,
                      double beta);

// Stepping engine behind dfpa_run/idfpa_run, exposed so the parallel
// strategies can interleave iterations with matrix exchanges. Within an
// iteration the m agents read a frozen matrix snapshot, each on its own
// (seed, agent) stream; every mutation happens sequentially at the iteration
// barrier, so worker counts never change the outcome.
class IdfpaEngine {
public:
    enum class Memory { Iterative, Static };
    // PerAgent farms single tour constructions to the pool; Grouped assigns
    // agents to workers round-robin and each worker builds and evaluates its
    // own group's tours.
    enum class Dispatch { PerAgent, Grouped };

    IdfpaEngine(const TspInstance& instance, const IdfpaParams& params,
                std::uint64_t seed, Memory memory,
                ThreadPool* pool = nullptr, int workers = 1,
                Dispatch dispatch = Dispatch::PerAgent);
    ~IdfpaEngine();

    void run_iteration();
    int iteration() const { return iteration_; }
    bool has_best() const { return !best_.order.empty(); }
    const Tour& best() const { return best_; }
    const std::vector<double>& trajectory() const { return trajectory_; }
    long evaluations() const { return evaluations_; }
    const TspInstance& instance() const { return *instance_; }

    const CostMatrixState& state() const { return state_; }
    void replace_matrix(const SquareMatrix& entries);   // interacting broadcast
    void commit_partner_best(const Tour& partner_best); // partner-exchange BTU

    RunResult<Tour> result(double wall_seconds) const;

private:
    const TspInstance* instance_;
    IdfpaParams params_;
    Memory memory_;
    std::uint64_t seed_;
    CostMatrixState state_;
    std::vector<RngStream> agent_rngs_;
    RngStream master_rng_;  // annealed-acceptance draws only
    std::vector<double> agent_prev_distance_;
    AcceptedTours accepted_;
    Tour best_;
    std::vector<double> trajectory_;
    long evaluations_ = 0;
    int iteration_ = 0;
    ThreadPool* pool_;
    int workers_;
    Dispatch dispatch_;
};

using TspRunResult = RunResult<Tour>;

// Memoryless variant: the cost matrix stays the reciprocal-distance matrix.
TspRunResult dfpa_run(const TspInstance& instance, const IdfpaParams& params,
                      std::uint64_t seed);

// Full iterative variant with evaporation, best tour update and rejection
// update at every iteration barrier.
TspRunResult idfpa_run(const TspInstance& instance, const IdfpaParams& params,
                       std::uint64_t seed);

}  // namespace gridsched

#endif
