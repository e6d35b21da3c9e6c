#include "gridsched/idfpa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "gridsched/thread_pool.hpp"

namespace gridsched {

void IdfpaParams::validate() const {
    if (m < 1) throw ParameterError("agent count m must be at least 1");
    if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0, 1)");
    if (r_dist < 0.0) throw ParameterError("r_dist must be nonnegative");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ParameterError("alpha must lie in [0, 1)");
    if (gamma < 0.0) throw ParameterError("gamma must be nonnegative");
    if (beta < 0.0) throw ParameterError("beta must be nonnegative");
    if (!(omega > 0.0)) throw ParameterError("omega must be positive");
    if (!(q > 0.0)) throw ParameterError("q must be positive");
    if (!(cost_floor > 0.0)) throw ParameterError("cost_floor must be positive");
    if (accepted_capacity < 1)
        throw ParameterError("accepted_capacity must be at least 1");
    termination.validate();
    levy.validate();
}

namespace {

void fill_node_probabilities(const CostMatrixState& state, std::size_t from,
                             std::span<const std::size_t> remaining,
                             std::vector<double>& probs) {
    probs.resize(remaining.size());
    double total = 0.0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        probs[i] = state.entries(from, remaining[i]);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
}

// Reused per-construction buffers; everything is overwritten before use, so
// reuse never leaks state between steps or agents.
struct TourScratch {
    std::vector<std::size_t> remaining;
    std::vector<double> probs;
    std::vector<std::size_t> rank;
    std::vector<double> ordered;
    std::vector<double> masses;
    std::vector<std::size_t> cluster;
};

// Numerically identical to global_select below, writing into scratch buffers
// instead of allocating.
std::size_t global_select_into(std::span<const std::size_t> remaining,
                               std::span<const double> probs, const LevyParams& levy,
                               double r, TourScratch& scratch) {
    if (remaining.size() == 1) return remaining[0];
    auto& rank = scratch.rank;
    rank.resize(remaining.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    auto& ordered = scratch.ordered;
    ordered.resize(remaining.size());
    for (std::size_t i = 0; i < rank.size(); ++i) ordered[i] = probs[rank[i]];

    auto& masses = scratch.masses;
    masses.resize(ordered.size());
    double cum = 0.0, prev_cdf = 0.0, total = 0.0;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        cum += ordered[i];
        const double cdf = levy_cdf(levy.phi * cum, levy.scale_c);
        masses[i] = cdf - prev_cdf;
        prev_cdf = cdf;
        total += masses[i];
    }
    double cumsum = 0.0;
    for (std::size_t l = 0; l < masses.size(); ++l) {
        cumsum += masses[l] / total;
        if (cumsum - r >= 0.0) return remaining[rank[l]];
    }
    return remaining[rank.back()];
}

// Local selection straight from the cost row: the row normalization cancels
// inside the cluster-conditional probabilities, so only the cluster members'
// cost entries are read. Falls back to the caller for an empty cluster.
bool local_select_from_costs(const CostMatrixState& state, std::size_t v_prev,
                             std::span<const std::size_t> remaining,
                             const SquareMatrix& distances, double r_dist,
                             RngStream& rng, TourScratch& scratch,
                             std::size_t& chosen) {
    auto& cluster = scratch.cluster;
    cluster.clear();
    double cluster_mass = 0.0;
    for (std::size_t i = 0; i < remaining.size(); ++i)
        if (distances(v_prev, remaining[i]) <= r_dist) {
            cluster.push_back(i);
            cluster_mass += state.entries(v_prev, remaining[i]);
        }
    if (cluster.empty() || cluster_mass <= 0.0) return false;
    const double r = rng.uniform();
    double cum = 0.0;
    for (std::size_t i : cluster) {
        cum += state.entries(v_prev, remaining[i]) / cluster_mass;
        if (cum >= r) {
            chosen = remaining[i];
            return true;
        }
    }
    chosen = remaining[cluster.back()];
    return true;
}

}  // namespace

std::vector<double> node_probabilities(const CostMatrixState& state, std::size_t from,
                                       std::span<const std::size_t> remaining) {
    std::vector<double> probs;
    fill_node_probabilities(state, from, remaining, probs);
    return probs;
}

std::size_t global_select(std::span<const std::size_t> remaining,
                          std::span<const double> probs, const LevyParams& levy,
                          double r) {
    if (remaining.empty()) throw ParameterError("global search over an empty node set");
    if (remaining.size() == 1) return remaining[0];
    // order by descending probability; stable so equal masses keep node order
    std::vector<std::size_t> order(remaining.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    std::vector<double> ordered(remaining.size());
    for (std::size_t i = 0; i < order.size(); ++i) ordered[i] = probs[order[i]];
    const std::vector<double> masses = discrete_levy_probs(ordered, levy);
    const std::size_t l = discrete_levy_select(masses, r);
    return remaining[order[l]];
}

std::size_t global_select(std::span<const std::size_t> remaining,
                          std::span<const double> probs, const LevyParams& levy,
                          RngStream& rng) {
    if (remaining.size() == 1) return remaining[0];
    return global_select(remaining, probs, levy, rng.uniform());
}

std::size_t local_select(std::size_t v_prev, std::span<const std::size_t> remaining,
                         const SquareMatrix& distances, double r_dist,
                         std::span<const double> probs, const LevyParams& levy,
                         RngStream& rng) {
    std::vector<std::size_t> cluster;  // positions into `remaining`
    double cluster_mass = 0.0;
    for (std::size_t i = 0; i < remaining.size(); ++i)
        if (distances(v_prev, remaining[i]) <= r_dist) {
            cluster.push_back(i);
            cluster_mass += probs[i];
        }
    if (cluster.empty() || cluster_mass <= 0.0)
        return global_select(remaining, probs, levy, rng);
    const double r = rng.uniform();
    double cum = 0.0;
    for (std::size_t i : cluster) {
        cum += probs[i] / cluster_mass;
        if (cum >= r) return remaining[i];
    }
    return remaining[cluster.back()];
}

std::vector<std::size_t> construct_tour(const CostMatrixState& state,
                                        const TspInstance& instance,
                                        const IdfpaParams& params, RngStream& rng,
                                        double* length_out) {
    const std::size_t n = instance.n;
    TourScratch scratch;
    auto& remaining = scratch.remaining;
    remaining.resize(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::size_t> order;
    order.reserve(n);
    double length = 0.0;

    const auto take = [&](std::size_t node) {
        if (!order.empty()) length += instance.distances(order.back(), node);
        order.push_back(node);
        remaining.erase(std::find(remaining.begin(), remaining.end(), node));
    };

    take(remaining[rng.uniform_int(0, static_cast<long>(n) - 1)]);
    while (!remaining.empty()) {
        const std::size_t v_prev = order.back();
        if (params.validate_construction) {
            fill_node_probabilities(state, v_prev, remaining, scratch.probs);
            const double sum =
                std::accumulate(scratch.probs.begin(), scratch.probs.end(), 0.0);
            if (std::abs(sum - 1.0) > 1e-9)
                throw Error("construction probabilities drifted from 1");
        }
        const double r = rng.uniform();
        std::size_t node;
        if (r > params.rho) {
            if (remaining.size() == 1) {
                node = remaining[0];
            } else {
                fill_node_probabilities(state, v_prev, remaining, scratch.probs);
                node = global_select_into(remaining, scratch.probs, params.levy,
                                          rng.uniform(), scratch);
            }
        } else if (local_select_from_costs(state, v_prev, remaining,
                                           instance.distances, params.r_dist, rng,
                                           scratch, node)) {
            // cluster-conditional draw done against the raw cost row
        } else if (remaining.size() == 1) {
            node = remaining[0];
        } else {
            fill_node_probabilities(state, v_prev, remaining, scratch.probs);
            node = global_select_into(remaining, scratch.probs, params.levy,
                                      rng.uniform(), scratch);
        }
        take(node);
    }
    if (params.validate_construction && !is_permutation(order, n))
        throw Error("constructed tour is not a permutation");
    if (length_out) *length_out = length + instance.distances(order.back(), order.front());
    return order;
}

void evaporate(CostMatrixState& state, double alpha, double floor) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ParameterError("alpha must lie in [0, 1)");
    const std::size_t n = state.entries.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                state.entries(i, j) = std::max((1.0 - alpha) * state.entries(i, j), floor);
}

void best_tour_update(CostMatrixState& state, const Tour& s_star,
                      const TspInstance& instance, double gamma) {
    if (gamma == 0.0 || s_star.order.empty()) return;
    const double d_star = s_star.length;
    if (!(d_star > 0.0)) return;
    const std::size_t n = s_star.order.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = s_star.order[k];
        const std::size_t j = s_star.order[(k + 1) % n];
        const double bump = gamma * instance.distances(i, j) / d_star;
        state.entries(i, j) += bump;
        state.entries(j, i) += bump;
    }
}

double annealing_temperature(int n_curr, int n_total, double omega, double q) {
    return std::exp(-omega * static_cast<double>(n_curr) /
                    (q * static_cast<double>(n_total)));
}

bool rejection_accept(double d_new, double d_prev, double t_curr, double r) {
    const double delta = d_new - d_prev;
    if (delta <= 0.0) return true;
    const double p = std::exp(-delta / (t_curr * d_prev));
    return p > r;
}

bool rejection_accept(double d_new, double d_prev, double t_curr, RngStream& rng) {
    const double delta = d_new - d_prev;
    if (delta <= 0.0) return true;  // no draw consumed on automatic acceptance
    return rejection_accept(d_new, d_prev, t_curr, rng.uniform());
}

void rejection_update(CostMatrixState& state, const AcceptedTours& accepted,
                      double beta) {
    if (beta == 0.0) return;
    for (const AcceptedTours::Entry& entry : accepted.entries()) {
        if (!(entry.distance > 0.0)) continue;
        const double bump = beta / entry.distance;
        const std::size_t n = entry.order.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = entry.order[k];
            const std::size_t j = entry.order[(k + 1) % n];
            state.entries(i, j) += bump;
            state.entries(j, i) += bump;
        }
    }
}

namespace {

// Fallback local radius: twice the mean nearest-neighbour distance, so the
// radial cluster is small but rarely empty.
double derive_radius(const TspInstance& instance) {
    double total = 0.0;
    for (std::size_t i = 0; i < instance.n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < instance.n; ++j)
            if (i != j) nearest = std::min(nearest, instance.distances(i, j));
        total += nearest;
    }
    return 2.0 * total / static_cast<double>(instance.n);
}

constexpr std::uint64_t kMasterStream = std::numeric_limits<std::uint64_t>::max();

}  // namespace

IdfpaEngine::IdfpaEngine(const TspInstance& instance, const IdfpaParams& params,
                         std::uint64_t seed, Memory memory, ThreadPool* pool,
                         int workers, Dispatch dispatch)
    : instance_(&instance),
      params_(params),
      memory_(memory),
      seed_(seed),
      master_rng_(seed, kMasterStream),
      accepted_(params.accepted_capacity),
      pool_(pool),
      workers_(workers),
      dispatch_(dispatch) {
    params_.validate();
    instance.validate();
    if (params_.r_dist <= 0.0) params_.r_dist = derive_radius(instance);
    state_.entries = build_cost_matrix(instance).entries;
    agent_rngs_.reserve(params_.m);
    for (int a = 0; a < params_.m; ++a) agent_rngs_.emplace_back(seed, a);
    agent_prev_distance_.assign(params_.m, 0.0);
}

IdfpaEngine::~IdfpaEngine() = default;

void IdfpaEngine::run_iteration() {
    const int t = ++iteration_;
    const std::size_t m = agent_rngs_.size();
    std::vector<Tour> tours(m);

    const auto build = [&](std::size_t a) {
        tours[a].order =
            construct_tour(state_, *instance_, params_, agent_rngs_[a], &tours[a].length);
    };
    if (pool_ && workers_ > 1) {
        if (dispatch_ == Dispatch::Grouped) {
            const std::size_t groups = static_cast<std::size_t>(workers_);
            pool_->parallel_for(groups, [&](std::size_t g) {
                for (std::size_t a = g; a < m; a += groups) build(a);
            });
        } else {
            pool_->parallel_for(m, build);
        }
    } else {
        for (std::size_t a = 0; a < m; ++a) build(a);
    }
    evaluations_ += static_cast<long>(m);

    std::size_t iter_best = 0;
    for (std::size_t a = 1; a < m; ++a)
        if (tours[a].length < tours[iter_best].length) iter_best = a;
    if (!has_best() || tours[iter_best].length < best_.length) best_ = tours[iter_best];

    if (memory_ == Memory::Iterative) {
        evaporate(state_, params_.alpha, params_.cost_floor);
        const Tour& reinforced = params_.reinforce_global_best ? best_ : tours[iter_best];
        best_tour_update(state_, reinforced, *instance_, params_.gamma);

        const double temp = annealing_temperature(
            t, params_.termination.max_iterations, params_.omega, params_.q);
        if (t == 1)
            agent_prev_distance_.assign(m, tours[iter_best].length);
        for (std::size_t a = 0; a < m; ++a) {
            if (rejection_accept(tours[a].length, agent_prev_distance_[a], temp,
                                 master_rng_)) {
                agent_prev_distance_[a] = tours[a].length;
                accepted_.push({tours[a].order, tours[a].length});
            }
        }
        rejection_update(state_, accepted_, params_.beta);
        state_.iteration = t;
    }
    trajectory_.push_back(best_.length);
}

void IdfpaEngine::replace_matrix(const SquareMatrix& entries) {
    state_.entries = entries;
}

void IdfpaEngine::commit_partner_best(const Tour& partner_best) {
    best_tour_update(state_, partner_best, *instance_, params_.gamma);
}

RunResult<Tour> IdfpaEngine::result(double wall_seconds) const {
    RunResult<Tour> res;
    res.best_solution = best_;
    res.best_value = best_.length;
    res.trajectory = trajectory_;
    res.evaluations = evaluations_;
    res.wall_seconds = wall_seconds;
    res.seed = seed_;
    return res;
}

namespace {

TspRunResult run_engine(const TspInstance& instance, const IdfpaParams& params,
                        std::uint64_t seed, IdfpaEngine::Memory memory) {
    const auto start = std::chrono::steady_clock::now();
    IdfpaEngine engine(instance, params, seed, memory);
    double last_best = std::numeric_limits<double>::infinity();
    int stale = 0;
    for (int t = 1; t <= params.termination.max_iterations; ++t) {
        if (params.termination.max_evaluations &&
            engine.evaluations() >= *params.termination.max_evaluations)
            break;
        engine.run_iteration();
        if (params.termination.stagnation_window) {
            if (engine.best().length < last_best) {
                stale = 0;
                last_best = engine.best().length;
            } else if (++stale >= *params.termination.stagnation_window) {
                break;
            }
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return engine.result(wall);
}

}  // namespace

TspRunResult dfpa_run(const TspInstance& instance, const IdfpaParams& params,
                      std::uint64_t seed) {
    return run_engine(instance, params, seed, IdfpaEngine::Memory::Static);
}

TspRunResult idfpa_run(const TspInstance& instance, const IdfpaParams& params,
                       std::uint64_t seed) {
    return run_engine(instance, params, seed, IdfpaEngine::Memory::Iterative);
}

}  // namespace gridsched
