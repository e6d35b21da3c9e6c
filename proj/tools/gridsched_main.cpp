// gridsched: appliance-scheduling and TSP metaheuristics bench CLI.
//
// Subcommands:
//   gen-dsm   write a seeded household instance as JSON
//   gen-tsp   write a seeded random Euclidean instance in TSPLIB form
//   run       run one scheduling algorithm on a DSM instance
//   compare   run an algorithm suite over seeds and print a CSV table
//   tsp       run dfpa/idfpa on a TSP instance, optionally parallel
//
// Exit codes: 0 success, 2 parameter errors, 3 instance errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridsched/dsm_json.hpp"
#include "gridsched/instance_gen.hpp"
#include "gridsched/registry.hpp"
#include "gridsched/report_io.hpp"
#include "gridsched/thread_pool.hpp"

using namespace gridsched;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InstanceError("cannot write file: " + path);
    out << content;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GRIDSCHED_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 1;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

// Solver settings assembled from the parameter document and flag overrides.
struct Settings {
    AlgoParams algo;
    IdfpaParams idfpa;
};

void apply_params_json(Settings& s, const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("invalid parameter document: ") + e.what());
    }
    const auto get = [](const json& obj, const char* key, auto& field) {
        if (obj.contains(key)) field = obj.at(key).get<std::decay_t<decltype(field)>>();
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "population") s.algo.population = value.get<int>();
        else if (key == "iterations") {
            s.algo.termination.max_iterations = value.get<int>();
            s.idfpa.termination.max_iterations = value.get<int>();
        } else if (key == "max_evaluations") {
            s.algo.termination.max_evaluations = value.get<long>();
            s.idfpa.termination.max_evaluations = value.get<long>();
        } else if (key == "weights") {
            get(value, "cost", s.algo.weights.cost);
            get(value, "par", s.algo.weights.par);
            get(value, "discomfort", s.algo.weights.discomfort);
            get(value, "penalty", s.algo.weights.violation_penalty);
        } else if (key == "ga") {
            get(value, "crossover_rate", s.algo.ga.crossover_rate);
            get(value, "mutation_rate", s.algo.ga.mutation_rate);
            get(value, "tournament_k", s.algo.ga.tournament_k);
            get(value, "elitism_count", s.algo.ga.elitism_count);
        } else if (key == "ba") {
            get(value, "f_min", s.algo.ba.f_min);
            get(value, "f_max", s.algo.ba.f_max);
            get(value, "loudness_A0", s.algo.ba.loudness_A0);
            get(value, "loudness_decay", s.algo.ba.loudness_decay);
            get(value, "pulse_r0", s.algo.ba.pulse_r0);
            get(value, "pulse_gamma", s.algo.ba.pulse_gamma);
        } else if (key == "fpa") {
            get(value, "switch_p", s.algo.fpa.switch_p);
        } else if (key == "levy") {
            get(value, "lambda", s.algo.levy.lambda);
            get(value, "phi", s.algo.levy.phi);
            get(value, "scale_c", s.algo.levy.scale_c);
            s.idfpa.levy = s.algo.levy;
        } else if (key == "idfpa") {
            get(value, "m", s.idfpa.m);
            get(value, "rho", s.idfpa.rho);
            get(value, "r_dist", s.idfpa.r_dist);
            get(value, "alpha", s.idfpa.alpha);
            get(value, "gamma", s.idfpa.gamma);
            get(value, "beta", s.idfpa.beta);
            get(value, "omega", s.idfpa.omega);
            get(value, "q", s.idfpa.q);
        } else {
            throw ParameterError("unknown parameter field: " + key);
        }
    }
}

struct CommonFlags {
    std::string params_path;
    int population = -1;
    int iterations = -1;
    long max_evaluations = -1;
    double w_cost = -1.0, w_par = -1.0, w_discomfort = -1.0, penalty = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--params", params_path, "parameter document (JSON)");
        cmd->add_option("--pop", population, "population size / agent count");
        cmd->add_option("--iters", iterations, "iteration budget");
        cmd->add_option("--evals", max_evaluations, "evaluation budget");
        cmd->add_option("--w-cost", w_cost, "objective weight on normalized cost");
        cmd->add_option("--w-par", w_par, "objective weight on PAR");
        cmd->add_option("--w-discomfort", w_discomfort, "objective weight on discomfort");
        cmd->add_option("--penalty", penalty, "penalty per capacity violation");
    }

    Settings settings() const {
        Settings s;
        if (!params_path.empty()) apply_params_json(s, read_file(params_path));
        if (population > 0) {
            s.algo.population = population;
            s.idfpa.m = population;
        }
        if (iterations > 0) {
            s.algo.termination.max_iterations = iterations;
            s.idfpa.termination.max_iterations = iterations;
        }
        if (max_evaluations > 0) {
            s.algo.termination.max_evaluations = max_evaluations;
            s.idfpa.termination.max_evaluations = max_evaluations;
        }
        if (w_cost >= 0.0) s.algo.weights.cost = w_cost;
        if (w_par >= 0.0) s.algo.weights.par = w_par;
        if (w_discomfort >= 0.0) s.algo.weights.discomfort = w_discomfort;
        if (penalty >= 0.0) s.algo.weights.violation_penalty = penalty;
        return s;
    }
};

int cmd_gen_dsm(int appliances, int horizon, const std::string& tariff,
                std::uint64_t seed, const std::string& out) {
    const auto instance = generate_dsm_instance(appliances, horizon,
                                                tariff_shape_from_string(tariff), seed);
    const std::string text = dsm_instance_to_json(instance);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return 0;
}

int cmd_gen_tsp(std::size_t n, std::uint64_t seed, const std::string& out) {
    const std::string text = write_tsplib(generate_tsp_instance(n, seed));
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return 0;
}

int cmd_run(const std::string& algo, const std::string& instance_path,
            const CommonFlags& flags, std::uint64_t seed, const std::string& out_dir) {
    if (!is_dsm_algorithm(algo)) throw ParameterError("unknown algorithm: " + algo);
    const auto instance = dsm_instance_from_json(read_file(instance_path));
    const Settings s = flags.settings();
    const auto result = run_dsm_algorithm(algo, instance, s.algo, s.idfpa, seed);
    const MetricsReport metrics = evaluate_metrics(result.best_solution, instance);
    write_file(out_dir + "/result.json", dsm_result_to_json(algo, result, metrics));
    write_file(out_dir + "/convergence.csv", convergence_csv(result.trajectory));
    std::cerr << "best objective " << result.best_value << " after "
              << result.evaluations << " evaluations\n";
    return 0;
}

int cmd_compare(const std::string& algos_csv, const std::string& instance_path,
                const CommonFlags& flags, std::uint64_t seed_base, int seeds,
                bool with_oracle, const std::string& out) {
    if (seeds < 1) throw ParameterError("need at least one seed");
    const auto instance = dsm_instance_from_json(read_file(instance_path));
    const Settings s = flags.settings();

    std::vector<std::string> algos;
    std::stringstream names(algos_csv);
    for (std::string name; std::getline(names, name, ',');) {
        if (name.empty()) continue;
        if (!is_dsm_algorithm(name)) throw ParameterError("unknown algorithm: " + name);
        algos.push_back(name);
    }
    if (algos.empty()) algos = dsm_algorithm_names();

    const auto baseline = baseline_schedule(instance);
    const MetricsReport base_metrics = evaluate_metrics(baseline, instance);
    const ScheduleObjective objective(instance, s.algo.weights);

    std::ostringstream table;
    table.precision(17);
    table << "algorithm,cost_reduction_pct,par,discomfort,median,iqr,seeds\n";
    const auto emit_row = [&](const std::string& name, std::vector<double> costs,
                              std::vector<double> pars, std::vector<double> discomforts,
                              std::vector<double> objectives) {
        const double med_cost = median(costs);
        table << name << ","
              << 100.0 * (base_metrics.cost - med_cost) / base_metrics.cost << ","
              << median(pars) << "," << median(discomforts) << ","
              << median(objectives) << ","
              << quantile(objectives, 0.75) - quantile(objectives, 0.25) << ","
              << costs.size() << "\n";
    };

    emit_row("baseline", {base_metrics.cost}, {base_metrics.par},
             {base_metrics.discomfort}, {objective.objective(baseline)});
    if (with_oracle) {
        const auto oracle = brute_force_schedule(instance, s.algo.weights);
        const MetricsReport m = evaluate_metrics(oracle, instance);
        emit_row("oracle", {m.cost}, {m.par}, {m.discomfort},
                 {objective.objective(oracle)});
    }
    for (const std::string& name : algos) {
        std::vector<double> costs, pars, discomforts, objectives;
        for (int i = 0; i < seeds; ++i) {
            const auto result =
                run_dsm_algorithm(name, instance, s.algo, s.idfpa, seed_base + i);
            const MetricsReport m = evaluate_metrics(result.best_solution, instance);
            costs.push_back(m.cost);
            pars.push_back(m.par);
            discomforts.push_back(m.discomfort);
            objectives.push_back(result.best_value);
        }
        emit_row(name, std::move(costs), std::move(pars), std::move(discomforts),
                 std::move(objectives));
    }
    std::cout << table.str();
    if (!out.empty()) write_file(out, table.str());
    return 0;
}

int cmd_tsp(const std::string& algo, const std::string& instance_path, std::size_t n,
            const CommonFlags& flags, std::uint64_t seed, const std::string& strategy,
            int workers, int exchange_every, int paco_period, double paco_scale,
            bool speedup, const std::string& out_dir, const std::string& dump_matrix,
            double rho, double alpha, double gamma, double beta, double r_dist) {
    if (algo != "dfpa" && algo != "idfpa")
        throw ParameterError("tsp solvers are dfpa and idfpa, got: " + algo);
    const TspSolverKind kind =
        algo == "idfpa" ? TspSolverKind::Idfpa : TspSolverKind::Dfpa;

    TspInstance instance = instance_path.empty()
                               ? generate_tsp_instance(n, seed)
                               : parse_tsplib(read_file(instance_path));

    Settings s = flags.settings();
    IdfpaParams params = s.idfpa;
    params.levy = s.algo.levy;
    if (rho > 0.0) params.rho = rho;
    if (alpha >= 0.0) params.alpha = alpha;
    if (gamma >= 0.0) params.gamma = gamma;
    if (beta >= 0.0) params.beta = beta;
    if (r_dist > 0.0) params.r_dist = r_dist;

    ParallelPlan plan;
    plan.workers = workers;
    plan.exchange_every = exchange_every;
    plan.paco = PacoSettings{paco_period, paco_scale};

    TspRunResult result;
    std::string strategy_label = strategy;
    if (strategy == "none" || strategy.empty()) {
        strategy_label = "serial";
        result = kind == TspSolverKind::Idfpa ? idfpa_run(instance, params, seed)
                                              : dfpa_run(instance, params, seed);
    } else if (strategy == "paco") {
        std::vector<std::uint64_t> seeds(workers);
        for (int i = 0; i < workers; ++i) seeds[i] = seed + i;
        result = paco_run(instance, plan, params, seeds);
    } else {
        switch (parallel_strategy_from_string(strategy)) {
            case ParallelStrategy::Independent: {
                plan.strategy = ParallelStrategy::Independent;
                std::vector<IdfpaParams> param_sets(workers, params);
                std::vector<std::uint64_t> seeds(workers);
                for (int i = 0; i < workers; ++i) seeds[i] = seed + i;
                result = run_independent(kind, instance, plan, param_sets, seeds);
                break;
            }
            case ParallelStrategy::Interacting: {
                plan.strategy = ParallelStrategy::Interacting;
                std::vector<std::uint64_t> seeds(workers);
                for (int i = 0; i < workers; ++i) seeds[i] = seed + i;
                result = run_interacting(kind, instance, plan, params, seeds);
                break;
            }
            case ParallelStrategy::ParallelAnts:
                plan.strategy = ParallelStrategy::ParallelAnts;
                result = run_parallel_ants(kind, instance, plan, params, seed);
                break;
            case ParallelStrategy::Combined:
                plan.strategy = ParallelStrategy::Combined;
                result = run_combined(kind, instance, plan, params, seed);
                break;
            case ParallelStrategy::ParallelEval:
                throw UnsupportedStrategyError(
                    "parallel-eval evaluates schedule batches, not tours; "
                    "use the library interface");
        }
    }

    write_file(out_dir + "/result.json",
               tsp_result_to_json(algo, strategy_label, result));
    write_file(out_dir + "/convergence.csv", convergence_csv(result.trajectory));

    if (speedup) {
        const auto serial = kind == TspSolverKind::Idfpa
                                ? idfpa_run(instance, params, seed)
                                : dfpa_run(instance, params, seed);
        const auto report =
            make_speedup_report(serial.wall_seconds, result.wall_seconds, workers,
                                serial.best_value, result.best_value);
        write_file(out_dir + "/speedup.json", speedup_report_to_json(report));
        std::cerr << "speedup " << report.speedup << " at " << workers
                  << " workers (efficiency " << report.efficiency << ")\n";
    }

    if (!dump_matrix.empty()) {
        // diagnostic dump of the final cost matrix from a fresh replay
        IdfpaEngine engine(instance, params, seed,
                           kind == TspSolverKind::Idfpa
                               ? IdfpaEngine::Memory::Iterative
                               : IdfpaEngine::Memory::Static);
        for (int t = 1; t <= params.termination.max_iterations; ++t)
            engine.run_iteration();
        std::ostringstream dump;
        dump.precision(17);
        for (std::size_t i = 0; i < instance.n; ++i) {
            for (std::size_t j = 0; j < instance.n; ++j)
                dump << engine.state().entries(i, j)
                     << (j + 1 < instance.n ? "," : "");
            dump << "\n";
        }
        write_file(dump_matrix, dump.str());
    }

    std::cerr << "best tour length " << result.best_value << " after "
              << result.evaluations << " constructions\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metaheuristic scheduling and TSP bench"};
    app.require_subcommand(1);

    // gen-dsm
    auto* gen_dsm = app.add_subcommand("gen-dsm", "generate a household instance");
    int gd_appliances = 10, gd_horizon = 24;
    std::string gd_tariff = "two_tier", gd_out;
    std::uint64_t gd_seed = default_seed();
    gen_dsm->add_option("--appliances", gd_appliances);
    gen_dsm->add_option("--horizon", gd_horizon);
    gen_dsm->add_option("--tariff", gd_tariff, "flat|two_tier|random");
    gen_dsm->add_option("--seed", gd_seed);
    gen_dsm->add_option("--out", gd_out, "output path (stdout when omitted)");

    // gen-tsp
    auto* gen_tsp = app.add_subcommand("gen-tsp", "generate a random TSP instance");
    std::size_t gt_n = 50;
    std::string gt_out;
    std::uint64_t gt_seed = default_seed();
    gen_tsp->add_option("--n", gt_n);
    gen_tsp->add_option("--seed", gt_seed);
    gen_tsp->add_option("--out", gt_out);

    // run
    auto* run = app.add_subcommand("run", "run one scheduling algorithm");
    std::string r_algo, r_instance, r_out_dir = ".";
    std::uint64_t r_seed = default_seed();
    CommonFlags r_flags;
    run->add_option("--algo", r_algo)->required();
    run->add_option("--instance", r_instance)->required();
    run->add_option("--seed", r_seed);
    run->add_option("--out-dir", r_out_dir);
    r_flags.attach(run);

    // compare
    auto* compare = app.add_subcommand("compare", "compare algorithms over seeds");
    std::string c_algos, c_instance, c_out;
    int c_seeds = 5;
    std::uint64_t c_seed_base = default_seed();
    bool c_oracle = false;
    CommonFlags c_flags;
    compare->add_option("--algos", c_algos, "comma-separated names; default: full suite");
    compare->add_option("--instance", c_instance)->required();
    compare->add_option("--seeds", c_seeds, "seed count");
    compare->add_option("--seed-base", c_seed_base);
    compare->add_flag("--oracle", c_oracle, "add the exhaustive-search row");
    compare->add_option("--out", c_out, "also write the table to this path");
    c_flags.attach(compare);

    // tsp
    auto* tsp = app.add_subcommand("tsp", "run dfpa/idfpa on a TSP instance");
    std::string t_algo = "idfpa", t_instance, t_strategy = "none", t_out_dir = ".";
    std::string t_dump;
    std::size_t t_n = 50;
    std::uint64_t t_seed = default_seed();
    int t_workers = 1, t_exchange = 1, t_paco_period = 10;
    double t_paco_scale = 1.0;
    double t_rho = -1.0, t_alpha = -1.0, t_gamma = -1.0, t_beta = -1.0, t_rdist = -1.0;
    bool t_speedup = false;
    CommonFlags t_flags;
    tsp->add_option("--algo", t_algo, "dfpa|idfpa");
    tsp->add_option("--instance", t_instance, "TSPLIB file; omit to generate");
    tsp->add_option("--n", t_n, "node count for generated instances");
    tsp->add_option("--seed", t_seed);
    tsp->add_option("--strategy", t_strategy,
                    "none|independent|interacting|parallel-ants|combined|paco");
    tsp->add_option("--workers", t_workers);
    tsp->add_option("--exchange-every", t_exchange);
    tsp->add_option("--paco-initial-period", t_paco_period);
    tsp->add_option("--paco-period-scale", t_paco_scale);
    tsp->add_option("--rho", t_rho);
    tsp->add_option("--alpha", t_alpha);
    tsp->add_option("--gamma", t_gamma);
    tsp->add_option("--beta", t_beta);
    tsp->add_option("--r-dist", t_rdist);
    tsp->add_flag("--speedup", t_speedup, "also run the serial reference and report");
    tsp->add_option("--out-dir", t_out_dir);
    tsp->add_option("--dump-matrix", t_dump, "write the final cost matrix as CSV");
    t_flags.attach(tsp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (gen_dsm->parsed())
            return cmd_gen_dsm(gd_appliances, gd_horizon, gd_tariff, gd_seed, gd_out);
        if (gen_tsp->parsed()) return cmd_gen_tsp(gt_n, gt_seed, gt_out);
        if (run->parsed()) return cmd_run(r_algo, r_instance, r_flags, r_seed, r_out_dir);
        if (compare->parsed())
            return cmd_compare(c_algos, c_instance, c_flags, c_seed_base, c_seeds,
                               c_oracle, c_out);
        if (tsp->parsed())
            return cmd_tsp(t_algo, t_instance, t_n, t_flags, t_seed, t_strategy,
                           t_workers, t_exchange, t_paco_period, t_paco_scale,
                           t_speedup, t_out_dir, t_dump, t_rho, t_alpha, t_gamma,
                           t_beta, t_rdist);
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const InstanceError& e) {
        std::cerr << "instance error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
