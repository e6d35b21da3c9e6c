#include "gridsched/registry.hpp"

#include "gridsched/hybrid.hpp"
#include "gridsched/idfpa_schedule.hpp"

namespace gridsched {

const std::vector<std::string>& dsm_algorithm_names() {
    static const std::vector<std::string> names = {
        "ga", "ba", "fpa", "tlbo", "fbat", "fga", "ftlbo", "gtlbo",
        "idfpa-schedule"};
    return names;
}

bool is_dsm_algorithm(const std::string& name) {
    if (name == "hfba" || name == "idfpa") return true;
    for (const std::string& n : dsm_algorithm_names())
        if (n == name) return true;
    return false;
}

DsmRunResult run_dsm_algorithm(const std::string& name, const DsmInstance& instance,
                               const AlgoParams& algo, const IdfpaParams& idfpa,
                               std::uint64_t seed) {
    if (name == "ga") return ga_run(instance, algo, seed);
    if (name == "ba") return ba_run(instance, algo, seed);
    if (name == "fpa") return fpa_run(instance, algo, seed);
    if (name == "tlbo") return tlbo_run(instance, algo, seed);
    if (name == "fbat" || name == "hfba") return fbat_run(instance, algo, seed);
    if (name == "fga") return fga_run(instance, algo, seed);
    if (name == "ftlbo") return ftlbo_run(instance, algo, seed);
    if (name == "gtlbo") return gtlbo_run(instance, algo, seed);
    if (name == "idfpa-schedule" || name == "idfpa") {
        IdfpaParams p = idfpa;
        p.termination = algo.termination;
        p.levy = algo.levy;
        return idfpa_schedule_run(instance, p, algo.weights, seed);
    }
    throw ParameterError("unknown algorithm: " + name);
}

}  // namespace gridsched
