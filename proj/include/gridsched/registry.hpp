// Name-based dispatch for the scheduling solvers. "hfba" and "fbat" resolve
// to the same composition; "idfpa" and "idfpa-schedule" both select the
// schedule adaptation when the problem is a DSM instance.

#ifndef GRIDSCHED_REGISTRY_HPP
#define GRIDSCHED_REGISTRY_HPP

#include <string>
#include <vector>

#include "gridsched/classic.hpp"
#include "gridsched/idfpa.hpp"

namespace gridsched {

// Canonical suite order used by the comparison command.
const std::vector<std::string>& dsm_algorithm_names();

bool is_dsm_algorithm(const std::string& name);

// Runs one scheduling solver by name. The iDFPA adaptation draws its
// weights and termination from `algo` so every algorithm sees the same
// objective and budget.
DsmRunResult run_dsm_algorithm(const std::string& name, const DsmInstance& instance,
                               const AlgoParams& algo, const IdfpaParams& idfpa,
                               std::uint64_t seed);

}  // namespace gridsched

#endif
