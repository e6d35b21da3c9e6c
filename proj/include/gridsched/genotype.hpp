// Genotype/phenotype bridge for the population solvers. Each non-Fixed
// appliance contributes one continuous gene holding a start-slot preference;
// decoding rounds and clamps the gene, then builds an activation row that is
// category-feasible by construction:
//   - Uninterruptible rows run contiguously from the decoded start.
//   - Shiftable rows take the `duration` cheapest slots from the decoded
//     start to the window end, earliest slot first on price ties, so flat
//     price regions decode to consecutive runs.
//   - Fixed rows copy the user placement and carry no gene.

#ifndef GRIDSCHED_GENOTYPE_HPP
#define GRIDSCHED_GENOTYPE_HPP

#include <span>
#include <vector>

#include "gridsched/dsm.hpp"
#include "gridsched/rng.hpp"

namespace gridsched {

using Genotype = std::vector<double>;

class GenotypeSpace {
public:
    explicit GenotypeSpace(const DsmInstance& instance);

    std::size_t dimension() const { return lower_.size(); }
    // Instance index of the appliance behind gene g.
    std::size_t appliance_index(std::size_t g) const { return appliance_index_[g]; }
    double lower(std::size_t g) const { return lower_[g]; }
    double upper(std::size_t g) const { return upper_[g]; }
    double span(std::size_t g) const { return upper_[g] - lower_[g]; }

    Genotype random(RngStream& rng) const;
    void clamp(Genotype& genes) const;
    Schedule decode(std::span<const double> genes) const;

private:
    const DsmInstance* instance_;
    std::vector<std::size_t> appliance_index_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

}  // namespace gridsched

#endif
