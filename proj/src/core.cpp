#include "gridsched/core.hpp"

namespace gridsched {

int deb_compare(const Candidate& a, const Candidate& b) {
    if (a.feasible() != b.feasible()) return a.feasible() ? -1 : 1;
    if (a.feasible()) {
        if (a.fitness < b.fitness) return -1;
        if (b.fitness < a.fitness) return 1;
        return 0;
    }
    if (a.violations < b.violations) return -1;
    if (b.violations < a.violations) return 1;
    return 0;
}

}  // namespace gridsched
