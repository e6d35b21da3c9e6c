// Levy-flight machinery: Mantegna's heavy-tailed step sampler for the
// continuous pollination move, and the discrete Levy transform used by the
// tour construction's global search. The discrete form maps an ordered
// probability vector through the one-sided Levy CDF evaluated at scaled
// partial sums; the resulting masses are renormalized because the CDF at the
// full sum is below one.

#ifndef GRIDSCHED_LEVY_HPP
#define GRIDSCHED_LEVY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gridsched/rng.hpp"

namespace gridsched {

struct LevyParams {
    double lambda = 1.5;  // stability exponent, (0, 2]
    double phi = 1.0;     // scaling constant applied to partial sums
    double scale_c = 1.0; // scale of the one-sided Levy CDF

    void validate() const;
};

// One-sided Levy CDF with scale c: F(x) = erfc(sqrt(c / (2x))) for x > 0.
double levy_cdf(double x, double scale_c = 1.0);

// One Mantegna step: u / |v|^(1/lambda), u ~ N(0, sigma_u^2), v ~ N(0, 1).
double levy_step(RngStream& rng, double lambda);

// dim independent Mantegna steps.
std::vector<double> levy_step(RngStream& rng, double lambda, std::size_t dim);

// Transform probabilities (sorted descending, summing to 1) into discrete
// Levy masses: out_i = F(phi * cum_i) - F(phi * cum_{i-1}), renormalized.
std::vector<double> discrete_levy_probs(std::span<const double> ordered_probs,
                                        const LevyParams& params);

// Smallest 0-based index whose cumulative probability reaches r.
std::size_t discrete_levy_select(std::span<const double> probs, double r);

// Same, drawing r fresh from the stream.
std::size_t discrete_levy_select(std::span<const double> probs, RngStream& rng);

}  // namespace gridsched

#endif
