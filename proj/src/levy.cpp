#include "gridsched/levy.hpp"

#include <cmath>
#include <numbers>

#include "gridsched/errors.hpp"

namespace gridsched {

void LevyParams::validate() const {
    if (!(lambda > 0.0 && lambda <= 2.0))
        throw ParameterError("levy lambda must lie in (0, 2]");
    if (!(phi > 0.0)) throw ParameterError("levy phi must be positive");
    if (!(scale_c > 0.0)) throw ParameterError("levy scale_c must be positive");
}

double levy_cdf(double x, double scale_c) {
    if (x <= 0.0) return 0.0;
    return std::erfc(std::sqrt(scale_c / (2.0 * x)));
}

namespace {

double mantegna_sigma(double lambda) {
    const double num = std::tgamma(1.0 + lambda) *
                       std::sin(std::numbers::pi * lambda / 2.0);
    const double den = std::tgamma((1.0 + lambda) / 2.0) * lambda *
                       std::pow(2.0, (lambda - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / lambda);
}

}  // namespace

double levy_step(RngStream& rng, double lambda) {
    if (!(lambda > 0.0 && lambda <= 2.0))
        throw ParameterError("levy lambda must lie in (0, 2]");
    const double sigma = mantegna_sigma(lambda);
    const double u = rng.normal() * sigma;
    double v = rng.normal();
    if (v == 0.0) v = 0x1.0p-53;
    return u / std::pow(std::abs(v), 1.0 / lambda);
}

std::vector<double> levy_step(RngStream& rng, double lambda, std::size_t dim) {
    if (!(lambda > 0.0 && lambda <= 2.0))
        throw ParameterError("levy lambda must lie in (0, 2]");
    std::vector<double> steps(dim);
    for (auto& s : steps) s = levy_step(rng, lambda);
    return steps;
}

std::vector<double> discrete_levy_probs(std::span<const double> ordered_probs,
                                        const LevyParams& params) {
    params.validate();
    if (ordered_probs.empty())
        throw ParameterError("discrete levy transform needs a nonempty vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < ordered_probs.size(); ++i) {
        const double p = ordered_probs[i];
        if (p < 0.0) throw ParameterError("probabilities must be nonnegative");
        if (i + 1 < ordered_probs.size() && ordered_probs[i + 1] > p + 1e-12)
            throw ParameterError("probabilities must be sorted descending");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ParameterError("probabilities must sum to 1");

    std::vector<double> masses(ordered_probs.size());
    double cum = 0.0;
    double prev_cdf = 0.0;
    for (std::size_t i = 0; i < ordered_probs.size(); ++i) {
        cum += ordered_probs[i];
        const double cdf = levy_cdf(params.phi * cum, params.scale_c);
        masses[i] = cdf - prev_cdf;
        prev_cdf = cdf;
    }
    // F(phi * 1) < 1, so the raw masses undershoot; rescale to a proper
    // distribution.
    double total = 0.0;
    for (double m : masses) total += m;
    if (total <= 0.0)
        throw ParameterError("degenerate levy masses; check phi and scale_c");
    for (double& m : masses) m /= total;
    return masses;
}

std::size_t discrete_levy_select(std::span<const double> probs, double r) {
    if (probs.empty()) throw ParameterError("cannot select from empty probabilities");
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (cum - r >= 0.0) return i;
    }
    return probs.size() - 1;  // guard against rounding shortfall at cum ~ 1
}

std::size_t discrete_levy_select(std::span<const double> probs, RngStream& rng) {
    return discrete_levy_select(probs, rng.uniform());
}

}  // namespace gridsched
