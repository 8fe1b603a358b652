#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace canids {

// Bayesian single change-point model over a similarity series:
//   values[t] ~ Normal(mu_before, sigma)  for t <  tau
//   values[t] ~ Normal(mu_after,  sigma)  for t >= tau
// with priors
//   tau       ~ DiscreteUniform(0, n-1)      (tau == 0: change before all data)
//   mu_*      ~ Normal(series mean, 2 * series stddev)
//   sigma     ~ HalfNormal(series stddev)
// sampled by Metropolis-within-Gibbs: Gaussian random walks for mu_before,
// mu_after and sigma, an integer random walk for tau. Step sizes adapt
// multiplicatively towards ~0.4 acceptance during burn-in, then freeze.

struct CpdConfig {
    std::size_t samples = 20000; // total iterations, burn-in included
    std::size_t burn_in = 5000;
    double strength_threshold = 1.0; // percent; above it the series "changed"
    std::uint64_t seed = 1;
};

struct CpdDiagnostics {
    // post-burn-in acceptance rates per random-walk proposal
    double accept_mu_before = 0, accept_mu_after = 0, accept_sigma = 0, accept_tau = 0;
    // frozen step sizes
    double step_mu_before = 0, step_mu_after = 0, step_sigma = 0;
    double step_tau = 0;
};

struct ChangePointEstimate {
    std::size_t tau_point = 0;      // round(posterior mean of tau)
    double mu_before = 0.0;         // posterior means
    double mu_after = 0.0;
    double sigma = 0.0;
    double strength = 0.0;          // |mu_b - mu_a| / mean(mu_b, mu_a) * 100
    bool changed = false;           // strength > config.strength_threshold
    bool degenerate = false;        // input had zero variance; no sampling ran
    std::vector<double> tau_posterior; // probability mass per index, length n
    CpdDiagnostics diagnostics;
};

// Requires n >= 8 (SeriesTooShort). A constant series skips sampling and
// returns the degenerate convention: changed == false, strength == 0,
// mu_before == mu_after == mean. Deterministic given config.seed.
ChangePointEstimate change_point_detect(std::span<const double> values,
                                        const CpdConfig& config = {});

// Percent change between the two segment means. Throws ZeroMeanAverage when
// mu_before + mu_after == 0.
double strength_of_change(double mu_before, double mu_after);

std::size_t tau_posterior_argmax(const ChangePointEstimate& est);

// CSV with header: index, probability
void write_tau_posterior_csv(std::ostream& out, const ChangePointEstimate& est);
std::string estimate_to_json(const ChangePointEstimate& est, const CpdConfig& config);

} // namespace canids
