#include "canids/change_point.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "canids/errors.hpp"
#include "canids/numeric.hpp"

namespace canids {

double strength_of_change(double mu_before, double mu_after) {
    double avg = (mu_before + mu_after) / 2.0;
    if (avg == 0.0)
        throw Error(Errc::ZeroMeanAverage, "segment means average to zero");
    return std::abs(mu_before - mu_after) / std::abs(avg) * 100.0;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sufficient statistics for O(1) likelihood evaluation at any split.
struct PrefixStats {
    std::vector<double> sum;    // sum[k]  = x[0] + ... + x[k-1]
    std::vector<double> sumsq;  // sumsq[k] likewise for squares

    explicit PrefixStats(std::span<const double> xs) {
        sum.resize(xs.size() + 1, 0.0);
        sumsq.resize(xs.size() + 1, 0.0);
        KahanSum s, q;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s.add(xs[i]);
            q.add(xs[i] * xs[i]);
            sum[i + 1] = s.value();
            sumsq[i + 1] = q.value();
        }
    }
};

struct Posterior {
    const PrefixStats& stats;
    std::size_t n;
    double prior_mu_mean;   // series mean
    double prior_mu_sd;     // 2 * series sd
    double prior_sigma_sd;  // series sd

    // sum of squared residuals around the two segment means split at tau
    double sse(double mu_b, double mu_a, std::size_t tau) const {
        double s1 = stats.sum[tau];
        double q1 = stats.sumsq[tau];
        double s2 = stats.sum[n] - s1;
        double q2 = stats.sumsq[n] - q1;
        double n1 = static_cast<double>(tau);
        double n2 = static_cast<double>(n - tau);
        return (q1 - 2.0 * mu_b * s1 + n1 * mu_b * mu_b) +
               (q2 - 2.0 * mu_a * s2 + n2 * mu_a * mu_a);
    }

    // log posterior density up to an additive constant
    double operator()(double mu_b, double mu_a, double sigma, std::size_t tau) const {
        if (sigma <= 0.0 || tau >= n)
            return kNegInf;
        double ll = -static_cast<double>(n) * std::log(sigma) -
                    sse(mu_b, mu_a, tau) / (2.0 * sigma * sigma);
        double db = (mu_b - prior_mu_mean) / prior_mu_sd;
        double da = (mu_a - prior_mu_mean) / prior_mu_sd;
        double ds = sigma / prior_sigma_sd;
        return ll - 0.5 * (db * db + da * da + ds * ds);
    }
};

// Multiplicative step adaptation towards ~0.4 acceptance, applied on windows
// of 100 proposals during burn-in only.
struct Adapter {
    double* step;
    std::size_t proposed = 0;
    std::size_t accepted = 0;

    void record(bool accept) {
        ++proposed;
        if (accept)
            ++accepted;
        if (proposed == 100) {
            double rate = static_cast<double>(accepted) / 100.0;
            if (rate > 0.45)
                *step *= 1.15;
            else if (rate < 0.35)
                *step /= 1.15;
            proposed = 0;
            accepted = 0;
        }
    }
};

} // namespace

ChangePointEstimate change_point_detect(std::span<const double> values,
                                        const CpdConfig& config) {
    const std::size_t n = values.size();
    if (n < 8)
        throw Error(Errc::SeriesTooShort, "change-point analysis needs at least 8 values");
    for (double v : values)
        if (!std::isfinite(v))
            throw Error(Errc::NonFiniteInput, "series contains a non-finite value");
    if (config.samples <= config.burn_in)
        throw Error(Errc::BadSpec, "samples must exceed burn_in");

    const double m = mean(values);
    const double sd = std::sqrt(sample_variance(values, m));

    ChangePointEstimate est;
    est.tau_posterior.assign(n, 0.0);
    if (sd == 0.0) {
        // a constant series carries no change information; report the agreed
        // degenerate convention instead of sampling a flat posterior
        est.degenerate = true;
        est.mu_before = m;
        est.mu_after = m;
        est.sigma = 0.0;
        est.strength = 0.0;
        est.changed = false;
        est.tau_point = 0;
        for (double& p : est.tau_posterior)
            p = 1.0 / static_cast<double>(n);
        return est;
    }

    PrefixStats stats(values);
    Posterior post{stats, n, m, 2.0 * sd, sd};
    Rng rng(config.seed);

    double mu_b = m, mu_a = m, sigma = sd;
    std::size_t tau = n / 2;
    double cur = post(mu_b, mu_a, sigma, tau);

    double step_mu_b = sd, step_mu_a = sd, step_sigma = sd;
    double step_tau = std::max<double>(1.0, static_cast<double>(n) / 20.0);
    Adapter adapt_mu_b{&step_mu_b}, adapt_mu_a{&step_mu_a}, adapt_sigma{&step_sigma},
        adapt_tau{&step_tau};

    const std::size_t kept = config.samples - config.burn_in;
    KahanSum sum_mu_b, sum_mu_a, sum_sigma, sum_tau;
    std::vector<std::uint64_t> tau_counts(n, 0);
    std::uint64_t acc_mu_b = 0, acc_mu_a = 0, acc_sigma = 0, acc_tau = 0;

    for (std::size_t iter = 0; iter < config.samples; ++iter) {
        const bool warm = iter < config.burn_in;

        auto metropolis = [&](double& param, double step, Adapter& adapter,
                              std::uint64_t& accepted_after) {
            double saved = param;
            param = saved + step * rng.normal();
            double prop = post(mu_b, mu_a, sigma, tau);
            bool accept = std::log(rng.uniform()) < prop - cur;
            if (accept)
                cur = prop;
            else
                param = saved;
            if (warm)
                adapter.record(accept);
            else if (accept)
                ++accepted_after;
        };

        metropolis(mu_b, step_mu_b, adapt_mu_b, acc_mu_b);
        metropolis(mu_a, step_mu_a, adapt_mu_a, acc_mu_a);
        metropolis(sigma, step_sigma, adapt_sigma, acc_sigma);

        {
            std::uint64_t width = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(step_tau));
            std::uint64_t jump = 1 + rng.below(width);
            bool up = rng.uniform() < 0.5;
            double prop_val = kNegInf;
            std::size_t prop_tau = tau;
            bool in_range = up ? (tau + jump <= n - 1) : (tau >= jump);
            if (in_range) {
                prop_tau = up ? tau + jump : tau - jump;
                prop_val = post(mu_b, mu_a, sigma, prop_tau);
            }
            bool accept = std::log(rng.uniform()) < prop_val - cur;
            if (accept) {
                tau = prop_tau;
                cur = prop_val;
            }
            if (warm)
                adapt_tau.record(accept);
            else if (accept)
                ++acc_tau;
        }

        if (!warm) {
            sum_mu_b.add(mu_b);
            sum_mu_a.add(mu_a);
            sum_sigma.add(sigma);
            sum_tau.add(static_cast<double>(tau));
            ++tau_counts[tau];
        }
    }

    const double dk = static_cast<double>(kept);
    est.mu_before = sum_mu_b.value() / dk;
    est.mu_after = sum_mu_a.value() / dk;
    est.sigma = sum_sigma.value() / dk;
    est.tau_point = static_cast<std::size_t>(std::llround(sum_tau.value() / dk));
    for (std::size_t i = 0; i < n; ++i)
        est.tau_posterior[i] = static_cast<double>(tau_counts[i]) / dk;
    est.strength = strength_of_change(est.mu_before, est.mu_after);
    est.changed = est.strength > config.strength_threshold;
    est.diagnostics.accept_mu_before = static_cast<double>(acc_mu_b) / dk;
    est.diagnostics.accept_mu_after = static_cast<double>(acc_mu_a) / dk;
    est.diagnostics.accept_sigma = static_cast<double>(acc_sigma) / dk;
    est.diagnostics.accept_tau = static_cast<double>(acc_tau) / dk;
    est.diagnostics.step_mu_before = step_mu_b;
    est.diagnostics.step_mu_after = step_mu_a;
    est.diagnostics.step_sigma = step_sigma;
    est.diagnostics.step_tau = step_tau;
    return est;
}

std::size_t tau_posterior_argmax(const ChangePointEstimate& est) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < est.tau_posterior.size(); ++i)
        if (est.tau_posterior[i] > est.tau_posterior[best])
            best = i;
    return best;
}

void write_tau_posterior_csv(std::ostream& out, const ChangePointEstimate& est) {
    out << "index,probability\n";
    char buf[40];
    for (std::size_t i = 0; i < est.tau_posterior.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", est.tau_posterior[i]);
        out << i << ',' << buf << '\n';
    }
}

std::string estimate_to_json(const ChangePointEstimate& est, const CpdConfig& config) {
    nlohmann::json j;
    j["tau_point"] = est.tau_point;
    j["tau_map"] = tau_posterior_argmax(est);
    j["mu_before"] = est.mu_before;
    j["mu_after"] = est.mu_after;
    j["sigma"] = est.sigma;
    j["strength_percent"] = est.strength;
    j["changed"] = est.changed;
    j["degenerate"] = est.degenerate;
    j["config"] = {{"samples", config.samples},
                   {"burn_in", config.burn_in},
                   {"strength_threshold", config.strength_threshold},
                   {"seed", config.seed}};
    j["diagnostics"] = {{"accept_mu_before", est.diagnostics.accept_mu_before},
                        {"accept_mu_after", est.diagnostics.accept_mu_after},
                        {"accept_sigma", est.diagnostics.accept_sigma},
                        {"accept_tau", est.diagnostics.accept_tau},
                        {"step_mu_before", est.diagnostics.step_mu_before},
                        {"step_mu_after", est.diagnostics.step_mu_after},
                        {"step_sigma", est.diagnostics.step_sigma},
                        {"step_tau", est.diagnostics.step_tau}};
    return j.dump(2);
}

} // namespace canids
