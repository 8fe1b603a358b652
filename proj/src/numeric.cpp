#include "canids/numeric.hpp"

namespace canids {

double compensated_sum(std::span<const double> xs) {
    KahanSum acc;
    for (double x : xs)
        acc.add(x);
    return acc.value();
}

double mean(std::span<const double> xs) {
    if (xs.empty())
        return 0.0;
    return compensated_sum(xs) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs, double mean_value) {
    if (xs.size() < 2)
        return 0.0;
    KahanSum acc;
    for (double x : xs) {
        double d = x - mean_value;
        acc.add(d * d);
    }
    return acc.value() / static_cast<double>(xs.size() - 1);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 is kept away from 0 so the log stays finite.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

} // namespace canids
