#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace canids {

// Neumaier-compensated accumulator. Plain += drifts once vectors get long;
// the detectors promise oracle agreement to 1e-12 up to ~1e5 elements, so
// every statistical sum in the library goes through this.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double compensated_sum(std::span<const double> xs);
double mean(std::span<const double> xs);
// Two-pass sample variance (ddof = 1).
double sample_variance(std::span<const double> xs, double mean_value);

// Deterministic RNG used everywhere randomness is needed. All draw
// algorithms are spelled out here (rather than std::*_distribution) so a
// seed produces the same stream on any standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // unbiased uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = engine_();
            r = x % n;
        } while (x - r > std::uint64_t(0) - n);
        return r;
    }

    // standard normal via Box-Muller, spare value cached
    double normal();
    double normal(double mu, double sd) { return mu + sd * normal(); }

    double exponential(double mean_value) {
        return -mean_value * std::log1p(-uniform());
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace canids
