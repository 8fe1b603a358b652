#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "canids/frame.hpp"
#include "canids/similarity.hpp"

namespace canids {

enum class Detector : std::uint8_t { threshold, change_point, lstm };

const char* to_string(Detector d);

// Confusion-matrix summary of a verdict sequence against ground truth.
// Positive class = injected/attack.
struct DetectionReport {
    Detector detector = Detector::threshold;
    Metric metric = Metric::pearson;
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0;
    double fpr = 0.0;         // NaN when no negatives exist
    bool fpr_defined = false; // false exactly when fp + tn == 0
    std::map<std::string, std::string> parameters; // echoed run settings
};

// Throws LengthMismatch when the two spans disagree in size.
DetectionReport score(std::span<const std::uint8_t> verdicts,
                      std::span<const Label> labels, Detector detector,
                      Metric metric,
                      std::map<std::string, std::string> parameters = {});

std::string report_to_json(const DetectionReport& report);

// Welch's unequal-variance t-test, two-sided.
struct WelchResult {
    double t = 0.0;
    double df = 0.0;      // Welch-Satterthwaite degrees of freedom
    double p_value = 1.0;
};

// Requires >= 2 observations per sample (TooFewSamples) and nonzero variance
// in each sample (ZeroVariance).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Two-sided p-value of Student's t at `t` with `df` degrees of freedom,
// via the regularized incomplete beta function. Good to ~1e-12 relative.
double student_t_two_sided_p(double t, double df);

} // namespace canids
