#pragma once

#include <cstdint>
#include <vector>

#include "canids/similarity.hpp"

namespace canids {

// Verdicts of the fixed-threshold detector: a pair is flagged as an attack
// exactly when its similarity value is strictly below the threshold.
struct ThresholdVerdicts {
    double threshold = 0.0;
    std::vector<std::uint8_t> attack; // 1 = flagged
    // confusion counts, filled only when the series carries labels
    bool has_confusion = false;
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

ThresholdVerdicts threshold_detect(const SimilaritySeries& series, double threshold);

struct CalibrationResult {
    double threshold = 0.0;
    double accuracy = 0.0;
};

// Pick the threshold maximizing accuracy on a labeled series. Candidates are
// the midpoints between consecutive distinct observed values plus the fixed
// grid {0.00, 0.01, ..., 1.00}; ties go to the larger threshold. Requires
// labels with both classes present (SingleClass otherwise).
CalibrationResult calibrate_threshold(const SimilaritySeries& series);

} // namespace canids
