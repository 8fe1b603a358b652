#include "canids/threshold.hpp"

#include <algorithm>
#include <set>

#include "canids/errors.hpp"

namespace canids {

ThresholdVerdicts threshold_detect(const SimilaritySeries& series, double threshold) {
    ThresholdVerdicts verdicts;
    verdicts.threshold = threshold;
    verdicts.attack.reserve(series.values.size());
    for (double v : series.values)
        verdicts.attack.push_back(v < threshold ? 1 : 0);
    if (series.has_labels()) {
        verdicts.has_confusion = true;
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            bool flagged = verdicts.attack[i] != 0;
            bool truth = series.labels[i] == Label::injected;
            if (flagged && truth)
                ++verdicts.tp;
            else if (flagged && !truth)
                ++verdicts.fp;
            else if (!flagged && !truth)
                ++verdicts.tn;
            else
                ++verdicts.fn;
        }
    }
    return verdicts;
}

CalibrationResult calibrate_threshold(const SimilaritySeries& series) {
    if (!series.has_labels())
        throw Error(Errc::SingleClass, "calibration needs a labeled series");
    bool any_pos = false, any_neg = false;
    for (Label l : series.labels)
        (l == Label::injected ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg)
        throw Error(Errc::SingleClass, "calibration needs both classes in the labels");

    std::set<double> candidates;
    for (int i = 0; i <= 100; ++i)
        candidates.insert(i / 100.0);
    std::vector<double> sorted(series.values.begin(), series.values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        candidates.insert(sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0);

    CalibrationResult best;
    best.threshold = 0.0;
    best.accuracy = -1.0;
    const double n = static_cast<double>(series.values.size());
    for (double cand : candidates) {
        std::uint64_t correct = 0;
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            bool flagged = series.values[i] < cand;
            bool truth = series.labels[i] == Label::injected;
            if (flagged == truth)
                ++correct;
        }
        double accuracy = static_cast<double>(correct) / n;
        // candidates iterate in increasing order, so >= keeps the largest tied one
        if (accuracy >= best.accuracy) {
            best.accuracy = accuracy;
            best.threshold = cand;
        }
    }
    return best;
}

} // namespace canids
