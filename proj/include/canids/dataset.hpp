#pragma once

#include <cstdint>
#include <vector>

#include "canids/similarity.hpp"

namespace canids {

// One training sample for the sequence classifier: `lookback` consecutive
// similarity values, labeled by the last value in the slice.
struct SequenceSample {
    std::vector<double> values;
    std::uint8_t label = 0; // 1 = injected
};

struct LabeledSequenceDataset {
    std::vector<SequenceSample> samples; // chronological
    std::size_t train_count = 0;         // samples [0, train_count) train, rest test
    Metric metric = Metric::pearson;
    std::size_t lookback = 0;
};

// Concatenate a benign series and an injected series, slide a window of
// `lookback` values over the concatenation with stride 1, and label each
// sample by its final value. A value inherits its series label when present;
// otherwise everything from `benign` counts as benign and everything from
// `injected` as injected. The chronological train/test split keeps the first
// floor(train_fraction * samples) samples for training.
// Throws MetricMismatch when the two series disagree on metric or window
// size, TooShort when the concatenation has fewer than lookback values.
LabeledSequenceDataset build_constructed_dataset(const SimilaritySeries& benign,
                                                 const SimilaritySeries& injected,
                                                 std::size_t lookback,
                                                 double train_fraction);

} // namespace canids
