#include "canids/dataset.hpp"

#include <cmath>

#include "canids/errors.hpp"

namespace canids {

LabeledSequenceDataset build_constructed_dataset(const SimilaritySeries& benign,
                                                 const SimilaritySeries& injected,
                                                 std::size_t lookback,
                                                 double train_fraction) {
    if (benign.metric != injected.metric)
        throw Error(Errc::MetricMismatch, "series computed with different metrics");
    if (benign.window_size != injected.window_size)
        throw Error(Errc::MetricMismatch, "series computed with different window sizes");
    if (lookback < 1)
        throw Error(Errc::BadSpec, "lookback must be at least 1");
    if (train_fraction < 0.0 || train_fraction > 1.0)
        throw Error(Errc::BadSpec, "train_fraction must lie in [0, 1]");

    std::vector<double> values;
    std::vector<std::uint8_t> labels;
    values.reserve(benign.values.size() + injected.values.size());
    labels.reserve(values.capacity());
    for (std::size_t i = 0; i < benign.values.size(); ++i) {
        values.push_back(benign.values[i]);
        labels.push_back(benign.has_labels() && benign.labels[i] == Label::injected ? 1 : 0);
    }
    for (std::size_t i = 0; i < injected.values.size(); ++i) {
        values.push_back(injected.values[i]);
        labels.push_back(!injected.has_labels() ||
                                 injected.labels[i] == Label::injected
                             ? 1
                             : 0);
    }

    if (values.size() < lookback)
        throw Error(Errc::TooShort, "concatenated series shorter than the lookback window");

    LabeledSequenceDataset dataset;
    dataset.metric = benign.metric;
    dataset.lookback = lookback;
    dataset.samples.reserve(values.size() - lookback + 1);
    for (std::size_t start = 0; start + lookback <= values.size(); ++start) {
        SequenceSample sample;
        sample.values.assign(values.begin() + static_cast<std::ptrdiff_t>(start),
                             values.begin() + static_cast<std::ptrdiff_t>(start + lookback));
        sample.label = labels[start + lookback - 1];
        dataset.samples.push_back(std::move(sample));
    }
    dataset.train_count = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(dataset.samples.size())));
    return dataset;
}

} // namespace canids
