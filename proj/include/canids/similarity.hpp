#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "canids/frame.hpp"
#include "canids/sequence_graph.hpp"

namespace canids {

enum class Metric : std::uint8_t { cosine, pearson };

const char* to_string(Metric m);
Metric metric_from_string(const std::string& name); // throws BadSpec

// Cosine similarity of two equally sized vectors. On non-negative input the
// result lies in [0, 1]. Throws LengthMismatch / ZeroVector.
double cosine_similarity(std::span<const double> x, std::span<const double> y);

// Pearson correlation coefficient in [-1, 1].
// Throws LengthMismatch / ConstantVector.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

// Similarity of consecutive window graphs. values[i] compares graph i with
// graph i+1, so a series over W windows has W-1 entries.
struct SimilaritySeries {
    Metric metric = Metric::pearson;
    std::size_t window_size = 0;
    std::vector<double> values;
    // 1 where the pair was degenerate for the metric (constant vectors under
    // pearson); the value is forced to 0.0 there.
    std::vector<std::uint8_t> degenerate;
    // pair ground truth: injected iff either window of the pair is injected.
    // Empty when the windows carried no labels.
    std::vector<Label> labels;

    bool has_labels() const { return !labels.empty(); }
};

// Throws TooFewGraphs for fewer than two graphs. window_size is carried as
// metadata only.
SimilaritySeries similarity_series(std::span<const MessageSequenceGraph> graphs,
                                   Metric metric, std::size_t window_size);

// CSV with header: pair_index, metric, value, label, degenerate_flag
void write_series_csv(std::ostream& out, const SimilaritySeries& series);
void write_series_csv_file(const std::string& path, const SimilaritySeries& series);
SimilaritySeries read_series_csv(std::istream& in); // throws BadCsv
SimilaritySeries read_series_csv_file(const std::string& path);

// Minimal standalone SVG line chart of the series (no external assets).
// A finite threshold is drawn as a dashed horizontal rule.
std::string series_to_svg(const SimilaritySeries& series,
                          double threshold = std::numeric_limits<double>::quiet_NaN());

} // namespace canids
