#include "canids/similarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "canids/errors.hpp"
#include "canids/numeric.hpp"
#include "canids/sequence_graph.hpp"

namespace canids {

const char* to_string(Metric metric) {
    return metric == Metric::cosine ? "cosine" : "pearson";
}

Metric metric_from_string(const std::string& name) {
    if (name == "cosine")
        return Metric::cosine;
    if (name == "pearson")
        return Metric::pearson;
    throw Error(Errc::BadSpec, "unknown metric '" + name + "' (expected cosine or pearson)");
}

double cosine_similarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error(Errc::LengthMismatch, "vectors differ in length");
    if (x.empty())
        throw Error(Errc::ZeroVector, "empty vectors have no direction");
    KahanSum dot, sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot.add(x[i] * y[i]);
        sx.add(x[i] * x[i]);
        sy.add(y[i] * y[i]);
    }
    double nx = sx.value();
    double ny = sy.value();
    if (nx == 0.0 || ny == 0.0)
        throw Error(Errc::ZeroVector, "cosine similarity is undefined for a zero vector");
    double value = dot.value() / std::sqrt(nx * ny);
    // counts are non-negative, so the true value lives in [0, 1]; clamp the rounding fuzz
    return std::clamp(value, 0.0, 1.0);
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error(Errc::LengthMismatch, "vectors differ in length");
    if (x.size() < 2)
        throw Error(Errc::ConstantVector, "correlation needs at least 2 components");
    double mx = mean(x);
    double my = mean(y);
    KahanSum sxy, sxx, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    double vx = sxx.value();
    double vy = syy.value();
    if (vx == 0.0 || vy == 0.0)
        throw Error(Errc::ConstantVector, "correlation is undefined for a constant vector");
    double value = sxy.value() / std::sqrt(vx * vy);
    return std::clamp(value, -1.0, 1.0);
}

SimilaritySeries similarity_series(std::span<const MessageSequenceGraph> graphs,
                                   Metric metric, std::size_t window_size) {
    if (graphs.size() < 2)
        throw Error(Errc::TooFewGraphs, "need at least 2 graphs to compare neighbours");
    SimilaritySeries series;
    series.metric = metric;
    series.window_size = window_size;
    series.values.reserve(graphs.size() - 1);
    series.degenerate.reserve(graphs.size() - 1);
    bool any_labels = false;
    for (const auto& g : graphs)
        if (g.label.has_value())
            any_labels = true;
    if (any_labels)
        series.labels.reserve(graphs.size() - 1);
    for (std::size_t i = 0; i + 1 < graphs.size(); ++i) {
        auto [x, y] = edge_vectors(graphs[i], graphs[i + 1]);
        double value = 0.0;
        std::uint8_t degenerate = 0;
        if (metric == Metric::cosine) {
            value = cosine_similarity(x, y); // count vectors are never all-zero
        } else {
            try {
                value = pearson_correlation(x, y);
            } catch (const Error& e) {
                if (e.code() != Errc::ConstantVector)
                    throw;
                // a window pair whose union collapses to one edge (or identical
                // constant profiles) carries no correlation signal; record 0
                value = 0.0;
                degenerate = 1;
            }
        }
        series.values.push_back(value);
        series.degenerate.push_back(degenerate);
        if (any_labels) {
            Label pair_label = Label::benign;
            if ((graphs[i].label && *graphs[i].label == Label::injected) ||
                (graphs[i + 1].label && *graphs[i + 1].label == Label::injected))
                pair_label = Label::injected;
            series.labels.push_back(pair_label);
        }
    }
    return series;
}

void write_series_csv(std::ostream& out, const SimilaritySeries& series) {
    out << "pair_index,metric,value,label,degenerate_flag\n";
    char buf[40];
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
        out << i << ',' << to_string(series.metric) << ',' << buf << ',';
        if (series.has_labels())
            out << (series.labels[i] == Label::injected ? '1' : '0');
        out << ',' << static_cast<int>(series.degenerate[i]) << '\n';
    }
}

void write_series_csv_file(const std::string& path, const SimilaritySeries& series) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    write_series_csv(out, series);
    if (!out)
        throw Error(Errc::IoFailure, "failed writing " + path);
}

SimilaritySeries read_series_csv(std::istream& in) {
    SimilaritySeries series;
    series.window_size = 0;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    bool metric_set = false;
    bool labels_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty())
            continue;
        if (!saw_header) {
            if (line != "pair_index,metric,value,label,degenerate_flag")
                throw Error(Errc::BadCsv, "unexpected similarity CSV header", line_no);
            saw_header = true;
            continue;
        }
        std::array<std::string, 5> field;
        std::size_t start = 0, idx = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (idx >= field.size())
                    throw Error(Errc::BadCsv, "too many columns", line_no);
                field[idx++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (idx != field.size())
            throw Error(Errc::BadCsv, "expected 5 columns", line_no);
        Metric metric;
        try {
            metric = metric_from_string(field[1]);
        } catch (const Error&) {
            throw Error(Errc::BadCsv, "unknown metric '" + field[1] + "'", line_no);
        }
        if (!metric_set) {
            series.metric = metric;
            metric_set = true;
        } else if (metric != series.metric) {
            throw Error(Errc::BadCsv, "mixed metrics in one series", line_no);
        }
        try {
            series.values.push_back(std::stod(field[2]));
        } catch (const std::exception&) {
            throw Error(Errc::BadCsv, "bad value column", line_no);
        }
        if (!field[3].empty()) {
            if (field[3] != "0" && field[3] != "1")
                throw Error(Errc::BadCsv, "label column must be empty, 0 or 1", line_no);
            series.labels.push_back(field[3] == "1" ? Label::injected : Label::benign);
            labels_seen = true;
        } else if (labels_seen) {
            throw Error(Errc::BadCsv, "label column present on some rows only", line_no);
        }
        if (field[4] != "0" && field[4] != "1")
            throw Error(Errc::BadCsv, "degenerate_flag column must be 0 or 1", line_no);
        series.degenerate.push_back(field[4] == "1" ? 1 : 0);
    }
    if (!saw_header)
        throw Error(Errc::BadCsv, "empty similarity CSV");
    if (labels_seen && series.labels.size() != series.values.size())
        throw Error(Errc::BadCsv, "label column present on some rows only");
    return series;
}

SimilaritySeries read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot open " + path);
    return read_series_csv(in);
}

std::string series_to_svg(const SimilaritySeries& series, double threshold) {
    const int width = 960, height = 320, pad = 40;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    double lo = 0.0, hi = 1.0;
    for (double v : series.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo)
        hi = lo + 1.0;
    auto sx = [&](std::size_t i) {
        std::size_t n = std::max<std::size_t>(series.values.size(), 2);
        return pad + (width - 2.0 * pad) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    auto sy = [&](double v) {
        return height - pad - (height - 2.0 * pad) * (v - lo) / (hi - lo);
    };
    out << "<line x1=\"" << pad << "\" y1=\"" << height - pad << "\" x2=\"" << width - pad
        << "\" y2=\"" << height - pad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad
        << "\" y2=\"" << height - pad << "\" stroke=\"black\"/>\n";
    if (std::isfinite(threshold) && threshold >= lo && threshold <= hi)
        out << "<line x1=\"" << pad << "\" y1=\"" << sy(threshold) << "\" x2=\"" << width - pad
            << "\" y2=\"" << sy(threshold) << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << sx(i) << ',' << sy(series.values[i]) << ' ';
    out << "\"/>\n";
    if (series.has_labels()) {
        for (std::size_t i = 0; i < series.values.size(); ++i)
            if (series.labels[i] == Label::injected)
                out << "<circle cx=\"" << sx(i) << "\" cy=\"" << sy(series.values[i])
                    << "\" r=\"2.2\" fill=\"orange\"/>\n";
    }
    out << "<text x=\"" << pad << "\" y=\"" << pad - 12 << "\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << to_string(series.metric)
        << " similarity of consecutive windows (window=" << series.window_size << ")</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace canids
