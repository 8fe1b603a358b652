#include "doctest.h"

#include <cmath>
#include <functional>
#include <sstream>

#include "canids/errors.hpp"
#include "canids/numeric.hpp"
#include "canids/similarity.hpp"

using namespace canids;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::MalformedLine;
}

// independent naive implementations in extended precision, used as oracles
double naive_cosine(const std::vector<double>& x, const std::vector<double>& y) {
    long double dot = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += static_cast<long double>(x[i]) * y[i];
        sx += static_cast<long double>(x[i]) * x[i];
        sy += static_cast<long double>(y[i]) * y[i];
    }
    return static_cast<double>(dot / (sqrtl(sx) * sqrtl(sy)));
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return static_cast<double>(sxy / sqrtl(sxx * syy));
}

MessageSequenceGraph graph_of(const std::vector<std::string>& pids, std::size_t index = 0,
                              std::optional<Label> label = {}) {
    FrameWindow w;
    w.index = index;
    w.label = label;
    for (std::size_t i = 0; i < pids.size(); ++i) {
        CanFrame f;
        f.timestamp = static_cast<double>(i);
        f.channel = "can0";
        f.pid = pids[i];
        w.frames.push_back(std::move(f));
    }
    return compute_msg(w);
}

} // namespace

TEST_CASE("cosine similarity hand oracles") {
    std::vector<double> x{1, 0, 1}, y{0, 1, 1};
    CHECK(cosine_similarity(x, y) == 0.5); // 1 / (sqrt(2) * sqrt(2)) exactly
    CHECK(cosine_similarity(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_similarity(x, x) <= 1.0);
}

TEST_CASE("pearson correlation hand oracles") {
    CHECK(pearson_correlation(std::vector<double>{1, 0, 1}, std::vector<double>{0, 1, 1}) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pearson_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{10, 20, 30}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pearson_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) ==
          doctest::Approx(-1.0).epsilon(1e-15));
    std::vector<double> x{4, 8, 15, 16, 23, 42};
    CHECK(pearson_correlation(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pearson_correlation(x, x) <= 1.0);
}

TEST_CASE("both metrics match naive extended-precision oracles within 1e-12") {
    Rng rng(31337);
    double worst_cos = 0, worst_pear = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.below(19);
        std::vector<double> x(n), y(n);
        bool x_const = true, y_const = true;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.below(51));
            y[i] = static_cast<double>(rng.below(51));
            if (x[i] != x[0])
                x_const = false;
            if (y[i] != y[0])
                y_const = false;
        }
        bool x_zero = true, y_zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            x_zero = x_zero && x[i] == 0.0;
            y_zero = y_zero && y[i] == 0.0;
        }
        if (!x_zero && !y_zero)
            worst_cos = std::max(worst_cos,
                                 std::abs(cosine_similarity(x, y) - naive_cosine(x, y)));
        if (!x_const && !y_const)
            worst_pear = std::max(worst_pear,
                                  std::abs(pearson_correlation(x, y) - naive_pearson(x, y)));
    }
    CHECK(worst_cos <= 1e-12);
    CHECK(worst_pear <= 1e-12);
}

TEST_CASE("cosine is scale invariant, pearson is shift and scale invariant") {
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 3 + rng.below(17);
        std::vector<double> x(n), y(n), xs(n), xp(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 1.0 + static_cast<double>(rng.below(50));
            y[i] = static_cast<double>(rng.below(50));
            xs[i] = 4.0 * x[i];
            xp[i] = 2.0 + 3.0 * x[i];
        }
        if (y == std::vector<double>(n, y[0]))
            continue;
        CHECK(cosine_similarity(xs, y) ==
              doctest::Approx(cosine_similarity(x, y)).epsilon(1e-12));
        CHECK(pearson_correlation(xp, y) ==
              doctest::Approx(pearson_correlation(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("metric error conditions") {
    std::vector<double> x{1, 2}, longer{1, 2, 3}, zeros{0, 0}, flat{3, 3};
    CHECK(code_of([&] { cosine_similarity(x, longer); }) == Errc::LengthMismatch);
    CHECK(code_of([&] { cosine_similarity(x, zeros); }) == Errc::ZeroVector);
    CHECK(code_of([&] { cosine_similarity(zeros, x); }) == Errc::ZeroVector);
    CHECK(code_of([&] { cosine_similarity({}, {}); }) == Errc::ZeroVector);
    CHECK(code_of([&] { pearson_correlation(x, longer); }) == Errc::LengthMismatch);
    CHECK(code_of([&] { pearson_correlation(x, flat); }) == Errc::ConstantVector);
    CHECK(code_of([&] { pearson_correlation(flat, x); }) == Errc::ConstantVector);
    std::vector<double> one{1.0};
    CHECK(code_of([&] { pearson_correlation(one, one); }) == Errc::ConstantVector);
}

TEST_CASE("metric names round trip") {
    CHECK(metric_from_string("cosine") == Metric::cosine);
    CHECK(metric_from_string("pearson") == Metric::pearson);
    CHECK(std::string(to_string(Metric::cosine)) == "cosine");
    CHECK(code_of([] { metric_from_string("manhattan"); }) == Errc::BadSpec);
}

TEST_CASE("similarity_series compares consecutive graphs") {
    std::vector<MessageSequenceGraph> graphs{
        graph_of({"A", "B", "A", "B"}, 0, Label::benign),
        graph_of({"A", "B", "A", "B"}, 1, Label::benign),
        graph_of({"A", "C", "A", "C"}, 2, Label::injected)};
    SimilaritySeries s = similarity_series(graphs, Metric::cosine, 4);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.values[1] < 0.5); // disjoint heavy edges
    REQUIRE(s.labels.size() == 2);
    CHECK(s.labels[0] == Label::benign);
    CHECK(s.labels[1] == Label::injected); // either window injected taints the pair
    CHECK(s.window_size == 4);
}

TEST_CASE("a lone graph cannot form a series") {
    std::vector<MessageSequenceGraph> graphs{graph_of({"A", "B"})};
    CHECK(code_of([&] { similarity_series(graphs, Metric::cosine, 2); }) ==
          Errc::TooFewGraphs);
}

TEST_CASE("degenerate pearson pairs are recorded as 0.0 with a flag") {
    // both windows collapse to the single edge (A,A), so the aligned vectors
    // have length 1 — no correlation is defined
    std::vector<MessageSequenceGraph> graphs{graph_of({"A", "A", "A"}),
                                             graph_of({"A", "A", "A", "A"})};
    SimilaritySeries pear = similarity_series(graphs, Metric::pearson, 3);
    REQUIRE(pear.values.size() == 1);
    CHECK(pear.values[0] == 0.0);
    CHECK(pear.degenerate[0] == 1);
    CHECK_FALSE(pear.has_labels());

    // cosine has no such degeneracy on count vectors
    SimilaritySeries cos = similarity_series(graphs, Metric::cosine, 3);
    CHECK(cos.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cos.degenerate[0] == 0);
}

TEST_CASE("series CSV round trip is bit exact") {
    std::vector<MessageSequenceGraph> graphs{
        graph_of({"A", "B", "C"}, 0, Label::benign),
        graph_of({"A", "B", "B"}, 1, Label::injected),
        graph_of({"C", "B", "A"}, 2, Label::benign)};
    SimilaritySeries s = similarity_series(graphs, Metric::pearson, 3);
    std::ostringstream out;
    write_series_csv(out, s);
    std::istringstream in(out.str());
    SimilaritySeries r = read_series_csv(in);
    CHECK(r.metric == s.metric);
    REQUIRE(r.values.size() == s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(r.values[i] == s.values[i]); // %.17g survives the round trip exactly
    CHECK(r.labels == s.labels);
    CHECK(r.degenerate == s.degenerate);
}

TEST_CASE("series CSV rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        read_series_csv(in);
    };
    const std::string header = "pair_index,metric,value,label,degenerate_flag\n";
    CHECK(code_of([&] { parse(""); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse("wrong,header\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse(header + "0,pearson\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse(header + "0,manhattan,0.5,,0\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse(header + "0,pearson,zero,,0\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse(header + "0,pearson,0.5,2,0\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] { parse(header + "0,pearson,0.5,1,x\n"); }) == Errc::BadCsv);
    CHECK(code_of([&] {
              parse(header + "0,pearson,0.5,1,0\n1,cosine,0.5,1,0\n");
          }) == Errc::BadCsv);
    CHECK(code_of([&] {
              parse(header + "0,pearson,0.5,1,0\n1,pearson,0.5,,0\n");
          }) == Errc::BadCsv);
}

TEST_CASE("series SVG sketches the values") {
    std::vector<MessageSequenceGraph> graphs{graph_of({"A", "B", "A"}, 0, Label::benign),
                                             graph_of({"A", "B", "B"}, 1, Label::injected),
                                             graph_of({"B", "B", "A"}, 2, Label::benign)};
    SimilaritySeries s = similarity_series(graphs, Metric::cosine, 3);
    std::string svg = series_to_svg(s, 0.87);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // threshold rule
    std::string no_rule = series_to_svg(s);
    CHECK(no_rule.find("stroke-dasharray") == std::string::npos);
}
