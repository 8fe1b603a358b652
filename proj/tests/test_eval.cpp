#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "canids/errors.hpp"
#include "canids/eval.hpp"
#include "canids/numeric.hpp"

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

} // namespace

// reference values computed with an independent statistics package
TEST_CASE("welch test matches reference values") {
    std::vector<double> a = {1, 2, 3};
    std::vector<double> b = {1, 2, 3, 100};
    WelchResult r = welch_t_test(a, b);
    CHECK(r.t == doctest::Approx(-0.999583766891437).epsilon(1e-9));
    CHECK(r.df == doctest::Approx(3.0033305562645).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.391100459600955).epsilon(1e-9));

    std::vector<double> hi = {0.95, 0.96, 0.94, 0.97, 0.95, 0.96};
    std::vector<double> lo = {0.80, 0.82, 0.79, 0.81, 0.80};
    WelchResult s = welch_t_test(hi, lo);
    CHECK(s.t == doctest::Approx(22.6783656967757).epsilon(1e-9));
    CHECK(s.df == doctest::Approx(8.32031984948261).epsilon(1e-9));
    CHECK(s.p_value / 8.94271292464268e-09 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("student t tail probabilities match reference values") {
    CHECK(student_t_two_sided_p(2.0, 10.0) ==
          doctest::Approx(0.0733880347707404).epsilon(1e-9));
    CHECK(student_t_two_sided_p(0.5, 3.0) ==
          doctest::Approx(0.651447964848151).epsilon(1e-9));
    CHECK(student_t_two_sided_p(11.0, 17.3) / 3.11518605275989e-09 ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(student_t_two_sided_p(7.7, 200.0) / 6.14797774794636e-13 ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(student_t_two_sided_p(0.0, 5.0) == 1.0);
    CHECK(student_t_two_sided_p(-2.0, 10.0) == student_t_two_sided_p(2.0, 10.0));
    // monotone in |t|
    CHECK(student_t_two_sided_p(3.0, 10.0) < student_t_two_sided_p(2.0, 10.0));
}

TEST_CASE("welch test is symmetric and location-shift consistent") {
    Rng rng(31);
    std::vector<double> a, b;
    for (int i = 0; i < 40; ++i)
        a.push_back(rng.normal(0.9, 0.05));
    for (int i = 0; i < 25; ++i)
        b.push_back(rng.normal(0.7, 0.08));

    WelchResult ab = welch_t_test(a, b);
    WelchResult ba = welch_t_test(b, a);
    CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
    CHECK(ab.df == doctest::Approx(ba.df).epsilon(1e-12));
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));

    // shifting both samples by the same constant changes nothing material
    std::vector<double> a_shift = a, b_shift = b;
    for (double& v : a_shift)
        v += 5.0;
    for (double& v : b_shift)
        v += 5.0;
    WelchResult shifted = welch_t_test(a_shift, b_shift);
    CHECK(shifted.t == doctest::Approx(ab.t).epsilon(1e-9));
    CHECK(shifted.p_value == doctest::Approx(ab.p_value).epsilon(1e-9));

    // permuting observations within a sample changes nothing at all
    std::vector<double> a_perm = a;
    std::shuffle(a_perm.begin(), a_perm.end(), std::mt19937{7});
    WelchResult permuted = welch_t_test(a_perm, b);
    CHECK(permuted.t == doctest::Approx(ab.t).epsilon(1e-12));
    CHECK(permuted.p_value == doctest::Approx(ab.p_value).epsilon(1e-12));
}

TEST_CASE("extreme separation drives the p-value through the floor") {
    Rng rng(8);
    std::vector<double> hi, lo;
    for (int i = 0; i < 200; ++i) {
        hi.push_back(rng.normal(0.95, 0.005));
        lo.push_back(rng.normal(0.50, 0.005));
    }
    WelchResult r = welch_t_test(hi, lo);
    CHECK(r.t > 100.0);
    CHECK(r.p_value < 1e-100);
    CHECK(r.p_value >= 0.0);
}

TEST_CASE("degenerate welch inputs are rejected") {
    std::vector<double> one = {1.0};
    std::vector<double> ok = {1.0, 2.0, 3.0};
    std::vector<double> flat = {2.0, 2.0, 2.0};
    std::vector<double> nan_in = {1.0, std::nan(""), 3.0};
    CHECK(code_of([&] { welch_t_test(one, ok); }) == Errc::TooFewSamples);
    CHECK(code_of([&] { welch_t_test(ok, one); }) == Errc::TooFewSamples);
    CHECK(code_of([&] { welch_t_test(flat, ok); }) == Errc::ZeroVariance);
    CHECK(code_of([&] { welch_t_test(ok, nan_in); }) == Errc::NonFiniteInput);
    CHECK(code_of([&] { student_t_two_sided_p(1.0, 0.0); }) == Errc::NonFiniteInput);
    CHECK(code_of([&] { student_t_two_sided_p(std::nan(""), 3.0); }) ==
          Errc::NonFiniteInput);
}

TEST_CASE("scoring builds the confusion matrix with injected as positive") {
    // 97 true positives, 3 false positives, no negatives at all
    std::vector<std::uint8_t> verdicts(100, 1);
    std::vector<Label> labels(100, Label::injected);
    labels[10] = labels[50] = labels[90] = Label::benign;
    DetectionReport r = score(verdicts, labels, Detector::threshold, Metric::pearson);
    CHECK(r.tp == 97);
    CHECK(r.fp == 3);
    CHECK(r.tn == 0);
    CHECK(r.fn == 0);
    CHECK(r.accuracy == doctest::Approx(0.97));
    CHECK(r.fpr == doctest::Approx(1.0));
    CHECK(r.fpr_defined);
}

TEST_CASE("no negatives in ground truth leaves the false-positive rate undefined") {
    std::vector<std::uint8_t> verdicts = {1, 0, 1};
    std::vector<Label> labels(3, Label::injected);
    DetectionReport r = score(verdicts, labels, Detector::lstm, Metric::cosine,
                              {{"note", "unit"}});
    CHECK(r.tp == 2);
    CHECK(r.fn == 1);
    CHECK(r.accuracy == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(r.fpr_defined);
    CHECK(std::isnan(r.fpr));

    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    CHECK(j.at("fpr").is_null());
    CHECK(j.at("fpr_defined") == false);
    CHECK(j.at("detector") == "lstm");
    CHECK(j.at("metric") == "cosine");
    CHECK(j.at("tp") == 2);
    CHECK(j.at("parameters").at("note") == "unit");
}

TEST_CASE("a fully scored report serializes every field") {
    std::vector<std::uint8_t> verdicts = {1, 0, 0, 1};
    std::vector<Label> labels = {Label::injected, Label::benign, Label::injected,
                                 Label::benign};
    DetectionReport r = score(verdicts, labels, Detector::change_point, Metric::pearson,
                              {{"threshold", "0.87"}});
    CHECK(r.tp == 1);
    CHECK(r.fp == 1);
    CHECK(r.tn == 1);
    CHECK(r.fn == 1);
    CHECK(r.accuracy == doctest::Approx(0.5));
    CHECK(r.fpr == doctest::Approx(0.5));
    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    CHECK(j.at("detector") == "change_point");
    CHECK(j.at("accuracy") == doctest::Approx(0.5));
    CHECK(j.at("fpr") == doctest::Approx(0.5));
}

TEST_CASE("scoring rejects mismatched spans and handles empty input") {
    std::vector<std::uint8_t> verdicts = {1, 0};
    std::vector<Label> labels = {Label::injected};
    CHECK(code_of([&] { score(verdicts, labels, Detector::threshold, Metric::pearson); }) ==
          Errc::LengthMismatch);

    DetectionReport r = score(std::vector<std::uint8_t>{}, std::vector<Label>{},
                              Detector::threshold, Metric::pearson);
    CHECK(r.accuracy == 0.0);
    CHECK_FALSE(r.fpr_defined);
}

TEST_CASE("detector names round-trip to strings") {
    CHECK(std::string(to_string(Detector::threshold)) == "threshold");
    CHECK(std::string(to_string(Detector::change_point)) == "change_point");
    CHECK(std::string(to_string(Detector::lstm)) == "lstm");
}
