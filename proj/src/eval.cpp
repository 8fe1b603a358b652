#include "canids/eval.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

#include "canids/errors.hpp"
#include "canids/numeric.hpp"

namespace canids {

const char* to_string(Detector d) {
    switch (d) {
    case Detector::threshold: return "threshold";
    case Detector::change_point: return "change_point";
    case Detector::lstm: return "lstm";
    }
    return "unknown";
}

DetectionReport score(std::span<const std::uint8_t> verdicts,
                      std::span<const Label> labels, Detector detector,
                      Metric metric, std::map<std::string, std::string> parameters) {
    if (verdicts.size() != labels.size())
        throw Error(Errc::LengthMismatch, "verdicts and labels differ in length");
    DetectionReport report;
    report.detector = detector;
    report.metric = metric;
    report.parameters = std::move(parameters);
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        bool flagged = verdicts[i] != 0;
        bool truth = labels[i] == Label::injected;
        if (flagged && truth)
            ++report.tp;
        else if (flagged && !truth)
            ++report.fp;
        else if (!flagged && !truth)
            ++report.tn;
        else
            ++report.fn;
    }
    const std::uint64_t n = report.tp + report.fp + report.tn + report.fn;
    report.accuracy =
        n ? static_cast<double>(report.tp + report.tn) / static_cast<double>(n) : 0.0;
    const std::uint64_t negatives = report.fp + report.tn;
    if (negatives == 0) {
        report.fpr = std::numeric_limits<double>::quiet_NaN();
        report.fpr_defined = false;
    } else {
        report.fpr = static_cast<double>(report.fp) / static_cast<double>(negatives);
        report.fpr_defined = true;
    }
    return report;
}

std::string report_to_json(const DetectionReport& report) {
    nlohmann::json j;
    j["detector"] = to_string(report.detector);
    j["metric"] = to_string(report.metric);
    j["tp"] = report.tp;
    j["fp"] = report.fp;
    j["tn"] = report.tn;
    j["fn"] = report.fn;
    j["accuracy"] = report.accuracy;
    if (report.fpr_defined)
        j["fpr"] = report.fpr;
    else
        j["fpr"] = nullptr;
    j["fpr_defined"] = report.fpr_defined;
    j["parameters"] = report.parameters;
    return j.dump(2);
}

namespace {

// continued fraction for the regularized incomplete beta (modified Lentz)
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double ln_pre = a * std::log(x) + b * std::log1p(-x) -
                          (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double pre = std::exp(ln_pre);
    if (x < (a + 1.0) / (a + b + 2.0))
        return pre * beta_cf(a, b, x) / a;
    return 1.0 - pre * beta_cf(b, a, 1.0 - x) / b;
}

} // namespace

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t) || !std::isfinite(df) || df <= 0.0)
        throw Error(Errc::NonFiniteInput, "t statistic and df must be finite, df > 0");
    if (t == 0.0)
        return 1.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw Error(Errc::TooFewSamples, "each sample needs at least 2 observations");
    for (double v : a)
        if (!std::isfinite(v))
            throw Error(Errc::NonFiniteInput, "sample contains a non-finite value");
    for (double v : b)
        if (!std::isfinite(v))
            throw Error(Errc::NonFiniteInput, "sample contains a non-finite value");
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    if (va == 0.0 || vb == 0.0)
        throw Error(Errc::ZeroVariance, "a sample has zero variance");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double sea = va / na;
    const double seb = vb / nb;
    WelchResult result;
    result.t = (ma - mb) / std::sqrt(sea + seb);
    result.df = (sea + seb) * (sea + seb) /
                (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    result.p_value = student_t_two_sided_p(result.t, result.df);
    return result;
}

} // namespace canids
