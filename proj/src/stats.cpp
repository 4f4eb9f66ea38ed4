#include "isle/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isle {

double median_of(std::vector<double> samples) {
    return quantile_of(std::move(samples), 0.5);
}

double quantile_of(std::vector<double> samples, double q) {
    if (samples.empty()) {
        throw std::invalid_argument("quantile_of: empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double pos = q * static_cast<double>(samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= samples.size()) {
        return samples.back();
    }
    return samples[lo] * (1.0 - frac) + samples[lo + 1] * frac;
}

SummaryStats summarize(std::span<const double> samples, std::size_t cap_hits) {
    SummaryStats stats;
    stats.cap_hits = cap_hits;
    stats.count = samples.size();
    if (samples.empty()) {
        return stats;
    }
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    stats.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples) {
            ss += (x - stats.mean) * (x - stats.mean);
        }
        stats.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
        stats.ci95_half_width = 1.96 * stats.stddev / std::sqrt(double(samples.size()));
    }
    stats.median = median_of({samples.begin(), samples.end()});
    return stats;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            break;
        }
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("incomplete_beta: x must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log(1.0 - x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_cdf(double t, double df) {
    if (df <= 0.0) {
        throw std::invalid_argument("student_cdf: df must be positive");
    }
    const double x = df / (df + t * t);
    const double p = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
    return t >= 0.0 ? 1.0 - p : p;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("welch_t_test: need at least 2 samples per group");
    }
    const SummaryStats sa = summarize(a, 0);
    const SummaryStats sb = summarize(b, 0);
    const double va = sa.stddev * sa.stddev / static_cast<double>(a.size());
    const double vb = sb.stddev * sb.stddev / static_cast<double>(b.size());
    WelchResult result;
    if (va + vb == 0.0) {
        // Degenerate: identical constant samples.
        result.t = sa.mean == sb.mean ? 0.0 : (sa.mean > sb.mean ? 1e300 : -1e300);
        result.df = static_cast<double>(a.size() + b.size() - 2);
        result.p_greater = sa.mean > sb.mean ? 0.0 : 1.0;
        return result;
    }
    result.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
    result.df = (va + vb) * (va + vb) /
                (va * va / static_cast<double>(a.size() - 1) +
                 vb * vb / static_cast<double>(b.size() - 1));
    result.p_greater = 1.0 - student_cdf(result.t, result.df);
    return result;
}

}  // namespace isle
