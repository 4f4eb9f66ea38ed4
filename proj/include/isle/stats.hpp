#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace isle {

// Aggregate over the uncapped parallel times of one experiment cell. Capped
// runs never enter mean/median; they are counted separately.
struct SummaryStats {
    std::size_t count = 0;        // uncapped samples
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;          // sample standard deviation (n-1)
    double ci95_half_width = 0.0; // normal approximation
    std::size_t cap_hits = 0;
};

SummaryStats summarize(std::span<const double> samples, std::size_t cap_hits);

double median_of(std::vector<double> samples);
double quantile_of(std::vector<double> samples, double q);  // linear interpolation

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with df degrees of freedom.
double student_cdf(double t, double df);

// Welch's unequal-variance t-test. p_greater is the one-sided p-value for
// the alternative mean(a) > mean(b).
struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_greater = 1.0;
};

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace isle
