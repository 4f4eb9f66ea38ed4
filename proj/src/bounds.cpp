#include "isle/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace isle {

namespace {
constexpr double kE = 2.718281828459045;
}

void validate_levels(const LevelProbabilities& levels) {
    if (levels.s.empty()) {
        throw std::invalid_argument("level probabilities: need at least one entry");
    }
    for (double s : levels.s) {
        if (!(s > 0.0 && s <= 1.0)) {
            throw std::invalid_argument("level probabilities: entries must lie in (0, 1]");
        }
    }
}

RoweBound rowe_inequality(double s, std::uint32_t mu) {
    if (!(s > 0.0 && s <= 1.0)) {
        throw std::invalid_argument("rowe_inequality: s must lie in (0, 1]");
    }
    if (mu == 0) {
        throw std::invalid_argument("rowe_inequality: mu must be positive");
    }
    const double lhs = 1.0 / (1.0 - std::pow(1.0 - s, static_cast<double>(mu)));
    const double rhs = 1.0 + 1.0 / (static_cast<double>(mu) * s);
    return {lhs, rhs};
}

namespace {

BoundReport make_report(TopologyKind kind, std::uint32_t mu, const LevelProbabilities& levels,
                        double spread) {
    validate_levels(levels);
    if (mu == 0) {
        throw std::invalid_argument("bound evaluation: mu must be positive");
    }
    double sequential = 0.0;
    for (double s : levels.s) {
        sequential += 1.0 / s;
    }
    sequential /= static_cast<double>(mu);
    return {kind, mu, spread, sequential, spread + sequential};
}

}  // namespace

BoundReport bound_ring(const LevelProbabilities& levels, std::uint32_t mu) {
    double spread = 0.0;
    for (double s : levels.s) {
        spread += 1.0 / std::sqrt(s);
    }
    return make_report(TopologyKind::ring, mu, levels, 2.0 * spread);
}

namespace {

// libm cbrt is not correctly rounded (cbrt(1/8) misses 1/2 by one ulp on
// glibc); one Newton step restores exact dyadic roots.
double cube_root(double x) {
    double y = std::cbrt(x);
    y -= (y * y * y - x) / (3.0 * y * y);
    return y;
}

}  // namespace

BoundReport bound_torus(const LevelProbabilities& levels, std::uint32_t mu) {
    double spread = 0.0;
    for (double s : levels.s) {
        spread += 1.0 / cube_root(s);
    }
    return make_report(TopologyKind::torus, mu, levels, 3.0 * spread);
}

bool torus_bound_applicable(std::uint32_t mu) {
    if (mu < 4) {
        return false;
    }
    const auto root = static_cast<std::uint32_t>(std::lround(std::sqrt(double(mu))));
    return root * root == mu;
}

BoundReport bound_complete(const LevelProbabilities& levels, std::uint32_t mu) {
    const double level_count = static_cast<double>(levels.s.size()) + 1.0;
    return make_report(TopologyKind::complete, mu, levels, level_count);
}

double harmonic(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("harmonic: n must be >= 1");
    }
    double sum = 0.0;
    // Smallest terms first for accuracy.
    for (std::uint64_t i = n; i >= 1; --i) {
        sum += 1.0 / static_cast<double>(i);
    }
    return sum;
}

double sum_inverse_sqrt_bound(std::uint64_t m) {
    return 2.0 * std::sqrt(static_cast<double>(m));
}

double sum_inverse_cbrt_bound(std::uint64_t m) {
    return 1.5 * std::pow(static_cast<double>(m), 2.0 / 3.0);
}

LevelProbabilities sorting_levels_inv(std::uint32_t n) {
    if (n < 2) {
        throw std::invalid_argument("sorting_levels_inv: n must be >= 2");
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    LevelProbabilities levels;
    levels.s.reserve(pairs);
    // Level with deficit i (i pairs out of order) escapes with probability
    // >= 3i/(2e*n(n-1)); stored from the lowest fitness level upward.
    for (std::uint64_t i = pairs; i >= 1; --i) {
        levels.s.push_back(3.0 * static_cast<double>(i) /
                           (2.0 * kE * static_cast<double>(n) * (n - 1)));
    }
    return levels;
}

LevelProbabilities sorting_levels_scalar(std::uint32_t n, SortMeasure measure) {
    if (n < 2) {
        throw std::invalid_argument("sorting_levels_scalar: n must be >= 2");
    }
    if (measure == SortMeasure::inv) {
        throw std::invalid_argument("sorting_levels_scalar: use sorting_levels_inv for inv");
    }
    const double alpha = measure == SortMeasure::las ? 1.0 / (2.0 * kE) : 1.0 / kE;
    LevelProbabilities levels;
    levels.s.reserve(n);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (std::uint32_t i = 1; i <= n; ++i) {
        levels.s.push_back(alpha * static_cast<double>(i) / n2);
    }
    return levels;
}

std::vector<LevelProbabilities> sssp_levels(const LayerProfile& profile, std::uint32_t n,
                                            std::uint32_t m, SsspOperator op) {
    if (profile.layer_sizes.empty() || profile.layer_sizes.size() != profile.depth) {
        throw std::invalid_argument("sssp_levels: malformed layer profile");
    }
    const double denom = op == SsspOperator::vertex
                             ? kE * static_cast<double>(n) * static_cast<double>(n)
                             : kE * static_cast<double>(m);
    std::vector<LevelProbabilities> layers;
    layers.reserve(profile.layer_sizes.size());
    for (std::uint32_t size : profile.layer_sizes) {
        if (size == 0) {
            throw std::invalid_argument("sssp_levels: empty layer");
        }
        LevelProbabilities levels;
        levels.s.reserve(size);
        for (std::uint32_t i = 1; i <= size; ++i) {
            levels.s.push_back(static_cast<double>(i) / denom);
        }
        layers.push_back(std::move(levels));
    }
    return layers;
}

double rw_hitting_point_bound(std::uint64_t k, std::uint64_t t) {
    if (k == 0 || t == 0) {
        throw std::invalid_argument("rw_hitting_point_bound: k and t must be >= 1");
    }
    const double kd = static_cast<double>(k);
    const double td = static_cast<double>(t);
    if (t > 2 * k) {
        return 2.0 * std::exp(-kd * kd / td);
    }
    return 2.0 * std::pow(kE / 4.0, kd);
}

double rw_hitting_cumulative_bound(std::uint64_t k, std::uint64_t t) {
    if (k == 0 || t == 0) {
        throw std::invalid_argument("rw_hitting_cumulative_bound: k and t must be >= 1");
    }
    const double kd = static_cast<double>(k);
    const double td = static_cast<double>(t);
    if (t <= 2 * k) {
        return 2.0 * td * std::pow(kE / 4.0, kd);
    }
    return 4.0 * kd * std::pow(kE / 4.0, kd) + 2.0 * td * std::exp(-kd * kd / td);
}

namespace {
double clip01(double x) { return x > 1.0 ? 1.0 : x; }
}

double rw_hitting_point_bound_clipped(std::uint64_t k, std::uint64_t t) {
    return clip01(rw_hitting_point_bound(k, t));
}

double rw_hitting_cumulative_bound_clipped(std::uint64_t k, std::uint64_t t) {
    return clip01(rw_hitting_cumulative_bound(k, t));
}

std::vector<std::uint64_t> rw_hitting_simulate(std::uint32_t k, std::uint32_t trials, Rng& rng) {
    if (k == 0 || trials == 0) {
        throw std::invalid_argument("rw_hitting_simulate: k and trials must be >= 1");
    }
    std::vector<std::uint64_t> samples;
    samples.reserve(trials);
    const std::int64_t target = static_cast<std::int64_t>(k);
    for (std::uint32_t r = 0; r < trials; ++r) {
        std::int64_t state = 0;
        std::uint64_t steps = 0;
        while (state != target && state != -target) {
            state += rng.coin() ? 1 : -1;
            ++steps;
        }
        samples.push_back(steps);
    }
    return samples;
}

const char* to_string(MigrationRegime regime) {
    switch (regime) {
        case MigrationRegime::frequent: return "frequent";
        case MigrationRegime::rare: return "rare";
        case MigrationRegime::neither: return "neither";
    }
    return "?";
}

MigrationRegime classify_migration_regime(std::uint64_t m, std::optional<std::uint64_t> tau,
                                          std::uint64_t diam, std::uint64_t mu,
                                          bool symmetric_operator) {
    if (m == 0 || mu == 0 || (tau && *tau == 0)) {
        throw std::invalid_argument("classify_migration_regime: arguments must be positive");
    }
    const double md = static_cast<double>(m);
    const double frequent_cap = symmetric_operator ? md : md * md;
    const double rare_floor = symmetric_operator ? md * md : md * md * md;
    if (tau) {
        const double product =
            static_cast<double>(*tau) * static_cast<double>(diam) * static_cast<double>(mu);
        if (product <= frequent_cap) {
            return MigrationRegime::frequent;
        }
        if (static_cast<double>(*tau) >= rare_floor) {
            return MigrationRegime::rare;
        }
        return MigrationRegime::neither;
    }
    return MigrationRegime::rare;
}

}  // namespace isle
