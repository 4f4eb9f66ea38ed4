#include "isle/sorting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace isle {

Permutation identity_permutation(std::uint32_t n) {
    Permutation p;
    p.entries.resize(n);
    std::iota(p.entries.begin(), p.entries.end(), 1);
    return p;
}

bool is_valid_permutation(const Permutation& p) {
    if (p.entries.size() < 2) {
        return false;
    }
    std::vector<bool> seen(p.entries.size(), false);
    for (std::int32_t v : p.entries) {
        if (v < 1 || static_cast<std::size_t>(v) > p.entries.size() || seen[v - 1]) {
            return false;
        }
        seen[v - 1] = true;
    }
    return true;
}

Permutation random_permutation(std::uint32_t n, Rng& rng) {
    Permutation p = identity_permutation(n);
    for (std::uint32_t i = n; i > 1; --i) {
        const std::uint64_t j = rng.below(i);
        std::swap(p.entries[i - 1], p.entries[j]);
    }
    return p;
}

namespace {

void check_positions(const Permutation& p, std::size_t i, std::size_t j, const char* op) {
    if (i >= p.size() || j >= p.size()) {
        throw std::invalid_argument(std::string(op) + ": position out of range");
    }
    if (i == j) {
        throw std::invalid_argument(std::string(op) + ": positions must differ");
    }
}

}  // namespace

Permutation exchange(const Permutation& p, std::size_t i, std::size_t j) {
    check_positions(p, i, j, "exchange");
    Permutation q = p;
    std::swap(q.entries[i], q.entries[j]);
    return q;
}

Permutation jump(const Permutation& p, std::size_t i, std::size_t j) {
    check_positions(p, i, j, "jump");
    Permutation q = p;
    auto begin = q.entries.begin();
    if (i < j) {
        std::rotate(begin + i, begin + i + 1, begin + j + 1);
    } else {
        std::rotate(begin + j, begin + i, begin + i + 1);
    }
    return q;
}

std::uint32_t inv(const Permutation& p) {
    const std::size_t n = p.size();
    std::uint32_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p.entries[i] < p.entries[j]) {
                ++count;
            }
        }
    }
    return count;
}

std::uint32_t ham(const Permutation& p) {
    std::uint32_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.entries[i] == static_cast<std::int32_t>(i + 1)) {
            ++count;
        }
    }
    return count;
}

std::uint32_t las(const Permutation& p) {
    // Patience sorting; the quadratic DP serves as the test oracle.
    std::vector<std::int32_t> tails;
    for (std::int32_t v : p.entries) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end()) {
            tails.push_back(v);
        } else {
            *it = v;
        }
    }
    return static_cast<std::uint32_t>(tails.size());
}

std::uint32_t exc(const Permutation& p) {
    // n minus the number of cycles of the permutation.
    const std::size_t n = p.size();
    std::vector<bool> seen(n, false);
    std::uint32_t cycles = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) {
            continue;
        }
        ++cycles;
        std::size_t k = i;
        while (!seen[k]) {
            seen[k] = true;
            k = static_cast<std::size_t>(p.entries[k] - 1);
        }
    }
    return static_cast<std::uint32_t>(n - cycles);
}

Permutation worst_inv_permutation(std::uint32_t n) {
    if (n % 2 != 0 || n < 4) {
        throw std::invalid_argument("worst_inv_permutation: n must be even and >= 4");
    }
    Permutation p;
    p.entries.reserve(n);
    for (std::uint32_t k = 1; k <= n / 2; ++k) {
        p.entries.push_back(static_cast<std::int32_t>(n / 2 + k));
        p.entries.push_back(static_cast<std::int32_t>(k));
    }
    return p;
}

int max_single_op_inv_gain(const Permutation& p) {
    const int base = static_cast<int>(inv(p));
    const std::size_t n = p.size();
    int best = std::numeric_limits<int>::min();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            best = std::max(best, static_cast<int>(inv(exchange(p, i, j))) - base);
            best = std::max(best, static_cast<int>(inv(jump(p, i, j))) - base);
        }
    }
    return best;
}

Permutation elementary_sorting_op(const Permutation& p, Rng& rng) {
    const std::size_t n = p.size();
    const bool use_jump = rng.coin();
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) {
        ++j;
    }
    return use_jump ? jump(p, i, j) : exchange(p, i, j);
}

Permutation mutate_sorting(const Permutation& p, Rng& rng) {
    const unsigned ops = poisson1_sample(rng) + 1;
    Permutation q = p;
    for (unsigned k = 0; k < ops; ++k) {
        q = elementary_sorting_op(q, rng);
    }
    return q;
}

const char* to_string(SortMeasure m) {
    switch (m) {
        case SortMeasure::inv: return "inv";
        case SortMeasure::ham: return "ham";
        case SortMeasure::las: return "las";
        case SortMeasure::exc: return "exc";
    }
    return "?";
}

SortMeasure sort_measure_from_string(const std::string& name) {
    if (name == "inv") return SortMeasure::inv;
    if (name == "ham") return SortMeasure::ham;
    if (name == "las") return SortMeasure::las;
    if (name == "exc") return SortMeasure::exc;
    throw std::invalid_argument("unknown sortedness measure: " + name);
}

SortingProblem::SortingProblem(std::uint32_t n, SortMeasure measure, MutationScheme scheme)
    : n_(n), measure_(measure), scheme_(scheme) {
    if (n < 2) {
        throw std::invalid_argument("SortingProblem: n must be >= 2");
    }
    switch (measure) {
        case SortMeasure::inv: optimal_value_ = 0.5 * n * (n - 1); break;
        case SortMeasure::ham: optimal_value_ = n; break;
        case SortMeasure::las: optimal_value_ = n; break;
        case SortMeasure::exc: optimal_value_ = 0.0; break;
    }
}

Genotype SortingProblem::sample_initial(Rng& rng) const {
    return random_permutation(n_, rng).entries;
}

Genotype SortingProblem::mutate(const Genotype& g, Rng& rng) const {
    Permutation p{g};
    return (scheme_ == MutationScheme::rls ? elementary_sorting_op(p, rng)
                                           : mutate_sorting(p, rng))
        .entries;
}

FitnessValue SortingProblem::fitness(const Genotype& g) const {
    const Permutation p{g};
    switch (measure_) {
        case SortMeasure::inv: return FitnessValue::maximize(inv(p));
        case SortMeasure::ham: return FitnessValue::maximize(ham(p));
        case SortMeasure::las: return FitnessValue::maximize(las(p));
        case SortMeasure::exc: return FitnessValue::minimize(exc(p));
    }
    throw std::logic_error("unreachable");
}

bool SortingProblem::is_optimal_value(const FitnessValue& f) const {
    return f.scalar == optimal_value_;
}

}  // namespace isle
