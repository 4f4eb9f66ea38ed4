#include "isle/fitness.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace isle {

namespace {

// Stand-in for an infinite component inside sum keys. Large enough that one
// unreachable component outweighs any finite sum a desk-scale instance can
// produce, small enough that sums of them stay finite.
constexpr double kInfSentinel = 1e150;

}  // namespace

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("weakly_dominates: length mismatch");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        // IEEE semantics already give inf <= inf.
        if (!(a[i] <= b[i])) {
            return false;
        }
    }
    return true;
}

bool accept_offspring(const FitnessValue& current, const FitnessValue& candidate) {
    if (current.is_vector() || candidate.is_vector()) {
        return weakly_dominates(candidate.components, current.components);
    }
    return current.direction == Direction::maximize ? candidate.scalar >= current.scalar
                                                    : candidate.scalar <= current.scalar;
}

bool accept_immigrant(const FitnessValue& current, const FitnessValue& candidate) {
    if (current.is_vector() || candidate.is_vector()) {
        return weakly_dominates(candidate.components, current.components) &&
               candidate.components != current.components;
    }
    return current.direction == Direction::maximize ? candidate.scalar > current.scalar
                                                    : candidate.scalar < current.scalar;
}

double migration_sum_key(const FitnessValue& f) {
    double sum = 0.0;
    for (double c : f.components) {
        sum += std::isinf(c) ? kInfSentinel : c;
    }
    return sum;
}

bool better_for_migration(const FitnessValue& a, const FitnessValue& b) {
    if (a.is_vector() || b.is_vector()) {
        return migration_sum_key(a) < migration_sum_key(b);
    }
    return a.direction == Direction::maximize ? a.scalar > b.scalar : a.scalar < b.scalar;
}

bool migration_equivalent(const FitnessValue& a, const FitnessValue& b) {
    return !better_for_migration(a, b) && !better_for_migration(b, a);
}

std::string to_string(const FitnessValue& f) {
    std::ostringstream out;
    if (f.is_vector()) {
        out << "(";
        for (std::size_t i = 0; i < f.components.size(); ++i) {
            if (i > 0) out << ",";
            if (std::isinf(f.components[i])) {
                out << "inf";
            } else {
                out << f.components[i];
            }
        }
        out << ")";
    } else {
        out << f.scalar << (f.direction == Direction::maximize ? " (max)" : " (min)");
    }
    return out.str();
}

}  // namespace isle
