#pragma once

#include <span>
#include <string>
#include <vector>

namespace isle {

enum class Direction { maximize, minimize };

// Fitness of an individual. Either a scalar with an optimization direction,
// or a vector of extended nonnegative reals minimized componentwise (an
// explicit infinity marks unreachable components).
struct FitnessValue {
    Direction direction = Direction::maximize;
    double scalar = 0.0;
    std::vector<double> components;  // non-empty => vector-valued

    bool is_vector() const { return !components.empty(); }

    static FitnessValue maximize(double v) { return {Direction::maximize, v, {}}; }
    static FitnessValue minimize(double v) { return {Direction::minimize, v, {}}; }
    static FitnessValue distance_vector(std::vector<double> c) {
        return {Direction::minimize, 0.0, std::move(c)};
    }

    bool operator==(const FitnessValue&) const = default;
};

// a[i] <= b[i] for all i (inf <= inf holds). Lengths must match.
bool weakly_dominates(std::span<const double> a, std::span<const double> b);

// Offspring survival: not worse than the resident. Scalar: >= under maximize,
// <= under minimize. Vector: candidate weakly dominates the resident.
bool accept_offspring(const FitnessValue& current, const FitnessValue& candidate);

// Immigrant survival: strictly better than the resident. Vector: weak
// dominance plus strict improvement in at least one component.
bool accept_immigrant(const FitnessValue& current, const FitnessValue& candidate);

// Total preorder used to pick the single best individual for migration.
// Vector values compare by component sum with infinity mapped to a huge
// finite sentinel, so fewer unreachable components always wins.
bool better_for_migration(const FitnessValue& a, const FitnessValue& b);

bool migration_equivalent(const FitnessValue& a, const FitnessValue& b);

double migration_sum_key(const FitnessValue& f);

std::string to_string(const FitnessValue& f);

}  // namespace isle
