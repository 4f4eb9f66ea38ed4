#pragma once

#include <cstdint>
#include <string>

#include "isle/engine.hpp"

namespace isle {

// A permutation of 1..n stored at 0-based positions. The sorting problem
// maximizes a sortedness measure of the sequence (entries[0], ..., entries[n-1]).
struct Permutation {
    Genotype entries;

    std::size_t size() const { return entries.size(); }
    bool operator==(const Permutation&) const = default;
};

Permutation identity_permutation(std::uint32_t n);
bool is_valid_permutation(const Permutation& p);
Permutation random_permutation(std::uint32_t n, Rng& rng);  // unbiased shuffle

// Swap the entries at positions i and j (0-based, i != j).
Permutation exchange(const Permutation& p, std::size_t i, std::size_t j);

// Remove the entry at position i and reinsert it so it ends up at position j;
// everything in between shifts toward i. 0-based, i != j.
Permutation jump(const Permutation& p, std::size_t i, std::size_t j);

// Sortedness measures.
std::uint32_t inv(const Permutation& p);  // pairs in correct order, max n(n-1)/2
std::uint32_t ham(const Permutation& p);  // fixed points, max n (n-1 impossible)
std::uint32_t las(const Permutation& p);  // longest ascending subsequence, max n
std::uint32_t exc(const Permutation& p);  // minimum exchanges to sort, 0 iff sorted

// Interleaved permutation (n/2+1, 1, n/2+2, 2, ..., n, n/2); its inv deficit
// is quadratic yet no single exchange or jump gains more than a constant.
// n must be even and >= 4.
Permutation worst_inv_permutation(std::uint32_t n);

// Brute force over all ordered (i, j), i != j, and both operator kinds:
// the largest inv(q) - inv(p) a single elementary operation can achieve.
int max_single_op_inv_gain(const Permutation& p);

// One elementary operation: exchange or jump with probability 1/2 each,
// (i, j) uniform over ordered pairs with i != j.
Permutation elementary_sorting_op(const Permutation& p, Rng& rng);

// The full mutation: S ~ Poisson(1), then S + 1 elementary operations.
Permutation mutate_sorting(const Permutation& p, Rng& rng);

enum class SortMeasure { inv, ham, las, exc };

const char* to_string(SortMeasure m);
SortMeasure sort_measure_from_string(const std::string& name);

// Sorting as an engine problem. EXC runs as scalar minimization, the other
// measures as maximization.
class SortingProblem final : public ProblemDefinition {
public:
    SortingProblem(std::uint32_t n, SortMeasure measure,
                   MutationScheme scheme = MutationScheme::ea);

    Genotype sample_initial(Rng& rng) const override;
    Genotype mutate(const Genotype& g, Rng& rng) const override;
    FitnessValue fitness(const Genotype& g) const override;
    bool is_optimal_value(const FitnessValue& f) const override;

    std::uint32_t n() const { return n_; }
    SortMeasure measure() const { return measure_; }

private:
    std::uint32_t n_;
    SortMeasure measure_;
    MutationScheme scheme_;
    double optimal_value_;
};

}  // namespace isle
