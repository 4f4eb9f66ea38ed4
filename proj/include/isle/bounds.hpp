#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isle/rng.hpp"
#include "isle/shortest_paths.hpp"
#include "isle/sorting.hpp"
#include "isle/topology.hpp"

namespace isle {

// Per-level improvement probabilities s_1..s_{m-1} for a fitness-level
// partition with m levels; every entry must lie in (0, 1].
struct LevelProbabilities {
    std::vector<double> s;
};

void validate_levels(const LevelProbabilities& levels);

// Expected-parallel-time upper bound, split into the information-spread term
// and the sequential term (1/mu) * sum 1/s_i. value is exactly their sum.
struct BoundReport {
    TopologyKind kind;
    std::uint32_t mu;
    double spread_term;
    double sequential_term;
    double value;
};

// Both sides of 1/(1-(1-s)^mu) <= 1 + 1/(mu*s); s in (0,1], mu >= 1.
struct RoweBound {
    double lhs;
    double rhs;
};
RoweBound rowe_inequality(double s, std::uint32_t mu);

// Unidirectional ring (or any strongly connected topology):
//   2 * sum s_i^(-1/2) + (1/mu) * sum s_i^(-1)
BoundReport bound_ring(const LevelProbabilities& levels, std::uint32_t mu);

// Torus with sides at least sqrt(mu) x sqrt(mu):
//   3 * sum s_i^(-1/3) + (1/mu) * sum s_i^(-1)
// The formula itself only needs mu; use torus_bound_applicable to check that
// a concrete island count fits the square-sides requirement.
BoundReport bound_torus(const LevelProbabilities& levels, std::uint32_t mu);
bool torus_bound_applicable(std::uint32_t mu);  // perfect square >= 4

// Complete topology: m + (1/mu) * sum s_i^(-1), with m = level count.
BoundReport bound_complete(const LevelProbabilities& levels, std::uint32_t mu);

// n-th harmonic sum.
double harmonic(std::uint64_t n);

// Integral estimates used by the closed forms:
//   sum_{i=1}^{m} i^(-1/2) <= 2*sqrt(m)
//   sum_{i=1}^{m} i^(-1/3) <= 1.5*m^(2/3)
double sum_inverse_sqrt_bound(std::uint64_t m);
double sum_inverse_cbrt_bound(std::uint64_t m);

// Sortedness level probabilities: C(n,2)+1 levels for inv, a fitness deficit
// of i pairs escapes with probability at least 3i/(2e*n(n-1)). Entries are
// stored in level order (largest deficit first).
LevelProbabilities sorting_levels_inv(std::uint32_t n);

// ham/las/exc: n+1 levels with s_i = alpha*i/n^2, alpha = 1/e for ham and
// exc, 1/(2e) for las.
LevelProbabilities sorting_levels_scalar(std::uint32_t n, SortMeasure measure);

// Per-layer probabilities for the SSSP layer argument: i unoptimized
// vertices on a layer escape with probability i/(e*n^2) (vertex operator) or
// i/(e*m) (edge operator).
std::vector<LevelProbabilities> sssp_levels(const LayerProfile& profile, std::uint32_t n,
                                            std::uint32_t m, SsspOperator op);

// Tail bounds for the first hitting time T(k) of {-k, +k} by the fair random
// walk on the integers started at 0:
//   point:      Pr(T(k) = t) <= 2(e/4)^k        if t <= 2k
//               Pr(T(k) = t) <= 2e^(-k^2/t)     if t >  2k
//   cumulative: Pr(T(k) <= t) <= 2t(e/4)^k                  if t <= 2k
//               Pr(T(k) <= t) <= 4k(e/4)^k + 2t*e^(-k^2/t)  if t >  2k
// Raw values may exceed 1 (vacuous); the clipped variants cap at 1.
double rw_hitting_point_bound(std::uint64_t k, std::uint64_t t);
double rw_hitting_cumulative_bound(std::uint64_t k, std::uint64_t t);
double rw_hitting_point_bound_clipped(std::uint64_t k, std::uint64_t t);
double rw_hitting_cumulative_bound_clipped(std::uint64_t k, std::uint64_t t);

// Empirical companion: simulate the fair walk until |state| = k, trials times.
std::vector<std::uint64_t> rw_hitting_simulate(std::uint32_t k, std::uint32_t trials, Rng& rng);

// Migration-frequency label for island-model runs on the two-cycle Eulerian
// instance, with all hidden constants taken as 1 (a labeling aid, not a
// guarantee). Frequent: tau*diam*mu <= m^2 (unrestricted) or <= m (symmetric);
// rare: tau >= m^3 (unrestricted) or tau >= m^2 (symmetric). tau = nullopt
// means no migration at all, which is always rare. If both conditions hold
// (possible only for degenerate mu = 1, diam = 0 setups) frequent wins.
enum class MigrationRegime { frequent, rare, neither };

const char* to_string(MigrationRegime regime);

MigrationRegime classify_migration_regime(std::uint64_t m, std::optional<std::uint64_t> tau,
                                          std::uint64_t diam, std::uint64_t mu,
                                          bool symmetric_operator);

}  // namespace isle
