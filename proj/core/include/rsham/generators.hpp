#pragma once

#include <cstdint>

#include "rsham/digraph.hpp"

namespace rsham {

/// Extremal digraph on 3k vertices: X = {0, ..., 2k-2}, Y = {2k-1, ..., 3k-1},
/// arcs xy for x in X and y in X u Y, and yx for x in X, y in Y.
/// Minimum semi-degree is 2k-1 and there are no k disjoint directed
/// triangles (Y is independent and every triangle uses at most one Y vertex).
Digraph gen_extremal(std::size_t k);

/// Random digraph with minimum semi-degree at least ceil(delta_frac * n).
///
/// Each ordered pair is included independently with probability
/// delta_frac + margin, where the margin is three standard deviations of the
/// degree (capped at half the remaining headroom); vertices still short are
/// then repaired by adding arcs to (from) uniformly chosen non-neighbours.
/// delta_frac = 1 returns the complete digraph (semi-degree n - 1).
/// Otherwise throws Infeasible when ceil(delta_frac * n) > n - 1.
Digraph gen_random_semidegree(std::size_t n, double delta_frac, std::uint64_t seed);

/// Inclusion probability used by gen_random_semidegree before repair.
double random_semidegree_density(std::size_t n, double delta_frac);

/// ceil(delta_frac * n) with a small tolerance for floating-point products.
std::size_t required_semi_degree(std::size_t n, double delta_frac);

/// Erdos-Renyi style digraph: every ordered pair independently with prob p.
Digraph gen_random_density(std::size_t n, double p, std::uint64_t seed);

}  // namespace rsham
