#pragma once

#include <cstddef>

#include "conflictsim/rational.hpp"

namespace conflictsim {

// Closed-form bounds on the conflict ratio. The K^n_d family (s = n/(d+1)
// cliques of size d+1) is the worst case among graphs with the same node and
// edge counts, so its exact committed count bounds every other graph.
//
// Exact forms use rationals. The large-n approximations are doubles.

// s = n/(d+1): expected size of a greedy maximal independent set is at least
// this for any graph with n nodes and average degree d.
Rational turan_lower_bound(std::size_t n, const Rational& d);

// Expected committed count on K^n_d with m launched nodes:
//   s * (1 - prod_{i=1}^{m} (n-d-i)/(n+1-i)).
// The product is the probability a given clique is not hit; it truncates to
// zero once m > n-d-1. Requires (d+1) | n and 1 <= m <= n.
Rational worst_case_es(std::size_t n, std::size_t d, std::size_t m);

// 1 - (n/(m(d+1))) * (1 - prod_{i=1}^{m} (n-d-i)/(n+1-i)): the upper bound on
// r(m) for any graph with n nodes and integer average degree d. Unlike
// worst_case_es, (d+1) need not divide n; the formula is evaluated with a
// fractional s. Requires d+1 <= n and 1 <= m <= n.
Rational worst_case_ratio(std::size_t n, std::size_t d, std::size_t m);

// Probability that a fixed (d+1)-clique is missed by a uniform m-subset of n
// nodes, written as the m-term product above.
Rational clique_miss_probability(std::size_t n, std::size_t d, std::size_t m);

// 1 - n/(m(d+1)) * (1 - (1 - m/n)^(d+1)).
double approx_ratio(std::size_t n, double d, std::size_t m);

// With m = alpha * s: 1 - (1/alpha)(1 - (1 - alpha/(d+1))^(d+1)).
// Requires 0 < alpha <= d+1.
double alpha_ratio_bound(double alpha, double d);

// d -> infinity relaxation: 1 - (1/alpha)(1 - e^-alpha). Dominates the
// finite form for every d.
double alpha_ratio_bound_limit(double alpha);

// Slope of r at m = 1: d/(2(n-1)). Requires n >= 2.
Rational initial_derivative(std::size_t n, const Rational& d);

// floor(n/(2(d+1))), at least 2. Launching this many keeps the conflict
// ratio at or below alpha_ratio_bound_limit(1/2) ~ 21.3%.
std::size_t smart_initial_m(std::size_t n, const Rational& d);

}  // namespace conflictsim
