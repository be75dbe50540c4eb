#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "conflictsim/graph.hpp"
#include "conflictsim/rational.hpp"

namespace conflictsim {

// K^n_d: s disjoint cliques of size d+1, so n = s(d+1) and every node has
// degree d. Clique c owns ids [c(d+1), (c+1)(d+1)).
ConflictGraph clique_union(std::size_t cliques, std::size_t degree);

// n nodes and exactly n*d/2 distinct edges drawn uniformly without
// replacement from all unordered pairs. Deterministic for a fixed seed.
// Throws ValidationError when n*d/2 is not an integer or exceeds n(n-1)/2.
ConflictGraph random_fixed_degree(std::size_t n, const Rational& degree, std::uint64_t seed);

// Disjoint union of the listed cliques followed by `isolated` degree-0 nodes.
ConflictGraph cliques_plus_isolated(std::span<const std::size_t> clique_sizes, std::size_t isolated);

// A cliques-plus-isolated composition hitting a target node count and exact
// average degree.
struct CliqueMixture {
  std::vector<std::size_t> clique_sizes;
  std::size_t isolated = 0;

  std::size_t node_count() const;
  // "18x104,13,4,3,2+106" style summary, used in CSV headers.
  std::string describe() const;
};

// Finds a mixture with n nodes and average degree d: as many cliques of
// the base size as fit the edge budget, the remaining edges covered greedily
// by the largest cliques that fit, the rest isolated. The base size starts
// at `min_clique_size` (at least 2) and grows until the nodes fit in n.
// Throws ValidationError when no base size up to n works.
CliqueMixture solve_clique_mixture(std::size_t n, const Rational& degree, std::size_t min_clique_size);

struct CliqueUnionParams {
  std::size_t cliques = 1;
  std::size_t degree = 0;
};

struct RandomParams {
  std::size_t nodes = 0;
  Rational degree;
};

struct CliquesIsolatedParams {
  std::vector<std::size_t> clique_sizes;
  std::size_t isolated = 0;
};

struct ExplicitParams {
  std::size_t nodes = 0;
  std::vector<Edge> edges;
};

// Names one of the supported graph families together with its parameters.
struct GraphFamilySpec {
  std::variant<CliqueUnionParams, RandomParams, CliquesIsolatedParams, ExplicitParams> params;
  std::uint64_t seed = 0;

  std::string family_name() const;
  ConflictGraph build() const;
};

}  // namespace conflictsim
