#include "conflictsim/generators.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "conflictsim/errors.hpp"
#include "conflictsim/random.hpp"

namespace conflictsim {

namespace {

std::size_t triangle(std::size_t q) { return q * (q - 1) / 2; }

void append_clique(std::vector<Edge>& edges, NodeId first, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      edges.push_back({static_cast<NodeId>(first + i), static_cast<NodeId>(first + j)});
    }
  }
}

std::uint64_t pair_key(NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; }

}  // namespace

ConflictGraph clique_union(std::size_t cliques, std::size_t degree) {
  std::vector<std::size_t> sizes(cliques, degree + 1);
  return cliques_plus_isolated(sizes, 0);
}

ConflictGraph random_fixed_degree(std::size_t n, const Rational& degree, std::uint64_t seed) {
  if (degree < 0) throw ValidationError("average degree must be non-negative, got " + to_string(degree));
  Rational target = Rational(n) * degree / 2;
  if (!is_integer(target)) {
    throw ValidationError("n*d/2 = " + to_string(target) + " is not an integer edge count (n=" + std::to_string(n) +
                          ", d=" + to_string(degree) + ")");
  }
  const std::size_t all_pairs = n < 2 ? 0 : triangle(n);
  if (target > Rational(all_pairs)) {
    throw ValidationError("cannot place " + to_string(target) + " edges among " + std::to_string(n) +
                          " nodes (at most " + std::to_string(all_pairs) + ")");
  }
  const std::size_t edge_target = target.get_num().get_ui();

  // Above half density, draw the missing pairs instead and complement.
  const bool complement = edge_target > all_pairs / 2;
  const std::size_t draws = complement ? all_pairs - edge_target : edge_target;

  RandomStream rng(seed);
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(draws * 2);
  std::vector<Edge> drawn;
  drawn.reserve(draws);
  while (drawn.size() < draws) {
    auto u = static_cast<NodeId>(rng.below(n));
    auto v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (picked.insert(pair_key(u, v)).second) drawn.push_back({u, v});
  }

  if (!complement) return ConflictGraph::from_edge_list(n, drawn);

  std::vector<Edge> edges;
  edges.reserve(edge_target);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!picked.contains(pair_key(u, v))) edges.push_back({u, v});
    }
  }
  return ConflictGraph::from_edge_list(n, edges);
}

ConflictGraph cliques_plus_isolated(std::span<const std::size_t> clique_sizes, std::size_t isolated) {
  std::vector<Edge> edges;
  std::size_t next = 0;
  for (std::size_t size : clique_sizes) {
    if (size == 0) throw ValidationError("clique sizes must be at least 1");
    append_clique(edges, static_cast<NodeId>(next), size);
    next += size;
  }
  return ConflictGraph::from_edge_list(next + isolated, edges);
}

std::size_t CliqueMixture::node_count() const {
  return std::accumulate(clique_sizes.begin(), clique_sizes.end(), isolated);
}

std::string CliqueMixture::describe() const {
  std::string out;
  for (std::size_t i = 0; i < clique_sizes.size();) {
    std::size_t j = i;
    while (j < clique_sizes.size() && clique_sizes[j] == clique_sizes[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(clique_sizes[i]);
    if (j - i > 1) out += "x" + std::to_string(j - i);
    i = j;
  }
  if (out.empty()) out = "-";
  return out + "+" + std::to_string(isolated);
}

CliqueMixture solve_clique_mixture(std::size_t n, const Rational& degree, std::size_t min_clique_size) {
  Rational target = Rational(n) * degree / 2;
  if (degree < 0 || !is_integer(target)) {
    throw ValidationError("n*d/2 must be a non-negative integer (n=" + std::to_string(n) + ", d=" + to_string(degree) +
                          ")");
  }
  const std::size_t edges = target.get_num().get_ui();
  if (edges == 0) return {{}, n};

  for (std::size_t base = std::max<std::size_t>(2, min_clique_size); base <= n; ++base) {
    CliqueMixture mix;
    std::size_t left = edges;
    mix.clique_sizes.assign(left / triangle(base), base);
    left -= mix.clique_sizes.size() * triangle(base);
    while (left > 0) {
      std::size_t q = 2;
      while (triangle(q + 1) <= left) ++q;
      mix.clique_sizes.push_back(q);
      left -= triangle(q);
    }
    const std::size_t used = mix.node_count();
    if (used <= n) {
      mix.isolated = n - used;
      return mix;
    }
  }
  throw ValidationError("no cliques-plus-isolated mixture has n=" + std::to_string(n) + " and d=" + to_string(degree));
}

std::string GraphFamilySpec::family_name() const {
  struct Namer {
    std::string operator()(const CliqueUnionParams&) const { return "clique-union"; }
    std::string operator()(const RandomParams&) const { return "random"; }
    std::string operator()(const CliquesIsolatedParams&) const { return "cliques-isolated"; }
    std::string operator()(const ExplicitParams&) const { return "explicit-edge-list"; }
  };
  return std::visit(Namer{}, params);
}

ConflictGraph GraphFamilySpec::build() const {
  struct Builder {
    std::uint64_t seed;
    ConflictGraph operator()(const CliqueUnionParams& p) const { return clique_union(p.cliques, p.degree); }
    ConflictGraph operator()(const RandomParams& p) const { return random_fixed_degree(p.nodes, p.degree, seed); }
    ConflictGraph operator()(const CliquesIsolatedParams& p) const {
      return cliques_plus_isolated(p.clique_sizes, p.isolated);
    }
    ConflictGraph operator()(const ExplicitParams& p) const { return ConflictGraph::from_edge_list(p.nodes, p.edges); }
  };
  return std::visit(Builder{seed}, params);
}

}  // namespace conflictsim
