#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "conflictsim/rational.hpp"

namespace conflictsim {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;

  bool operator==(const Edge&) const = default;
};

// Static computation/conflict graph: nodes are pending tasks, edges are
// pairwise conflicts. Simple, undirected, with dense ids in [0, n).
// Adjacency is stored as CSR with each neighbor list sorted ascending.
// Immutable once built, so it can be shared read-only between workers.
class ConflictGraph {
 public:
  ConflictGraph() : offsets_{0} {}

  // Builds the graph on n nodes with the given edges. Pairs may come in
  // either orientation; duplicates collapse. Throws ValidationError naming
  // the pair on an out-of-range endpoint or a self-loop.
  static ConflictGraph from_edge_list(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const;

  // All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool operator==(const ConflictGraph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

// Exact 2|E|/n. Throws ValidationError for the empty graph.
Rational average_degree(const ConflictGraph& g);

struct NodeRemoval {
  ConflictGraph graph;
  // Indexed by old id; empty for removed nodes.
  std::vector<std::optional<NodeId>> new_id;
};

// Induced subgraph on the nodes not in `victims`, ids re-densified in their
// original relative order.
NodeRemoval remove_nodes(const ConflictGraph& g, std::span<const NodeId> victims);

// Text format: a header line "n e", then e lines "u v" with u < v.
ConflictGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const ConflictGraph& g);

}  // namespace conflictsim
