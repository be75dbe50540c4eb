#include "conflictsim/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "conflictsim/errors.hpp"

namespace conflictsim {

namespace {

std::string pair_text(std::size_t u, std::size_t v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

ConflictGraph ConflictGraph::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  if (n > std::size_t{UINT32_MAX}) throw ValidationError("node count too large: " + std::to_string(n));

  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ValidationError("edge " + pair_text(e.u, e.v) + " has an endpoint outside [0, " + std::to_string(n) +
                            ")");
    }
    if (e.u == e.v) throw ValidationError("edge " + pair_text(e.u, e.v) + " is a self-loop");
    normalized.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(normalized.begin(), normalized.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  ConflictGraph g;
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : normalized) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.adjacency_.resize(2 * normalized.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling both directions in this order
  // leaves every neighbor list sorted.
  for (const Edge& e : normalized) g.adjacency_[cursor[e.v]++] = e.u;
  for (const Edge& e : normalized) g.adjacency_[cursor[e.u]++] = e.v;
  return g;
}

bool ConflictGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> ConflictGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Rational average_degree(const ConflictGraph& g) {
  if (g.node_count() == 0) throw ValidationError("average degree of the empty graph is undefined");
  Rational d(2 * g.edge_count(), g.node_count());
  d.canonicalize();
  return d;
}

NodeRemoval remove_nodes(const ConflictGraph& g, std::span<const NodeId> victims) {
  const std::size_t n = g.node_count();
  std::vector<bool> removed(n, false);
  for (NodeId v : victims) {
    if (v >= n) throw ValidationError("cannot remove node " + std::to_string(v) + ": graph has " + std::to_string(n));
    removed[v] = true;
  }

  NodeRemoval result;
  result.new_id.resize(n);
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (!removed[v]) result.new_id[v] = next++;
  }

  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (result.new_id[e.u] && result.new_id[e.v]) kept.push_back({*result.new_id[e.u], *result.new_id[e.v]});
  }
  result.graph = ConflictGraph::from_edge_list(next, kept);
  return result;
}

ConflictGraph read_graph(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return;
    }
    throw ValidationError(std::string("graph file truncated: expected ") + what);
  };

  next_line("header 'n e'");
  std::istringstream header(line);
  long long n = -1;
  long long e = -1;
  if (!(header >> n >> e) || n < 0 || e < 0) throw ValidationError("bad graph header: '" + line + "'");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(e));
  for (long long i = 0; i < e; ++i) {
    next_line("edge line 'u v'");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) throw ValidationError("bad edge line: '" + line + "'");
    if (u >= v) throw ValidationError("edge line must have u < v: '" + line + "'");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    if (u >= n || v >= n) {
      throw ValidationError("edge " + pair_text(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) +
                            " has an endpoint outside [0, " + std::to_string(n) + ")");
    }
  }
  auto g = ConflictGraph::from_edge_list(static_cast<std::size_t>(n), edges);
  if (g.edge_count() != static_cast<std::size_t>(e)) throw ValidationError("graph file contains duplicate edges");
  return g;
}

void write_graph(std::ostream& out, const ConflictGraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace conflictsim
