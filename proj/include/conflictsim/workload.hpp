#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "conflictsim/controller.hpp"
#include "conflictsim/generators.hpp"
#include "conflictsim/graph.hpp"
#include "conflictsim/random.hpp"

namespace conflictsim {

// One quasi-static stretch of a workload. At the start of the phase the
// population is regenerated from `graph`; within it committed nodes leave
// after every round and, with `replenish`, are replaced so that node count
// and average degree hold steady.
struct PhaseSpec {
  std::size_t duration = 1;
  GraphFamilySpec graph;
  bool replenish = false;
};

struct TraceRecord {
  std::size_t t = 0;
  std::size_t phase = 0;
  std::size_t m_launched = 0;
  std::size_t committed = 0;
  std::size_t aborted = 0;
  double r_round = 0.0;
  std::optional<double> window_mean_r;
  Branch branch = Branch::none;
  std::size_t m_next_pre_clamp = 0;
  std::size_t m_next = 0;
  // The controller asked for more nodes than the population held, so
  // m_launched was cut to the population size.
  bool capped_to_population = false;
  // Node count once the round's commits were retired (and replenished).
  std::size_t population = 0;
};

// The evolving work-set of a phase. Every node carries a group tag (its
// clique for clique families, -1 otherwise) so that replenishment can
// rebuild the family's structure around the survivors.
class WorkPopulation {
 public:
  WorkPopulation(const GraphFamilySpec& spec, bool replenish);

  const ConflictGraph& graph() const { return graph_; }

  // Removes the committed nodes. With replenish, adds as many fresh nodes:
  // clique families put each new node into the clique that lost a member
  // (isolated slots stay isolated); the random family wires new nodes with
  // uniform new-new and new-old edges until the target edge count is back.
  void retire(std::span<const NodeId> committed, RandomStream& rng);

 private:
  void replenish_random(std::size_t survivors, std::size_t fresh, std::vector<Edge>& edges, RandomStream& rng) const;

  bool replenish_;
  bool random_family_;
  ConflictGraph graph_;
  std::vector<std::int64_t> group_;
  std::size_t target_edges_ = 0;
};

// Controller against a fixed graph: the graph never changes, every round
// draws a fresh uniform prefix. Round t uses RandomStream(seed).split(t).
std::vector<TraceRecord> run_static(const ConflictGraph& g, const ControllerConfig& config, std::size_t rounds,
                                    std::uint64_t seed);

// Controller against a phase profile. Controller state carries across phase
// boundaries. A phase without replenishment ends early if its work-set runs
// out.
std::vector<TraceRecord> run_evolving(std::span<const PhaseSpec> profile, const ControllerConfig& config,
                                      std::uint64_t seed);

// Header "t,phase,m_launched,committed,aborted,r_round,window_mean_r,branch,
// m_next_pre_clamp,m_next"; window_mean_r is empty off decision rounds.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);

// One phase per line: "duration family params... replenish", where family
// is one of
//   clique-union <cliques> <degree>
//   random <n> <d>
//   cliques-isolated <sizes> <isolated>
// <sizes> is "-" or a comma list of "q" or "qxcount" entries; replenish is
// 0/1. Blank lines and '#' comments are skipped. Phase i gets graph seed i.
std::vector<PhaseSpec> read_profile(std::istream& in);

}  // namespace conflictsim
