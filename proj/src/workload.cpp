#include "conflictsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "conflictsim/errors.hpp"
#include "conflictsim/round.hpp"

namespace conflictsim {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

std::vector<std::int64_t> initial_groups(const GraphFamilySpec& spec, std::size_t n) {
  std::vector<std::int64_t> group(n, -1);
  std::vector<std::size_t> sizes;
  if (const auto* p = std::get_if<CliqueUnionParams>(&spec.params)) {
    sizes.assign(p->cliques, p->degree + 1);
  } else if (const auto* q = std::get_if<CliquesIsolatedParams>(&spec.params)) {
    sizes = q->clique_sizes;
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) group[next++] = static_cast<std::int64_t>(c);
  }
  return group;
}

TraceRecord make_record(std::size_t t, std::size_t phase, const RoundOutcome& outcome, const Decision& decision,
                        bool capped) {
  TraceRecord rec;
  rec.t = t;
  rec.phase = phase;
  rec.m_launched = outcome.m();
  rec.committed = outcome.committed.size();
  rec.aborted = outcome.aborted_count;
  rec.r_round = outcome.ratio();
  rec.window_mean_r = decision.window_mean;
  rec.branch = decision.branch;
  rec.m_next_pre_clamp = decision.m_next_pre_clamp;
  rec.m_next = decision.m_next;
  rec.capped_to_population = capped;
  return rec;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  if (text == "-") return sizes;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t size = 0;
    std::size_t count = 1;
    char x = 0;
    std::istringstream one(item);
    if (!(one >> size) || size == 0) throw ValidationError("bad clique size entry '" + item + "'");
    if (one >> x) {
      if (x != 'x' || !(one >> count)) throw ValidationError("bad clique size entry '" + item + "'");
    }
    sizes.insert(sizes.end(), count, size);
  }
  return sizes;
}

bool parse_flag(const std::string& text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw ValidationError("replenish flag must be 0 or 1, got '" + text + "'");
}

}  // namespace

WorkPopulation::WorkPopulation(const GraphFamilySpec& spec, bool replenish)
    : replenish_(replenish),
      random_family_(std::holds_alternative<RandomParams>(spec.params)),
      graph_(spec.build()) {
  if (replenish_ && std::holds_alternative<ExplicitParams>(spec.params)) {
    throw ValidationError("explicit edge-list graphs cannot be replenished");
  }
  group_ = initial_groups(spec, graph_.node_count());
  target_edges_ = graph_.edge_count();
}

void WorkPopulation::retire(std::span<const NodeId> committed, RandomStream& rng) {
  if (committed.empty()) return;
  NodeRemoval removal = remove_nodes(graph_, committed);
  const std::size_t survivors = removal.graph.node_count();

  std::vector<std::int64_t> groups(survivors);
  std::vector<std::int64_t> lost;  // groups of removed nodes, in id order
  for (NodeId v = 0; v < graph_.node_count(); ++v) {
    if (removal.new_id[v]) {
      groups[*removal.new_id[v]] = group_[v];
    } else {
      lost.push_back(group_[v]);
    }
  }

  if (!replenish_) {
    graph_ = std::move(removal.graph);
    group_ = std::move(groups);
    return;
  }

  const std::size_t fresh = lost.size();
  std::vector<Edge> edges = removal.graph.edges();
  if (random_family_) {
    replenish_random(survivors, fresh, edges, rng);
  } else {
    std::map<std::int64_t, std::vector<NodeId>> members;
    for (NodeId v = 0; v < survivors; ++v) {
      if (groups[v] >= 0) members[groups[v]].push_back(v);
    }
    for (std::size_t i = 0; i < fresh; ++i) {
      const auto id = static_cast<NodeId>(survivors + i);
      if (lost[i] < 0) continue;
      auto& clique = members[lost[i]];
      for (NodeId w : clique) edges.push_back({w, id});
      clique.push_back(id);
    }
  }
  groups.insert(groups.end(), lost.begin(), lost.end());
  graph_ = ConflictGraph::from_edge_list(survivors + fresh, edges);
  group_ = std::move(groups);
}

void WorkPopulation::replenish_random(std::size_t survivors, std::size_t fresh, std::vector<Edge>& edges,
                                      RandomStream& rng) const {
  if (fresh == 0 || edges.size() >= target_edges_) return;
  // Candidate pairs with at least one new endpoint, indexed as
  //   [0, fresh*survivors)            new-old
  //   [fresh*survivors, available)    new-new
  const std::size_t cross = fresh * survivors;
  const std::size_t available = cross + fresh * (fresh - 1) / 2;
  const std::size_t need = std::min(target_edges_ - edges.size(), available);

  auto decode = [&](std::size_t idx) -> Edge {
    if (idx < cross) {
      return {static_cast<NodeId>(idx % survivors), static_cast<NodeId>(survivors + idx / survivors)};
    }
    std::size_t t = idx - cross;
    auto b = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(t))) / 2.0);
    while (b * (b - 1) / 2 > t) --b;
    while ((b + 1) * b / 2 <= t) ++b;
    const std::size_t a = t - b * (b - 1) / 2;
    return {static_cast<NodeId>(survivors + a), static_cast<NodeId>(survivors + b)};
  };

  if (2 * need > available) {
    std::vector<std::size_t> pool(available);
    for (std::size_t i = 0; i < available; ++i) pool[i] = i;
    for (std::size_t i = 0; i < need; ++i) {
      std::swap(pool[i], pool[i + rng.below(available - i)]);
      edges.push_back(decode(pool[i]));
    }
    return;
  }
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(2 * need);
  while (picked.size() < need) {
    const Edge e = decode(rng.below(available));
    if (picked.insert(pair_key(e.u, e.v)).second) edges.push_back(e);
  }
}

std::vector<TraceRecord> run_static(const ConflictGraph& g, const ControllerConfig& config, std::size_t rounds,
                                    std::uint64_t seed) {
  if (rounds < 1) throw ValidationError("rounds must be at least 1");
  if (g.node_count() == 0) throw ValidationError("cannot run the controller on an empty graph");

  HybridController controller(config);
  RoundSampler sampler(g);
  const RandomStream base(seed);
  std::vector<TraceRecord> trace;
  trace.reserve(rounds);
  for (std::size_t t = 0; t < rounds; ++t) {
    const std::size_t wanted = controller.launch_size();
    const std::size_t m = std::min(wanted, g.node_count());
    RandomStream rng = base.split(t);
    const RoundOutcome outcome = sampler.sample(m, rng);
    const Decision decision = controller.observe(outcome.ratio());
    TraceRecord rec = make_record(t, 0, outcome, decision, m < wanted);
    rec.population = g.node_count();
    trace.push_back(rec);
  }
  return trace;
}

std::vector<TraceRecord> run_evolving(std::span<const PhaseSpec> profile, const ControllerConfig& config,
                                      std::uint64_t seed) {
  if (profile.empty()) throw ValidationError("workload profile has no phases");
  for (const PhaseSpec& phase : profile) {
    if (phase.duration < 1) throw ValidationError("phase duration must be at least 1");
  }

  HybridController controller(config);
  const RandomStream rounds_base = RandomStream(seed).split(1);
  std::vector<TraceRecord> trace;
  std::size_t t = 0;
  for (std::size_t p = 0; p < profile.size(); ++p) {
    GraphFamilySpec spec = profile[p].graph;
    spec.seed = mix_seed(RandomStream(seed).split(2).split(p).seed(), spec.seed);
    WorkPopulation population(spec, profile[p].replenish);

    for (std::size_t round = 0; round < profile[p].duration; ++round, ++t) {
      const ConflictGraph& g = population.graph();
      if (g.node_count() == 0) break;
      const std::size_t wanted = controller.launch_size();
      const std::size_t m = std::min(wanted, g.node_count());

      RandomStream rng = rounds_base.split(t);
      const RoundOutcome outcome = sample_round(g, m, rng);
      const Decision decision = controller.observe(outcome.ratio());
      TraceRecord rec = make_record(t, p, outcome, decision, m < wanted);
      population.retire(outcome.committed, rng);
      rec.population = population.graph().node_count();
      trace.push_back(rec);
    }
  }
  return trace;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
  out << "t,phase,m_launched,committed,aborted,r_round,window_mean_r,branch,m_next_pre_clamp,m_next\n";
  char buf[64];
  for (const TraceRecord& r : trace) {
    out << r.t << ',' << r.phase << ',' << r.m_launched << ',' << r.committed << ',' << r.aborted << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.r_round);
    out << buf << ',';
    if (r.window_mean_r) {
      std::snprintf(buf, sizeof buf, "%.12g", *r.window_mean_r);
      out << buf;
    }
    out << ',' << to_string(r.branch) << ',' << r.m_next_pre_clamp << ',' << r.m_next << '\n';
  }
}

std::vector<PhaseSpec> read_profile(std::istream& in) {
  std::vector<PhaseSpec> profile;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::vector<std::string> fields;
    for (std::string f; row >> f;) fields.push_back(f);
    if (fields.empty()) continue;

    const std::string where = "profile line " + std::to_string(line_no) + ": ";
    if (fields.size() != 5) throw ValidationError(where + "expected 'duration family p1 p2 replenish'");
    auto count = [&](const std::string& text) -> std::size_t {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size() || text.front() == '-') throw ValidationError(where + "bad integer '" + text + "'");
      return static_cast<std::size_t>(v);
    };

    PhaseSpec phase;
    phase.duration = count(fields[0]);
    if (phase.duration < 1) throw ValidationError(where + "duration must be at least 1");
    const std::string& family = fields[1];
    if (family == "clique-union") {
      phase.graph.params = CliqueUnionParams{count(fields[2]), count(fields[3])};
    } else if (family == "random") {
      phase.graph.params = RandomParams{count(fields[2]), parse_rational(fields[3])};
    } else if (family == "cliques-isolated") {
      phase.graph.params = CliquesIsolatedParams{parse_sizes(fields[2]), count(fields[3])};
    } else {
      throw ValidationError(where + "unknown family '" + family + "'");
    }
    phase.graph.seed = profile.size();
    phase.replenish = parse_flag(fields[4]);
    profile.push_back(std::move(phase));
  }
  return profile;
}

}  // namespace conflictsim
