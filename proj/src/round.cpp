#include "conflictsim/round.hpp"

#include <numeric>
#include <string>

#include "conflictsim/errors.hpp"

namespace conflictsim {

Rational RoundOutcome::conflict_ratio() const {
  if (chosen.empty()) return Rational(0);
  Rational r(aborted_count, chosen.size());
  r.canonicalize();
  return r;
}

double RoundOutcome::ratio() const {
  return chosen.empty() ? 0.0 : static_cast<double>(aborted_count) / static_cast<double>(chosen.size());
}

RoundOutcome commit_order_outcome(const ConflictGraph& g, std::span<const NodeId> order) {
  const std::size_t n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<char> committed(n, 0);
  RoundOutcome out;
  out.chosen.assign(order.begin(), order.end());
  for (NodeId v : order) {
    if (v >= n) throw ValidationError("node " + std::to_string(v) + " is not in the graph (n=" + std::to_string(n) + ")");
    if (seen[v]) throw ValidationError("node " + std::to_string(v) + " appears twice in the commit order");
    seen[v] = 1;

    bool blocked = false;
    for (NodeId w : g.neighbors(v)) {
      if (committed[w]) {
        blocked = true;
        break;
      }
    }
    if (blocked) {
      ++out.aborted_count;
    } else {
      committed[v] = 1;
      out.committed.push_back(v);
    }
  }
  return out;
}

RoundSampler::RoundSampler(const ConflictGraph& g) : graph_(&g), perm_(g.node_count()), mark_(g.node_count(), 0) {
  std::iota(perm_.begin(), perm_.end(), NodeId{0});
}

std::span<const NodeId> RoundSampler::draw(std::size_t m, RandomStream& rng) {
  const std::size_t n = perm_.size();
  if (m < 1 || m > n) {
    throw ValidationError("round size m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  swaps_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(perm_[i], perm_[j]);
    swaps_[i] = j;
  }
  return {perm_.data(), m};
}

void RoundSampler::restore(std::size_t m) {
  for (std::size_t i = m; i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
}

std::size_t RoundSampler::sweep(std::span<const NodeId> chosen, std::vector<char>& committed) {
  committed.assign(chosen.size(), 0);
  std::size_t aborted = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const NodeId v = chosen[i];
    bool blocked = false;
    for (NodeId w : graph_->neighbors(v)) {
      if (mark_[w]) {
        blocked = true;
        break;
      }
    }
    if (blocked) {
      ++aborted;
    } else {
      mark_[v] = 1;
      committed[i] = 1;
    }
  }
  for (NodeId v : chosen) mark_[v] = 0;
  return aborted;
}

RoundOutcome RoundSampler::sample(std::size_t m, RandomStream& rng) {
  auto chosen = draw(m, rng);
  std::vector<char> flags;
  RoundOutcome out;
  out.chosen.assign(chosen.begin(), chosen.end());
  out.aborted_count = sweep(chosen, flags);
  for (std::size_t i = 0; i < m; ++i) {
    if (flags[i]) out.committed.push_back(out.chosen[i]);
  }
  restore(m);
  return out;
}

std::size_t RoundSampler::sample_aborts(std::size_t m, RandomStream& rng) {
  auto chosen = draw(m, rng);
  std::size_t aborted = 0;
  for (NodeId v : chosen) {
    bool blocked = false;
    for (NodeId w : graph_->neighbors(v)) {
      if (mark_[w]) {
        blocked = true;
        break;
      }
    }
    if (blocked) {
      ++aborted;
    } else {
      mark_[v] = 1;
    }
  }
  for (NodeId v : chosen) mark_[v] = 0;
  restore(m);
  return aborted;
}

RoundOutcome sample_round(const ConflictGraph& g, std::size_t m, RandomStream& rng) {
  RoundSampler sampler(g);
  return sampler.sample(m, rng);
}

}  // namespace conflictsim
