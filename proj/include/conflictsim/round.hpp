#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "conflictsim/graph.hpp"
#include "conflictsim/random.hpp"
#include "conflictsim/rational.hpp"

namespace conflictsim {

// Result of one speculative round.
struct RoundOutcome {
  std::vector<NodeId> chosen;     // launch order, which is also the commit order
  std::vector<NodeId> committed;  // subsequence of `chosen`
  std::size_t aborted_count = 0;

  std::size_t m() const { return chosen.size(); }
  Rational conflict_ratio() const;
  double ratio() const;
};

// Greedy commit sweep: a node commits iff no neighbor earlier in `order`
// has committed. Aborted nodes block nobody. Throws ValidationError on a
// duplicate or out-of-range id.
RoundOutcome commit_order_outcome(const ConflictGraph& g, std::span<const NodeId> order);

// Draws rounds on a fixed graph, reusing O(n) scratch between calls. A
// sampler is not thread-safe; give each worker its own. Draws are a pure
// function of (graph, m, rng state): the scratch permutation is restored
// after every round.
class RoundSampler {
 public:
  explicit RoundSampler(const ConflictGraph& g);

  // Uniform ordered m-prefix of a uniform permutation, then the commit
  // sweep. Throws ValidationError unless 1 <= m <= n.
  RoundOutcome sample(std::size_t m, RandomStream& rng);

  // Same draw as sample() but returns only the abort count.
  std::size_t sample_aborts(std::size_t m, RandomStream& rng);

 private:
  std::size_t sweep(std::span<const NodeId> chosen, std::vector<char>& committed);
  std::span<const NodeId> draw(std::size_t m, RandomStream& rng);
  void restore(std::size_t m);

  const ConflictGraph* graph_;
  std::vector<NodeId> perm_;
  std::vector<std::size_t> swaps_;
  std::vector<char> mark_;
};

RoundOutcome sample_round(const ConflictGraph& g, std::size_t m, RandomStream& rng);

}  // namespace conflictsim
