#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "conflictsim/controller.hpp"
#include "conflictsim/estimators.hpp"
#include "conflictsim/generators.hpp"
#include "conflictsim/rational.hpp"

namespace conflictsim {

// lo, lo+step, ... up to and including hi when it lands on the grid.
std::vector<std::size_t> make_m_grid(std::size_t lo, std::size_t hi, std::size_t step);

// Parses "lo:hi:step" (step defaults to 1 for "lo:hi").
std::vector<std::size_t> parse_m_grid(std::string_view text);

// Conflict-ratio curves for graphs sharing n and d: the worst-case bound
// (exact and approximate), a uniform random graph and a cliques-plus-
// isolated graph.
struct Fig2Options {
  std::size_t n = 2000;
  Rational d = 16;
  std::vector<std::size_t> m_grid = make_m_grid(1, 2000, 50);
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::size_t min_clique_size = 0;  // 0: start the mixture search at d+1
  unsigned threads = kAutoThreads;
};

struct Fig2Row {
  std::size_t m = 0;
  std::optional<double> bound_exact;  // needs an integer d
  double bound_approx = 0.0;
  double r_random = 0.0;
  double r_random_stderr = 0.0;
  double r_cliques = 0.0;
  double r_cliques_stderr = 0.0;
};

struct Fig2Table {
  CliqueMixture mixture;
  std::vector<Fig2Row> rows;
};

Fig2Table fig2_table(const Fig2Options& options);

// A "# ..." line naming the clique mixture, then
// "m,bound_exact,bound_approx,r_random,r_random_stderr,r_cliques,r_cliques_stderr".
void write_fig2_csv(std::ostream& out, const Fig2Table& table);

// m_t trajectories of two hybrid runs and one recurrence-A-only run on the
// same random graph, next to the bisection estimate of the operating point.
struct Fig3Options {
  std::size_t n = 2000;
  Rational d = 16;
  std::size_t rounds = 300;
  std::size_t mu_trials = 1000;
  std::uint64_t seed = 0;
  ControllerConfig config;  // hybrid settings; the A-only run drops B and the small-m overrides
  unsigned threads = kAutoThreads;
};

struct Fig3Row {
  std::size_t t = 0;
  std::size_t m_hybrid_s1 = 0;
  std::size_t m_hybrid_s2 = 0;
  std::size_t m_a_only = 0;
};

struct Fig3Table {
  std::size_t mu = 0;
  std::vector<Fig3Row> rows;
};

// Config used for the A-only comparison run.
ControllerConfig a_only_config(ControllerConfig config);

Fig3Table fig3_table(const Fig3Options& options);

// "t,m_hybrid_s1,m_hybrid_s2,m_a_only,mu_reference".
void write_fig3_csv(std::ostream& out, const Fig3Table& table);

}  // namespace conflictsim
