#include <cmath>
#include <sstream>

#include "conflictsim/bounds.hpp"
#include "conflictsim/errors.hpp"
#include "conflictsim/estimators.hpp"
#include "conflictsim/generators.hpp"
#include "doctest.h"
#include "support/brute_force.hpp"

using namespace conflictsim;

namespace {

ConflictGraph path3() { return ConflictGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}}); }
ConflictGraph star3() { return ConflictGraph::from_edge_list(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

std::vector<Rational> R(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("Monte Carlo on graphs with a deterministic outcome") {
  const std::vector<std::size_t> ms{1, 2, 5, 9};
  const auto empty = mc_conflict_curve(clique_union(9, 0), ms, 50, 1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    CHECK(empty.r_mean[i] == 0.0);
    CHECK(empty.r_stderr[i] == 0.0);
  }
  const auto full = mc_conflict_curve(clique_union(1, 8), ms, 50, 1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double m = static_cast<double>(ms[i]);
    CHECK(full.r_mean[i] == doctest::Approx((m - 1) / m).epsilon(1e-15));
    CHECK(full.r_stderr[i] == 0.0);
    CHECK(full.es_mean[i] == doctest::Approx(1.0));
  }
  CHECK(full.trials == 50);
  CHECK(full.source == CurveSource::monte_carlo);
}

TEST_CASE("Monte Carlo on the path at m = 2 approaches 1/3") {
  const auto est = mc_conflict_ratio(path3(), 2, 20000, 3);
  CHECK(std::abs(est.mean - 1.0 / 3.0) <= 4 * est.stderr_of_mean);
  CHECK(est.stderr_of_mean > 0.0);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
  const auto g = random_fixed_degree(200, 6, 4);
  const std::vector<std::size_t> ms{2, 40, 150};
  const auto one = mc_conflict_curve(g, ms, 301, 77, 1);
  const auto many = mc_conflict_curve(g, ms, 301, 77, 4);
  CHECK(one.r_mean == many.r_mean);
  CHECK(one.r_stderr == many.r_stderr);
}

TEST_CASE("Monte Carlo validates its inputs") {
  const std::vector<std::size_t> bad{0};
  CHECK_THROWS_AS(mc_conflict_curve(path3(), bad, 10, 1), ValidationError);
  const std::vector<std::size_t> big{4};
  CHECK_THROWS_AS(mc_conflict_curve(path3(), big, 10, 1), ValidationError);
  const std::vector<std::size_t> ok{2};
  CHECK_THROWS_AS(mc_conflict_curve(path3(), ok, 0, 1), ValidationError);
}

TEST_CASE("oracle examples") {
  const auto path = oracle_conflict_curve(path3());
  CHECK(path.k_mean == R({0, make_rational(2, 3), make_rational(4, 3)}));
  CHECK(path.r_mean == R({0, make_rational(1, 3), make_rational(4, 9)}));

  const auto k41 = oracle_conflict_curve(clique_union(2, 1));
  CHECK(k41.k_mean[1] == make_rational(1, 3));
  CHECK(k41.es_mean[1] == make_rational(5, 3));

  const auto star = oracle_conflict_curve(star3());
  CHECK(star.k_mean == R({0, make_rational(1, 2), 1, make_rational(3, 2)}));
}

TEST_CASE("oracle agrees with subset-by-ordering enumeration") {
  RandomStream rng(2024);
  for (int i = 0; i < 15; ++i) {
    const std::size_t n = 1 + rng.below(7);
    const auto g = testsupport::random_graph(n, rng.below(n * (n - 1) / 2 + 1), rng);
    CHECK(oracle_conflict_curve(g).k_mean == testsupport::subset_ordering_k_mean(g));
  }
}

TEST_CASE("oracle caps the enumeration") {
  CHECK_THROWS_WITH_AS(oracle_conflict_curve(clique_union(10, 0)), doctest::Contains("cap is 9"), ValidationError);
  CHECK_NOTHROW(oracle_conflict_curve(clique_union(10, 0), 0, 10));
  // A truncated walk on a larger graph is fine within budget.
  const std::vector<std::size_t> nine{9};
  const auto g = cliques_plus_isolated(nine, 3);
  const auto head = oracle_conflict_curve(g, 4);
  CHECK(head.m_values.size() == 4);
  CHECK_THROWS_AS(oracle_conflict_curve(g, 9), ValidationError);
}

TEST_CASE("closed-form b_m examples") {
  CHECK(closed_form_b(clique_union(2, 1), 2) == make_rational(5, 3));
  CHECK(closed_form_b(star3(), 2) == make_rational(3, 2));
  CHECK(closed_form_b(star3(), 2) == oracle_conflict_curve(star3()).es_mean[1]);
  CHECK(closed_form_b(random_fixed_degree(30, 4, 1), 1) == 1);
  CHECK_THROWS_AS(closed_form_b(star3(), 5), ValidationError);
}

TEST_CASE("b_m is a lower bound on es_m, tight on unions of cliques") {
  RandomStream rng(31);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = 2 + rng.below(6);
    const auto g = testsupport::random_graph(n, rng.below(n * (n - 1) / 2 + 1), rng);
    const auto exact = oracle_conflict_curve(g);
    for (std::size_t m = 1; m <= n; ++m) {
      const Rational b = closed_form_b(g, m);
      CHECK(b <= exact.es_mean[m - 1]);
      if (testsupport::is_union_of_cliques(g)) CHECK(b == exact.es_mean[m - 1]);
    }
  }
  const std::vector<std::size_t> sizes{3, 2, 1, 1};
  const auto cliques = cliques_plus_isolated(sizes, 1);
  const auto exact = oracle_conflict_curve(cliques);
  for (std::size_t m = 1; m <= cliques.node_count(); ++m) CHECK(closed_form_b(cliques, m) == exact.es_mean[m - 1]);
}

TEST_CASE("Monte Carlo agrees with the oracle") {
  RandomStream rng(8);
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 3 + rng.below(6);
    const auto g = testsupport::random_graph(n, rng.below(n * (n - 1) / 2 + 1), rng);
    const auto exact = oracle_conflict_curve(g);
    std::vector<std::size_t> ms(n);
    for (std::size_t m = 1; m <= n; ++m) ms[m - 1] = m;
    const auto mc = mc_conflict_curve(g, ms, 4000, 100 + static_cast<std::uint64_t>(i));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(mc.r_mean[k] - to_double(exact.r_mean[k])) <= 4 * mc.r_stderr[k] + 1e-12);
    }
  }
}

TEST_CASE("mu_bisection boundary cases") {
  const auto empty = clique_union(100, 0);
  CHECK(mu_bisection(empty, 0.2, 20, 1, 2, 80) == 80);
  CHECK(mu_bisection(clique_union(1, 9), 0.3, 20, 1, 2, 10) == 2);
  CHECK_THROWS_AS(mu_bisection(empty, 0.2, 20, 1, 1, 80), ValidationError);
  CHECK_THROWS_AS(mu_bisection(empty, 0.2, 20, 1, 50, 40), ValidationError);
  CHECK_THROWS_AS(mu_bisection(empty, 0.2, 20, 1, 2, 101), ValidationError);
}

TEST_CASE("mu_bisection on K^n_d lands on the inverse of the exact curve") {
  const auto g = clique_union(500, 3);
  // Largest m whose exact worst-case ratio is <= rho.
  std::size_t expected = 2;
  for (std::size_t m = 2; m <= 2000; ++m) {
    if (to_double(worst_case_ratio(2000, 3, m)) <= 0.213) expected = m;
    else break;
  }
  const std::size_t mu = mu_bisection(g, 0.213, 2000, 5, 2, 2000);
  CHECK(std::abs(static_cast<double>(mu) - static_cast<double>(expected)) <= 0.05 * static_cast<double>(expected));
}

TEST_CASE("finite differences") {
  const std::vector<Rational> k{0, make_rational(2, 3), make_rational(4, 3)};
  CHECK(finite_difference<Rational>(k, 1) == R({make_rational(2, 3), make_rational(2, 3)}));
  CHECK(finite_difference<Rational>(k, 2) == R({0}));
  const std::vector<double> flat{2.5, 2.5, 2.5, 2.5};
  CHECK(finite_difference<double>(flat, 1) == std::vector<double>{0, 0, 0});
  CHECK_THROWS_AS(finite_difference<double>(std::vector<double>{1, 2}, 2), ValidationError);
  CHECK_THROWS_AS(finite_difference<double>(flat, 3), ValidationError);
}

TEST_CASE("curve CSV") {
  std::ostringstream out;
  write_curve_csv(out, oracle_conflict_curve(path3()).to_curve());
  CHECK(out.str() ==
        "m,r_mean,r_stderr,k_mean,es_mean,trials,source\n"
        "1,0,0,0,1,0,oracle\n"
        "2,0.333333333333,0,0.666666666667,1.33333333333,0,oracle\n"
        "3,0.444444444444,0,1.33333333333,1.66666666667,0,oracle\n");
}

TEST_CASE("closed-form curve carries its source tag") {
  const std::vector<std::size_t> ms{1, 2};
  const auto c = closed_form_curve(clique_union(2, 1), ms);
  CHECK(c.source == CurveSource::closed_form);
  CHECK(c.r_mean[1] == make_rational(1, 6));
}
