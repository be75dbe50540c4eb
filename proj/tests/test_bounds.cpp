#include <cmath>

#include "conflictsim/bounds.hpp"
#include "conflictsim/errors.hpp"
#include "conflictsim/estimators.hpp"
#include "conflictsim/generators.hpp"
#include "doctest.h"

using namespace conflictsim;

namespace {

// The m-term product exactly as written, one factor at a time.
Rational literal_miss_product(long n, long d, long m) {
  Rational p = 1;
  for (long i = 1; i <= m; ++i) {
    if (n - d - i <= 0) return 0;
    p *= make_rational(n - d - i, n + 1 - i);
  }
  return p;
}

}  // namespace

TEST_CASE("turan_lower_bound") {
  CHECK(turan_lower_bound(12, 3) == 3);
  CHECK(turan_lower_bound(2000, 16) == make_rational(2000, 17));
  CHECK(turan_lower_bound(4, 1) == 2);
  CHECK(turan_lower_bound(4, 1) == oracle_conflict_curve(clique_union(2, 1)).es_mean[3]);
}

TEST_CASE("worst_case_es examples") {
  CHECK(worst_case_es(4, 1, 2) == make_rational(5, 3));
  CHECK(worst_case_es(4, 1, 2) == oracle_conflict_curve(clique_union(2, 1)).es_mean[1]);
  CHECK(worst_case_es(4, 1, 4) == 2);
  for (std::size_t d : {0u, 1u, 3u, 9u}) CHECK(worst_case_es(20, d, 1) == 1);
  CHECK_THROWS_AS(worst_case_es(5, 1, 2), ValidationError);
  CHECK_THROWS_AS(worst_case_es(4, 1, 0), ValidationError);
  CHECK_THROWS_AS(worst_case_es(4, 1, 5), ValidationError);
}

TEST_CASE("short and long forms of the miss probability agree") {
  for (long n : {4L, 9L, 30L, 101L}) {
    for (long d = 0; d < n; d += 1 + n / 7) {
      for (long m = 1; m <= n; ++m) {
        CHECK(clique_miss_probability(n, d, m) == literal_miss_product(n, d, m));
      }
    }
  }
}

TEST_CASE("worst_case_ratio examples") {
  CHECK(worst_case_ratio(4, 1, 2) == make_rational(1, 6));
  CHECK(worst_case_ratio(4, 1, 2) == oracle_conflict_curve(clique_union(2, 1)).r_mean[1]);
  CHECK(worst_case_ratio(4, 1, 1) == 0);
  const double big = to_double(worst_case_ratio(2000, 16, 200));
  CHECK(big > 0.0);
  CHECK(big < 1.0);
}

TEST_CASE("worst_case_ratio: zero at m = 1 and non-decreasing in m") {
  for (std::size_t n : {6u, 12u, 60u, 210u}) {
    for (std::size_t d = 0; d + 1 <= n; d += 1 + n / 9) {
      CHECK(worst_case_ratio(n, d, 1) == 0);
      Rational prev = 0;
      for (std::size_t m = 1; m <= n; ++m) {
        const Rational r = worst_case_ratio(n, d, m);
        CHECK(r >= prev);
        prev = r;
      }
    }
  }
}

TEST_CASE("worst case matches the oracle on small K^n_d") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t d = 0; d + 1 <= n; ++d) {
      if (n % (d + 1) != 0) continue;
      const auto exact = oracle_conflict_curve(clique_union(n / (d + 1), d));
      for (std::size_t m = 1; m <= n; ++m) CHECK(worst_case_es(n, d, m) == exact.es_mean[m - 1]);
      // Full selection recovers the maximum independent set exactly.
      CHECK(exact.es_mean[n - 1] == turan_lower_bound(n, d));
    }
  }
}

TEST_CASE("approx_ratio") {
  for (double d : {0.0, 1.0, 16.0}) CHECK(approx_ratio(100, d, 100) == doctest::Approx(d / (d + 1)));
  CHECK(approx_ratio(4, 1, 2) == doctest::Approx(0.25));
  const double exact = to_double(worst_case_ratio(2000, 16, 200));
  CHECK(std::abs(approx_ratio(2000, 16, 200) - exact) <= 0.01);
  CHECK_THROWS_AS(approx_ratio(10, 1, 11), ValidationError);
}

TEST_CASE("load-factor bounds") {
  CHECK(alpha_ratio_bound_limit(0.5) == doctest::Approx(1 - 2 * (1 - std::exp(-0.5))));
  CHECK(alpha_ratio_bound_limit(0.5) == doctest::Approx(0.2131).epsilon(1e-3));
  CHECK(alpha_ratio_bound_limit(1e-9) == doctest::Approx(5e-10).epsilon(1e-6));
  CHECK(alpha_ratio_bound(1e-9, 4) < 1e-8);
  CHECK(alpha_ratio_bound(0.5, 11) == doctest::Approx(0.200).epsilon(0.005));
  CHECK(alpha_ratio_bound(0.5, 11) <= alpha_ratio_bound_limit(0.5));
  CHECK_THROWS_AS(alpha_ratio_bound(3.0, 1), ValidationError);
  CHECK_THROWS_AS(alpha_ratio_bound_limit(0.0), ValidationError);
}

TEST_CASE("finite-d bound never exceeds its limit") {
  for (int d = 1; d <= 64; ++d) {
    for (int step = 1; step <= 40; ++step) {
      const double alpha = (d + 1.0) * step / 40.0;
      CHECK(alpha_ratio_bound(alpha, d) <= alpha_ratio_bound_limit(alpha) + 1e-15);
    }
  }
}

TEST_CASE("initial_derivative") {
  CHECK(initial_derivative(3, make_rational(4, 3)) == make_rational(1, 3));
  const auto path = oracle_conflict_curve(ConflictGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}}));
  CHECK(initial_derivative(3, make_rational(4, 3)) == path.r_mean[1] - path.r_mean[0]);
  CHECK(initial_derivative(10, 0) == 0);
  CHECK(initial_derivative(2000, 16) == make_rational(16, 3998));
  CHECK_THROWS_AS(initial_derivative(1, 0), ValidationError);
}

TEST_CASE("smart_initial_m") {
  CHECK(smart_initial_m(2000, 16) == 58);
  CHECK(smart_initial_m(4, 1) == 2);
  CHECK(smart_initial_m(1200, 11) == 50);
  CHECK(smart_initial_m(2000, make_rational(27, 2)) == 68);
}
