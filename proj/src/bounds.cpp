#include "conflictsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conflictsim/errors.hpp"

namespace conflictsim {

namespace {

void check_worst_case_args(std::size_t n, std::size_t d, std::size_t m) {
  if (d + 1 > n) {
    throw ValidationError("worst case needs d+1 <= n (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  if (m < 1 || m > n) throw ValidationError("m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
}

// prod_{i=1}^{m} (n-d-i)/(n+1-i), truncated at the first non-positive factor.
// The product equals C(n-d-1, m)/C(n, m) = prod_{j=0}^{d} (n-m-j)/(n-j), so
// the shorter of the two products is evaluated.
Rational miss_probability_unchecked(std::size_t n, std::size_t d, std::size_t m) {
  if (m + d + 1 > n) return Rational(0);
  mpz_class num = 1;
  mpz_class den = 1;
  if (m <= d + 1) {
    for (std::size_t i = 1; i <= m; ++i) {
      num *= static_cast<unsigned long>(n - d - i);
      den *= static_cast<unsigned long>(n + 1 - i);
    }
  } else {
    for (std::size_t j = 0; j <= d; ++j) {
      num *= static_cast<unsigned long>(n - m - j);
      den *= static_cast<unsigned long>(n - j);
    }
  }
  Rational p(num, den);
  p.canonicalize();
  return p;
}

}  // namespace

Rational turan_lower_bound(std::size_t n, const Rational& d) {
  if (n < 1) throw ValidationError("n must be positive");
  if (d < 0) throw ValidationError("average degree must be non-negative");
  return Rational(n) / (d + 1);
}

Rational clique_miss_probability(std::size_t n, std::size_t d, std::size_t m) {
  check_worst_case_args(n, d, m);
  return miss_probability_unchecked(n, d, m);
}

Rational worst_case_es(std::size_t n, std::size_t d, std::size_t m) {
  check_worst_case_args(n, d, m);
  if (n % (d + 1) != 0) {
    throw ValidationError("K^n_d needs (d+1) | n; got n=" + std::to_string(n) + ", d=" + std::to_string(d));
  }
  const Rational s(n / (d + 1));
  return s * (1 - miss_probability_unchecked(n, d, m));
}

Rational worst_case_ratio(std::size_t n, std::size_t d, std::size_t m) {
  check_worst_case_args(n, d, m);
  Rational scale(n, m * (d + 1));
  scale.canonicalize();
  return 1 - scale * (1 - miss_probability_unchecked(n, d, m));
}

double approx_ratio(std::size_t n, double d, std::size_t m) {
  if (m < 1 || m > n) throw ValidationError("m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return 1.0 - nd / (md * (d + 1.0)) * (1.0 - std::pow(1.0 - md / nd, d + 1.0));
}

double alpha_ratio_bound(double alpha, double d) {
  if (!(alpha > 0.0) || alpha > d + 1.0) throw ValidationError("alpha must lie in (0, d+1]");
  // expm1/log1p keep the small-alpha limit accurate.
  return 1.0 + std::expm1((d + 1.0) * std::log1p(-alpha / (d + 1.0))) / alpha;
}

double alpha_ratio_bound_limit(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  return 1.0 + std::expm1(-alpha) / alpha;
}

Rational initial_derivative(std::size_t n, const Rational& d) {
  if (n < 2) throw ValidationError("initial derivative needs n >= 2, got n=" + std::to_string(n));
  return d / Rational(2 * (n - 1));
}

std::size_t smart_initial_m(std::size_t n, const Rational& d) {
  const Rational q = Rational(n) / (2 * (d + 1));
  mpz_class floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return std::max<std::size_t>(2, floor_q.get_ui());
}

}  // namespace conflictsim
