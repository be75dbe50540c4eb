#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "conflictsim/errors.hpp"
#include "conflictsim/graph.hpp"
#include "conflictsim/rational.hpp"

namespace conflictsim {

enum class CurveSource { monte_carlo, oracle, closed_form };

std::string to_string(CurveSource source);

// Per-m values of the conflict ratio r(m), the abort count k(m) and the
// committed count es(m) = m - k(m). trials == 0 marks exact values.
struct ConflictCurve {
  std::vector<std::size_t> m_values;
  std::vector<double> r_mean;
  std::vector<double> r_stderr;
  std::vector<double> k_mean;
  std::vector<double> es_mean;
  std::size_t trials = 0;
  CurveSource source = CurveSource::monte_carlo;
};

// Exact counterpart of ConflictCurve for the enumeration oracle and the
// closed-form b_m curve.
struct ExactCurve {
  std::vector<std::size_t> m_values;
  std::vector<Rational> k_mean;
  std::vector<Rational> r_mean;
  std::vector<Rational> es_mean;
  CurveSource source = CurveSource::oracle;

  ConflictCurve to_curve() const;
};

struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

// 0 selects std::thread::hardware_concurrency().
inline constexpr unsigned kAutoThreads = 0;

// Sample mean and standard error of the per-round conflict ratio over
// `trials` independent rounds of size m. Trial i of size m always uses the
// stream RandomStream(seed).split(m).split(i), so results are identical for
// any thread count.
MeanEstimate mc_conflict_ratio(const ConflictGraph& g, std::size_t m, std::size_t trials, std::uint64_t seed,
                               unsigned threads = kAutoThreads);

ConflictCurve mc_conflict_curve(const ConflictGraph& g, std::span<const std::size_t> m_values, std::size_t trials,
                                std::uint64_t seed, unsigned threads = kAutoThreads);

inline constexpr std::size_t kDefaultOracleCap = 9;

// Exact r(m), k(m), es(m) for m = 1..max_m by walking every ordered prefix
// of length up to max_m (max_m == 0 means n). A full curve needs n <= cap;
// a truncated one may have larger n as long as the walk is no bigger than a
// full walk on `cap` nodes. Otherwise throws ValidationError quoting cap.
ExactCurve oracle_conflict_curve(const ConflictGraph& g, std::size_t max_m = 0,
                                 std::size_t cap = kDefaultOracleCap);

// b_m(G): expected number of the first m nodes of a uniform permutation
// with no neighbor anywhere before them, from per-node degrees.
Rational closed_form_b(const ConflictGraph& g, std::size_t m);

// Curve with es = b_m, k = m - b_m and r = 1 - b_m/m: a pessimistic
// (upper) estimate of r that is exact on unions of cliques.
ExactCurve closed_form_curve(const ConflictGraph& g, std::span<const std::size_t> m_values);

// Largest m in [m_min, m_max] whose Monte Carlo r(m) is <= rho, located by
// bisection. Every probe uses the same trial count and the per-m streams of
// mc_conflict_ratio.
std::size_t mu_bisection(const ConflictGraph& g, double rho, std::size_t trials, std::uint64_t seed,
                         std::size_t m_min, std::size_t m_max, unsigned threads = kAutoThreads);

// Forward differences of order 1 or 2.
template <class T>
std::vector<T> finite_difference(std::span<const T> series, int order) {
  if (order != 1 && order != 2) throw ValidationError("finite difference order must be 1 or 2");
  if (series.size() <= static_cast<std::size_t>(order)) {
    throw ValidationError("series of length " + std::to_string(series.size()) + " is too short for order " +
                          std::to_string(order));
  }
  std::vector<T> out(series.begin(), series.end());
  for (int pass = 0; pass < order; ++pass) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

// Header "m,r_mean,r_stderr,k_mean,es_mean,trials,source", one row per m.
void write_curve_csv(std::ostream& out, const ConflictCurve& curve);

}  // namespace conflictsim
