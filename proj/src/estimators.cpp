#include "conflictsim/estimators.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "conflictsim/random.hpp"
#include "conflictsim/round.hpp"

namespace conflictsim {

namespace {

unsigned resolve_threads(unsigned threads, std::size_t work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(work, 1)));
}

// Calls body(begin, end) on contiguous chunks of [0, count), one per worker.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body) {
  threads = resolve_threads(threads, count);
  if (threads == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    workers.emplace_back([=] { body(begin, end); });
  }
}

Rational ratio(std::size_t p, std::size_t q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Walks every ordered prefix up to max_m, adding the abort count of each
// prefix of length m into sums[m].
class PrefixWalk {
 public:
  PrefixWalk(const ConflictGraph& g, std::size_t max_m)
      : g_(g), max_m_(max_m), used_(g.node_count(), 0), committed_(g.node_count(), 0), sums_(max_m + 1, 0) {}

  std::vector<std::uint64_t> run() {
    visit(0, 0);
    return sums_;
  }

 private:
  void visit(std::size_t depth, std::uint64_t aborted) {
    const std::size_t n = g_.node_count();
    for (NodeId v = 0; v < n; ++v) {
      if (used_[v]) continue;
      bool blocked = false;
      for (NodeId w : g_.neighbors(v)) {
        if (committed_[w]) {
          blocked = true;
          break;
        }
      }
      used_[v] = 1;
      committed_[v] = blocked ? 0 : 1;
      const std::uint64_t k = aborted + (blocked ? 1 : 0);
      sums_[depth + 1] += k;
      if (depth + 1 < max_m_) visit(depth + 1, k);
      used_[v] = 0;
      committed_[v] = 0;
    }
  }

  const ConflictGraph& g_;
  std::size_t max_m_;
  std::vector<char> used_;
  std::vector<char> committed_;
  std::vector<std::uint64_t> sums_;
};

// Number of ordered prefixes of length 1..max_m on n nodes.
mpz_class walk_size(std::size_t n, std::size_t max_m) {
  mpz_class total = 0;
  mpz_class term = 1;
  for (std::size_t m = 1; m <= max_m; ++m) {
    term *= static_cast<unsigned long>(n - m + 1);
    total += term;
  }
  return total;
}

void check_m(std::size_t m, std::size_t n) {
  if (m < 1 || m > n) throw ValidationError("m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
}

}  // namespace

std::string to_string(CurveSource source) {
  switch (source) {
    case CurveSource::monte_carlo:
      return "monte-carlo";
    case CurveSource::oracle:
      return "oracle";
    case CurveSource::closed_form:
      return "closed-form";
  }
  return "unknown";
}

ConflictCurve ExactCurve::to_curve() const {
  ConflictCurve c;
  c.m_values = m_values;
  c.trials = 0;
  c.source = source;
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    c.r_mean.push_back(to_double(r_mean[i]));
    c.r_stderr.push_back(0.0);
    c.k_mean.push_back(to_double(k_mean[i]));
    c.es_mean.push_back(to_double(es_mean[i]));
  }
  return c;
}

MeanEstimate mc_conflict_ratio(const ConflictGraph& g, std::size_t m, std::size_t trials, std::uint64_t seed,
                               unsigned threads) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  check_m(m, g.node_count());

  std::vector<std::uint32_t> aborts(trials);
  const RandomStream base = RandomStream(seed).split(m);
  parallel_chunks(trials, threads, [&](std::size_t begin, std::size_t end) {
    RoundSampler sampler(g);
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng = base.split(i);
      aborts[i] = static_cast<std::uint32_t>(sampler.sample_aborts(m, rng));
    }
  });

  // Integer accumulation keeps the reduction exact and order-independent.
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::uint32_t k : aborts) {
    sum += k;
    sum_sq += static_cast<unsigned __int128>(k) * k;
  }
  const double md = static_cast<double>(m);
  const double td = static_cast<double>(trials);
  MeanEstimate est;
  est.mean = static_cast<double>(sum) / (td * md);
  if (trials > 1) {
    // T * sum(k^2) - sum(k)^2 >= 0, computed exactly.
    const unsigned __int128 spread = static_cast<unsigned __int128>(trials) * sum_sq - sum * sum;
    const double variance = static_cast<double>(spread) / (td * (td - 1.0)) / (md * md);
    est.stderr_of_mean = std::sqrt(variance / td);
  }
  return est;
}

ConflictCurve mc_conflict_curve(const ConflictGraph& g, std::span<const std::size_t> m_values, std::size_t trials,
                                std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  for (std::size_t m : m_values) check_m(m, g.node_count());

  ConflictCurve curve;
  curve.trials = trials;
  curve.source = CurveSource::monte_carlo;
  for (std::size_t m : m_values) {
    const MeanEstimate est = mc_conflict_ratio(g, m, trials, seed, threads);
    const double md = static_cast<double>(m);
    curve.m_values.push_back(m);
    curve.r_mean.push_back(est.mean);
    curve.r_stderr.push_back(est.stderr_of_mean);
    curve.k_mean.push_back(est.mean * md);
    curve.es_mean.push_back(md - est.mean * md);
  }
  return curve;
}

ExactCurve oracle_conflict_curve(const ConflictGraph& g, std::size_t max_m, std::size_t cap) {
  const std::size_t n = g.node_count();
  if (max_m == 0) max_m = n;
  if (max_m > n) throw ValidationError("oracle max m=" + std::to_string(max_m) + " exceeds n=" + std::to_string(n));
  if (max_m == n && n > cap) {
    throw ValidationError("oracle refuses a full curve on n=" + std::to_string(n) + " nodes: cap is " +
                          std::to_string(cap));
  }
  if (walk_size(n, max_m) > walk_size(cap, cap)) {
    throw ValidationError("oracle refuses n=" + std::to_string(n) + ", m<=" + std::to_string(max_m) +
                          ": enumeration exceeds the budget of a full curve at cap " + std::to_string(cap));
  }

  const std::vector<std::uint64_t> sums = PrefixWalk(g, max_m).run();

  ExactCurve curve;
  curve.source = CurveSource::oracle;
  mpz_class prefixes = 1;
  for (std::size_t m = 1; m <= max_m; ++m) {
    prefixes *= static_cast<unsigned long>(n - m + 1);
    mpz_class total;
    mpz_import(total.get_mpz_t(), 1, -1, sizeof(sums[m]), 0, 0, &sums[m]);
    Rational k(total, prefixes);
    k.canonicalize();
    Rational r = k / Rational(m);
    curve.m_values.push_back(m);
    curve.k_mean.push_back(k);
    curve.r_mean.push_back(r);
    curve.es_mean.push_back(Rational(m) - k);
  }
  return curve;
}

Rational closed_form_b(const ConflictGraph& g, std::size_t m) {
  const std::size_t n = g.node_count();
  check_m(m, n);

  std::map<std::size_t, std::size_t> degree_counts;
  for (NodeId v = 0; v < n; ++v) ++degree_counts[g.degree(v)];

  Rational total = 0;
  for (const auto& [dv, count] : degree_counts) {
    // sum_{j=1}^{m} prod_{i=1}^{j-1} (n-i-dv)/(n-i)
    Rational term = 1;
    Rational sum = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (j > 1) {
        const std::size_t i = j - 1;
        if (n <= i + dv) break;  // factor n-i-dv <= 0: the node is never unblocked this late
        term *= ratio(n - i - dv, n - i);
      }
      sum += term;
    }
    total += Rational(count) * sum;
  }
  return total / Rational(n);
}

ExactCurve closed_form_curve(const ConflictGraph& g, std::span<const std::size_t> m_values) {
  ExactCurve curve;
  curve.source = CurveSource::closed_form;
  for (std::size_t m : m_values) {
    Rational b = closed_form_b(g, m);
    Rational k = Rational(m) - b;
    curve.m_values.push_back(m);
    curve.es_mean.push_back(b);
    curve.k_mean.push_back(k);
    curve.r_mean.push_back(k / Rational(m));
  }
  return curve;
}

std::size_t mu_bisection(const ConflictGraph& g, double rho, std::size_t trials, std::uint64_t seed, std::size_t m_min,
                         std::size_t m_max, unsigned threads) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("rho must lie in (0, 1)");
  if (m_min < 2 || m_min > m_max || m_max > g.node_count()) {
    throw ValidationError("bisection range [" + std::to_string(m_min) + ", " + std::to_string(m_max) +
                          "] must satisfy 2 <= m_min <= m_max <= n=" + std::to_string(g.node_count()));
  }
  auto below_target = [&](std::size_t m) { return mc_conflict_ratio(g, m, trials, seed, threads).mean <= rho; };

  if (!below_target(m_min)) return m_min;
  if (below_target(m_max)) return m_max;
  // Invariant: r(lo) <= rho < r(hi).
  std::size_t lo = m_min;
  std::size_t hi = m_max;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (below_target(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void write_curve_csv(std::ostream& out, const ConflictCurve& curve) {
  out << "m,r_mean,r_stderr,k_mean,es_mean,trials,source\n";
  char buf[256];
  for (std::size_t i = 0; i < curve.m_values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%zu,", curve.m_values[i], curve.r_mean[i],
                  curve.r_stderr[i], curve.k_mean[i], curve.es_mean[i], curve.trials);
    out << buf << to_string(curve.source) << '\n';
  }
}

}  // namespace conflictsim
