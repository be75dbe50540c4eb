#include "conflictsim/figures.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>

#include "conflictsim/bounds.hpp"
#include "conflictsim/errors.hpp"
#include "conflictsim/random.hpp"
#include "conflictsim/workload.hpp"

namespace conflictsim {

namespace {

std::size_t parse_size(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("bad m grid '" + std::string(whole) + "': expected lo:hi:step");
  }
  return value;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::vector<std::size_t> make_m_grid(std::size_t lo, std::size_t hi, std::size_t step) {
  if (lo < 1 || hi < lo || step < 1) {
    throw ValidationError("m grid needs 1 <= lo <= hi and step >= 1 (lo=" + std::to_string(lo) +
                          ", hi=" + std::to_string(hi) + ", step=" + std::to_string(step) + ")");
  }
  std::vector<std::size_t> grid;
  for (std::size_t m = lo; m <= hi; m += step) grid.push_back(m);
  return grid;
}

std::vector<std::size_t> parse_m_grid(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) throw ValidationError("bad m grid '" + std::string(text) + "': expected lo:hi:step");
  const auto second = text.find(':', first + 1);
  const std::size_t lo = parse_size(text.substr(0, first), text);
  std::size_t hi = 0;
  std::size_t step = 1;
  if (second == std::string_view::npos) {
    hi = parse_size(text.substr(first + 1), text);
  } else {
    hi = parse_size(text.substr(first + 1, second - first - 1), text);
    step = parse_size(text.substr(second + 1), text);
  }
  return make_m_grid(lo, hi, step);
}

Fig2Table fig2_table(const Fig2Options& o) {
  if (o.m_grid.empty()) throw ValidationError("fig2 needs a non-empty m grid");
  if (o.m_grid.back() > o.n) throw ValidationError("m grid exceeds n=" + std::to_string(o.n));

  const std::size_t min_size = o.min_clique_size != 0 ? o.min_clique_size
                                                      : static_cast<std::size_t>(to_double(o.d)) + 1;
  Fig2Table table;
  table.mixture = solve_clique_mixture(o.n, o.d, min_size);

  const ConflictGraph random = random_fixed_degree(o.n, o.d, mix_seed(o.seed, 1));
  const ConflictGraph cliques = cliques_plus_isolated(table.mixture.clique_sizes, table.mixture.isolated);
  const ConflictCurve r_random = mc_conflict_curve(random, o.m_grid, o.trials, mix_seed(o.seed, 2), o.threads);
  const ConflictCurve r_cliques = mc_conflict_curve(cliques, o.m_grid, o.trials, mix_seed(o.seed, 3), o.threads);

  const bool integral = is_integer(o.d) && o.d + 1 <= o.n;
  const double d = to_double(o.d);
  for (std::size_t i = 0; i < o.m_grid.size(); ++i) {
    const std::size_t m = o.m_grid[i];
    Fig2Row row;
    row.m = m;
    if (integral) row.bound_exact = to_double(worst_case_ratio(o.n, o.d.get_num().get_ui(), m));
    row.bound_approx = approx_ratio(o.n, d, m);
    row.r_random = r_random.r_mean[i];
    row.r_random_stderr = r_random.r_stderr[i];
    row.r_cliques = r_cliques.r_mean[i];
    row.r_cliques_stderr = r_cliques.r_stderr[i];
    table.rows.push_back(row);
  }
  return table;
}

void write_fig2_csv(std::ostream& out, const Fig2Table& table) {
  out << "# cliques-isolated mixture: " << table.mixture.describe() << '\n';
  out << "m,bound_exact,bound_approx,r_random,r_random_stderr,r_cliques,r_cliques_stderr\n";
  for (const Fig2Row& r : table.rows) {
    out << r.m << ',' << (r.bound_exact ? fmt(*r.bound_exact) : std::string()) << ',' << fmt(r.bound_approx) << ','
        << fmt(r.r_random) << ',' << fmt(r.r_random_stderr) << ',' << fmt(r.r_cliques) << ','
        << fmt(r.r_cliques_stderr) << '\n';
  }
}

ControllerConfig a_only_config(ControllerConfig config) {
  config.mode = ControlMode::recurrence_a_only;
  config.small_m_overrides.reset();
  return config;
}

Fig3Table fig3_table(const Fig3Options& o) {
  o.config.validate();
  const ConflictGraph g = random_fixed_degree(o.n, o.d, mix_seed(o.seed, 10));
  const std::size_t hi = std::min(o.config.m_max, g.node_count());
  const std::size_t lo = std::min(o.config.m_min, hi);

  Fig3Table table;
  table.mu = mu_bisection(g, o.config.rho, o.mu_trials, mix_seed(o.seed, 13), lo, hi, o.threads);

  const auto s1 = run_static(g, o.config, o.rounds, mix_seed(o.seed, 11));
  const auto s2 = run_static(g, o.config, o.rounds, mix_seed(o.seed, 12));
  const auto a_only = run_static(g, a_only_config(o.config), o.rounds, mix_seed(o.seed, 11));
  for (std::size_t t = 0; t < o.rounds; ++t) {
    table.rows.push_back({t, s1[t].m_launched, s2[t].m_launched, a_only[t].m_launched});
  }
  return table;
}

void write_fig3_csv(std::ostream& out, const Fig3Table& table) {
  out << "t,m_hybrid_s1,m_hybrid_s2,m_a_only,mu_reference\n";
  for (const Fig3Row& r : table.rows) {
    out << r.t << ',' << r.m_hybrid_s1 << ',' << r.m_hybrid_s2 << ',' << r.m_a_only << ',' << table.mu << '\n';
  }
}

}  // namespace conflictsim
