// conflictsim: command-line front end for the conflict-graph simulator.
//
// Every subcommand writes CSV (or the graph text format for `gen`) to --out,
// or to stdout when --out is absent. Output is built in memory and written
// through a temporary file that is renamed into place, so a failed run never
// leaves a partial file behind.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "conflictsim/bounds.hpp"
#include "conflictsim/controller.hpp"
#include "conflictsim/errors.hpp"
#include "conflictsim/estimators.hpp"
#include "conflictsim/figures.hpp"
#include "conflictsim/generators.hpp"
#include "conflictsim/graph.hpp"
#include "conflictsim/workload.hpp"

namespace cs = conflictsim;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = cs::kAutoThreads;
};

struct GraphFlags {
  std::string family;
  std::optional<std::size_t> n;
  std::optional<std::string> d;
  std::string graph_file;
  std::size_t clique_size = 0;
};

struct ControllerFlags {
  std::string config_file;
  std::optional<double> rho;
  std::optional<std::size_t> m0;
  std::optional<std::size_t> m_min;
  std::optional<std::size_t> m_max;
  std::optional<std::size_t> T;
  std::optional<double> r_min;
  std::optional<double> alpha0;
  std::optional<double> alpha1;
  std::optional<std::size_t> small_m_threshold;
  std::optional<std::string> mode;
};

std::uint64_t resolve_seed(const CommonFlags& flags) {
  if (flags.seed) return *flags.seed;
  if (const char* env = std::getenv("CONFLICTSIM_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw cs::ValidationError(std::string("CONFLICTSIM_SEED is not an integer: '") + env + "'");
    return v;
  }
  return kDefaultSeed;
}

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--seed", flags.seed,
                   "Master seed (default " + std::to_string(kDefaultSeed) + ", or $CONFLICTSIM_SEED)");
  app->add_option("--out", flags.out, "Output path (default: stdout)");
  app->add_option("--threads", flags.threads, "Worker threads for Monte Carlo (0 = all cores)");
}

void add_graph(CLI::App* app, GraphFlags& flags) {
  app->add_option("--family", flags.family, "Graph family")
      ->check(CLI::IsMember({"clique-union", "random", "cliques-isolated"}));
  app->add_option("--n", flags.n, "Node count");
  app->add_option("--d", flags.d, "Average degree (integer, p/q or decimal)");
  app->add_option("--graph-file", flags.graph_file, "Graph in 'n e' + 'u v' text format");
  app->add_option("--clique-size", flags.clique_size,
                  "Smallest base clique size for cliques-isolated (default d+1)");
}

void add_controller(CLI::App* app, ControllerFlags& flags) {
  app->add_option("--config", flags.config_file, "Controller config file (key=value lines)");
  app->add_option("--rho", flags.rho, "Target conflict ratio");
  app->add_option("--m0", flags.m0, "Initial m");
  app->add_option("--m-min", flags.m_min, "Lower clamp on m");
  app->add_option("--m-max", flags.m_max, "Upper clamp on m");
  app->add_option("--T", flags.T, "Rounds per control decision");
  app->add_option("--r-min", flags.r_min, "Floor on the window mean before recurrence B");
  app->add_option("--alpha0", flags.alpha0, "Recurrence B threshold on |1 - r/rho|");
  app->add_option("--alpha1", flags.alpha1, "Recurrence A threshold on |1 - r/rho|");
  app->add_option("--small-m-threshold", flags.small_m_threshold,
                  "Windows starting below this m use the small-m parameter set (0 disables)");
  app->add_option("--mode", flags.mode, "hybrid or a-only")->check(CLI::IsMember({"hybrid", "a-only"}));
}

cs::ControllerConfig build_config(const ControllerFlags& flags) {
  cs::ControllerConfig config;
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw cs::ValidationError("cannot open config file '" + flags.config_file + "'");
    cs::read_controller_config(in, config);
  }
  if (flags.rho) config.rho = *flags.rho;
  if (flags.m0) config.m0 = *flags.m0;
  if (flags.m_min) config.m_min = *flags.m_min;
  if (flags.m_max) config.m_max = *flags.m_max;
  if (flags.T) config.window.T = *flags.T;
  if (flags.r_min) config.window.r_min = *flags.r_min;
  if (flags.alpha0) config.window.alpha0 = *flags.alpha0;
  if (flags.alpha1) config.window.alpha1 = *flags.alpha1;
  if (flags.small_m_threshold) config.small_m_threshold = *flags.small_m_threshold;
  if (flags.mode) config.mode = *flags.mode == "a-only" ? cs::ControlMode::recurrence_a_only : cs::ControlMode::hybrid;
  config.validate();
  return config;
}

cs::Rational degree_of(const GraphFlags& flags) {
  if (!flags.d) throw cs::ValidationError("--d is required");
  return cs::parse_rational(*flags.d);
}

std::size_t nodes_of(const GraphFlags& flags) {
  if (!flags.n) throw cs::ValidationError("--n is required");
  return *flags.n;
}

cs::ConflictGraph build_graph(const GraphFlags& flags, std::uint64_t seed) {
  if (!flags.graph_file.empty()) {
    std::ifstream in(flags.graph_file);
    if (!in) throw cs::ValidationError("cannot open graph file '" + flags.graph_file + "'");
    return cs::read_graph(in);
  }
  if (flags.family.empty()) throw cs::ValidationError("give either --graph-file or --family with --n and --d");
  const std::size_t n = nodes_of(flags);
  const cs::Rational d = degree_of(flags);
  if (flags.family == "random") return cs::random_fixed_degree(n, d, seed);
  if (flags.family == "clique-union") {
    if (!cs::is_integer(d) || d < 0) throw cs::ValidationError("clique-union needs a non-negative integer --d");
    const std::size_t k = d.get_num().get_ui() + 1;
    if (n % k != 0) {
      throw cs::ValidationError("clique-union needs (d+1) | n; got n=" + std::to_string(n) + ", d=" + cs::to_string(d));
    }
    return cs::clique_union(n / k, k - 1);
  }
  const std::size_t min_size = flags.clique_size != 0 ? flags.clique_size
                                                      : static_cast<std::size_t>(cs::to_double(d)) + 1;
  const cs::CliqueMixture mix = cs::solve_clique_mixture(n, d, min_size);
  return cs::cliques_plus_isolated(mix.clique_sizes, mix.isolated);
}

void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(flags.out);
  std::filesystem::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw cs::ValidationError("cannot write '" + temp.string() + "'");
    file << text;
    file.close();
    if (!file) {
      std::filesystem::remove(temp);
      throw cs::ValidationError("failed writing '" + temp.string() + "'");
    }
  }
  std::filesystem::rename(temp, target);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and analysis toolkit for optimistic parallelization on conflict graphs.\n"
               "Default seed: " + std::to_string(kDefaultSeed) + " (override with $CONFLICTSIM_SEED or --seed)."};
  app.require_subcommand(1);

  CommonFlags common;
  GraphFlags graph;
  ControllerFlags controller;
  std::string m_grid;
  std::optional<std::size_t> single_m;
  std::size_t trials = 1000;
  std::size_t rounds = 300;
  std::size_t cap = cs::kDefaultOracleCap;
  std::size_t max_m = 0;
  bool closed_form = false;
  std::string profile_file;

  auto* gen = app.add_subcommand("gen", "Generate a graph in text format");
  add_common(gen, common);
  add_graph(gen, graph);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo conflict-ratio curve");
  add_common(estimate, common);
  add_graph(estimate, graph);
  estimate->add_option("--m-grid", m_grid, "m values as lo:hi:step (default 1:n:1)");
  estimate->add_option("--m", single_m, "Single m value");
  estimate->add_option("--trials", trials, "Rounds per m")->capture_default_str();
  estimate->add_flag("--closed-form", closed_form, "Emit the closed-form b_m curve instead of Monte Carlo");

  auto* oracle = app.add_subcommand("oracle", "Exact conflict-ratio curve by exhaustive enumeration");
  add_common(oracle, common);
  add_graph(oracle, graph);
  oracle->add_option("--cap", cap, "Largest n for a full curve")->capture_default_str();
  oracle->add_option("--max-m", max_m, "Only compute m = 1..max-m");

  auto* bound = app.add_subcommand("bound", "Worst-case conflict-ratio bound over an m range");
  add_common(bound, common);
  bound->add_option("--n", graph.n, "Node count")->required();
  bound->add_option("--d", graph.d, "Average degree")->required();
  bound->add_option("--m-grid", m_grid, "m values as lo:hi:step (default 1:n:1)");

  auto* control = app.add_subcommand("control", "Run the hybrid controller and emit its trace");
  add_common(control, common);
  add_graph(control, graph);
  add_controller(control, controller);
  control->add_option("--profile", profile_file, "Phase profile file (evolving workload)");
  control->add_option("--rounds", rounds, "Rounds for a static graph")->capture_default_str();

  std::size_t fig2_trials = 200;
  auto* fig2 = app.add_subcommand("fig2", "Conflict-ratio curves for graphs with equal n and d");
  add_common(fig2, common);
  fig2->add_option("--n", graph.n, "Node count (default 2000)");
  fig2->add_option("--d", graph.d, "Average degree (default 16)");
  fig2->add_option("--m-grid", m_grid, "m values as lo:hi:step (default 1:2000:50)");
  fig2->add_option("--trials", fig2_trials, "Rounds per m")->capture_default_str();
  fig2->add_option("--clique-size", graph.clique_size, "Smallest base clique size (default d+1)");

  std::size_t mu_trials = 1000;
  auto* fig3 = app.add_subcommand("fig3", "Hybrid vs recurrence-A-only controller trajectories");
  add_common(fig3, common);
  fig3->add_option("--n", graph.n, "Node count (default 2000)");
  fig3->add_option("--d", graph.d, "Average degree (default 16)");
  add_controller(fig3, controller);
  fig3->add_option("--rounds", rounds, "Rounds per trajectory")->capture_default_str();
  fig3->add_option("--trials", mu_trials, "Rounds per bisection probe for the reference mu")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t seed = resolve_seed(common);
    std::ostringstream out;

    if (gen->parsed()) {
      cs::write_graph(out, build_graph(graph, seed));
    } else if (estimate->parsed()) {
      const cs::ConflictGraph g = build_graph(graph, seed);
      std::vector<std::size_t> grid;
      if (single_m) grid = {*single_m};
      else if (!m_grid.empty()) grid = cs::parse_m_grid(m_grid);
      else grid = cs::make_m_grid(1, std::max<std::size_t>(1, g.node_count()), 1);
      if (closed_form) {
        cs::write_curve_csv(out, cs::closed_form_curve(g, grid).to_curve());
      } else {
        cs::write_curve_csv(out, cs::mc_conflict_curve(g, grid, trials, seed, common.threads));
      }
    } else if (oracle->parsed()) {
      const cs::ConflictGraph g = build_graph(graph, seed);
      cs::write_curve_csv(out, cs::oracle_conflict_curve(g, max_m, cap).to_curve());
    } else if (bound->parsed()) {
      const std::size_t n = nodes_of(graph);
      const cs::Rational d = degree_of(graph);
      const auto grid = m_grid.empty() ? cs::make_m_grid(1, n, 1) : cs::parse_m_grid(m_grid);
      const bool exact = cs::is_integer(d) && d >= 0 && d + 1 <= n;
      out << "m,exact_bound,approx_bound\n";
      for (std::size_t m : grid) {
        out << m << ',';
        if (exact) out << fmt(cs::to_double(cs::worst_case_ratio(n, d.get_num().get_ui(), m)));
        out << ',' << fmt(cs::approx_ratio(n, cs::to_double(d), m)) << '\n';
      }
    } else if (control->parsed()) {
      const cs::ControllerConfig config = build_config(controller);
      std::vector<cs::TraceRecord> trace;
      if (!profile_file.empty()) {
        std::ifstream in(profile_file);
        if (!in) throw cs::ValidationError("cannot open profile '" + profile_file + "'");
        trace = cs::run_evolving(cs::read_profile(in), config, seed);
      } else {
        trace = cs::run_static(build_graph(graph, seed), config, rounds, seed);
      }
      cs::write_trace_csv(out, trace);
    } else if (fig2->parsed()) {
      cs::Fig2Options o;
      if (graph.n) o.n = *graph.n;
      if (graph.d) o.d = cs::parse_rational(*graph.d);
      o.m_grid = m_grid.empty() ? cs::make_m_grid(1, o.n, 50) : cs::parse_m_grid(m_grid);
      o.trials = fig2_trials;
      o.seed = seed;
      o.min_clique_size = graph.clique_size;
      o.threads = common.threads;
      cs::write_fig2_csv(out, cs::fig2_table(o));
    } else if (fig3->parsed()) {
      cs::Fig3Options o;
      if (graph.n) o.n = *graph.n;
      if (graph.d) o.d = cs::parse_rational(*graph.d);
      o.rounds = rounds;
      o.mu_trials = mu_trials;
      o.seed = seed;
      o.config = build_config(controller);
      o.threads = common.threads;
      cs::write_fig3_csv(out, cs::fig3_table(o));
    }

    emit(common, out.str());
  } catch (const std::exception& e) {
    std::cerr << "conflictsim: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
