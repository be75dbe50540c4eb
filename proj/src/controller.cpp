#include "conflictsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <string>

#include "conflictsim/errors.hpp"

namespace conflictsim {

namespace {

// Ceiling that ignores representation noise: 94.99999999999999 and
// 95.00000000000001 both map to 95.
std::size_t snapped_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

void validate_window(const WindowParams& p, double rho, const char* label) {
  const std::string where(label);
  if (p.T < 1) throw ValidationError(where + "T must be at least 1");
  if (!(p.alpha1 > 0.0 && p.alpha1 < p.alpha0)) throw ValidationError(where + "thresholds need 0 < alpha1 < alpha0");
  if (!(p.r_min > 0.0 && p.r_min < rho)) throw ValidationError(where + "r_min must lie in (0, rho)");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw ValidationError("config key '" + key + "': not a number: '" + value + "'");
  return x;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.front() == '-') {
    throw ValidationError("config key '" + key + "': not a non-negative integer: '" + value + "'");
  }
  return static_cast<std::size_t>(x);
}

}  // namespace

std::size_t recurrence_a(std::size_t m, double r, double rho) {
  return snapped_ceil((1.0 - r + rho) * static_cast<double>(m));
}

std::size_t recurrence_b(std::size_t m, double r, double rho, double r_min) {
  if (r < r_min) r = r_min;
  return snapped_ceil(rho / r * static_cast<double>(m));
}

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::none:
      return "none";
    case Branch::b:
      return "B";
    case Branch::a:
      return "A";
    case Branch::hold:
      return "hold";
  }
  return "none";
}

std::string to_string(ControlMode mode) { return mode == ControlMode::hybrid ? "hybrid" : "a-only"; }

void ControllerConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("rho must lie in (0, 1)");
  if (!(m_min >= 2 && m_min <= m0 && m0 <= m_max)) {
    throw ValidationError("need 2 <= m_min <= m0 <= m_max (m_min=" + std::to_string(m_min) +
                          ", m0=" + std::to_string(m0) + ", m_max=" + std::to_string(m_max) + ")");
  }
  validate_window(window, rho, "");
  if (small_m_overrides) validate_window(*small_m_overrides, rho, "small-m override: ");
}

void read_controller_config(std::istream& in, ControllerConfig& config) {
  std::string line;
  WindowParams small = config.small_m_overrides.value_or(WindowParams{8, 0.03, 0.40, 0.12});
  bool use_small = config.small_m_overrides.has_value();
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line without '=': '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ValidationError("config key '" + key + "' has no value");

    if (key == "rho") config.rho = parse_double(key, value);
    else if (key == "m0") config.m0 = parse_count(key, value);
    else if (key == "m_min") config.m_min = parse_count(key, value);
    else if (key == "m_max") config.m_max = parse_count(key, value);
    else if (key == "T") config.window.T = parse_count(key, value);
    else if (key == "r_min") config.window.r_min = parse_double(key, value);
    else if (key == "alpha0") config.window.alpha0 = parse_double(key, value);
    else if (key == "alpha1") config.window.alpha1 = parse_double(key, value);
    else if (key == "small_m_threshold") config.small_m_threshold = parse_count(key, value);
    else if (key == "small_T") small.T = parse_count(key, value);
    else if (key == "small_r_min") small.r_min = parse_double(key, value);
    else if (key == "small_alpha0") small.alpha0 = parse_double(key, value);
    else if (key == "small_alpha1") small.alpha1 = parse_double(key, value);
    else if (key == "small_m_overrides") {
      if (value == "on") use_small = true;
      else if (value == "off") use_small = false;
      else throw ValidationError("small_m_overrides must be on or off, got '" + value + "'");
    } else if (key == "mode") {
      if (value == "hybrid") config.mode = ControlMode::hybrid;
      else if (value == "a-only") config.mode = ControlMode::recurrence_a_only;
      else throw ValidationError("mode must be hybrid or a-only, got '" + value + "'");
    } else {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  config.small_m_overrides = use_small ? std::optional<WindowParams>(small) : std::nullopt;
}

ControllerState initial_state(const ControllerConfig& config) {
  ControllerState s;
  s.m = std::clamp(config.m0, config.m_min, config.m_max);
  return s;
}

std::pair<ControllerState, Decision> observe(const ControllerState& state, const ControllerConfig& config,
                                             double r_round) {
  if (!(r_round >= 0.0 && r_round < 1.0)) {
    throw ValidationError("observed conflict ratio " + std::to_string(r_round) + " outside [0, 1)");
  }
  ControllerState next = state;
  if (next.window_rounds == 0) {
    next.small_window = config.small_m_overrides.has_value() && next.m < config.small_m_threshold;
  }
  const WindowParams& p = next.small_window ? *config.small_m_overrides : config.window;

  ++next.t;
  next.r_accum += r_round;
  ++next.window_rounds;

  Decision d;
  d.m_next_pre_clamp = next.m;
  d.m_next = next.m;
  if (next.window_rounds < p.T) return {next, d};

  const double r = next.r_accum / static_cast<double>(p.T);
  const double alpha = std::abs(1.0 - r / config.rho);
  std::size_t m = next.m;
  if (config.mode == ControlMode::hybrid && alpha > p.alpha0) {
    d.branch = Branch::b;
    m = recurrence_b(m, r, config.rho, p.r_min);
  } else if (alpha > p.alpha1) {
    d.branch = Branch::a;
    m = recurrence_a(m, r, config.rho);
  } else {
    d.branch = Branch::hold;
  }
  next.r_accum = 0.0;
  next.window_rounds = 0;
  next.last_branch = d.branch;
  next.m = std::clamp(m, config.m_min, config.m_max);

  d.m_next_pre_clamp = m;
  d.m_next = next.m;
  d.window_mean = r;
  return {next, d};
}

HybridController::HybridController(ControllerConfig config) : config_(std::move(config)) {
  config_.validate();
  state_ = initial_state(config_);
}

Decision HybridController::observe(double r_round) {
  auto [next, decision] = conflictsim::observe(state_, config_, r_round);
  state_ = next;
  return decision;
}

}  // namespace conflictsim
