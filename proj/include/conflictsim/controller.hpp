#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace conflictsim {

// Recurrence A: ceil((1 - r + rho) * m).
std::size_t recurrence_a(std::size_t m, double r, double rho);

// Recurrence B: ceil((rho / max(r, r_min)) * m).
std::size_t recurrence_b(std::size_t m, double r, double rho, double r_min);

enum class ControlMode { hybrid, recurrence_a_only };

enum class Branch { none, b, a, hold };

std::string to_string(Branch branch);
std::string to_string(ControlMode mode);

// Parameters that apply to one averaging window.
struct WindowParams {
  std::size_t T = 4;     // rounds per control decision
  double r_min = 0.03;   // floor on the window mean before recurrence B
  double alpha0 = 0.25;  // |1 - r/rho| above this: recurrence B
  double alpha1 = 0.06;  // above this (and not above alpha0): recurrence A; else hold

  bool operator==(const WindowParams&) const = default;
};

struct ControllerConfig {
  double rho = 0.20;
  std::size_t m0 = 2;
  std::size_t m_min = 2;
  std::size_t m_max = 1024;
  WindowParams window;
  // Windows that start with m below the threshold use the override set,
  // since small rounds give much noisier conflict ratios.
  std::size_t small_m_threshold = 20;
  std::optional<WindowParams> small_m_overrides = WindowParams{8, 0.03, 0.40, 0.12};
  ControlMode mode = ControlMode::hybrid;

  // Throws ValidationError on any violated invariant.
  void validate() const;

  bool operator==(const ControllerConfig&) const = default;
};

// Applies key=value lines onto `config`. Keys mirror the field names: rho,
// m0, m_min, m_max, T, r_min, alpha0, alpha1, small_m_threshold, small_T,
// small_r_min, small_alpha0, small_alpha1, small_m_overrides (on|off), mode
// (hybrid|a-only). '#' starts a comment.
void read_controller_config(std::istream& in, ControllerConfig& config);

struct ControllerState {
  std::size_t m = 2;           // launch size for the next round
  double r_accum = 0.0;        // sum of conflict ratios in the open window
  std::size_t t = 0;           // rounds observed so far
  std::size_t window_rounds = 0;
  bool small_window = false;   // the open window uses small_m_overrides
  Branch last_branch = Branch::none;

  bool operator==(const ControllerState&) const = default;
};

struct Decision {
  std::size_t m_next_pre_clamp = 0;
  std::size_t m_next = 0;
  Branch branch = Branch::none;  // none on rounds that close no window
  std::optional<double> window_mean;
};

ControllerState initial_state(const ControllerConfig& config);

// One step of the hybrid control loop: fold the round's conflict ratio into
// the window and, when the window is full, average it and pick a branch
// with strict comparisons (alpha > alpha0: B, alpha > alpha1: A, else
// hold). The new m is clamped to [m_min, m_max]. Throws ValidationError if
// r_round is outside [0, 1).
std::pair<ControllerState, Decision> observe(const ControllerState& state, const ControllerConfig& config,
                                             double r_round);

class HybridController {
 public:
  explicit HybridController(ControllerConfig config);

  std::size_t launch_size() const { return state_.m; }
  const ControllerState& state() const { return state_; }
  const ControllerConfig& config() const { return config_; }

  Decision observe(double r_round);

 private:
  ControllerConfig config_;
  ControllerState state_;
};

}  // namespace conflictsim
