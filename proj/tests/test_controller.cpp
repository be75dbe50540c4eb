#include <cmath>
#include <sstream>

#include "conflictsim/controller.hpp"
#include "conflictsim/errors.hpp"
#include "conflictsim/random.hpp"
#include "doctest.h"

using namespace conflictsim;

namespace {

ControllerConfig large_m_config(std::size_t m0, double rho) {
  ControllerConfig c;
  c.m0 = m0;
  c.rho = rho;
  return c;
}

Decision feed(HybridController& ctl, std::initializer_list<double> rs) {
  Decision d;
  for (double r : rs) d = ctl.observe(r);
  return d;
}

}  // namespace

TEST_CASE("recurrence A") {
  CHECK(recurrence_a(100, 0.25, 0.20) == 95);
  CHECK(recurrence_a(10, 0.05, 0.20) == 12);
  for (std::size_t m : {2u, 17u, 333u}) {
    for (double rho : {0.2, 0.24, 0.3}) CHECK(recurrence_a(m, rho, rho) == m);
  }
}

TEST_CASE("recurrence B") {
  CHECK(recurrence_b(100, 0.5, 0.25, 0.03) == 50);
  CHECK(recurrence_b(10, 0.0, 0.24, 0.03) == 80);
  CHECK(recurrence_b(4, 0.24, 0.24, 0.03) == 4);
}

TEST_CASE("defaults are the published tunables") {
  const ControllerConfig c;
  CHECK(c.m0 == 2);
  CHECK(c.m_max == 1024);
  CHECK(c.m_min == 2);
  CHECK(c.window.T == 4);
  CHECK(c.window.r_min == 0.03);
  CHECK(c.window.alpha0 == 0.25);
  CHECK(c.window.alpha1 == 0.06);
  CHECK(c.small_m_threshold == 20);
  CHECK(c.small_m_overrides == WindowParams{8, 0.03, 0.40, 0.12});
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("observe: decisions close every T rounds") {
  HybridController ctl(large_m_config(100, 0.25));
  for (int i = 0; i < 3; ++i) {
    const Decision d = ctl.observe(0.5);
    CHECK(d.branch == Branch::none);
    CHECK_FALSE(d.window_mean.has_value());
    CHECK(d.m_next == 100);
  }
  const Decision d = ctl.observe(0.5);
  CHECK(d.branch == Branch::b);
  CHECK(*d.window_mean == 0.5);
  CHECK(d.m_next == 50);
  CHECK(ctl.state().r_accum == 0.0);
  CHECK(ctl.state().t == 4);
}

TEST_CASE("observe: dead zone holds") {
  HybridController ctl(large_m_config(100, 0.25));
  const Decision d = feed(ctl, {0.25, 0.25, 0.25, 0.25});
  CHECK(d.branch == Branch::hold);
  CHECK(d.m_next == 100);
}

TEST_CASE("observe: alpha equal to alpha0 falls through to recurrence A") {
  HybridController ctl(large_m_config(100, 0.20));
  const Decision d = feed(ctl, {0.25, 0.25, 0.25, 0.25});
  CHECK(d.branch == Branch::a);
  CHECK(d.m_next == 95);
}

TEST_CASE("observe clamps into [m_min, m_max]") {
  ControllerConfig c = large_m_config(500, 0.2);
  HybridController up(c);
  const Decision d = feed(up, {0, 0, 0, 0});
  CHECK(d.m_next_pre_clamp == 3334);
  CHECK(d.m_next == 1024);

  c.m0 = 20;
  HybridController down(c);
  const Decision e = feed(down, {0.95, 0.95, 0.95, 0.95});
  CHECK(e.m_next_pre_clamp == 5);
  CHECK(e.m_next == 5);
  c.m_min = 8;
  HybridController floor_case(c);
  CHECK(feed(floor_case, {0.95, 0.95, 0.95, 0.95}).m_next == 8);
}

TEST_CASE("small-m windows use the override parameters") {
  ControllerConfig c;  // m0 = 2, below the threshold of 20
  HybridController ctl(c);
  for (int i = 0; i < 7; ++i) CHECK(ctl.observe(0.0).branch == Branch::none);
  const Decision d = ctl.observe(0.0);
  CHECK(d.branch == Branch::b);
  CHECK(d.m_next == 14);  // ceil(0.2 / 0.03 * 2)

  c.small_m_overrides.reset();
  HybridController plain(c);
  CHECK(feed(plain, {0, 0, 0, 0}).branch == Branch::b);
}

TEST_CASE("A-only mode never takes recurrence B") {
  ControllerConfig c = large_m_config(100, 0.25);
  c.mode = ControlMode::recurrence_a_only;
  HybridController ctl(c);
  const Decision d = feed(ctl, {0.5, 0.5, 0.5, 0.5});
  CHECK(d.branch == Branch::a);
  CHECK(d.m_next == 75);
}

TEST_CASE("observe rejects impossible ratios") {
  HybridController ctl(ControllerConfig{});
  CHECK_THROWS_AS(ctl.observe(1.0), ValidationError);
  CHECK_THROWS_AS(ctl.observe(-0.1), ValidationError);
  CHECK_THROWS_AS(ctl.observe(std::nan("")), ValidationError);
}

TEST_CASE("config validation") {
  auto bad = [](auto mutate) {
    ControllerConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.rho = 0; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.m_min = 1; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.m0 = 2000; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.window.T = 0; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.window.alpha1 = 0.3; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.window.r_min = 0.5; }).validate(), ValidationError);
  CHECK_THROWS_AS(bad([](ControllerConfig& c) { c.small_m_overrides->alpha0 = 0.01; }).validate(), ValidationError);
}

TEST_CASE("config file") {
  std::istringstream in(
      "# tuned for a small run\n"
      "rho = 0.25\n"
      "T=6\n"
      "m_max=512   # cap\n"
      "small_alpha1=0.1\n"
      "mode=a-only\n");
  ControllerConfig c;
  read_controller_config(in, c);
  CHECK(c.rho == 0.25);
  CHECK(c.window.T == 6);
  CHECK(c.m_max == 512);
  CHECK(c.small_m_overrides->alpha1 == 0.1);
  CHECK(c.mode == ControlMode::recurrence_a_only);

  std::istringstream off("small_m_overrides=off\n");
  read_controller_config(off, c);
  CHECK_FALSE(c.small_m_overrides.has_value());

  std::istringstream unknown("speed=3\n");
  CHECK_THROWS_AS(read_controller_config(unknown, c), ValidationError);
  std::istringstream junk("rho=fast\n");
  CHECK_THROWS_AS(read_controller_config(junk, c), ValidationError);
}

TEST_CASE("same inputs give the same trajectory") {
  RandomStream rng(4);
  std::vector<double> rs;
  for (int i = 0; i < 500; ++i) rs.push_back(0.6 * rng.unit());
  HybridController a(ControllerConfig{});
  HybridController b(ControllerConfig{});
  for (double r : rs) {
    a.observe(r);
    b.observe(r);
    CHECK(a.state() == b.state());
  }
}

TEST_CASE("one B step lands on the operating point of a linear plant") {
  for (double slope : {0.001, 0.004, 0.0123}) {
    for (std::size_t m0 : {20u, 35u, 300u}) {
      ControllerConfig c;
      c.m0 = m0;
      c.small_m_overrides.reset();
      HybridController ctl(c);
      const double r = slope * static_cast<double>(m0);
      if (r >= 1 || std::abs(1 - r / c.rho) <= c.window.alpha0 || r < c.window.r_min) continue;
      const Decision d = feed(ctl, {r, r, r, r});
      CAPTURE(slope);
      CAPTURE(m0);
      CHECK(d.branch == Branch::b);
      const double mu = c.rho / slope;
      CHECK(static_cast<double>(d.m_next) >= mu - 1e-9);
      CHECK(static_cast<double>(d.m_next) < mu + 1.0);
    }
  }
}

TEST_CASE("fuzzed observe calls respect clamping, dead zone and direction") {
  RandomStream rng(2718);
  int violations = 0;
  for (int run = 0; run < 200; ++run) {
    ControllerConfig c;
    c.rho = 0.1 + 0.3 * rng.unit();
    c.m_max = 50 + rng.below(2000);
    c.m0 = 2 + rng.below(c.m_max - 1);
    ControllerState s = initial_state(c);
    for (int i = 0; i < 100; ++i) {
      const double r = 0.999 * rng.unit();
      const std::size_t before = s.m;
      auto [next, d] = observe(s, c, r);
      if (next.m < c.m_min || next.m > c.m_max) ++violations;
      if (d.window_mean) {
        const bool small = s.window_rounds == 0 ? (before < c.small_m_threshold) : s.small_window;
        const WindowParams& p = small ? *c.small_m_overrides : c.window;
        const double mean = *d.window_mean;
        if (std::abs(1 - mean / c.rho) <= p.alpha1 && d.m_next != before) ++violations;
        if (mean > c.rho * (1 + p.alpha1) && d.m_next > before) ++violations;
        if (mean < c.rho * (1 - p.alpha1) && before < c.m_max && d.m_next < before) ++violations;
      }
      s = next;
    }
  }
  CHECK(violations == 0);
}
