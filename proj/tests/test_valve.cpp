#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/tools/roots.hpp>

#include "support.hpp"
#include "valveflow/lax_curves.hpp"
#include "valveflow/riemann.hpp"
#include "valveflow/valve.hpp"

using namespace valveflow;

namespace {

const double kGolden2 = (3.0 + std::sqrt(5.0)) / 2.0;

// Fixed decision, for exercising wrappers.
class FixedValve final : public ValveModel {
 public:
  explicit FixedValve(ValveDecision d) : d_(d) {}
  ValveDecision decide(const State&, const State&, const GasParams&) const override { return d_; }
  std::string type() const override { return "fixed"; }

 private:
  ValveDecision d_;
};

ValvePtr fixed(ValveDecision d) { return std::make_shared<FixedValve>(d); }

void check_half_fans(const WaveFan& fan, const ValveDecision& d, const GasParams& g) {
  const auto [m, p] = traces(fan, g);
  const double scale = std::max(1.0, g.a() * std::max(m.rho(), p.rho()));
  CHECK(std::abs(m.q() - p.q()) <= 1e-11 * scale);
  if (d.mode == ValveMode::Active) {
    CHECK(m.q() == d.q_m);
    CHECK(p.q() == d.q_m);
  }
  for (const Wave& w : fan.waves) {
    if (w.kind == WaveKind::UnderCompressive) {
      CHECK(w.speed_lo == 0.0);
      CHECK(w.speed_hi == 0.0);
      CHECK(w.left.q() == w.right.q());
      CHECK(w.family == WaveFamily::Stationary);
    }
  }
  // Each half equals the classical solution of its own data.
  const WaveFan lf = solve_rp(fan.left_datum, m, g);
  const WaveFan rf = solve_rp(p, fan.right_datum, g);
  for (double xi : {-7.0, -2.0, -1.1, -0.5, -0.01}) {
    const double s = std::max(1.0, sample(fan, xi, g).rho());
    CHECK(vft::state_gap(sample(fan, xi, g), sample(lf, xi, g)) <= 1e-10 * s);
  }
  for (double xi : {0.01, 0.5, 1.1, 2.0, 7.0}) {
    const double s = std::max(1.0, sample(fan, xi, g).rho());
    CHECK(vft::state_gap(sample(fan, xi, g), sample(rf, xi, g)) <= 1e-10 * s);
  }
  if (d.mode == ValveMode::Active) {
    // Re-solving lands within rounding of the trace; ignore the residual sliver wave.
    auto strong = [](const Wave& w) {
      return vft::state_gap(w.left, w.right) > 1e-9 * std::max(1.0, w.left.rho() + std::abs(w.left.q()));
    };
    int nl = 0, nr = 0;
    for (const Wave& w : lf.waves) {
      if (!strong(w)) continue;
      ++nl;
      CHECK(w.family == WaveFamily::One);
      CHECK(w.speed_hi <= 1e-12);
    }
    for (const Wave& w : rf.waves) {
      if (!strong(w)) continue;
      ++nr;
      CHECK(w.family == WaveFamily::Two);
      CHECK(w.speed_lo >= -1e-12);
    }
    CHECK(nl <= 1);
    CHECK(nr <= 1);
    for (const Wave& w : fan.waves) {
      if (w.family == WaveFamily::One) CHECK(w.speed_hi <= 0.0);
      if (w.family == WaveFamily::Two) CHECK(w.speed_lo >= 0.0);
    }
  }
}

}  // namespace

TEST_CASE("electronic valve decisions") {
  const GasParams g(1.0);
  const State l(1.0, 0.0), r(2.0, 0.0);
  const ValveDecision on = ElectronicValve(1.5).decide(l, r, g);
  CHECK(on.mode == ValveMode::Active);
  CHECK(on.q_m == 0.0);
  CHECK(on.gap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ElectronicValve(0.5).decide(l, r, g).mode == ValveMode::Open);
  for (double M : {1e-6, 1.0, 50.0}) CHECK(ElectronicValve(M).decide(l, l, g).mode == ValveMode::Active);
  CHECK_THROWS_AS(ElectronicValve(0.0), DomainError);
  CHECK_THROWS_AS(ElectronicValve(-1.0), DomainError);
}

TEST_CASE("electronic valve boundary is active") {
  const GasParams g(1.0);
  const State l(1.0, 0.0), r(2.0, 0.0);
  const double gap = std::abs(closed_valve_gap(l, r, g));
  CHECK(ElectronicValve(gap).decide(l, r, g).mode == ValveMode::Active);
  CHECK(ElectronicValve(std::nextafter(gap, 0.0)).decide(l, r, g).mode == ValveMode::Open);
}

TEST_CASE("closed valve gap uses hat and check pressures") {
  vft::PairSampler rng(41);
  const GasParams g(1.4);
  for (int i = 0; i < 500; ++i) {
    const auto [l, r] = rng.pair(g);
    const double expect = g.pressure(check_state(0.0, r, g).rho()) - g.pressure(hat_state(0.0, l, g).rho());
    CHECK(closed_valve_gap(l, r, g) == expect);
  }
}

TEST_CASE("spring valve decisions") {
  const GasParams g(1.0);
  CHECK(SpringValve(0.1).decide(State(1.0, 5.0), State(1.0, -5.0), g).mode == ValveMode::Active);
  CHECK(SpringValve(0.5).decide(State(1.0, 0.0), State(2.0, 0.0), g).mode == ValveMode::Open);
  CHECK(SpringValve(0.5).decide(State(1.0, 0.0), State(1.4, 0.0), g).mode == ValveMode::Active);
  CHECK_THROWS_AS(SpringValve(0.0), DomainError);
}

TEST_CASE("one-way valve") {
  const GasParams g(1.0);
  const State l(1.0, 0.0), r(2.0, 0.0);
  const auto active0 = OneWayValve(fixed(ValveDecision::active(0.0, 0.2))).decide(l, r, g);
  CHECK(active0.mode == ValveMode::Active);
  CHECK(active0.q_m == 0.0);

  const auto forced = OneWayValve(std::make_shared<ElectronicValve>(0.5)).decide(l, r, g);
  CHECK(forced.mode == ValveMode::Active);
  CHECK(forced.q_m == 0.0);

  const auto passes = OneWayValve(std::make_shared<ElectronicValve>(0.5)).decide(r, l, g);
  CHECK(passes.mode == ValveMode::Open);

  const auto clamped = OneWayValve(fixed(ValveDecision::active(-0.1, 0.0))).decide(l, l, g);
  CHECK(clamped.mode == ValveMode::Active);
  CHECK(clamped.q_m == 0.0);

  const auto positive = OneWayValve(fixed(ValveDecision::active(0.1, 0.0))).decide(l, l, g);
  CHECK(positive.q_m == 0.1);
  CHECK_THROWS_AS(OneWayValve(nullptr), DomainError);
}

TEST_CASE("one-way valve never lets flux through backwards") {
  vft::PairSampler rng(42);
  const GasParams g(1.0);
  const OneWayValve v(std::make_shared<ElectronicValve>(0.3));
  for (int i = 0; i < 3000; ++i) {
    const auto [l, r] = rng.pair(g);
    const WaveFan fan = solve_coupled(l, r, v, g);
    const auto [m, p] = traces(fan, g);
    CHECK(m.q() >= 0.0);
    CHECK(p.q() >= 0.0);
  }
}

TEST_CASE("pressure drop valve") {
  const GasParams g(1.0);
  const PressureDropValve v(1.0);
  const auto same = v.decide(State(1.0, 0.0), State(1.0, 0.0), g);
  CHECK(same.mode == ValveMode::Active);
  CHECK(same.q_m == 0.0);

  const State l(2.0, 0.0), r(1.0, 0.0);
  const auto d = v.decide(l, r, g);
  REQUIRE(d.mode == ValveMode::Active);
  const double qbar = bar_state(l, g).q();
  CHECK(d.q_m > 0.0);
  CHECK(d.q_m < qbar);
  CHECK(std::abs(v.residual(d.q_m, l, r, g)) <= 1e-10 * g.pressure(l.rho()));

  // Independent oracle: bisection on the law written out with the closed-valve maps.
  auto law = [&](double q) {
    const double ph = g.pressure(hat_state(q, l, g).rho());
    const double pc = g.pressure(check_state(q, r, g).rho());
    return pc - (ph - g.a2() * q * q / ph);
  };
  CHECK(law(0.0) < 0.0);
  CHECK(law(qbar) > 0.0);
  auto tol = [](double a, double b) { return std::abs(a - b) < 1e-14; };
  const auto [lo, hi] = boost::math::tools::bisect(law, 0.0, qbar, tol);
  CHECK(d.q_m == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));

  const auto shut = v.decide(State(1.0, 0.0), State(2.0, 0.0), g);
  CHECK(v.residual(0.0, State(1.0, 0.0), State(2.0, 0.0), g) == doctest::Approx(1.0));
  CHECK(shut.mode == ValveMode::Active);
  CHECK(shut.q_m == 0.0);
  CHECK_THROWS_AS(PressureDropValve(0.0), DomainError);
}

TEST_CASE("pressure drop flux shrinks with the loss coefficient") {
  const GasParams g(1.0);
  const State l(3.0, 0.2), r(1.0, -0.1);
  double prev = INFINITY;
  for (double k : {0.1, 0.5, 1.0, 4.0, 20.0}) {
    const auto d = PressureDropValve(k).decide(l, r, g);
    REQUIRE(d.mode == ValveMode::Active);
    CHECK(d.q_m < prev);
    prev = d.q_m;
  }
}

TEST_CASE("coupled solver examples") {
  const GasParams g(1.0);
  const State l(1.0, 0.0), r(2.0, 0.0);
  const WaveFan closed = solve_coupled(l, r, ElectronicValve(1.5), g);
  REQUIRE(closed.waves.size() == 1);
  CHECK(closed.waves[0].kind == WaveKind::UnderCompressive);
  CHECK(closed.waves[0].left == l);
  CHECK(closed.waves[0].right == r);
  const auto [m, p] = traces(closed, g);
  CHECK(m == l);
  CHECK(p == r);

  const WaveFan open = solve_coupled(l, r, ElectronicValve(0.5), g);
  const WaveFan classic = solve_rp(l, r, g);
  REQUIRE(open.waves.size() == classic.waves.size());
  for (std::size_t k = 0; k < open.waves.size(); ++k) {
    CHECK(open.waves[k].left == classic.waves[k].left);
    CHECK(open.waves[k].right == classic.waves[k].right);
    CHECK(open.waves[k].speed_lo == classic.waves[k].speed_lo);
    CHECK(open.waves[k].speed_hi == classic.waves[k].speed_hi);
  }

  const State a(1.0, 1.0), b(1.0, -1.0);
  for (double M : {1e-3, 2.0, 10.0}) {
    const WaveFan f = solve_coupled(a, b, ElectronicValve(M), g);
    REQUIRE(f.waves.size() == 2);
    CHECK(f.waves[0].kind == WaveKind::Shock);
    CHECK(f.waves[1].kind == WaveKind::Shock);
    CHECK(f.waves[0].right.rho() == doctest::Approx(kGolden2).epsilon(1e-13));
    CHECK(f.waves[0].right.q() == 0.0);
    const double s = std::sqrt(kGolden2);
    CHECK(f.waves[0].speed_lo == doctest::Approx(1.0 - s).epsilon(1e-12));
    CHECK(f.waves[1].speed_lo == doctest::Approx(-1.0 + s).epsilon(1e-12));
  }
}

TEST_CASE("active fans are coupling solutions") {
  vft::PairSampler rng(43);
  for (double a : {0.7, 1.0, 2.0}) {
    const GasParams g(a);
    for (double M : {0.1, 1.0, 5.0}) {
      const ElectronicValve v(M * a * a);
      for (int i = 0; i < 300; ++i) {
        const auto [l, r] = rng.pair(g);
        const ValveDecision d = v.decide(l, r, g);
        const WaveFan fan = solve_coupled(l, r, d, g);
        INFO("l=" << to_string(l) << " r=" << to_string(r) << " M=" << M);
        check_half_fans(fan, d, g);
      }
    }
  }
}

TEST_CASE("active fans with nonzero flux") {
  vft::PairSampler rng(44);
  const GasParams g(1.0);
  for (int i = 0; i < 2000; ++i) {
    const auto [l, r] = rng.pair(g);
    const FluxWindow w = flux_window_minus(l, g).intersect(flux_window_plus(r, g));
    if (!(w.hi > w.lo)) continue;
    const double lo = std::max(w.lo, -5.0), hi = std::min(w.hi, 5.0);
    const double qm = rng.uniform(lo, hi);
    const ValveDecision d = ValveDecision::active(qm, 0.0);
    const WaveFan fan = solve_coupled(l, r, d, g);
    INFO("l=" << to_string(l) << " r=" << to_string(r) << " q_m=" << qm);
    check_half_fans(fan, d, g);

    // Momentum jump at the valve equals the valve force.
    const State h = hat_state(qm, l, g), c = check_state(qm, r, g);
    const auto [m, p] = traces(fan, g);
    const double jump = flux(p, g).momentum - flux(m, g).momentum;
    const double force = (g.pressure(c.rho()) + qm * qm / c.rho()) - (g.pressure(h.rho()) + qm * qm / h.rho());
    CHECK(jump == doctest::Approx(force).epsilon(1e-12).scale(1.0));
    const bool uc = std::any_of(fan.waves.begin(), fan.waves.end(),
                                [](const Wave& wv) { return wv.kind == WaveKind::UnderCompressive; });
    CHECK(uc == !is_zero_strength(h, c, g));
  }
}

TEST_CASE("decision outside the flux window is rejected") {
  const GasParams g(1.0);
  CHECK_THROWS_AS(solve_coupled(State(1.0, 0.0), State(1.0, 0.0), ValveDecision::active(1.0, 0.0), g),
                  DomainError);
}

TEST_CASE("mode names") {
  CHECK(std::string(to_string(ValveMode::Open)) == "Open");
  CHECK(std::string(to_string(ValveMode::Active)) == "Active");
  CHECK(ElectronicValve(1.0).type() == "electronic");
  CHECK(PressureDropValve(1.0).type() == "pressure_drop");
}
