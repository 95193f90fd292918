#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "valveflow/riemann.hpp"
#include "valveflow/state.hpp"

namespace vft {

using valveflow::GasParams;
using valveflow::State;
using valveflow::WaveFan;

/// rho log-uniform in [0.1, 10], nu uniform in [-3, 3].
class PairSampler {
 public:
  explicit PairSampler(unsigned long seed) : rng_(seed) {}

  State state(const GasParams& g) {
    std::uniform_real_distribution<double> lr(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> nu(-3.0, 3.0);
    const double rho = std::exp(lr(rng_));
    return State(rho, rho * g.a() * nu(rng_));
  }

  std::pair<State, State> pair(const GasParams& g) {
    State l = state(g);
    return {l, state(g)};
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double state_gap(const State& x, const State& y) {
  return std::abs(x.rho() - y.rho()) + std::abs(x.q() - y.q());
}

/// Integral over [lo, hi] of |f(xi) - h(xi)| for two fans, split at every breakpoint.
inline double l1_distance(const WaveFan& f, const WaveFan& h, const GasParams& g, double lo,
                          double hi) {
  std::vector<double> cuts{lo, hi};
  for (double b : f.breakpoints()) cuts.push_back(b);
  for (double b : h.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], lo), b = std::min(cuts[i + 1], hi);
    if (!(b > a)) continue;
    total += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double x) {
          return state_gap(valveflow::sample(f, x, g), valveflow::sample(h, x, g));
        },
        a, b);
  }
  return total;
}

}  // namespace vft
