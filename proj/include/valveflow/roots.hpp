#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace valveflow {

struct RootResult {
  double x;
  int iterations;
  bool converged;
};

/// Newton on a sign-changing bracket [lo, hi] of a monotone f (Boost's
/// newton_raphson_iterate, which bisects when a step leaves the bracket).
template <class F, class DF>
RootResult solve_bracketed(F&& f, DF&& df, double lo, double hi, double xtol = 1e-13,
                           int max_iter = 200) {
  if (lo > hi) std::swap(lo, hi);
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0, true};
  if (fhi == 0.0) return {hi, 0, true};
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const int digits = std::clamp(static_cast<int>(-std::log2(xtol / scale)), 1, 52);
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const double x = boost::math::tools::newton_raphson_iterate(
      [&](double t) { return std::make_pair(f(t), df(t)); }, 0.5 * (lo + hi), lo, hi, digits, iters);
  return {x, static_cast<int>(iters), iters < static_cast<std::uintmax_t>(max_iter)};
}

/// Bisection only, for residuals without a derivative.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double xtol = 1e-13, int max_iter = 400) {
  if (f(lo) == 0.0) return {lo, 0, true};
  if (f(hi) == 0.0) return {hi, 0, true};
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto tol = [xtol](double a, double b) { return std::abs(b - a) < xtol; };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, iters);
  return {0.5 * (a + b), static_cast<int>(iters), iters < static_cast<std::uintmax_t>(max_iter)};
}

}  // namespace valveflow
