#include "valveflow/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace valveflow {

namespace {

constexpr double kNeutralTol = 1e-11;
constexpr double kStateTol = 1e-10;

WaveFan solve_with(const State& u_l, const State& u_r, const ValveModel* model,
                   const GasParams& g) {
  return model ? solve_coupled(u_l, u_r, *model, g) : solve_rp(u_l, u_r, g);
}

double nudge(double b) { return 1e-9 * std::max(1.0, std::abs(b)); }

// Points that probe every constant region and both sides of every jump
// without landing on a breakpoint. Breakpoints closer than the cluster width
// are one jump seen by two fans and are never probed in between.
std::vector<double> probe_points(std::vector<double> b) {
  b.push_back(0.0);
  std::sort(b.begin(), b.end());
  std::vector<std::pair<double, double>> clusters;
  for (double x : b) {
    if (!clusters.empty() && x - clusters.back().second <= 1e-10 * std::max(1.0, std::abs(x))) {
      clusters.back().second = x;
    } else {
      clusters.emplace_back(x, x);
    }
  }
  std::vector<double> out;
  out.push_back(clusters.front().first - 1.0);
  out.push_back(clusters.back().second + 1.0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto [lo, hi] = clusters[i];
    out.push_back(lo - nudge(lo));
    out.push_back(hi + nudge(hi));
    if (i + 1 < clusters.size()) out.push_back(0.5 * (hi + clusters[i + 1].first));
  }
  return out;
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

double rel(double x, double M) { return std::abs(x) / std::max(1.0, M); }

double q_margin(const State& u, const GasParams& g) {
  const double s = std::abs(u.q()) / (g.a() * u.rho());
  return s <= kNeutralTol ? std::numeric_limits<double>::infinity() : s;
}

}  // namespace

double phi(double nu, const GasParams& g) {
  return g.a2() * std::exp(nu) * (std::exp(xi_inv(nu)) - std::exp(nu));
}

double phi_argmax() {
  static const double nu_c = [] {
    const GasParams unit(1.0);
    auto neg = [&](double nu) { return -phi(nu, unit); };
    return boost::math::tools::brent_find_minima(neg, -10.0, -1.0, 52).first;
  }();
  return nu_c;
}

bool flux_neutral(const State& middle, const GasParams& g) {
  return std::abs(middle.q()) <= kNeutralTol * g.a() * middle.rho();
}

bool not_influential(const State& u, const State& v, double M, const GasParams& g) {
  if (std::abs(closed_valve_gap(u, v, g)) > M) return true;
  return flux_neutral(u == v ? u : intermediate_state(u, v, g), g);
}

RegimeReport classify(const State& u_l, const State& u_r, double M, const GasParams& g) {
  RegimeReport r;
  r.gap = closed_valve_gap(u_l, u_r, g);
  const State mid = intermediate_state(u_l, u_r, g);
  r.q_tilde = mid.q();
  r.l1_continuous = std::abs(r.gap) != M;

  if (std::abs(r.gap) <= M) {
    r.open_active = ValveMode::Active;
    r.influence = flux_neutral(mid, g) ? Influence::Neutral : Influence::Influential;
    r.coherent = true;
    r.consistent = u_l.q() >= 0.0 && u_r.q() <= 0.0 && not_influential(u_l, u_l, M, g) &&
                   not_influential(u_r, u_r, M, g);
    return r;
  }

  r.open_active = ValveMode::Open;
  const MuNu l = to_mu_nu(u_l, g);
  const MuNu rr = to_mu_nu(u_r, g);
  const double nt = to_mu_nu(mid, g).nu;
  if (nt >= 0.0) {
    if (nt > std::max(0.0, l.nu)) {
      const double crit =
          std::exp(l.mu + l.nu) * phi(-std::max(1.0, l.nu) * std::min(1.0, nt), g);
      r.o_sub = crit > M ? OpenSubset::OO1 : OpenSubset::OA1;
    } else {
      r.o_sub = OpenSubset::OO3;
    }
  } else {
    if (nt < std::min(0.0, rr.nu)) {
      const double crit =
          std::exp(rr.mu - rr.nu) * phi(-std::min(-1.0, rr.nu) * std::max(-1.0, nt), g);
      r.o_sub = crit > M ? OpenSubset::OO2 : OpenSubset::OA2;
    } else {
      r.o_sub = OpenSubset::OO4;
    }
  }
  r.coherent = r.o_sub != OpenSubset::OA1 && r.o_sub != OpenSubset::OA2;

  bool ok = not_influential(u_l, u_l, M, g) && not_influential(u_r, u_r, M, g) &&
            not_influential(u_l, mid, M, g) && not_influential(mid, u_r, M, g);
  if (ok) {
    for (const Wave& w : solve_rp(u_l, u_r, g).waves) {
      if (w.kind != WaveKind::Rarefaction) continue;
      const double lo = std::min(w.left.q(), w.right.q());
      const double hi = std::max(w.left.q(), w.right.q());
      if (lo <= 0.0 && hi >= 0.0) ok = false;
    }
  }
  r.consistent = ok;
  return r;
}

bool coherent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                            const GasParams& g) {
  const auto [minus, plus] = traces(solve_with(u_l, u_r, model, g), g);
  const WaveFan again = solve_with(minus, plus, model, g);
  for (double x : probe_points(again.breakpoints())) {
    const State& expected = x < 0.0 ? minus : plus;
    if (!nearly_equal(sample(again, x, g), expected, g, kStateTol)) return false;
  }
  return true;
}

std::vector<double> consistency_xi_grid(const WaveFan& fan, const GasParams& g) {
  std::vector<double> b = fan.breakpoints();
  b.push_back(0.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  std::vector<double> out = b;
  const double reach = std::max(std::abs(b.front()), std::abs(b.back())) + 1.0;
  out.push_back(-reach);
  out.push_back(reach);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) out.push_back(0.5 * (b[i] + b[i + 1]));

  for (const Wave& w : fan.waves) {
    if (w.kind != WaveKind::Rarefaction) continue;
    const double lo = w.speed_lo;
    const double hi = w.speed_hi;
    const double width = hi - lo;
    out.push_back(lo + width / 3.0);
    out.push_back(lo + 2.0 * width / 3.0);
    // v = 0 on a 1-rarefaction at xi = -a, on a 2-rarefaction at xi = a.
    const double star = w.family == WaveFamily::One ? -g.a() : g.a();
    if (star < lo || star > hi) continue;
    const double d = 1e-6 * std::max(1.0, width);
    if (star - d > lo) out.push_back(star - d);
    if (star + d < hi) out.push_back(star + d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool consistent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                              const GasParams& g, std::span<const double> xi_grid) {
  const WaveFan fan = solve_with(u_l, u_r, model, g);
  for (double xo : xi_grid) {
    const State cut = sample(fan, xo, g);
    const WaveFan left = solve_with(u_l, cut, model, g);
    const WaveFan right = solve_with(cut, u_r, model, g);

    std::vector<double> b = fan.breakpoints();
    append(b, left.breakpoints());
    append(b, right.breakpoints());
    b.push_back(xo);
    for (double x : probe_points(std::move(b))) {
      const State whole = sample(fan, x, g);
      const State& lhs_expected = x < xo ? whole : cut;
      const State& rhs_expected = x < xo ? cut : whole;
      if (!nearly_equal(sample(left, x, g), lhs_expected, g, kStateTol)) return false;
      if (!nearly_equal(sample(right, x, g), rhs_expected, g, kStateTol)) return false;
    }
  }
  return true;
}

bool consistent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                              const GasParams& g) {
  const std::vector<double> grid = consistency_xi_grid(solve_with(u_l, u_r, model, g), g);
  return consistent_by_definition(u_l, u_r, model, g, grid);
}

double invariant_domain_slack(const State& u, const State& u0, const GasParams& g) {
  return std::min(riemann_z(u, g) - riemann_z(u0, g), riemann_w(u0, g) - riemann_w(u, g));
}

bool in_invariant_domain(const State& u, const State& u0, const GasParams& g) {
  return invariant_domain_slack(u, u0, g) >= 0.0;
}

bool ch_prime(const State& u_l, const State& u_r, double M, const GasParams& g) {
  const MuNu l = to_mu_nu(u_l, g);
  const MuNu r = to_mu_nu(u_r, g);
  if (!(r.nu < 0.0 && 0.0 < l.nu)) return false;
  const double left = std::exp(l.mu + l.nu) * phi(-l.nu, g);
  const double right = std::exp(r.mu - r.nu) * phi(r.nu, g);
  return std::min(left, right) > M;
}

double coherence_margin(const State& u_l, const State& u_r, double M, const GasParams& g) {
  const double gap = closed_valve_gap(u_l, u_r, g);
  double m = rel(std::abs(gap) - M, M);
  if (std::abs(gap) <= M) return m;

  const MuNu l = to_mu_nu(u_l, g);
  const MuNu r = to_mu_nu(u_r, g);
  const double nt = to_mu_nu(intermediate_state(u_l, u_r, g), g).nu;
  m = std::min(m, std::abs(nt));
  if (nt > 0.0) {
    m = std::min(m, std::abs(nt - l.nu));
    if (nt > std::max(0.0, l.nu)) {
      const double crit =
          std::exp(l.mu + l.nu) * phi(-std::max(1.0, l.nu) * std::min(1.0, nt), g);
      m = std::min(m, rel(crit - M, M));
    }
  } else {
    m = std::min(m, std::abs(nt - r.nu));
    if (nt < std::min(0.0, r.nu)) {
      const double crit =
          std::exp(r.mu - r.nu) * phi(-std::min(-1.0, r.nu) * std::max(-1.0, nt), g);
      m = std::min(m, rel(crit - M, M));
    }
  }
  const WaveFan fan = solve_rp(u_l, u_r, g);
  for (const Wave& w : fan.waves) {
    m = std::min({m, std::abs(w.speed_lo) / g.a(), std::abs(w.speed_hi) / g.a()});
  }
  const auto [minus, plus] = traces(fan, g);
  m = std::min(m, rel(std::abs(closed_valve_gap(minus, plus, g)) - M, M));
  return m;
}

double consistency_margin(const State& u_l, const State& u_r, double M, const GasParams& g) {
  double m = coherence_margin(u_l, u_r, M, g);
  m = std::min({m, q_margin(u_l, g), q_margin(u_r, g)});
  const State mid = intermediate_state(u_l, u_r, g);
  const std::pair<State, State> pairs[] = {{u_l, u_l}, {u_r, u_r}, {u_l, mid}, {mid, u_r}};
  for (const auto& [x, y] : pairs) {
    m = std::min(m, rel(std::abs(closed_valve_gap(x, y, g)) - M, M));
    m = std::min(m, q_margin(x == y ? x : intermediate_state(x, y, g), g));
  }
  for (const Wave& w : solve_rp(u_l, u_r, g).waves) {
    if (w.kind != WaveKind::Rarefaction) continue;
    m = std::min({m, q_margin(w.left, g), q_margin(w.right, g)});
  }
  return m;
}

std::vector<PairReport> classify_pairs(std::span<const std::pair<State, State>> pairs, double M,
                                       const GasParams& g, Exec exec) {
  const long n = static_cast<long>(pairs.size());
  std::vector<PairReport> out(pairs.size());
  bool failed = false;
  std::string what;
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (long i = 0; i < n; ++i) {
    try {
      const auto& [l, r] = pairs[i];
      out[i] = PairReport{classify(l, r, M, g), ch_prime(l, r, M, g)};
    } catch (const std::exception& e) {
#pragma omp critical(valveflow_classify_error)
      {
        failed = true;
        what = e.what();
      }
    }
  }
  if (failed) throw DomainError("classification failed: " + what);
  return out;
}

const char* to_string(Influence i) {
  switch (i) {
    case Influence::Neutral: return "A_N";
    case Influence::Influential: return "A_I";
    case Influence::NotApplicable: break;
  }
  return "n/a";
}

const char* to_string(OpenSubset s) {
  switch (s) {
    case OpenSubset::OO1: return "O_O^1";
    case OpenSubset::OO2: return "O_O^2";
    case OpenSubset::OO3: return "O_O^3";
    case OpenSubset::OO4: return "O_O^4";
    case OpenSubset::OA1: return "O_A^1";
    case OpenSubset::OA2: return "O_A^2";
    case OpenSubset::NotApplicable: break;
  }
  return "n/a";
}

std::string regime_label(const RegimeReport& r) {
  return r.open_active == ValveMode::Active ? to_string(r.influence) : to_string(r.o_sub);
}

}  // namespace valveflow
