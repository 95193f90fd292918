#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "valveflow/exec.hpp"
#include "valveflow/riemann.hpp"
#include "valveflow/state.hpp"
#include "valveflow/valve.hpp"

namespace valveflow {

/// Regime analysis of the two-way electronic pressure valve with threshold M.

enum class Influence { NotApplicable, Neutral, Influential };

/// Subsets of the open regime: O_O^1..4 keep the valve open when the solver is
/// re-applied to its own traces, O_A^1..2 flip it to active (chattering).
enum class OpenSubset { NotApplicable, OO1, OO2, OO3, OO4, OA1, OA2 };

struct RegimeReport {
  ValveMode open_active = ValveMode::Open;
  Influence influence = Influence::NotApplicable;
  OpenSubset o_sub = OpenSubset::NotApplicable;
  bool coherent = false;
  bool consistent = false;
  bool l1_continuous = false;
  double gap = 0.0;      // p_check(0, u_r) - p_hat(0, u_l)
  double q_tilde = 0.0;  // flux of the classical middle state
};

/// a^2 e^nu (e^{Xi^{-1}(nu)} - e^nu): the closed-valve pressure gap of the
/// diagonal pair (u, u) scaled by e^{-(mu + nu)}.
double phi(double nu, const GasParams& g);

/// Maximiser of phi, below -1 (golden-section search, computed once).
double phi_argmax();

/// |q_tilde| <= 1e-11 a rho_tilde.
bool flux_neutral(const State& middle, const GasParams& g);

/// Formula-based classification (valve decision, influence, O-subset,
/// coherence, consistence and L1_loc-continuity).
RegimeReport classify(const State& u_l, const State& u_r, double M, const GasParams& g);

/// True iff (u, v) is open or active-but-neutral, i.e. RS_v equals RS_p there.
bool not_influential(const State& u, const State& v, double M, const GasParams& g);

/// Coherence checked by re-solving the Riemann problem posed by the traces at
/// xi = 0. A null model means the classical solver.
bool coherent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                            const GasParams& g);

/// Cut points for the consistence check: wave speeds, midpoints, rarefaction
/// thirds, the outer constants, 0, and both sides of any zero-flux point
/// inside a rarefaction.
std::vector<double> consistency_xi_grid(const WaveFan& fan, const GasParams& g);

/// Consistence checked by cutting the fan at every xi_o of the grid and
/// re-solving both halves.
bool consistent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                              const GasParams& g, std::span<const double> xi_grid);
bool consistent_by_definition(const State& u_l, const State& u_r, const ValveModel* model,
                              const GasParams& g);

/// z(u) >= z(u0) and w(u) <= w(u0).
bool in_invariant_domain(const State& u, const State& u0, const GasParams& g);
/// min(z(u) - z(u0), w(u0) - w(u)); nonnegative inside the domain.
double invariant_domain_slack(const State& u, const State& u0, const GasParams& g);

/// Sufficient condition for coherence that avoids computing the middle state.
bool ch_prime(const State& u_l, const State& u_r, double M, const GasParams& g);

/// Relative distance of (u_l, u_r) to the nearest boundary on which the
/// coherence formulas switch branch. Used to exclude measure-zero ties from
/// randomized cross-checks.
double coherence_margin(const State& u_l, const State& u_r, double M, const GasParams& g);
/// As above, for every boundary the consistence formulas depend on.
double consistency_margin(const State& u_l, const State& u_r, double M, const GasParams& g);

struct PairReport {
  RegimeReport regime;
  bool ch_prime = false;
};

/// classify() over many pairs; the result order matches the input order.
std::vector<PairReport> classify_pairs(std::span<const std::pair<State, State>> pairs, double M,
                                       const GasParams& g, Exec exec);

std::string regime_label(const RegimeReport& r);
const char* to_string(Influence i);
const char* to_string(OpenSubset s);

}  // namespace valveflow
