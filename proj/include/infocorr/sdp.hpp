#pragma once

#include <optional>

#include "infocorr/model.hpp"

namespace infocorr {

// Minimum-error discrimination of an ensemble: the guessing probability
//   P_g = max { sum_x p_x Tr(rho_x N_x) : N_x >= 0, sum_x N_x = I }
// with dual  min { Tr(Y) : Y >= p_x rho_x for all x }.
struct SdpDiscriminationProblem {
  QuantumEnsemble ensemble;
};

struct SdpOptions {
  // Absolute duality-gap target on the guessing probability.
  double gap_tol = 2e-7;
  double feas_tol = 1e-8;
  // Barrier regularization: log det acts on Y - p_x rho_x + eps I.
  double barrier_eps = 1e-12;
  double t_init = 1.0;
  double t_mult = 10.0;
  double t_max = 1e13;
  int max_newton = 2000;
};

struct SdpSolution {
  double value = 0;       // primal value of the recovered POVM (lower bound)
  double dual_value = 0;  // Tr(Y) of the feasible dual certificate (upper bound)
  double gap = 0;
  Povm povm;
  HermitianMatrix certificate;
  int newton_steps = 0;
};

// Dual barrier/Newton path-following solve. The primal POVM is recovered from
// the centered iterate (N_x proportional to (Y - p_x rho_x)^-1), clipped PSD
// and symmetrically normalized so it sums to the identity exactly; the reported
// value always satisfies  value <= P_g <= dual_value.
// Throws ConvergenceError with the best bracket when the gap target is out of
// reach within the iteration budget.
SdpSolution solve_guessing_sdp(const QuantumEnsemble& ensemble,
                               const SdpOptions& options = {});
SdpSolution solve_guessing_sdp(const SdpDiscriminationProblem& problem,
                               const SdpOptions& options = {});

// Guessing probability only (same solve, value field).
double guessing_probability(const QuantumEnsemble& ensemble,
                            const SdpOptions& options = {});

}  // namespace infocorr
