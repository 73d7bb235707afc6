#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "infocorr/model.hpp"
#include "infocorr/sdp.hpp"

// Information carried by quantum ensembles and the search for large witness
// values under an information budget. All information quantities are bits.

namespace infocorr {

// One shared-randomness branch: an ensemble plus one POVM per setting.
struct QuantumBranch {
  double weight = 0;
  QuantumEnsemble ensemble;
  std::vector<Povm> measurements;
};

// Branches with normalized weights, a common prior and common (n, l, k);
// Hilbert-space dimensions may differ between branches.
struct QuantumStrategy {
  std::vector<QuantumBranch> branches;

  explicit QuantumStrategy(std::vector<QuantumBranch> branches_);

  int inputs() const;
  int settings() const;
  int outcomes() const;
  const std::vector<double>& prior() const;
};

// Average behavior sum_lambda w_lambda Tr(rho_x^lambda M_{b|y}^lambda).
Behavior strategy_behavior(const QuantumStrategy& s);

// H_min(X) + log2 P_g, the min-entropy drop granted by the ensemble.
double info_of_ensemble(const QuantumEnsemble& e, const SdpOptions& options = {});

// Shared randomness averages the guessing probability, not the bits:
// H_min(X) + log2(sum_lambda w_lambda P_g^lambda).
double info_of_mixed(const MixedEnsemble& m, const SdpOptions& options = {});

struct EigenBound {
  double bits = 0;
  bool tight = false;
};

// Spectral bound log2 d + log2(max_x p_x lambda_max(rho_x) / max_x p_x).
// The tight flag checks the two sufficient conditions: every state has a
// single distinct nonzero eigenvalue, and p_x lambda_max(rho_x) is constant
// in x (both within 1e-9). The flag can be true on degenerate ensembles
// (e.g. all states identical and pure) where the bound is not attained.
EigenBound info_eigen_bound(const QuantumEnsemble& e);

// (info bits, witness value) of a strategy; the witness shape must match.
std::pair<double, double> strategy_info_and_value(const QuantumStrategy& s, const Witness& w,
                                                  const SdpOptions& options = {});

// Exact best measurements for fixed states when k = 2: for each setting the
// coefficient operator G_y = sum_x (r_{xy0} - r_{xy1}) rho_x is measured by
// the projector onto its nonnegative eigenspace (outcome 0). Returns the
// POVMs and the value they achieve, the true maximum over all measurements.
std::pair<std::vector<Povm>, double> optimal_binary_measurements(
    const std::vector<HermitianMatrix>& states, const Witness& w);

// The qubit triple violating the first witness: |+>, |0>,
// sin(pi/8)|0> - cos(pi/8)|1>, uniform prior. Its guessing probability is
// exactly 2/3, so it carries exactly 1 bit.
QuantumEnsemble f1_qubit_states();

// Binary POVMs of the observables -(sx+sz)/sqrt2 and (sz-sx)/sqrt2, the
// measurements reaching 1 + 2*sqrt2 on the triple above.
std::vector<Povm> f1_qubit_measurements();

// Largest first-witness value reachable with alpha bits by mixing the qubit
// triple with a zero-information branch (alpha <= 1) or with a perfect
// three-symbol relay (alpha >= 1):
//   alpha in [0, 1]:       q = 2^alpha - 1,  value 1 + 2*sqrt2*q
//   alpha in [1, log2 3]:  q = 3 - 2^alpha,  value (1+2*sqrt2)q + 5(1-q)
double analytic_f1_curve(double alpha);

// A strategy reproducing (alpha, analytic_f1_curve(alpha)) exactly.
QuantumStrategy analytic_f1_strategy(double alpha);

struct SeesawOptions {
  int restarts = 50;
  double penalty = 100.0;      // weight on |info - alpha| during the search
  std::uint64_t seed = 1;
  int workers = 0;             // 0: hardware concurrency
  int iterations = 400;        // hill-climb proposals per restart
  int polish_iterations = 1500; // extra proposals on the best restart
  int rank = 0;                // state factor rank; 0 means full
  SdpOptions sdp;
};

struct SeesawResult {
  double value = 0;  // witness value of the reported strategy
  double info = 0;   // its info in bits, within 1e-4 of min(alpha, H_min)
  QuantumStrategy strategy;
  double raw_value = 0;  // best single-branch point before mixing
  double raw_info = 0;
  int best_restart = -1;  // -1 when the winner came from the dimensional cascade
  std::uint64_t proposals_total = 0;
  std::uint64_t proposals_accepted = 0;
};

// Randomized local search for large witness values at information budget
// alpha and Hilbert dimension dim (k = 2 only, dim <= 8). States are hill
// climbed through unnormalized factors L_x with exact measurement updates
// and SDP info evaluation per proposal; the penalized objective is
// value - penalty*|info - alpha|. The reported strategy mixes the best
// branch with a zero-information branch so its info lands on the budget;
// its value is a certified lower bound on the alpha-constrained optimum.
// Deterministic given (options.seed, restarts); restarts run concurrently.
SeesawResult seesaw_max_witness(const Scenario& scenario, const Witness& w, double alpha,
                                int dim, const SeesawOptions& options = {});

}  // namespace infocorr
