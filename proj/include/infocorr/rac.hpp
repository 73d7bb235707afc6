#pragma once

#include <utility>
#include <vector>

#include "infocorr/model.hpp"
#include "infocorr/sdp.hpp"

// Random access codes: Alice holds n_bits bits, Bob is asked for one of them.
// Inputs x enumerate the bit strings with the first bit most significant;
// setting y targets bit y; the outcome IS the guessed bit value.

namespace infocorr {

enum class RacVariant { Average, WorstCase };

struct RacSpec {
  int n_bits = 2;
  int m = 1;  // classical-bit budget the construction is compared against
  RacVariant variant = RacVariant::Average;
};

// Success probability of guessing the targeted bit: mean over (x, y) for the
// average variant, min over (x, y) for the worst case. The behavior must
// have 2^n_bits inputs, n_bits settings and 2 outcomes.
double rac_score(const Behavior& p, const RacSpec& spec);

// Sixteen four-dimensional states encoding four bits in anticommuting Pauli
// directions, with the observables reading them out. Each state has spectrum
// (1/2, 1/2, 0, 0); every bit is guessed at 3/4, worst case included, and
// the ensemble carries exactly one bit. The states encode bit value v with
// sign -(-1)^v, so outcome b corresponds to the (-1)^(1-b) eigenspace.
std::pair<QuantumEnsemble, std::vector<Povm>> four_bit_rac_construction();

// Pure-qubit codes for two and three bits: Bloch vectors at square/cube
// vertices, bits read out by sx/sz (two) or sx/sy/sz (three). Every pair
// (x, y) succeeds at 1/2 + 1/(2*sqrt(n_bits)).
std::pair<QuantumEnsemble, std::vector<Povm>> qubit_rac_reference(int n_bits);

// Classical communication assisted by shared entanglement: Alice measures
// her half with the POVM for x, announces a d-valued classical message, and
// Bob measures message-register (x) B. Message labels are basis states of a
// d-dimensional register.
struct EaStrategy {
  std::vector<double> prior;             // over Alice inputs x
  int message_dim = 1;                   // d
  HermitianMatrix shared_state;          // on A (x) B
  int dim_a = 0, dim_b = 0;
  std::vector<Povm> alice_povms;         // per x, on A
  std::vector<std::vector<int>> labels;  // [x][a] -> message in [0, d)
  std::vector<Povm> bob_povms;           // per y, on message (x) B

  EaStrategy(std::vector<double> prior_, int message_dim_, HermitianMatrix shared_state_,
             int dim_a_, int dim_b_, std::vector<Povm> alice_povms_,
             std::vector<std::vector<int>> labels_, std::vector<Povm> bob_povms_);
};

// The classical-quantum message ensemble tau_x = sum_a p(a|x) |m_ax><m_ax| (x)
// sigma_ax, where sigma_ax is Bob's steered state. Outcomes with
// p(a|x) < 1e-12 are skipped.
QuantumEnsemble ea_to_qc(const EaStrategy& s);

// Behavior of the entanglement-assisted protocol itself.
Behavior ea_behavior(const EaStrategy& s);

struct EaCeilingReport {
  bool marginal_identity = false;  // sum_a p(a|x) sigma_ax = rho_B for all x
  double marginal_defect = 0;
  bool ceiling = false;  // P_g(tau) <= d * max prior + 1e-6
  double guessing = 0;
  double ceiling_value = 0;
  bool behavior_match = false;  // tau reproduces the EA behavior
  double behavior_defect = 0;
  bool all_ok = false;
};

// Executable form of the simulation theorem: steering cannot signal, so the
// message ensemble reveals at most log2(d) bits over the prior.
EaCeilingReport verify_ea_ceiling(const EaStrategy& s, const SdpOptions& options = {});

}  // namespace infocorr
