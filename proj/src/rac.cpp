#include "infocorr/rac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "infocorr/errors.hpp"
#include "infocorr/linalg.hpp"

namespace infocorr {
namespace {

int bit_of(int x, int y, int n_bits) { return (x >> (n_bits - 1 - y)) & 1; }

Matrix basis_projector(int dim, int index) {
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = Complex(1, 0);
  return m;
}

}  // namespace

double rac_score(const Behavior& p, const RacSpec& spec) {
  if (spec.n_bits < 1) throw InvalidInputError("rac: n_bits must be positive");
  const Scenario& sc = p.scenario();
  const int n = 1 << spec.n_bits;
  if (sc.n != n || sc.l != spec.n_bits || sc.k != 2)
    throw InvalidInputError("rac: behavior shape must be (2^n_bits, n_bits, 2)");
  double sum = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < spec.n_bits; ++y) {
      const double hit = p.at(x, y, bit_of(x, y, spec.n_bits));
      sum += hit;
      worst = std::min(worst, hit);
    }
  }
  return spec.variant == RacVariant::Average
             ? sum / (static_cast<double>(spec.n_bits) * n)
             : worst;
}

std::pair<QuantumEnsemble, std::vector<Povm>> four_bit_rac_construction() {
  const Matrix id4 = identity(4);
  const std::vector<Matrix> obs = {
      kron(pauli_x(), pauli_x()), kron(pauli_y(), pauli_x()), kron(pauli_z(), pauli_x()),
      kron(identity(2), pauli_y())};

  std::vector<HermitianMatrix> states;
  states.reserve(16);
  for (int x = 0; x < 16; ++x) {
    Matrix rho = 2 * id4;
    for (int j = 0; j < 4; ++j) {
      const double sign = bit_of(x, j, 4) == 0 ? 1.0 : -1.0;  // -(-1)^{bit}
      rho -= sign * obs[static_cast<std::size_t>(j)];
    }
    rho /= 8;
    states.emplace_back(((rho + rho.adjoint()) / 2).eval());
  }

  std::vector<Povm> povms;
  povms.reserve(4);
  for (int y = 0; y < 4; ++y) {
    const Matrix plus = (id4 + obs[static_cast<std::size_t>(y)]) / 2;
    const Matrix minus = (id4 - obs[static_cast<std::size_t>(y)]) / 2;
    // Bit value 1 sits on the +1 eigenspace under the sign convention above.
    povms.push_back(Povm({HermitianMatrix(minus), HermitianMatrix(plus)}));
  }
  return {QuantumEnsemble(std::vector<double>(16, 1.0 / 16), std::move(states)),
          std::move(povms)};
}

std::pair<QuantumEnsemble, std::vector<Povm>> qubit_rac_reference(int n_bits) {
  if (n_bits != 2 && n_bits != 3)
    throw InvalidInputError("qubit reference codes exist for 2 or 3 bits only");
  const int n = 1 << n_bits;
  const double norm = 1 / std::sqrt(static_cast<double>(n_bits));
  const std::vector<Matrix> axes =
      n_bits == 2 ? std::vector<Matrix>{pauli_x(), pauli_z()}
                  : std::vector<Matrix>{pauli_x(), pauli_y(), pauli_z()};

  std::vector<HermitianMatrix> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    Matrix rho = identity(2);
    for (int j = 0; j < n_bits; ++j) {
      const double sign = bit_of(x, j, n_bits) == 0 ? 1.0 : -1.0;
      rho += sign * norm * axes[static_cast<std::size_t>(j)];
    }
    rho /= 2;
    states.emplace_back(((rho + rho.adjoint()) / 2).eval());
  }

  std::vector<Povm> povms;
  for (int y = 0; y < n_bits; ++y) {
    const Matrix plus = (identity(2) + axes[static_cast<std::size_t>(y)]) / 2;
    const Matrix minus = (identity(2) - axes[static_cast<std::size_t>(y)]) / 2;
    // Here bit value 0 points along +1, so outcome 0 takes the +1 eigenspace.
    povms.push_back(Povm({HermitianMatrix(plus), HermitianMatrix(minus)}));
  }
  return {QuantumEnsemble(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n),
                          std::move(states)),
          std::move(povms)};
}

EaStrategy::EaStrategy(std::vector<double> prior_, int message_dim_,
                       HermitianMatrix shared_state_, int dim_a_, int dim_b_,
                       std::vector<Povm> alice_povms_, std::vector<std::vector<int>> labels_,
                       std::vector<Povm> bob_povms_)
    : prior(std::move(prior_)),
      message_dim(message_dim_),
      shared_state(std::move(shared_state_)),
      dim_a(dim_a_),
      dim_b(dim_b_),
      alice_povms(std::move(alice_povms_)),
      labels(std::move(labels_)),
      bob_povms(std::move(bob_povms_)) {
  double sum = 0;
  for (double p : prior) {
    if (!std::isfinite(p) || p < -kProbTol)
      throw InvalidInputError("ea: prior entries must be nonnegative");
    sum += p;
  }
  if (prior.empty() || std::abs(sum - 1.0) > kProbTol)
    throw InvalidInputError("ea: prior must be a distribution");
  if (message_dim < 1) throw InvalidInputError("ea: message dimension must be positive");
  if (dim_a < 1 || dim_b < 1) throw InvalidInputError("ea: local dimensions must be positive");
  if (shared_state.dim() != dim_a * dim_b)
    throw InvalidInputError("ea: shared state dimension must be dim_a * dim_b");
  if (std::abs(shared_state.get().trace().real() - 1.0) > kPsdTol ||
      min_eigenvalue(shared_state.get()) < -kPsdTol)
    throw InvalidInputError("ea: shared state must be a density matrix");
  if (alice_povms.size() != prior.size() || labels.size() != prior.size())
    throw InvalidInputError("ea: one POVM and label row per input");
  for (std::size_t x = 0; x < alice_povms.size(); ++x) {
    if (alice_povms[x].dim() != dim_a)
      throw InvalidInputError("ea: alice POVMs must act on her share");
    if (labels[x].size() != static_cast<std::size_t>(alice_povms[x].outcomes()))
      throw InvalidInputError("ea: one label per measurement outcome");
    for (int a : labels[x]) {
      if (a < 0 || a >= message_dim) throw InvalidInputError("ea: label out of range");
    }
  }
  if (bob_povms.empty()) throw InvalidInputError("ea: no receiver measurements");
  for (const auto& povm : bob_povms) {
    if (povm.dim() != message_dim * dim_b)
      throw InvalidInputError("ea: bob POVMs act on message and his share");
  }
}

namespace {

struct SteeredDecomposition {
  std::vector<std::vector<double>> prob;     // p(a|x)
  std::vector<std::vector<Matrix>> steered;  // sigma_{a|x}, normalized
};

SteeredDecomposition steer(const EaStrategy& s) {
  SteeredDecomposition out;
  out.prob.resize(s.prior.size());
  out.steered.resize(s.prior.size());
  for (std::size_t x = 0; x < s.prior.size(); ++x) {
    const auto& povm = s.alice_povms[x];
    for (int a = 0; a < povm.outcomes(); ++a) {
      const Matrix joint =
          kron(povm.effects[static_cast<std::size_t>(a)].get(), identity(s.dim_b)) *
          s.shared_state.get();
      Matrix sub = partial_trace_first(joint, s.dim_a, s.dim_b);
      const double p = sub.trace().real();
      out.prob[x].push_back(p);
      if (p < 1e-12) {
        out.steered[x].push_back(Matrix::Zero(s.dim_b, s.dim_b));
      } else {
        sub /= p;
        out.steered[x].push_back(((sub + sub.adjoint()) / 2).eval());
      }
    }
  }
  return out;
}

}  // namespace

QuantumEnsemble ea_to_qc(const EaStrategy& s) {
  const SteeredDecomposition dec = steer(s);
  std::vector<HermitianMatrix> taus;
  taus.reserve(s.prior.size());
  for (std::size_t x = 0; x < s.prior.size(); ++x) {
    Matrix tau = Matrix::Zero(s.message_dim * s.dim_b, s.message_dim * s.dim_b);
    for (std::size_t a = 0; a < dec.prob[x].size(); ++a) {
      const double p = dec.prob[x][a];
      if (p < 1e-12) continue;
      tau += p * kron(basis_projector(s.message_dim, s.labels[x][a]), dec.steered[x][a]);
    }
    taus.emplace_back(((tau + tau.adjoint()) / 2).eval());
  }
  return QuantumEnsemble(s.prior, std::move(taus));
}

Behavior ea_behavior(const EaStrategy& s) {
  const SteeredDecomposition dec = steer(s);
  const int n = static_cast<int>(s.prior.size());
  const int l = static_cast<int>(s.bob_povms.size());
  const int k = s.bob_povms[0].outcomes();
  for (const auto& povm : s.bob_povms) {
    if (povm.outcomes() != k)
      throw InvalidInputError("ea: receiver outcome counts must agree");
  }
  std::vector<double> table(static_cast<std::size_t>(n * l * k), 0.0);
  for (int x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < dec.prob[static_cast<std::size_t>(x)].size(); ++a) {
      const double pa = dec.prob[static_cast<std::size_t>(x)][a];
      if (pa < 1e-12) continue;
      const Matrix piece =
          kron(basis_projector(s.message_dim, s.labels[static_cast<std::size_t>(x)][a]),
               dec.steered[static_cast<std::size_t>(x)][a]);
      for (int y = 0; y < l; ++y) {
        for (int b = 0; b < k; ++b) {
          const double v =
              (piece * s.bob_povms[static_cast<std::size_t>(y)].effects[static_cast<std::size_t>(b)].get())
                  .trace()
                  .real();
          table[static_cast<std::size_t>((x * l + y) * k + b)] += pa * v;
        }
      }
    }
  }
  for (auto& v : table) v = std::clamp(v, 0.0, 1.0);
  return Behavior(Scenario(n, l, k, s.prior), std::move(table));
}

EaCeilingReport verify_ea_ceiling(const EaStrategy& s, const SdpOptions& options) {
  EaCeilingReport report;
  const SteeredDecomposition dec = steer(s);

  const Matrix rho_b = partial_trace_first(s.shared_state.get(), s.dim_a, s.dim_b);
  double defect = 0;
  for (std::size_t x = 0; x < s.prior.size(); ++x) {
    Matrix avg = Matrix::Zero(s.dim_b, s.dim_b);
    for (std::size_t a = 0; a < dec.prob[x].size(); ++a) {
      avg += dec.prob[x][a] * dec.steered[x][a];
    }
    defect = std::max(defect, max_abs(avg - rho_b));
  }
  report.marginal_defect = defect;
  report.marginal_identity = defect <= 1e-9;

  const QuantumEnsemble tau = ea_to_qc(s);
  report.guessing = solve_guessing_sdp(tau, options).value;
  double maxp = 0;
  for (double p : s.prior) maxp = std::max(maxp, p);
  report.ceiling_value = s.message_dim * maxp;
  report.ceiling = report.guessing <= report.ceiling_value + 1e-6;

  const Behavior from_tau = behavior_from_quantum(tau, s.bob_povms);
  const Behavior direct = ea_behavior(s);
  double bdefect = 0;
  for (std::size_t i = 0; i < from_tau.table().size(); ++i) {
    bdefect = std::max(bdefect, std::abs(from_tau.table()[i] - direct.table()[i]));
  }
  report.behavior_defect = bdefect;
  report.behavior_match = bdefect <= 1e-9;

  report.all_ok = report.marginal_identity && report.ceiling && report.behavior_match;
  return report;
}

}  // namespace infocorr
