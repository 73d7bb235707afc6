#include "infocorr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "infocorr/errors.hpp"
#include "infocorr/linalg.hpp"

namespace infocorr {

QuantumStrategy::QuantumStrategy(std::vector<QuantumBranch> branches_)
    : branches(std::move(branches_)) {
  if (branches.empty()) throw InvalidInputError("strategy: no branches");
  double wsum = 0;
  for (const auto& br : branches) {
    if (!std::isfinite(br.weight) || br.weight < 0)
      throw InvalidInputError("strategy: weights must be nonnegative");
    wsum += br.weight;
  }
  if (std::abs(wsum - 1.0) > kProbTol)
    throw InvalidInputError("strategy: weights must sum to 1");
  const auto& first = branches[0];
  if (first.measurements.empty()) throw InvalidInputError("strategy: no measurements");
  const int n = first.ensemble.size();
  const int l = static_cast<int>(first.measurements.size());
  const int k = first.measurements[0].outcomes();
  for (const auto& br : branches) {
    if (br.ensemble.size() != n || static_cast<int>(br.measurements.size()) != l)
      throw InvalidInputError("strategy: branches must share (inputs, settings)");
    for (std::size_t i = 0; i < first.ensemble.prior.size(); ++i) {
      if (std::abs(br.ensemble.prior[i] - first.ensemble.prior[i]) > kProbTol)
        throw InvalidInputError("strategy: branches must share the input prior");
    }
    for (const auto& povm : br.measurements) {
      if (povm.outcomes() != k)
        throw InvalidInputError("strategy: branches must share the outcome count");
      if (povm.dim() != br.ensemble.dim())
        throw InvalidInputError("strategy: measurement dimension differs from the states");
    }
  }
}

int QuantumStrategy::inputs() const { return branches[0].ensemble.size(); }
int QuantumStrategy::settings() const { return static_cast<int>(branches[0].measurements.size()); }
int QuantumStrategy::outcomes() const { return branches[0].measurements[0].outcomes(); }
const std::vector<double>& QuantumStrategy::prior() const { return branches[0].ensemble.prior; }

Behavior strategy_behavior(const QuantumStrategy& s) {
  const Scenario scenario(s.inputs(), s.settings(), s.outcomes(), s.prior());
  std::vector<double> table(static_cast<std::size_t>(scenario.table_size()), 0.0);
  for (const auto& br : s.branches) {
    const Behavior b = behavior_from_quantum(br.ensemble, br.measurements);
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += br.weight * b.table()[i];
  }
  // Weighted sums of rows can drift a hair past 1; snap within validation slack.
  for (auto& v : table) v = std::clamp(v, 0.0, 1.0);
  return Behavior(scenario, std::move(table));
}

double info_of_ensemble(const QuantumEnsemble& e, const SdpOptions& options) {
  const double pg = solve_guessing_sdp(e, options).value;
  return hmin(e.prior) + std::log2(pg);
}

double info_of_mixed(const MixedEnsemble& m, const SdpOptions& options) {
  double avg = 0;
  for (const auto& br : m.branches) {
    if (br.weight == 0) continue;
    avg += br.weight * solve_guessing_sdp(br.ensemble, options).value;
  }
  return hmin(m.branches[0].ensemble.prior) + std::log2(avg);
}

EigenBound info_eigen_bound(const QuantumEnsemble& e) {
  const double d = static_cast<double>(e.dim());
  std::vector<double> weighted(static_cast<std::size_t>(e.size()));
  double max_p = 0, max_pl = 0;
  bool spectra_ok = true;
  for (int x = 0; x < e.size(); ++x) {
    const auto eigs = hermitian_eigenvalues(e.states[static_cast<std::size_t>(x)]);
    const double lmax = eigs.maxCoeff();
    weighted[static_cast<std::size_t>(x)] = e.prior[static_cast<std::size_t>(x)] * lmax;
    max_p = std::max(max_p, e.prior[static_cast<std::size_t>(x)]);
    max_pl = std::max(max_pl, weighted[static_cast<std::size_t>(x)]);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      if (std::abs(eigs(i)) > 1e-9 && std::abs(eigs(i) - lmax) > 1e-9) spectra_ok = false;
    }
  }
  bool constant = true;
  for (double w : weighted) {
    if (std::abs(w - max_pl) > 1e-9) constant = false;
  }
  EigenBound out;
  out.bits = std::log2(d) + std::log2(max_pl / max_p);
  out.tight = spectra_ok && constant;
  return out;
}

std::pair<double, double> strategy_info_and_value(const QuantumStrategy& s, const Witness& w,
                                                  const SdpOptions& options) {
  if (w.scenario.n != s.inputs() || w.scenario.l != s.settings() ||
      w.scenario.k != s.outcomes()) {
    throw InvalidInputError("witness shape does not match the strategy");
  }
  std::vector<MixedEnsemble::Branch> ens;
  ens.reserve(s.branches.size());
  double value = 0;
  for (const auto& br : s.branches) {
    ens.push_back({br.weight, br.ensemble});
    value += br.weight * witness_value(w, behavior_from_quantum(br.ensemble, br.measurements));
  }
  return {info_of_mixed(MixedEnsemble(std::move(ens)), options), value};
}

std::pair<std::vector<Povm>, double> optimal_binary_measurements(
    const std::vector<HermitianMatrix>& states, const Witness& w) {
  if (w.scenario.k != 2) throw UnsupportedScenarioError("exact measurement step needs k = 2");
  if (static_cast<int>(states.size()) != w.scenario.n)
    throw InvalidInputError("state count does not match the witness");
  if (states.empty()) throw InvalidInputError("no states");
  const int d = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != d) throw InvalidInputError("states of mixed dimension");
  }

  std::vector<Povm> povms;
  povms.reserve(static_cast<std::size_t>(w.scenario.l));
  double value = 0;
  for (int y = 0; y < w.scenario.l; ++y) {
    Matrix g = Matrix::Zero(d, d);
    for (int x = 0; x < w.scenario.n; ++x) {
      g += Complex(w.coeff(x, y, 0) - w.coeff(x, y, 1), 0) *
           states[static_cast<std::size_t>(x)].get();
    }
    // Zero eigenvalues are value-neutral; assigning them to outcome 0 keeps
    // the result deterministic.
    const Matrix p0 = nonnegative_eigenprojector(g);
    const Matrix p1 = identity(d) - p0;
    for (int x = 0; x < w.scenario.n; ++x) {
      const auto& rho = states[static_cast<std::size_t>(x)].get();
      value += w.coeff(x, y, 0) * (rho * p0).trace().real() +
               w.coeff(x, y, 1) * (rho * p1).trace().real();
    }
    povms.push_back(Povm({HermitianMatrix(p0), HermitianMatrix(p1)}));
  }
  return {std::move(povms), value};
}

QuantumEnsemble f1_qubit_states() {
  const double s8 = std::sin(std::numbers::pi / 8);
  const double c8 = std::cos(std::numbers::pi / 8);
  Vector v1(2), v2(2), v3(2);
  v1 << Complex(1 / std::sqrt(2.0), 0), Complex(1 / std::sqrt(2.0), 0);
  v2 << Complex(1, 0), Complex(0, 0);
  v3 << Complex(s8, 0), Complex(-c8, 0);
  return QuantumEnsemble({1.0 / 3, 1.0 / 3, 1.0 / 3},
                         {HermitianMatrix(ketbra(v1)), HermitianMatrix(ketbra(v2)),
                          HermitianMatrix(ketbra(v3))});
}

std::vector<Povm> f1_qubit_measurements() {
  const double r = 1 / std::sqrt(2.0);
  const Matrix a1 = -r * (pauli_x() + pauli_z());
  const Matrix a2 = r * (pauli_z() - pauli_x());
  return {binary_povm_from_observable(a1), binary_povm_from_observable(a2)};
}

namespace {

constexpr double kCurveSlack = 1e-12;

double log2_3() { return std::log2(3.0); }

void check_curve_range(double alpha) {
  if (!std::isfinite(alpha) || alpha < -kCurveSlack || alpha > log2_3() + kCurveSlack)
    throw InvalidInputError("alpha must lie in [0, log2 3]");
}

}  // namespace

double analytic_f1_curve(double alpha) {
  check_curve_range(alpha);
  alpha = std::clamp(alpha, 0.0, log2_3());
  const double s = 2 * std::sqrt(2.0);
  if (alpha <= 1) {
    const double q = std::exp2(alpha) - 1;
    return 1 + s * q;
  }
  const double q = 3 - std::exp2(alpha);
  return (1 + s) * q + 5 * (1 - q);
}

QuantumStrategy analytic_f1_strategy(double alpha) {
  check_curve_range(alpha);
  alpha = std::clamp(alpha, 0.0, log2_3());

  const QuantumBranch main{0, f1_qubit_states(), f1_qubit_measurements()};
  std::vector<QuantumBranch> branches;
  const std::vector<double> prior{1.0 / 3, 1.0 / 3, 1.0 / 3};

  if (alpha <= 1) {
    // Dilute with identical states read out by the best constant outcomes:
    // outcome 1 for the first setting, outcome 0 for the second.
    const double q = std::exp2(alpha) - 1;
    const Matrix zero2 = Matrix::Zero(2, 2);
    QuantumEnsemble idle(prior, {HermitianMatrix(ketbra(Vector::Unit(2, 0))),
                                 HermitianMatrix(ketbra(Vector::Unit(2, 0))),
                                 HermitianMatrix(ketbra(Vector::Unit(2, 0)))});
    std::vector<Povm> constant{
        Povm({HermitianMatrix(zero2), HermitianMatrix(identity(2))}),
        Povm({HermitianMatrix(identity(2)), HermitianMatrix(zero2)})};
    if (q > 1 - 1e-15) return QuantumStrategy({{1.0, main.ensemble, main.measurements}});
    branches.push_back({q, main.ensemble, main.measurements});
    branches.push_back({1 - q, std::move(idle), std::move(constant)});
    if (q < 1e-15) branches.erase(branches.begin());
    return QuantumStrategy(std::move(branches));
  }

  // Dilute with a three-symbol relay that picks the best outcome per input.
  const double q = 3 - std::exp2(alpha);
  QuantumEnsemble relay(prior, {HermitianMatrix(ketbra(Vector::Unit(3, 0))),
                                HermitianMatrix(ketbra(Vector::Unit(3, 1))),
                                HermitianMatrix(ketbra(Vector::Unit(3, 2)))});
  std::vector<Povm> readout;
  for (int y = 0; y < 2; ++y) {
    Matrix m0 = Matrix::Zero(3, 3);
    for (int x = 0; x < 3; ++x) {
      const Witness w = witness_f1();
      if (w.coeff(x, y, 0) >= w.coeff(x, y, 1)) m0 += ketbra(Vector::Unit(3, x));
    }
    readout.push_back(Povm({HermitianMatrix(m0), HermitianMatrix(identity(3) - m0)}));
  }
  if (q > 1 - 1e-15) return QuantumStrategy({{1.0, main.ensemble, main.measurements}});
  branches.push_back({q, main.ensemble, main.measurements});
  branches.push_back({1 - q, std::move(relay), std::move(readout)});
  if (q < 1e-15) branches.erase(branches.begin());
  return QuantumStrategy(std::move(branches));
}

}  // namespace infocorr
