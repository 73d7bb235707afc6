#include "infocorr/model.hpp"

#include <cmath>
#include <utility>

namespace infocorr {

namespace {

void validate_prior(const std::vector<double>& prior, const char* what) {
  if (prior.empty())
    throw InvalidInputError(std::string(what) + ": empty distribution");
  double sum = 0;
  for (double p : prior) {
    if (!std::isfinite(p) || p < 0)
      throw InvalidInputError(std::string(what) + ": entries must be finite and nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw InvalidInputError(std::string(what) + ": distribution does not sum to 1");
}

}  // namespace

double hmin(const std::vector<double>& prior) {
  validate_prior(prior, "hmin");
  double pmax = 0;
  for (double p : prior) pmax = std::max(pmax, p);
  return -std::log2(pmax);
}

Scenario::Scenario(int n_, int l_, int k_, std::vector<double> prior_)
    : n(n_), l(l_), k(k_), prior(std::move(prior_)) {
  if (n < 1 || l < 1 || k < 1)
    throw InvalidInputError("scenario: n, l, k must all be at least 1");
  if (static_cast<int>(prior.size()) != n)
    throw InvalidInputError("scenario: prior length must equal n");
  validate_prior(prior, "scenario prior");
}

Scenario Scenario::uniform(int n_, int l_, int k_) {
  return Scenario(n_, l_, k_, std::vector<double>(n_, 1.0 / n_));
}

double Scenario::max_prior() const {
  double pmax = 0;
  for (double p : prior) pmax = std::max(pmax, p);
  return pmax;
}

bool Scenario::operator==(const Scenario& o) const {
  return n == o.n && l == o.l && k == o.k && prior == o.prior;
}

Behavior::Behavior(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != scenario_.table_size())
    throw InvalidInputError("behavior: table size does not match scenario");
  for (double v : table_) {
    if (!std::isfinite(v) || v < -kProbTol || v > 1 + kProbTol)
      throw InvalidInputError("behavior: entries must lie in [0, 1]");
  }
  for (int x = 0; x < scenario_.n; ++x)
    for (int y = 0; y < scenario_.l; ++y) {
      double row = 0;
      for (int b = 0; b < scenario_.k; ++b) row += at(x, y, b);
      if (std::abs(row - 1.0) > kProbTol)
        throw InvalidInputError("behavior: outcome rows must sum to 1");
    }
}

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw InvalidInputError("hermitian matrix: must be square");
  if (hermiticity_defect(m_) > kHermTol)
    throw InvalidInputError("hermitian matrix: not Hermitian within tolerance");
}

QuantumEnsemble::QuantumEnsemble(std::vector<double> prior_,
                                 std::vector<HermitianMatrix> states_)
    : prior(std::move(prior_)), states(std::move(states_)) {
  validate_prior(prior, "ensemble prior");
  if (states.empty() || states.size() != prior.size())
    throw InvalidInputError("ensemble: need one state per prior entry");
  const int d = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != d)
      throw InvalidInputError("ensemble: states must share one dimension");
    if (std::abs(s.get().trace().real() - 1.0) > kPsdTol ||
        std::abs(s.get().trace().imag()) > kPsdTol)
      throw InvalidInputError("ensemble: states must have unit trace");
    if (min_eigenvalue(s.get()) < -kPsdTol)
      throw InvalidInputError("ensemble: states must be positive semidefinite");
  }
}

MixedEnsemble::MixedEnsemble(std::vector<Branch> branches_)
    : branches(std::move(branches_)) {
  if (branches.empty()) throw InvalidInputError("mixed ensemble: no branches");
  double sum = 0;
  for (const auto& br : branches) {
    if (!std::isfinite(br.weight) || br.weight < 0)
      throw InvalidInputError("mixed ensemble: weights must be nonnegative");
    sum += br.weight;
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw InvalidInputError("mixed ensemble: weights must sum to 1");
  const auto& p0 = branches[0].ensemble.prior;
  for (const auto& br : branches) {
    if (br.ensemble.prior.size() != p0.size())
      throw InvalidInputError("mixed ensemble: branches must share the input prior");
    for (std::size_t i = 0; i < p0.size(); ++i)
      if (std::abs(br.ensemble.prior[i] - p0[i]) > kProbTol)
        throw InvalidInputError("mixed ensemble: branches must share the input prior");
  }
}

Povm::Povm(std::vector<HermitianMatrix> effects_) : effects(std::move(effects_)) {
  if (effects.empty()) throw InvalidInputError("povm: no effects");
  const int d = effects[0].dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : effects) {
    if (e.dim() != d)
      throw InvalidInputError("povm: effects must share one dimension");
    if (min_eigenvalue(e.get()) < -kPsdTol)
      throw InvalidInputError("povm: effects must be positive semidefinite");
    sum += e.get();
  }
  if (max_abs(Matrix(sum - Matrix::Identity(d, d))) > kPsdTol)
    throw InvalidInputError("povm: effects must sum to the identity");
}

Witness::Witness(Scenario scenario_, std::vector<double> coefficients_,
                 std::function<double(double)> bound_fn_)
    : scenario(std::move(scenario_)),
      coefficients(std::move(coefficients_)),
      bound_fn(std::move(bound_fn_)) {
  if (static_cast<int>(coefficients.size()) != scenario.table_size())
    throw InvalidInputError("witness: coefficient size does not match scenario");
  for (double c : coefficients)
    if (!std::isfinite(c))
      throw InvalidInputError("witness: coefficients must be finite");
}

Witness correlator_witness(const Scenario& scenario,
                           const std::vector<std::vector<double>>& t,
                           std::function<double(double)> bound_fn) {
  if (scenario.k != 2)
    throw UnsupportedScenarioError("correlator witness: needs k = 2");
  if (static_cast<int>(t.size()) != scenario.n)
    throw InvalidInputError("correlator witness: need one coefficient row per input");
  std::vector<double> coeffs(static_cast<std::size_t>(scenario.table_size()), 0.0);
  for (int x = 0; x < scenario.n; ++x) {
    if (static_cast<int>(t[x].size()) != scenario.l)
      throw InvalidInputError("correlator witness: coefficient row length must equal l");
    for (int y = 0; y < scenario.l; ++y) {
      coeffs[static_cast<std::size_t>((x * scenario.l + y) * 2 + 0)] = t[x][y];
      coeffs[static_cast<std::size_t>((x * scenario.l + y) * 2 + 1)] = -t[x][y];
    }
  }
  return Witness(scenario, std::move(coeffs), std::move(bound_fn));
}

Witness witness_f1() {
  Witness w = correlator_witness(Scenario::uniform(3, 2, 2),
                                 {{-1, -1}, {-1, 1}, {1, 0}},
                                 [](double cap) { return 6 * cap - 1; });
  w.affine_bound = {{6.0, -1.0}};
  return w;
}

Witness witness_f2() {
  Witness w = correlator_witness(Scenario::uniform(3, 2, 2),
                                 {{-1, -1}, {-1, 1}, {2, 0}},
                                 [](double cap) { return 12 * cap - 4; });
  w.affine_bound = {{12.0, -4.0}};
  return w;
}

InfoBudget InfoBudget::from_alpha(const Scenario& scenario, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0)
    throw InvalidInputError("info budget: alpha must be finite and nonnegative");
  InfoBudget b;
  b.max_prior = scenario.max_prior();
  b.alpha = alpha;
  b.cap = std::min(1.0, std::exp2(alpha) * b.max_prior);
  return b;
}

InfoBudget InfoBudget::from_cap(const Scenario& scenario, double cap) {
  double pmax = scenario.max_prior();
  if (!std::isfinite(cap) || cap < pmax - kProbTol || cap > 1 + kProbTol)
    throw InvalidInputError("info budget: cap must lie in [max prior, 1]");
  InfoBudget b;
  b.max_prior = pmax;
  b.cap = std::min(1.0, std::max(cap, pmax));
  b.alpha = std::log2(b.cap / pmax);
  return b;
}

Behavior behavior_from_quantum(const QuantumEnsemble& ensemble,
                               const std::vector<Povm>& measurements) {
  if (measurements.empty())
    throw InvalidInputError("behavior_from_quantum: no measurements");
  const int n = ensemble.size();
  const int l = static_cast<int>(measurements.size());
  const int k = measurements[0].outcomes();
  const int d = ensemble.dim();
  for (const auto& m : measurements) {
    if (m.outcomes() != k)
      throw InvalidInputError("behavior_from_quantum: settings must share an outcome count");
    if (m.dim() != d)
      throw InvalidInputError("behavior_from_quantum: measurement dimension mismatch");
  }
  Scenario scenario(n, l, k, ensemble.prior);
  std::vector<double> table(static_cast<std::size_t>(n) * l * k);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < l; ++y)
      for (int b = 0; b < k; ++b) {
        double p = (ensemble.states[x].get() * measurements[y].effects[b].get())
                       .trace()
                       .real();
        // Hermitian product traces carry O(eps) imaginary noise only.
        table[static_cast<std::size_t>((x * l + y) * k + b)] =
            std::min(1.0, std::max(0.0, p));
      }
  return Behavior(std::move(scenario), std::move(table));
}

double witness_value(const Witness& witness, const Behavior& p) {
  if (!(witness.scenario.n == p.scenario().n && witness.scenario.l == p.scenario().l &&
        witness.scenario.k == p.scenario().k))
    throw InvalidInputError("witness_value: scenario shape mismatch");
  double v = 0;
  for (std::size_t i = 0; i < witness.coefficients.size(); ++i)
    v += witness.coefficients[i] * p.table()[i];
  return v;
}

double correlator(const Behavior& p, int x, int y) {
  if (p.scenario().k != 2)
    throw UnsupportedScenarioError("correlator: needs k = 2");
  if (x < 0 || x >= p.scenario().n || y < 0 || y >= p.scenario().l)
    throw InvalidInputError("correlator: index out of range");
  return p.at(x, y, 0) - p.at(x, y, 1);
}

Povm binary_povm_from_observable(const Matrix& observable) {
  if (hermiticity_defect(observable) > kHermTol)
    throw InvalidInputError("observable must be Hermitian");
  Matrix p0 = nonnegative_eigenprojector(observable);
  Matrix p1 = Matrix::Identity(observable.rows(), observable.cols()) - p0;
  std::vector<HermitianMatrix> effects;
  effects.emplace_back(std::move(p0));
  effects.emplace_back(std::move(p1));
  return Povm(std::move(effects));
}

}  // namespace infocorr
