#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "infocorr/errors.hpp"
#include "infocorr/linalg.hpp"

// Core types for prepare-and-measure scenarios: n inputs for the sender,
// l settings and k outcomes for the receiver, and a prior over inputs.
// Probabilities are validated at construction and rejected when off, never
// renormalized. Information quantities are in bits (base-2 logs).

namespace infocorr {

inline constexpr double kProbTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kHermTol = 1e-12;

// -log2 of the largest prior entry. Throws on an empty or non-normalized prior.
double hmin(const std::vector<double>& prior);

struct Scenario {
  int n = 0;  // sender inputs
  int l = 0;  // receiver settings
  int k = 0;  // outcomes per setting
  std::vector<double> prior;

  Scenario(int n_, int l_, int k_, std::vector<double> prior_);
  static Scenario uniform(int n_, int l_, int k_);

  double max_prior() const;
  double hmin_bits() const { return hmin(prior); }
  int table_size() const { return n * l * k; }

  bool operator==(const Scenario& o) const;
};

// A conditional outcome distribution p(b|x,y), stored x-major then y then b.
class Behavior {
 public:
  Behavior(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<double>& table() const { return table_; }
  double at(int x, int y, int b) const {
    return table_[static_cast<std::size_t>((x * scenario_.l + y) * scenario_.k + b)];
  }

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

// Hermitian within 1e-12 entrywise; stored as given.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);
  const Matrix& get() const { return m_; }
  operator const Matrix&() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

// States with unit trace (tol 1e-10) and PSD spectrum (min eigenvalue >= -1e-10),
// all of one dimension, paired with a normalized prior.
struct QuantumEnsemble {
  std::vector<double> prior;
  std::vector<HermitianMatrix> states;

  QuantumEnsemble(std::vector<double> prior_, std::vector<HermitianMatrix> states_);
  int dim() const { return states.empty() ? 0 : states[0].dim(); }
  int size() const { return static_cast<int>(states.size()); }
};

// Convex mixture of ensembles sharing one input prior (shared randomness).
struct MixedEnsemble {
  struct Branch {
    double weight;
    QuantumEnsemble ensemble;
  };
  std::vector<Branch> branches;

  explicit MixedEnsemble(std::vector<Branch> branches_);
};

// PSD effects summing to the identity, both within 1e-10.
struct Povm {
  std::vector<HermitianMatrix> effects;

  explicit Povm(std::vector<HermitianMatrix> effects_);
  int dim() const { return effects.empty() ? 0 : effects[0].dim(); }
  int outcomes() const { return static_cast<int>(effects.size()); }
};

// Linear functional on behaviors: value = sum_{x,y,b} coeff(x,y,b) p(b|x,y).
// bound_fn, when set, maps a guessing-probability cap to a claimed bound;
// affine_bound carries (slope, offset) when that map is slope*cap + offset,
// which is what the serialized form stores.
struct Witness {
  Scenario scenario;
  std::vector<double> coefficients;  // x-major, then y, then b
  std::function<double(double)> bound_fn;
  std::optional<std::pair<double, double>> affine_bound;

  Witness(Scenario scenario_, std::vector<double> coefficients_,
          std::function<double(double)> bound_fn_ = {});
  double coeff(int x, int y, int b) const {
    return coefficients[static_cast<std::size_t>((x * scenario.l + y) * scenario.k + b)];
  }
};

// k = 2 witness given by correlator coefficients t(x,y):
// value = sum_{x,y} t(x,y) E(x,y) with E = p(0|x,y) - p(1|x,y).
Witness correlator_witness(const Scenario& scenario,
                           const std::vector<std::vector<double>>& t,
                           std::function<double(double)> bound_fn = {});

// The two (3,2,2) facet witnesses used throughout the test suites.
Witness witness_f1();
Witness witness_f2();

// Accessible-information budget: alpha in bits and the equivalent cap on the
// guessing probability, cap = min(1, 2^alpha * max prior).
struct InfoBudget {
  double alpha = 0;
  double cap = 0;
  double max_prior = 0;

  static InfoBudget from_alpha(const Scenario& scenario, double alpha);
  static InfoBudget from_cap(const Scenario& scenario, double cap);
};

// p(b|x,y) = Tr(rho_x M_{b|y}); one POVM per setting, all dims matching.
Behavior behavior_from_quantum(const QuantumEnsemble& ensemble,
                               const std::vector<Povm>& measurements);

double witness_value(const Witness& witness, const Behavior& p);

// E(x,y) = p(0|x,y) - p(1|x,y); requires k = 2.
double correlator(const Behavior& p, int x, int y);

// Two-effect POVM of a Hermitian observable. Outcome 0 is the projector onto
// the nonnegative eigenspace (zero eigenvalues included), outcome 1 the rest.
Povm binary_povm_from_observable(const Matrix& observable);

}  // namespace infocorr
