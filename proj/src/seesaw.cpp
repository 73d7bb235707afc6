#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "infocorr/errors.hpp"
#include "infocorr/linalg.hpp"
#include "infocorr/quantum.hpp"
#include "infocorr/rng.hpp"

// Randomized seesaw: states move by Gaussian steps on unnormalized factors,
// measurements are rebuilt exactly for every proposal, and the information
// is evaluated by the guessing SDP. Everything is deterministic in
// (seed, restart index), so concurrent restarts aggregate reproducibly.

namespace infocorr {
namespace {

struct Evaluation {
  bool ok = false;
  double value = 0;
  double pg = 0;
  std::vector<Povm> povms;
};

struct RestartOutcome {
  bool ok = false;
  double mixed_value = -std::numeric_limits<double>::infinity();
  double raw_value = 0;
  double raw_pg = 0;
  std::vector<HermitianMatrix> states;
  std::vector<Povm> povms;
  std::uint64_t total = 0;
  std::uint64_t accepted = 0;
};

// Factor F with F F* equal to the PSD part of m; restarts a climb from
// given density matrices even when they are rank deficient.
Matrix psd_factor(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(((m + m.adjoint()) / 2).eval());
  Matrix f = es.eigenvectors();
  for (Eigen::Index i = 0; i < f.cols(); ++i) {
    f.col(i) *= std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return f;
}

std::vector<HermitianMatrix> states_from_factors(const std::vector<Matrix>& factors) {
  std::vector<HermitianMatrix> states;
  states.reserve(factors.size());
  for (const auto& f : factors) {
    Matrix rho = f * f.adjoint();
    const double tr = rho.trace().real();
    if (tr < 1e-14) {
      rho = identity(static_cast<int>(f.rows())) / static_cast<double>(f.rows());
    } else {
      rho /= tr;
    }
    rho = ((rho + rho.adjoint()) / 2).eval();
    states.emplace_back(std::move(rho));
  }
  return states;
}

// Best constant-outcome readout: per setting the outcome with the largest
// total coefficient. This is the strongest zero-information branch.
int best_constant_outcome(const Witness& w, int y) {
  int best = 0;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < w.scenario.k; ++b) {
    double sum = 0;
    for (int x = 0; x < w.scenario.n; ++x) sum += w.coeff(x, y, b);
    if (sum > best_sum + 1e-15) {
      best_sum = sum;
      best = b;
    }
  }
  return best;
}

double constant_outcome_value(const Witness& w) {
  double total = 0;
  for (int y = 0; y < w.scenario.l; ++y) {
    const int b = best_constant_outcome(w, y);
    for (int x = 0; x < w.scenario.n; ++x) total += w.coeff(x, y, b);
  }
  return total;
}

QuantumBranch make_trivial_branch(const Scenario& scenario, const Witness& w, int dim,
                                  double weight) {
  std::vector<HermitianMatrix> states(
      static_cast<std::size_t>(scenario.n),
      HermitianMatrix(identity(dim) / static_cast<double>(dim)));
  std::vector<Povm> povms;
  for (int y = 0; y < scenario.l; ++y) {
    const int bstar = best_constant_outcome(w, y);
    std::vector<HermitianMatrix> effects;
    for (int b = 0; b < scenario.k; ++b) {
      effects.emplace_back(b == bstar ? identity(dim) : Matrix::Zero(dim, dim));
    }
    povms.push_back(Povm(std::move(effects)));
  }
  return {weight, QuantumEnsemble(scenario.prior, std::move(states)), std::move(povms)};
}

class Search {
 public:
  Search(const Scenario& scenario, const Witness& w, double alpha, int dim,
         const SeesawOptions& options)
      : scenario_(scenario), witness_(w), alpha_(alpha), dim_(dim), options_(options) {
    budget_ = InfoBudget::from_alpha(scenario, alpha);
    hmin_ = scenario.hmin_bits();
    trivial_value_ = constant_outcome_value(w);
    loop_sdp_ = options.sdp;
    loop_sdp_.gap_tol = std::max(loop_sdp_.gap_tol, 2e-7);
  }

  Evaluation evaluate(const std::vector<HermitianMatrix>& states,
                      const SdpOptions& sdp) const {
    Evaluation ev;
    try {
      auto [povms, value] = optimal_binary_measurements(states, witness_);
      const QuantumEnsemble ensemble(scenario_.prior, states);
      ev.pg = solve_guessing_sdp(ensemble, sdp).value;
      ev.value = value;
      ev.povms = std::move(povms);
      ev.ok = true;
    } catch (const Error&) {
      ev.ok = false;
    }
    return ev;
  }

  double score(const Evaluation& ev) const {
    if (!ev.ok) return -std::numeric_limits<double>::infinity();
    const double info = hmin_ + std::log2(ev.pg);
    return ev.value - options_.penalty * std::abs(info - alpha_);
  }

  // Value after mixing down to the budget; the selection metric.
  double mixed_value(const Evaluation& ev) const {
    if (!ev.ok) return -std::numeric_limits<double>::infinity();
    if (ev.pg <= budget_.cap + 1e-12) return ev.value;
    const double q = (budget_.cap - budget_.max_prior) / (ev.pg - budget_.max_prior);
    return q * ev.value + (1 - q) * trivial_value_;
  }

  // The restart climbs accept on the penalized score; the polish climbs accept
  // on the mixed value itself. The penalty keeps early exploration near the
  // budget, but close to an optimum it turns the feasible set into a razor
  // ridge, while the mixed value stays smooth there.
  RestartOutcome climb(std::vector<Matrix> factors, Rng& rng, int iterations,
                       double sigma, double sigma_floor = 1e-4,
                       bool by_mixed = false) const {
    RestartOutcome out;
    Evaluation current = evaluate(states_from_factors(factors), loop_sdp_);
    double current_score = by_mixed ? mixed_value(current) : score(current);
    out.total += 1;
    for (int it = 0; it < iterations; ++it) {
      std::vector<Matrix> proposal = factors;
      if (rng.uniform() < 0.5) {
        const int x = rng.uniform_int(0, static_cast<int>(factors.size()) - 1);
        proposal[static_cast<std::size_t>(x)] +=
            sigma * rng.complex_gaussian(proposal[static_cast<std::size_t>(x)].rows(),
                                         proposal[static_cast<std::size_t>(x)].cols());
      } else {
        for (auto& f : proposal) {
          f += sigma * rng.complex_gaussian(f.rows(), f.cols());
        }
      }
      const Evaluation next = evaluate(states_from_factors(proposal), loop_sdp_);
      const double next_score = by_mixed ? mixed_value(next) : score(next);
      out.total += 1;
      if (next_score > current_score) {
        factors = std::move(proposal);
        current = next;
        current_score = next_score;
        out.accepted += 1;
        sigma = std::min(sigma * 1.4, 2.0);
      } else {
        sigma = std::max(sigma * 0.75, sigma_floor);
      }
    }
    if (!current.ok) return out;
    out.ok = true;
    out.raw_value = current.value;
    out.raw_pg = current.pg;
    out.states = states_from_factors(factors);
    out.povms = std::move(current.povms);
    out.mixed_value = mixed_value(current);
    return out;
  }

  RestartOutcome run_restart(int index) const {
    Rng rng(mix_seed(options_.seed, static_cast<std::uint64_t>(index)));
    // Cycle the start rank across restarts; pure starts find low-rank optima
    // that full-rank walks in higher dimension rarely reach.
    const int rank = options_.rank > 0 ? std::min(options_.rank, dim_)
                                       : 1 + index % dim_;
    std::vector<Matrix> factors;
    factors.reserve(static_cast<std::size_t>(scenario_.n));
    for (int x = 0; x < scenario_.n; ++x) {
      factors.push_back(rng.complex_gaussian(dim_, rank));
    }
    // Most restarts follow the penalized objective; every fifth climbs the
    // mixed value itself, which reaches high-value basins the penalty repels.
    const bool by_mixed = index % 5 == 4;
    return climb(std::move(factors), rng, options_.iterations, 0.5, 1e-4, by_mixed);
  }

  const Scenario& scenario_;
  const Witness& witness_;
  double alpha_;
  int dim_;
  SeesawOptions options_;
  InfoBudget budget_{};
  double hmin_ = 0;
  double trivial_value_ = 0;
  SdpOptions loop_sdp_;
};

}  // namespace

SeesawResult seesaw_max_witness(const Scenario& scenario, const Witness& w, double alpha,
                                int dim, const SeesawOptions& options) {
  if (w.scenario.k != 2) throw UnsupportedScenarioError("the measurement step needs k = 2");
  if (!(w.scenario.n == scenario.n && w.scenario.l == scenario.l && w.scenario.k == scenario.k))
    throw InvalidInputError("witness shape does not match the scenario");
  if (dim < 1 || dim > 8) throw InvalidInputError("dimension must lie in [1, 8]");
  if (!std::isfinite(alpha) || alpha < 0) throw InvalidInputError("alpha must be nonnegative");
  if (options.restarts < 1) throw InvalidInputError("restarts must be positive");
  if (options.iterations < 0 || options.polish_iterations < 0)
    throw InvalidInputError("iteration counts must be nonnegative");

  const Search search(scenario, w, alpha, dim, options);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  std::atomic<int> cursor{0};
  auto drain = [&] {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= options.restarts) return;
      outcomes[static_cast<std::size_t>(i)] = search.run_restart(i);
    }
  };
  int workers = options.workers > 0
                    ? options.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, options.restarts);
  {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int t = 0; t + 1 < workers; ++t) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
  }

  int best = -1;
  std::uint64_t total = 0, accepted = 0;
  for (int i = 0; i < options.restarts; ++i) {
    const auto& oc = outcomes[static_cast<std::size_t>(i)];
    total += oc.total;
    accepted += oc.accepted;
    if (!oc.ok) continue;
    if (best < 0 || oc.mixed_value > outcomes[static_cast<std::size_t>(best)].mixed_value) {
      best = i;
    }
  }

  double raw_value = 0, raw_info = 0;
  std::vector<QuantumBranch> branches;
  if (best < 0) {
    // Every restart failed its solver calls; fall back to the zero-information
    // branch, which is always a valid budget point.
    branches.push_back(make_trivial_branch(scenario, w, dim, 1.0));
  } else {
    RestartOutcome chosen = outcomes[static_cast<std::size_t>(best)];
    if (dim > 2 && options.polish_iterations > 0 && options.restarts >= 4) {
      // Dimensional cascade: solve the one-smaller problem on half the budget,
      // embed its leading branch, and refine at full dimension. Low-dimensional
      // optima embed exactly, so this candidate never starts below them.
      SeesawOptions sub = options;
      sub.restarts = std::max(8, options.restarts / 2);
      sub.seed = mix_seed(options.seed, 0x6e6573746564ULL);
      const SeesawResult lower = seesaw_max_witness(scenario, w, alpha, dim - 1, sub);
      const QuantumBranch* lead = nullptr;
      for (const auto& br : lower.strategy.branches) {
        if (!lead || br.weight > lead->weight) lead = &br;
      }
      std::vector<Matrix> factors;
      for (const auto& s : lead->ensemble.states) {
        Matrix embedded = Matrix::Zero(dim, dim);
        embedded.topLeftCorner(dim - 1, dim - 1) = s.get();
        factors.push_back(psd_factor(embedded));
      }
      Rng rng(mix_seed(options.seed, 0x63617363616465ULL));
      RestartOutcome cascade = search.climb(std::move(factors), rng,
                                            options.polish_iterations, 0.02, 1e-7, true);
      total += cascade.total;
      accepted += cascade.accepted;
      if (cascade.ok && cascade.mixed_value >= chosen.mixed_value) {
        chosen = std::move(cascade);
        best = -1;  // came from the cascade, not a restart
      }
    }
    if (options.polish_iterations > 0) {
      // Polish the leading basins, not just the single best restart.
      std::vector<int> order;
      for (int i = 0; i < options.restarts; ++i) {
        if (outcomes[static_cast<std::size_t>(i)].ok) order.push_back(i);
      }
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return outcomes[static_cast<std::size_t>(a)].mixed_value >
               outcomes[static_cast<std::size_t>(b)].mixed_value;
      });
      const int leaders = std::min<int>(3, static_cast<int>(order.size()));
      const int hops = 2;
      const int span = std::max(1, options.polish_iterations / hops);
      for (int rank = 0; rank < leaders; ++rank) {
        const int idx = order[static_cast<std::size_t>(rank)];
        Rng rng(mix_seed(options.seed,
                         static_cast<std::uint64_t>(options.restarts) +
                             static_cast<std::uint64_t>(idx)));
        const auto& start = outcomes[static_cast<std::size_t>(idx)];
        std::vector<Matrix> factors;
        factors.reserve(start.states.size());
        for (const auto& s : start.states) factors.push_back(psd_factor(s.get()));
        // Basin hopping on the mixed value: settle, kick, settle again.
        for (int hop = 0; hop < hops; ++hop) {
          std::vector<Matrix> trial = factors;
          if (hop > 0) {
            for (auto& f : trial) {
              f += 0.25 * rng.complex_gaussian(f.rows(), f.cols());
            }
          }
          RestartOutcome polished =
              search.climb(std::move(trial), rng, span, 0.02, 1e-7, true);
          total += polished.total;
          accepted += polished.accepted;
          if (polished.ok && polished.mixed_value >= chosen.mixed_value) {
            chosen = std::move(polished);
            best = idx;
            factors.clear();
            for (const auto& s : chosen.states) {
              factors.push_back(psd_factor(s.get()));
            }
          }
        }
      }
    }
    // Re-measure the chosen point at the reporting tolerance so the mixing
    // weight is computed from the same numbers a fresh evaluation would see.
    const Evaluation final_ev = search.evaluate(chosen.states, options.sdp);
    if (final_ev.ok) {
      chosen.raw_value = final_ev.value;
      chosen.raw_pg = final_ev.pg;
      chosen.povms = final_ev.povms;
    }

    raw_value = chosen.raw_value;
    raw_info = scenario.hmin_bits() + std::log2(chosen.raw_pg);

    const InfoBudget budget = InfoBudget::from_alpha(scenario, alpha);
    if (chosen.raw_pg <= budget.cap + 1e-12) {
      branches.push_back({1.0, QuantumEnsemble(scenario.prior, chosen.states),
                          chosen.povms});
    } else {
      const double q =
          (budget.cap - budget.max_prior) / (chosen.raw_pg - budget.max_prior);
      if (q < 1e-15) {
        branches.push_back(make_trivial_branch(scenario, w, dim, 1.0));
      } else {
        branches.push_back({q, QuantumEnsemble(scenario.prior, chosen.states),
                            chosen.povms});
        branches.push_back(make_trivial_branch(scenario, w, dim, 1 - q));
      }
    }
  }

  QuantumStrategy strategy(std::move(branches));
  const auto [info, value] = strategy_info_and_value(strategy, w, options.sdp);
  return SeesawResult{value, info,  std::move(strategy), raw_value,
                      raw_info, best, total, accepted};
}

}  // namespace infocorr
