#include <doctest.h>

#include <cmath>
#include <numbers>

#include "infocorr/errors.hpp"
#include "infocorr/linalg.hpp"
#include "infocorr/model.hpp"
#include "infocorr/rng.hpp"
#include "infocorr/sdp.hpp"

using namespace infocorr;

namespace {

// Closed-form two-state guessing probability: 1/2 (1 + ||p1 r1 - p2 r2||_1).
double helstrom(double p1, const Matrix& r1, double p2, const Matrix& r2) {
  const Matrix delta = p1 * r1 - p2 * r2;
  double trace_norm = 0;
  for (const double ev : hermitian_eigenvalues(delta)) trace_norm += std::abs(ev);
  return 0.5 * (1.0 + trace_norm);
}

QuantumEnsemble trine() {
  const double s = std::sin(std::numbers::pi / 8);
  const double c = std::cos(std::numbers::pi / 8);
  Matrix plus(2, 2), zero(2, 2), third(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  zero << 1, 0, 0, 0;
  third << s * s, -s * c, -s * c, c * c;
  std::vector<HermitianMatrix> states;
  states.emplace_back(plus);
  states.emplace_back(zero);
  states.emplace_back(third);
  return QuantumEnsemble({1.0 / 3, 1.0 / 3, 1.0 / 3}, std::move(states));
}

}  // namespace

TEST_SUITE_BEGIN("sdp");

TEST_CASE("two-state ensembles against the closed form") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const double p1 = 0.2 + 0.6 * rng.uniform();
    const Matrix r1 = rng.density(2, trial % 2 + 1);
    const Matrix r2 = rng.density(2, (trial / 2) % 2 + 1);
    std::vector<HermitianMatrix> states;
    states.emplace_back(r1);
    states.emplace_back(r2);
    const QuantumEnsemble e({p1, 1 - p1}, std::move(states));
    const double oracle = helstrom(p1, r1, 1 - p1, r2);
    const double sdp = solve_guessing_sdp(e).value;
    CHECK(sdp == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("pure pairs with known overlap") {
  // uniform prior, overlap c: 1/2 + (1/2) sqrt(1 - c^2)
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const double theta = rng.uniform() * std::numbers::pi / 2;
    Matrix a(2, 2), b(2, 2);
    a << 1, 0, 0, 0;
    const double cs = std::cos(theta), sn = std::sin(theta);
    b << cs * cs, cs * sn, cs * sn, sn * sn;
    std::vector<HermitianMatrix> states;
    states.emplace_back(a);
    states.emplace_back(b);
    const QuantumEnsemble e({0.5, 0.5}, std::move(states));
    const double c = cs;  // <0|psi> = cos(theta)
    const double expected = 0.5 + 0.5 * std::sqrt(1 - c * c);
    CHECK(solve_guessing_sdp(e).value == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("the optimal triple guesses at two thirds") {
  const SdpSolution sol = solve_guessing_sdp(trine());
  CHECK(sol.value == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(sol.gap <= 2e-7 + 1e-12);
}

TEST_CASE("orthogonal states are fully distinguishable") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 0;
  b << 0, 0, 0, 1;
  std::vector<HermitianMatrix> states;
  states.emplace_back(a);
  states.emplace_back(b);
  const QuantumEnsemble e({0.5, 0.5}, std::move(states));
  CHECK(solve_guessing_sdp(e).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("primal dual sandwich and certificates") {
  Rng rng(11);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = rng.uniform_int(2, 4);
      std::vector<HermitianMatrix> states;
      std::vector<double> prior;
      for (int x = 0; x < n; ++x) {
        states.emplace_back(rng.density(dim, rng.uniform_int(1, dim)));
        prior.push_back(1.0);
      }
      for (auto& p : prior) p /= n;
      const QuantumEnsemble e(prior, std::move(states));
      const SdpSolution sol = solve_guessing_sdp(e);

      CHECK(sol.dual_value >= sol.value - 1e-9);
      CHECK(sol.gap <= 2e-7 + 1e-12);
      CHECK(sol.value >= 1.0 / n - 1e-8);
      CHECK(sol.value <= std::min(1.0, dim * (1.0 / n)) + 1e-6);

      // dual matrix must dominate each weighted state
      for (int x = 0; x < n; ++x) {
        const Matrix slack =
            sol.certificate.get() -
            e.prior[static_cast<std::size_t>(x)] * e.states[static_cast<std::size_t>(x)].get();
        CHECK(min_eigenvalue(slack) >= -1e-8);
      }
      // returned measurement reproduces the primal value
      double recomputed = 0;
      for (int x = 0; x < n; ++x) {
        recomputed += e.prior[static_cast<std::size_t>(x)] *
                      (e.states[static_cast<std::size_t>(x)].get() *
                       sol.povm.effects[static_cast<std::size_t>(x)].get())
                          .trace()
                          .real();
      }
      CHECK(recomputed == doctest::Approx(sol.value).epsilon(1e-8));
    }
  }
}

TEST_CASE("noise can only hurt") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    std::vector<HermitianMatrix> states;
    for (int x = 0; x < n; ++x) states.emplace_back(rng.density(2, 1));
    const std::vector<double> prior(n, 1.0 / n);
    const QuantumEnsemble sharp(prior, states);
    const double lam = 0.3 + 0.4 * rng.uniform();
    std::vector<HermitianMatrix> noisy;
    for (const auto& s : states) {
      noisy.emplace_back(Matrix(lam * s.get() + (1 - lam) * identity(2) / 2));
    }
    const QuantumEnsemble fuzzy(prior, std::move(noisy));
    const double pg_sharp = solve_guessing_sdp(sharp).value;
    const double pg_fuzzy = solve_guessing_sdp(fuzzy).value;
    CHECK(pg_fuzzy <= pg_sharp + 1e-6);
    CHECK(pg_fuzzy >= 1.0 / 3 - 1e-8);
  }
}

TEST_CASE("identical states cannot be told apart") {
  std::vector<HermitianMatrix> states;
  for (int x = 0; x < 3; ++x) states.emplace_back(identity(2) / 2);
  const QuantumEnsemble e({0.2, 0.3, 0.5}, std::move(states));
  CHECK(solve_guessing_sdp(e).value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("unreachable tolerance raises with a bracket") {
  std::vector<HermitianMatrix> states;
  states.emplace_back(identity(2) / 2);
  states.emplace_back(identity(2) / 2);
  const QuantumEnsemble e({0.5, 0.5}, std::move(states));
  SdpOptions opt;
  opt.gap_tol = 1e-15;  // below the barrier floor
  try {
    const SdpSolution sol = solve_guessing_sdp(e, opt);
    // converging anyway is acceptable, but the gap claim must hold
    CHECK(sol.gap <= opt.gap_tol);
  } catch (const ConvergenceError& err) {
    CHECK(err.lower() <= err.upper() + 1e-12);
    CHECK(err.lower() >= 0.5 - 1e-6);
    CHECK(err.upper() <= 0.5 + 1e-6);
  }
}

TEST_SUITE_END();
