#include "infocorr/sdp.hpp"

#include <cmath>
#include <vector>

namespace infocorr {

namespace {

// vec/unvec are column-major, matching Eigen's storage.
Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

struct Barrier {
  const std::vector<Matrix>& targets;  // p_x rho_x
  int d;
  double eps;

  // Slack blocks S_x = Y - target_x + eps I and their Cholesky factors.
  bool factor(const Matrix& y, std::vector<Eigen::LLT<Matrix>>* llts) const {
    llts->clear();
    llts->reserve(targets.size());
    for (const auto& t : targets) {
      Matrix s = y - t + eps * Matrix::Identity(d, d);
      llts->emplace_back(s);
      if (llts->back().info() != Eigen::Success) return false;
    }
    return true;
  }

  double logdet_sum(const std::vector<Eigen::LLT<Matrix>>& llts) const {
    double v = 0;
    for (const auto& llt : llts) {
      const auto& l = llt.matrixLLT();
      for (int i = 0; i < d; ++i) v += 2.0 * std::log(l(i, i).real());
    }
    return v;
  }
};

}  // namespace

SdpSolution solve_guessing_sdp(const QuantumEnsemble& ensemble,
                               const SdpOptions& options) {
  const int d = ensemble.dim();
  const int n = ensemble.size();
  std::vector<Matrix> targets;
  targets.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    targets.push_back(ensemble.prior[static_cast<std::size_t>(x)] *
                      ((ensemble.states[static_cast<std::size_t>(x)].get() +
                        ensemble.states[static_cast<std::size_t>(x)].get().adjoint()) /
                       2.0));

  Barrier barrier{targets, d, options.barrier_eps};
  const Matrix id = Matrix::Identity(d, d);

  double lam = 0;
  for (const auto& t : targets) lam = std::max(lam, max_eigenvalue(t));
  Matrix y = (lam + 0.5) * id;

  double t = options.t_init;
  int newton_total = 0;
  double best_primal = -1, best_dual = 2;
  Povm best_povm(std::vector<HermitianMatrix>{HermitianMatrix(id)});
  Matrix best_y = y;
  bool have_primal = false;

  std::vector<Eigen::LLT<Matrix>> llts;

  auto center = [&](double tval, double decrement_tol) -> bool {
    // Damped Newton on phi(Y) = t Tr Y - sum_x log det S_x.
    for (int it = 0; it < 200; ++it) {
      if (++newton_total > options.max_newton) return false;
      if (!barrier.factor(y, &llts)) return false;
      Matrix grad = tval * id;
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
      for (int x = 0; x < n; ++x) {
        Matrix sinv = llts[static_cast<std::size_t>(x)].solve(id);
        sinv = (sinv + sinv.adjoint()) / 2.0;
        grad -= sinv;
        m += kron(sinv.conjugate(), sinv);
      }
      Vector rhs = -vec(grad);
      Vector step_v = m.ldlt().solve(rhs);
      Matrix step = unvec(step_v, d);
      step = (step + step.adjoint()) / 2.0;
      double dec2 = std::max(0.0, -std::real(vec(grad).dot(step_v)));
      double dec = std::sqrt(dec2);
      if (dec < decrement_tol) return true;

      double phi0 = tval * y.trace().real() - barrier.logdet_sum(llts);
      double alpha = (dec > 0.25) ? 1.0 / (1.0 + dec) : 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        Matrix cand = y + alpha * step;
        std::vector<Eigen::LLT<Matrix>> cand_llts;
        if (barrier.factor(cand, &cand_llts)) {
          double phi = tval * cand.trace().real() - barrier.logdet_sum(cand_llts);
          if (phi < phi0 + 1e-12 * std::abs(phi0) + 1e-12) {
            y = cand;
            moved = true;
            break;
          }
        }
        alpha /= 2;
      }
      if (!moved) return true;  // step stalled; treat as centered as we can get
    }
    return true;
  };

  auto recover = [&](double tval) -> bool {
    if (!barrier.factor(y, &llts)) return false;
    // Centered iterate: sum_x S_x^-1 ~= t I, so N_x = S_x^-1 / t is near-POVM.
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(d, d);
    for (int x = 0; x < n; ++x) {
      Matrix sinv = llts[static_cast<std::size_t>(x)].solve(id);
      sinv = (sinv + sinv.adjoint()) / 2.0;
      Matrix nx = clip_psd(sinv / tval);
      raw.push_back(nx);
      total += nx;
    }
    if (min_eigenvalue(total) < 1e-8) return false;
    Matrix corr = inverse_sqrt(total);
    std::vector<HermitianMatrix> effects;
    double primal = 0;
    for (int x = 0; x < n; ++x) {
      Matrix nx = corr * raw[static_cast<std::size_t>(x)] * corr;
      nx = (nx + nx.adjoint()) / 2.0;
      primal += (targets[static_cast<std::size_t>(x)] * nx).trace().real();
      effects.emplace_back(std::move(nx));
    }
    double dual = y.trace().real();
    if (primal > best_primal) {
      best_primal = primal;
      best_povm = Povm(std::move(effects));
      have_primal = true;
    }
    if (dual < best_dual) {
      best_dual = dual;
      best_y = y;
    }
    return true;
  };

  while (true) {
    const bool final_phase = (static_cast<double>(n) * d / t) < options.gap_tol / 2;
    const double dec_tol = final_phase ? 1e-9 : 5e-4;
    bool ok = center(t, dec_tol);
    recover(t);
    if (have_primal && best_dual - best_primal <= options.gap_tol) break;
    if (!ok || t >= options.t_max) {
      throw ConvergenceError("guessing sdp: gap target not reached",
                             std::max(0.0, best_primal), std::min(1.0, best_dual));
    }
    t *= options.t_mult;
  }

  SdpSolution sol{best_primal, best_dual, best_dual - best_primal,
                  best_povm, HermitianMatrix((best_y + best_y.adjoint()) / 2.0),
                  newton_total};
  return sol;
}

SdpSolution solve_guessing_sdp(const SdpDiscriminationProblem& problem,
                               const SdpOptions& options) {
  return solve_guessing_sdp(problem.ensemble, options);
}

double guessing_probability(const QuantumEnsemble& ensemble,
                            const SdpOptions& options) {
  return solve_guessing_sdp(ensemble, options).value;
}

}  // namespace infocorr
