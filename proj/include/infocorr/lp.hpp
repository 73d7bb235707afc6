#pragma once

#include <Eigen/Dense>
#include <vector>

#include "infocorr/errors.hpp"

namespace infocorr {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// General-form linear program. Variables default to [0, +inf); bounds may be
// any finite values or +-inf encoded as +-std::numeric_limits<double>::infinity().
struct LpProblem {
  LpSense sense = LpSense::Maximize;
  Eigen::VectorXd objective;
  Eigen::MatrixXd constraints;  // rows x vars
  Eigen::VectorXd rhs;
  std::vector<RowSense> row_sense;
  Eigen::VectorXd lower;  // empty => all zero
  Eigen::VectorXd upper;  // empty => all +inf

  static LpProblem make(LpSense sense, int vars, int rows);
};

struct LpOptions {
  double feas_tol = 1e-9;
  // Dantzig pricing switches to Bland's rule after bland_factor * (rows + vars)
  // pivots; 10x that count total trips the cycling guard.
  int bland_factor = 50;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double value = 0;
  Eigen::VectorXd primal;  // original variables
  // One multiplier per original row, oriented so that for an optimal solution
  // value = dual . rhs + (bound contributions); for problems with default
  // bounds and a feasible optimum, value = dual . rhs exactly.
  Eigen::VectorXd dual;
  int pivots = 0;
};

// Two-phase revised simplex on the standard-form embedding of the problem.
// Degenerate bases are handled by the Bland fallback; exceeding the hard pivot
// cap raises CyclingError. Infeasible/unbounded outcomes are reported in
// the status, not thrown.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace infocorr
