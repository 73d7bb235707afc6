#include "infocorr/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace infocorr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarRule {
  // 0: x = lo + x'   1: x = up - x'   2: x = x+ - x-
  int kind = 0;
  int col = -1;
  int col2 = -1;
  double lo = 0, up = kInf;
};

struct Standard {
  // min c.x  s.t.  A x = b, x >= 0. Column order: structurals, slacks, artificials.
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int n_struct = 0;
  int n_slack = 0;
  int n_art = 0;
  std::vector<int> row_origin;     // index into original rows, -1 for bound rows
  std::vector<double> row_flip;    // +1/-1 applied to make b >= 0
  std::vector<VarRule> rules;
  double obj_sign = 1;             // applied to recover the user's objective value
};

Standard build_standard(const LpProblem& p) {
  const int rows = static_cast<int>(p.constraints.rows());
  const int vars = static_cast<int>(p.constraints.cols());
  if (p.objective.size() != vars || p.rhs.size() != rows ||
      static_cast<int>(p.row_sense.size()) != rows)
    throw InvalidInputError("lp: inconsistent problem dimensions");
  if (!p.objective.allFinite() || !p.constraints.allFinite() || !p.rhs.allFinite())
    throw InvalidInputError("lp: coefficients must be finite");

  Eigen::VectorXd lower = p.lower.size() ? p.lower : Eigen::VectorXd::Zero(vars);
  Eigen::VectorXd upper =
      p.upper.size() ? p.upper : Eigen::VectorXd::Constant(vars, kInf);
  if (lower.size() != vars || upper.size() != vars)
    throw InvalidInputError("lp: bound vector length mismatch");
  for (int j = 0; j < vars; ++j)
    if (lower(j) > upper(j))
      throw InvalidInputError("lp: lower bound above upper bound");

  Standard s;
  s.obj_sign = (p.sense == LpSense::Maximize) ? -1.0 : 1.0;

  // Variable rules and structural column count.
  int ncol = 0;
  std::vector<int> ub_row_var;  // vars needing an explicit upper-bound row
  for (int j = 0; j < vars; ++j) {
    VarRule r;
    r.lo = lower(j);
    r.up = upper(j);
    if (std::isfinite(r.lo)) {
      r.kind = 0;
      r.col = ncol++;
      if (std::isfinite(r.up) && r.up > r.lo) ub_row_var.push_back(j);
      // lo == up pins the variable; the bound row x' <= 0 handles it.
      if (std::isfinite(r.up) && r.up == r.lo) ub_row_var.push_back(j);
    } else if (std::isfinite(r.up)) {
      r.kind = 1;
      r.col = ncol++;
    } else {
      r.kind = 2;
      r.col = ncol++;
      r.col2 = ncol++;
    }
    s.rules.push_back(r);
  }
  s.n_struct = ncol;

  const int total_rows = rows + static_cast<int>(ub_row_var.size());
  Eigen::MatrixXd astruct = Eigen::MatrixXd::Zero(total_rows, ncol);
  Eigen::VectorXd b(total_rows);
  std::vector<RowSense> senses(static_cast<std::size_t>(total_rows));
  s.row_origin.assign(static_cast<std::size_t>(total_rows), -1);

  for (int i = 0; i < rows; ++i) {
    double shift = 0;
    for (int j = 0; j < vars; ++j) {
      const VarRule& r = s.rules[j];
      const double a = p.constraints(i, j);
      if (a == 0) continue;
      switch (r.kind) {
        case 0:
          astruct(i, r.col) += a;
          shift += a * r.lo;
          break;
        case 1:
          astruct(i, r.col) -= a;
          shift += a * r.up;
          break;
        case 2:
          astruct(i, r.col) += a;
          astruct(i, r.col2) -= a;
          break;
      }
    }
    b(i) = p.rhs(i) - shift;
    senses[static_cast<std::size_t>(i)] = p.row_sense[static_cast<std::size_t>(i)];
    s.row_origin[static_cast<std::size_t>(i)] = i;
  }
  for (std::size_t u = 0; u < ub_row_var.size(); ++u) {
    const int i = rows + static_cast<int>(u);
    const VarRule& r = s.rules[static_cast<std::size_t>(ub_row_var[u])];
    astruct(i, r.col) = 1.0;
    b(i) = r.up - r.lo;
    senses[static_cast<std::size_t>(i)] = RowSense::LessEqual;
  }

  // Objective on structurals.
  Eigen::VectorXd cstruct = Eigen::VectorXd::Zero(ncol);
  for (int j = 0; j < vars; ++j) {
    const VarRule& r = s.rules[j];
    const double cj = s.obj_sign * p.objective(j);
    switch (r.kind) {
      case 0: cstruct(r.col) += cj; break;
      case 1: cstruct(r.col) -= cj; break;
      case 2:
        cstruct(r.col) += cj;
        cstruct(r.col2) -= cj;
        break;
    }
  }

  // Row normalization (b >= 0) and slack columns.
  s.row_flip.assign(static_cast<std::size_t>(total_rows), 1.0);
  int n_slack = 0;
  std::vector<int> slack_of_row(static_cast<std::size_t>(total_rows), -1);
  std::vector<double> slack_sign(static_cast<std::size_t>(total_rows), 0.0);
  for (int i = 0; i < total_rows; ++i) {
    if (b(i) < 0) {
      b(i) = -b(i);
      astruct.row(i) = -astruct.row(i);
      s.row_flip[static_cast<std::size_t>(i)] = -1.0;
      auto& sn = senses[static_cast<std::size_t>(i)];
      if (sn == RowSense::LessEqual) sn = RowSense::GreaterEqual;
      else if (sn == RowSense::GreaterEqual) sn = RowSense::LessEqual;
    }
    if (senses[static_cast<std::size_t>(i)] == RowSense::LessEqual) {
      slack_of_row[static_cast<std::size_t>(i)] = n_slack;
      slack_sign[static_cast<std::size_t>(i)] = 1.0;
      ++n_slack;
    } else if (senses[static_cast<std::size_t>(i)] == RowSense::GreaterEqual) {
      slack_of_row[static_cast<std::size_t>(i)] = n_slack;
      slack_sign[static_cast<std::size_t>(i)] = -1.0;
      ++n_slack;
    }
  }
  s.n_slack = n_slack;
  s.n_art = total_rows;  // one artificial per row; +1 slacks double as phase-1 basis

  const int ntot = ncol + n_slack + total_rows;
  s.a = Eigen::MatrixXd::Zero(total_rows, ntot);
  s.a.leftCols(ncol) = astruct;
  for (int i = 0; i < total_rows; ++i) {
    if (slack_of_row[static_cast<std::size_t>(i)] >= 0)
      s.a(i, ncol + slack_of_row[static_cast<std::size_t>(i)]) =
          slack_sign[static_cast<std::size_t>(i)];
    s.a(i, ncol + n_slack + i) = 1.0;
  }
  s.b = b;
  s.c = Eigen::VectorXd::Zero(ntot);
  s.c.head(ncol) = cstruct;
  return s;
}

struct SimplexCore {
  const Eigen::MatrixXd& a;
  const Eigen::VectorXd& b;
  std::vector<int> basis;
  Eigen::FullPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd xb;
  int pivots = 0;

  explicit SimplexCore(const Eigen::MatrixXd& a_, const Eigen::VectorXd& b_)
      : a(a_), b(b_) {}

  void refactor() {
    const int m = static_cast<int>(a.rows());
    Eigen::MatrixXd bm(m, m);
    for (int i = 0; i < m; ++i) bm.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
    lu.compute(bm);
    if (lu.rank() < m)
      throw CyclingError("lp: singular basis encountered", 0, 0);
    xb = lu.solve(b);
  }

  // Runs simplex on objective c restricted to columns [0, ncols); returns true
  // when optimal, false when unbounded (entering column recorded in *unb_col).
  bool iterate(const Eigen::VectorXd& c, int ncols, const LpOptions& opt,
               const std::vector<bool>& allowed, int* unb_col) {
    const int m = static_cast<int>(a.rows());
    const int bland_after =
        opt.bland_factor * (m + ncols) + 1000;
    const int hard_cap = 10 * bland_after;
    for (;;) {
      refactor();
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) cb(i) = c(basis[static_cast<std::size_t>(i)]);
      Eigen::VectorXd y = lu.transpose().solve(cb);
      // Pricing.
      const bool bland = pivots > bland_after;
      int enter = -1;
      double best = -opt.feas_tol;
      for (int j = 0; j < ncols; ++j) {
        if (!allowed[static_cast<std::size_t>(j)]) continue;
        const double z = c(j) - y.dot(a.col(j));
        if (z < best) {
          if (bland) {
            bool basic = false;
            for (int i = 0; i < m; ++i)
              if (basis[static_cast<std::size_t>(i)] == j) { basic = true; break; }
            if (!basic) { enter = j; break; }
          } else {
            enter = j;
            best = z;
          }
        }
      }
      if (enter < 0) return true;
      Eigen::VectorXd d = lu.solve(a.col(enter));
      int leave = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m; ++i) {
        if (d(i) > 1e-11) {
          const double ratio = std::max(0.0, xb(i)) / d(i);
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 &&
               (leave < 0 || basis[static_cast<std::size_t>(i)] <
                                 basis[static_cast<std::size_t>(leave)]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        *unb_col = enter;
        return false;
      }
      basis[static_cast<std::size_t>(leave)] = enter;
      if (++pivots > hard_cap)
        throw CyclingError("lp: pivot budget exhausted (cycling guard)", 0, 0);
    }
  }
};

}  // namespace

LpProblem LpProblem::make(LpSense sense, int vars, int rows) {
  LpProblem p;
  p.sense = sense;
  p.objective = Eigen::VectorXd::Zero(vars);
  p.constraints = Eigen::MatrixXd::Zero(rows, vars);
  p.rhs = Eigen::VectorXd::Zero(rows);
  p.row_sense.assign(static_cast<std::size_t>(rows), RowSense::LessEqual);
  return p;
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  Standard s = build_standard(problem);
  const int m = static_cast<int>(s.a.rows());
  const int n_real = s.n_struct + s.n_slack;
  const int ntot = n_real + s.n_art;

  LpSolution out;
  out.dual = Eigen::VectorXd::Zero(problem.constraints.rows());
  out.primal = Eigen::VectorXd::Zero(problem.constraints.cols());

  if (m == 0) {
    // No constraints: optimum is at the variable bounds or unbounded.
    double v = 0;
    for (int j = 0; j < static_cast<int>(s.rules.size()); ++j) {
      const double cj = problem.objective(j);
      const VarRule& r = s.rules[static_cast<std::size_t>(j)];
      const double scj = s.obj_sign * cj;
      double xj;
      if (scj > 0) {
        if (!std::isfinite(r.lo)) { out.status = LpStatus::Unbounded; return out; }
        xj = r.lo;
      } else if (scj < 0) {
        if (!std::isfinite(r.up)) { out.status = LpStatus::Unbounded; return out; }
        xj = r.up;
      } else {
        xj = std::isfinite(r.lo) ? r.lo : (std::isfinite(r.up) ? r.up : 0);
      }
      out.primal(j) = xj;
      v += cj * xj;
    }
    out.value = v;
    return out;
  }

  SimplexCore core(s.a, s.b);
  core.basis.resize(static_cast<std::size_t>(m));

  // Phase 1: artificial basis, minimize artificial mass.
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(ntot);
  for (int i = 0; i < m; ++i) {
    core.basis[static_cast<std::size_t>(i)] = n_real + i;
    c1(n_real + i) = 1.0;
  }
  std::vector<bool> allow_all(static_cast<std::size_t>(ntot), true);
  int unb = -1;
  core.iterate(c1, ntot, options, allow_all, &unb);  // bounded below by 0
  core.refactor();
  double art_mass = 0;
  for (int i = 0; i < m; ++i)
    if (core.basis[static_cast<std::size_t>(i)] >= n_real)
      art_mass += std::max(0.0, core.xb(i));
  if (art_mass > options.feas_tol * std::max(1.0, s.b.cwiseAbs().maxCoeff())) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive remaining artificials out; drop rows where no pivot exists (redundant).
  std::vector<int> keep_rows;
  {
    std::vector<int> drop;
    for (int i = 0; i < m; ++i) {
      if (core.basis[static_cast<std::size_t>(i)] < n_real) continue;
      Eigen::MatrixXd binv_a = core.lu.solve(s.a.leftCols(n_real));
      int pivot_col = -1;
      for (int j = 0; j < n_real; ++j) {
        bool basic = false;
        for (int q = 0; q < m; ++q)
          if (core.basis[static_cast<std::size_t>(q)] == j) { basic = true; break; }
        if (!basic && std::abs(binv_a(i, j)) > 1e-9) { pivot_col = j; break; }
      }
      if (pivot_col >= 0) {
        core.basis[static_cast<std::size_t>(i)] = pivot_col;
        core.refactor();
      } else {
        drop.push_back(i);
      }
    }
    for (int i = 0; i < m; ++i) {
      bool dropped = false;
      for (int dr : drop)
        if (dr == i) { dropped = true; break; }
      if (!dropped) keep_rows.push_back(i);
    }
  }

  Eigen::MatrixXd a2(static_cast<int>(keep_rows.size()), n_real);
  Eigen::VectorXd b2(static_cast<int>(keep_rows.size()));
  for (std::size_t i = 0; i < keep_rows.size(); ++i) {
    a2.row(static_cast<int>(i)) = s.a.row(keep_rows[i]).head(n_real);
    b2(static_cast<int>(i)) = s.b(keep_rows[i]);
  }
  SimplexCore core2(a2, b2);
  core2.pivots = core.pivots;
  for (int r : keep_rows) {
    core2.basis.push_back(core.basis[static_cast<std::size_t>(r)]);
  }

  Eigen::VectorXd c2 = s.c.head(n_real);
  std::vector<bool> allowed(static_cast<std::size_t>(n_real), true);
  unb = -1;
  const bool optimal = core2.iterate(c2, n_real, options, allowed, &unb);
  out.pivots = core2.pivots;
  if (!optimal) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  core2.refactor();
  Eigen::VectorXd xfull = Eigen::VectorXd::Zero(n_real);
  for (std::size_t i = 0; i < core2.basis.size(); ++i)
    xfull(core2.basis[i]) = core2.xb(static_cast<int>(i));

  for (int j = 0; j < static_cast<int>(s.rules.size()); ++j) {
    const VarRule& r = s.rules[static_cast<std::size_t>(j)];
    switch (r.kind) {
      case 0: out.primal(j) = r.lo + xfull(r.col); break;
      case 1: out.primal(j) = r.up - xfull(r.col); break;
      case 2: out.primal(j) = xfull(r.col) - xfull(r.col2); break;
    }
  }
  out.value = problem.objective.dot(out.primal);

  // Duals for the original rows: y = B^-T c_B, unflipped and re-oriented.
  {
    const int m2 = static_cast<int>(core2.basis.size());
    Eigen::VectorXd cb(m2);
    for (int i = 0; i < m2; ++i) cb(i) = c2(core2.basis[static_cast<std::size_t>(i)]);
    Eigen::VectorXd y = core2.lu.transpose().solve(cb);
    const double sign = (problem.sense == LpSense::Maximize) ? -1.0 : 1.0;
    for (int i = 0; i < m2; ++i) {
      const int std_row = keep_rows[static_cast<std::size_t>(i)];
      const int orig = s.row_origin[static_cast<std::size_t>(std_row)];
      if (orig >= 0)
        out.dual(orig) = sign * s.row_flip[static_cast<std::size_t>(std_row)] * y(i);
    }
  }
  return out;
}

}  // namespace infocorr
