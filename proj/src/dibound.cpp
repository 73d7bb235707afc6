#include "infocorr/dibound.hpp"

#include <algorithm>
#include <cmath>

#include "infocorr/errors.hpp"
#include "infocorr/lp.hpp"

namespace infocorr {

PostProcessing::PostProcessing(int settings_, int outcomes_in_, int outcomes_out_,
                               std::vector<double> table_)
    : settings(settings_),
      outcomes_in(outcomes_in_),
      outcomes_out(outcomes_out_),
      table(std::move(table_)) {
  if (settings < 1 || outcomes_in < 1 || outcomes_out < 1)
    throw InvalidInputError("post-processing dimensions must be positive");
  if (table.size() !=
      static_cast<std::size_t>(settings) * static_cast<std::size_t>(outcomes_in) *
          static_cast<std::size_t>(outcomes_out))
    throw InvalidInputError("post-processing table size mismatch");
  for (int y = 0; y < settings; ++y) {
    for (int b = 0; b < outcomes_in; ++b) {
      double sum = 0;
      for (int bp = 0; bp < outcomes_out; ++bp) {
        const double v = at(y, b, bp);
        if (!std::isfinite(v) || v < -kProbTol)
          throw InvalidInputError("post-processing entries must be nonnegative");
        sum += v;
      }
      if (std::abs(sum - 1.0) > kProbTol)
        throw InvalidInputError("post-processing rows must sum to 1");
    }
  }
}

Behavior apply_post_processing(const PostProcessing& post, const Behavior& p) {
  const Scenario& sc = p.scenario();
  if (post.settings != sc.l || post.outcomes_in != sc.k)
    throw InvalidInputError("post-processing shape does not match the behavior");
  Scenario out_sc(sc.n, sc.l, post.outcomes_out, sc.prior);
  std::vector<double> table(static_cast<std::size_t>(out_sc.table_size()), 0.0);
  for (int x = 0; x < sc.n; ++x) {
    for (int y = 0; y < sc.l; ++y) {
      for (int bp = 0; bp < post.outcomes_out; ++bp) {
        double v = 0;
        for (int b = 0; b < sc.k; ++b) v += p.at(x, y, b) * post.at(y, b, bp);
        table[static_cast<std::size_t>((x * sc.l + y) * post.outcomes_out + bp)] =
            std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return Behavior(std::move(out_sc), std::move(table));
}

double di_min_info(const Behavior& p) {
  const Scenario& sc = p.scenario();
  double best = 0;
  for (int y = 0; y < sc.l; ++y) {
    double g = 0;
    for (int b = 0; b < sc.k; ++b) {
      double top = 0;
      for (int x = 0; x < sc.n; ++x) {
        top = std::max(top, sc.prior[static_cast<std::size_t>(x)] * p.at(x, y, b));
      }
      g += top;
    }
    best = std::max(best, g);
  }
  return sc.hmin_bits() + std::log2(best);
}

double di_max_witness(const Witness& w, const InfoBudget& budget) {
  const Scenario& sc = w.scenario;
  const int np = sc.table_size();       // behavior entries
  const int nt = sc.l * sc.k;           // slack entries t_{y,b}
  const int rows_norm = sc.n * sc.l;
  const int rows_dom = sc.n * sc.l * sc.k;
  const int nrows = rows_norm + rows_dom + sc.l;

  LpProblem lp = LpProblem::make(LpSense::Maximize, np + nt, nrows);
  for (int i = 0; i < np; ++i) lp.objective(i) = w.coefficients[static_cast<std::size_t>(i)];
  lp.upper = Eigen::VectorXd::Ones(np + nt);

  int r = 0;
  for (int x = 0; x < sc.n; ++x) {
    for (int y = 0; y < sc.l; ++y) {
      for (int b = 0; b < sc.k; ++b) {
        lp.constraints(r, (x * sc.l + y) * sc.k + b) = 1.0;
      }
      lp.rhs(r) = 1.0;
      lp.row_sense[static_cast<std::size_t>(r)] = RowSense::Equal;
      ++r;
    }
  }
  for (int y = 0; y < sc.l; ++y) {
    for (int b = 0; b < sc.k; ++b) {
      for (int x = 0; x < sc.n; ++x) {
        lp.constraints(r, (x * sc.l + y) * sc.k + b) = sc.prior[static_cast<std::size_t>(x)];
        lp.constraints(r, np + y * sc.k + b) = -1.0;
        lp.rhs(r) = 0.0;
        lp.row_sense[static_cast<std::size_t>(r)] = RowSense::LessEqual;
        ++r;
      }
    }
  }
  for (int y = 0; y < sc.l; ++y) {
    for (int b = 0; b < sc.k; ++b) lp.constraints(r, np + y * sc.k + b) = 1.0;
    lp.rhs(r) = budget.cap;
    lp.row_sense[static_cast<std::size_t>(r)] = RowSense::LessEqual;
    ++r;
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw InvalidInputError("witness ceiling program did not reach an optimum");
  }
  return sol.value;
}

std::vector<std::pair<double, double>> di_info_curve(const Witness& w,
                                                     const std::vector<double>& values) {
  const double hm = w.scenario.hmin_bits();
  const double unrestricted = di_max_witness(w, InfoBudget::from_alpha(w.scenario, hm));

  std::vector<std::pair<double, double>> out;
  out.reserve(values.size());
  for (double target : values) {
    if (!std::isfinite(target) || target > unrestricted + 1e-9) {
      throw InvalidInputError("target value exceeds the unrestricted witness maximum");
    }
    double lo = 0, hi = hm;
    if (di_max_witness(w, InfoBudget::from_alpha(w.scenario, 0.0)) >= target) {
      out.emplace_back(target, 0.0);
      continue;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
      const double mid = (lo + hi) / 2;
      if (di_max_witness(w, InfoBudget::from_alpha(w.scenario, mid)) >= target) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.emplace_back(target, hi);
  }
  return out;
}

}  // namespace infocorr
