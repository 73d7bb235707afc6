#include "infocorr/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "infocorr/errors.hpp"
#include "infocorr/lp.hpp"

namespace infocorr {
namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

void check_strategy(const DeterministicStrategy& s) {
  if (s.n < 1 || s.d < 1 || s.l < 1 || s.k < 1) {
    throw InvalidInputError("strategy dimensions must be positive");
  }
  if (static_cast<int>(s.encoding.size()) != s.n ||
      static_cast<int>(s.decoding.size()) != s.d * s.l) {
    throw InvalidInputError("strategy table sizes do not match its dimensions");
  }
  for (int e : s.encoding) {
    if (e < 0 || e >= s.d) throw InvalidInputError("encoding symbol out of range");
  }
  for (int b : s.decoding) {
    if (b < 0 || b >= s.k) throw InvalidInputError("decoded outcome out of range");
  }
}

}  // namespace

std::uint64_t strategy_count(const Scenario& scenario) {
  const auto n = static_cast<std::uint64_t>(scenario.n);
  const auto k = static_cast<std::uint64_t>(scenario.k);
  return sat_mul(sat_pow(n, scenario.n), sat_pow(k, scenario.n * scenario.l));
}

void enumerate_strategies(const Scenario& scenario,
                          const std::function<void(const DeterministicStrategy&)>& visit,
                          const EnumerationBudget& budget) {
  const int n = scenario.n, l = scenario.l, k = scenario.k;
  const int d = n;  // n symbols suffice for every deterministic behavior
  const std::uint64_t decoders = sat_pow(static_cast<std::uint64_t>(k), d * l);
  const std::uint64_t encodings = sat_pow(static_cast<std::uint64_t>(n), n);
  if (decoders > budget.max_decoders || encodings > budget.max_decoders) {
    throw CapacityError("deterministic strategy enumeration exceeds the budget",
                        strategy_count(scenario));
  }
  DeterministicStrategy s;
  s.n = n;
  s.d = d;
  s.l = l;
  s.k = k;
  s.encoding.assign(static_cast<std::size_t>(n), 0);
  s.decoding.assign(static_cast<std::size_t>(d * l), 0);
  for (std::uint64_t e = 0; e < encodings; ++e) {
    std::uint64_t te = e;
    for (int x = 0; x < n; ++x) {
      s.encoding[static_cast<std::size_t>(x)] = static_cast<int>(te % n);
      te /= static_cast<std::uint64_t>(n);
    }
    for (std::uint64_t idx = 0; idx < decoders; ++idx) {
      std::uint64_t td = idx;
      for (int j = 0; j < d * l; ++j) {
        s.decoding[static_cast<std::size_t>(j)] = static_cast<int>(td % k);
        td /= static_cast<std::uint64_t>(k);
      }
      visit(s);
    }
  }
}

Behavior strategy_behavior(const DeterministicStrategy& s, const Scenario& scenario) {
  check_strategy(s);
  if (s.n != scenario.n || s.l != scenario.l || s.k != scenario.k) {
    throw InvalidInputError("strategy does not fit the scenario");
  }
  std::vector<double> table(static_cast<std::size_t>(scenario.table_size()), 0.0);
  for (int x = 0; x < s.n; ++x) {
    const int m = s.encoding[static_cast<std::size_t>(x)];
    for (int y = 0; y < s.l; ++y) {
      const int b = s.decode(m, y);
      table[static_cast<std::size_t>((x * s.l + y) * s.k + b)] = 1.0;
    }
  }
  return Behavior(scenario, std::move(table));
}

double strategy_guessing(const DeterministicStrategy& s, const std::vector<double>& prior) {
  check_strategy(s);
  if (static_cast<int>(prior.size()) != s.n) {
    throw InvalidInputError("prior length does not match the strategy");
  }
  std::vector<double> best(static_cast<std::size_t>(s.d), 0.0);
  for (int x = 0; x < s.n; ++x) {
    auto& slot = best[static_cast<std::size_t>(s.encoding[static_cast<std::size_t>(x)])];
    slot = std::max(slot, prior[static_cast<std::size_t>(x)]);
  }
  double total = 0;
  for (double v : best) total += v;
  return total;
}

std::vector<Vertex> vertices(const Scenario& scenario, const EnumerationBudget& budget) {
  const int n = scenario.n, l = scenario.l, k = scenario.k;
  const std::uint64_t rows = sat_pow(static_cast<std::uint64_t>(k), l);
  const std::uint64_t count = sat_pow(rows, n);  // = k^(n*l)
  if (count > budget.max_decoders) {
    throw CapacityError("vertex enumeration exceeds the budget", count);
  }

  // A deterministic behavior assigns each input one decode row y -> b; the
  // cheapest generating strategy merges equal rows onto one message, so the
  // cost is the sum over distinct rows of the largest prior sharing that row.
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::uint64_t> assign(static_cast<std::size_t>(n), 0);
  for (std::uint64_t v = 0; v < count; ++v) {
    std::uint64_t t = v;
    for (int x = 0; x < n; ++x) {
      assign[static_cast<std::size_t>(x)] = t % rows;
      t /= rows;
    }
    std::vector<double> table(static_cast<std::size_t>(scenario.table_size()), 0.0);
    for (int x = 0; x < n; ++x) {
      std::uint64_t r = assign[static_cast<std::size_t>(x)];
      for (int y = 0; y < l; ++y) {
        const int b = static_cast<int>(r % k);
        r /= static_cast<std::uint64_t>(k);
        table[static_cast<std::size_t>((x * l + y) * k + b)] = 1.0;
      }
    }
    std::map<std::uint64_t, double> row_max;
    for (int x = 0; x < n; ++x) {
      auto [it, fresh] = row_max.try_emplace(assign[static_cast<std::size_t>(x)],
                                             scenario.prior[static_cast<std::size_t>(x)]);
      if (!fresh) it->second = std::max(it->second, scenario.prior[static_cast<std::size_t>(x)]);
    }
    double cost = 0;
    for (const auto& [row, p] : row_max) cost += p;
    out.push_back({Behavior(scenario, std::move(table)), cost});
  }

  std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) {
    return a.behavior.table() < b.behavior.table();
  });
  // Distinct assignments give distinct tables; the merge below is defensive.
  std::vector<Vertex> dedup;
  dedup.reserve(out.size());
  for (auto& v : out) {
    if (!dedup.empty() && dedup.back().behavior.table() == v.behavior.table()) {
      dedup.back().cost = std::min(dedup.back().cost, v.cost);
    } else {
      dedup.push_back(std::move(v));
    }
  }
  return dedup;
}

std::vector<Behavior> restricted_vertices(const Scenario& scenario, const InfoBudget& budget,
                                          const EnumerationBudget& enumeration) {
  const auto verts = vertices(scenario, enumeration);
  const double cap = budget.cap;

  std::vector<const Vertex*> lows, highs;
  std::vector<Behavior> out;
  for (const auto& v : verts) {
    if (v.cost <= cap + 1e-12) out.push_back(v.behavior);
    if (v.cost < cap - 1e-12) lows.push_back(&v);
    if (v.cost > cap + 1e-12) highs.push_back(&v);
  }
  if (sat_mul(lows.size(), highs.size()) > enumeration.max_decoders) {
    throw CapacityError("restricted vertex enumeration exceeds the budget",
                        sat_mul(lows.size(), highs.size()));
  }

  const std::size_t sz = static_cast<std::size_t>(scenario.table_size());
  for (const Vertex* a : lows) {
    for (const Vertex* b : highs) {
      // Unique mixture of the pair whose average cost equals the cap.
      const double mu = (b->cost - cap) / (b->cost - a->cost);
      std::vector<double> table(sz);
      for (std::size_t i = 0; i < sz; ++i) {
        table[i] = mu * a->behavior.table()[i] + (1 - mu) * b->behavior.table()[i];
      }
      out.emplace_back(scenario, std::move(table));
    }
  }

  // Dedup on tables quantized at 1e-12.
  std::vector<std::pair<std::vector<std::int64_t>, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<std::int64_t> key(sz);
    for (std::size_t j = 0; j < sz; ++j) {
      key[j] = static_cast<std::int64_t>(std::llround(out[i].table()[j] * 1e12));
    }
    keys.emplace_back(std::move(key), i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Behavior> unique;
  unique.reserve(out.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0 && keys[i].first == keys[i - 1].first) continue;
    unique.push_back(std::move(out[keys[i].second]));
  }
  return unique;
}

double min_info_membership(const Behavior& p, const EnumerationBudget& budget) {
  const Scenario& sc = p.scenario();
  const auto verts = vertices(sc, budget);
  const int ncols = static_cast<int>(verts.size());

  // One equality row per table entry, except the last outcome of each (x,y)
  // block, which is implied by the unit weight sum; plus the weight-sum row.
  std::vector<int> keep;
  for (int x = 0; x < sc.n; ++x) {
    for (int y = 0; y < sc.l; ++y) {
      for (int b = 0; b + 1 < sc.k; ++b) keep.push_back((x * sc.l + y) * sc.k + b);
    }
  }
  const int nrows = static_cast<int>(keep.size()) + 1;

  LpProblem lp = LpProblem::make(LpSense::Minimize, ncols, nrows);
  for (int g = 0; g < ncols; ++g) lp.objective(g) = verts[static_cast<std::size_t>(g)].cost;
  for (int r = 0; r < nrows - 1; ++r) {
    const int entry = keep[static_cast<std::size_t>(r)];
    for (int g = 0; g < ncols; ++g) {
      lp.constraints(r, g) =
          verts[static_cast<std::size_t>(g)].behavior.table()[static_cast<std::size_t>(entry)];
    }
    lp.rhs(r) = p.table()[static_cast<std::size_t>(entry)];
    lp.row_sense[static_cast<std::size_t>(r)] = RowSense::Equal;
  }
  for (int g = 0; g < ncols; ++g) lp.constraints(nrows - 1, g) = 1.0;
  lp.rhs(nrows - 1) = 1.0;
  lp.row_sense[static_cast<std::size_t>(nrows - 1)] = RowSense::Equal;

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw InvalidInputError("behavior is not a valid outcome distribution table");
  }
  return sc.hmin_bits() + std::log2(sol.value);
}

double classical_witness_bound(const Witness& witness, const InfoBudget& budget,
                               const EnumerationBudget& enumeration) {
  const Scenario& sc = witness.scenario;
  const auto verts = vertices(sc, enumeration);
  const int ncols = static_cast<int>(verts.size());

  LpProblem lp = LpProblem::make(LpSense::Maximize, ncols, 2);
  for (int g = 0; g < ncols; ++g) {
    lp.objective(g) = witness_value(witness, verts[static_cast<std::size_t>(g)].behavior);
    lp.constraints(0, g) = 1.0;
    lp.constraints(1, g) = verts[static_cast<std::size_t>(g)].cost;
  }
  lp.rhs(0) = 1.0;
  lp.rhs(1) = budget.cap;
  lp.row_sense = {RowSense::Equal, RowSense::LessEqual};

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw InvalidInputError("witness bound program is infeasible; cap below the least cost");
  }
  return sol.value;
}

int affine_rank(const std::vector<std::vector<double>>& points) {
  if (points.empty()) return 0;
  const auto dim = points[0].size();
  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(points.size()) - 1,
                        static_cast<Eigen::Index>(dim));
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != dim) throw InvalidInputError("points of mixed dimension");
    for (std::size_t j = 0; j < dim; ++j) {
      diffs(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) =
          points[i][j] - points[0][j];
    }
  }
  if (diffs.rows() == 0) return 1;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-7) ++rank;
  }
  return rank + 1;
}

InequalityReport check_inequality(const Witness& witness, const InfoBudget& budget,
                                  double claimed, const EnumerationBudget& enumeration) {
  InequalityReport report;
  report.bound = classical_witness_bound(witness, budget, enumeration);
  report.valid = report.bound <= claimed + 1e-9;
  report.tight = std::abs(report.bound - claimed) <= 1e-9;

  const auto points = restricted_vertices(witness.scenario, budget, enumeration);
  std::vector<std::vector<double>> all, saturating;
  for (const auto& p : points) {
    all.push_back(p.table());
    if (std::abs(witness_value(witness, p) - claimed) <= 1e-9) saturating.push_back(p.table());
  }
  report.polytope_rank = affine_rank(all);
  report.saturating_rank = affine_rank(saturating);
  report.facet = report.valid && !saturating.empty() &&
                 report.saturating_rank == report.polytope_rank - 1;
  return report;
}

DeterministicStrategy remap_to_n_symbols(const DeterministicStrategy& s) {
  check_strategy(s);
  DeterministicStrategy out;
  out.n = s.n;
  out.d = s.n;
  out.l = s.l;
  out.k = s.k;
  out.encoding = s.encoding;
  out.decoding.assign(static_cast<std::size_t>(out.d * out.l), 0);
  for (int m = 0; m < std::min(s.d, out.d); ++m) {
    for (int y = 0; y < s.l; ++y) {
      out.decoding[static_cast<std::size_t>(m * s.l + y)] = s.decode(m, y);
    }
  }
  if (s.d <= out.d) return out;

  std::vector<bool> used(static_cast<std::size_t>(s.d), false);
  for (int e : s.encoding) used[static_cast<std::size_t>(e)] = true;
  std::vector<bool> taken(static_cast<std::size_t>(out.d), false);
  for (int m = 0; m < out.d; ++m) taken[static_cast<std::size_t>(m)] = used[static_cast<std::size_t>(m)];

  // Move each out-of-range message, preimage and decode row as a block, onto
  // a free in-range symbol. At most n symbols are in use so a slot exists;
  // the behavior and the guessing probability are untouched.
  for (int m = out.d; m < s.d; ++m) {
    if (!used[static_cast<std::size_t>(m)]) continue;
    int slot = -1;
    for (int c = 0; c < out.d; ++c) {
      if (!taken[static_cast<std::size_t>(c)]) {
        slot = c;
        break;
      }
    }
    if (slot < 0) throw InvalidInputError("strategy uses more messages than inputs");
    taken[static_cast<std::size_t>(slot)] = true;
    for (int x = 0; x < s.n; ++x) {
      if (s.encoding[static_cast<std::size_t>(x)] == m) out.encoding[static_cast<std::size_t>(x)] = slot;
    }
    for (int y = 0; y < s.l; ++y) {
      out.decoding[static_cast<std::size_t>(slot * s.l + y)] = s.decode(m, y);
    }
  }
  return out;
}

}  // namespace infocorr
