#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "infocorr/classical.hpp"
#include "infocorr/errors.hpp"
#include "infocorr/model.hpp"
#include "infocorr/rng.hpp"

using namespace infocorr;

namespace {

// Independent eavesdropper oracle: best guess function g: messages -> inputs.
double best_decoder_guess(const DeterministicStrategy& s, const std::vector<double>& prior) {
  double best = 0;
  std::vector<int> g(static_cast<std::size_t>(s.d), 0);
  while (true) {
    double v = 0;
    for (int x = 0; x < s.n; ++x) {
      if (g[static_cast<std::size_t>(s.encoding[static_cast<std::size_t>(x)])] == x) {
        v += prior[static_cast<std::size_t>(x)];
      }
    }
    best = std::max(best, v);
    int pos = 0;
    while (pos < s.d && ++g[static_cast<std::size_t>(pos)] == s.n) {
      g[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == s.d) break;
  }
  return best;
}

DeterministicStrategy random_strategy(Rng& rng, int n, int d, int l, int k) {
  DeterministicStrategy s;
  s.n = n;
  s.d = d;
  s.l = l;
  s.k = k;
  for (int x = 0; x < n; ++x) s.encoding.push_back(rng.uniform_int(0, d - 1));
  for (int i = 0; i < d * l; ++i) s.decoding.push_back(rng.uniform_int(0, k - 1));
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("classical");

TEST_CASE("strategy counts") {
  CHECK(strategy_count(Scenario::uniform(3, 2, 2)) == 1728);  // 3^3 * 2^6
  CHECK(strategy_count(Scenario::uniform(2, 2, 2)) == 64);    // 2^2 * 2^4
}

TEST_CASE("guessing probability of an encoding") {
  DeterministicStrategy s;
  s.n = 3;
  s.d = 3;
  s.l = 1;
  s.k = 2;
  s.decoding = {0, 0, 0};
  const std::vector<double> uniform(3, 1.0 / 3);

  s.encoding = {0, 0, 1};  // two inputs share a message
  CHECK(strategy_guessing(s, uniform) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  s.encoding = {0, 1, 2};
  CHECK(strategy_guessing(s, uniform) == doctest::Approx(1.0).epsilon(1e-12));
  s.encoding = {1, 1, 1};
  CHECK(strategy_guessing(s, uniform) == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // skewed prior: grouping the two light inputs still leaks the heavy one
  s.encoding = {0, 1, 1};
  CHECK(strategy_guessing(s, {0.6, 0.25, 0.15}) == doctest::Approx(0.85).epsilon(1e-12));
}

TEST_CASE("guessing matches the exhaustive decoder") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int d = rng.uniform_int(2, 4);
    const DeterministicStrategy s = random_strategy(rng, n, d, 1, 2);
    std::vector<double> prior;
    double total = 0;
    for (int x = 0; x < n; ++x) {
      prior.push_back(0.1 + rng.uniform());
      total += prior.back();
    }
    for (auto& p : prior) p /= total;
    CHECK(strategy_guessing(s, prior) ==
          doctest::Approx(best_decoder_guess(s, prior)).epsilon(1e-12));
  }
}

TEST_CASE("enumeration visits every strategy once") {
  const Scenario sc = Scenario::uniform(2, 2, 2);
  std::uint64_t seen = 0;
  enumerate_strategies(sc, [&](const DeterministicStrategy& s) {
    ++seen;
    REQUIRE(s.d == 2);
    const Behavior p = strategy_behavior(s, sc);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        CHECK(p.at(x, y, 0) + p.at(x, y, 1) == doctest::Approx(1.0));
      }
    }
  });
  CHECK(seen == strategy_count(sc));
}

TEST_CASE("enumeration refuses oversized scenarios") {
  const Scenario sc = Scenario::uniform(4, 4, 4);  // 4^16 decoders
  try {
    enumerate_strategies(sc, [](const DeterministicStrategy&) {});
    FAIL("expected CapacityError");
  } catch (const CapacityError& err) {
    CHECK(err.required() == strategy_count(sc));
  }
}

TEST_CASE("vertex set of the three input scenario") {
  const auto verts = vertices(Scenario::uniform(3, 2, 2));
  CHECK(verts.size() == 64);  // one per outcome table (x,y) -> b
  std::set<double> costs;
  for (const auto& v : verts) costs.insert(v.cost);
  CHECK(costs == std::set<double>{1.0 / 3, 2.0 / 3, 1.0});
  // canonical order is strict lexicographic on the tables
  for (std::size_t i = 1; i < verts.size(); ++i) {
    CHECK(verts[i - 1].behavior.table() < verts[i].behavior.table());
  }
}

TEST_CASE("restricted vertex candidates at three quarters") {
  const Scenario sc = Scenario::uniform(2, 1, 2);
  const InfoBudget budget = InfoBudget::from_cap(sc, 0.75);
  const auto points = restricted_vertices(sc, budget);
  // 2 constant vertices survive; 2x2 cap-exact midpoints with the informative pair
  CHECK(points.size() == 6);
  int midpoints = 0;
  for (const auto& p : points) {
    for (const double v : p.table()) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1 + 1e-12);
      if (std::abs(v - 0.5) < 1e-12) ++midpoints;
    }
    CHECK(min_info_membership(p) <= budget.alpha + 1e-9);
  }
  CHECK(midpoints == 8);  // each midpoint carries one half-half row
}

TEST_CASE("membership info at the vertices") {
  const Scenario sc = Scenario::uniform(3, 2, 2);
  for (const auto& v : vertices(sc)) {
    const double info = min_info_membership(v.behavior);
    CHECK(info == doctest::Approx(sc.hmin_bits() + std::log2(v.cost)).epsilon(1e-9));
  }
}

TEST_CASE("membership info of the flat behavior is zero") {
  const Scenario sc = Scenario::uniform(3, 2, 2);
  const Behavior flat(sc, std::vector<double>(static_cast<std::size_t>(sc.table_size()), 0.5));
  CHECK(min_info_membership(flat) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("membership is convex under mixing") {
  // info of a mixture never exceeds the cap set by mixing decompositions
  const Scenario sc = Scenario::uniform(3, 2, 2);
  const auto verts = vertices(sc);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto& a = verts[static_cast<std::size_t>(rng.uniform_int(0, 63))];
    const auto& b = verts[static_cast<std::size_t>(rng.uniform_int(0, 63))];
    const double w = rng.uniform();
    std::vector<double> table;
    for (std::size_t i = 0; i < a.behavior.table().size(); ++i) {
      table.push_back(w * a.behavior.table()[i] + (1 - w) * b.behavior.table()[i]);
    }
    const double info = min_info_membership(Behavior(sc, table));
    const double mix_cost = w * a.cost + (1 - w) * b.cost;
    CHECK(info <= sc.hmin_bits() + std::log2(mix_cost) + 1e-9);
  }
}

TEST_CASE("first facet bound is linear in the cap") {
  const Witness f1 = witness_f1();
  const Scenario& sc = f1.scenario;
  for (int i = 0; i <= 10; ++i) {
    const double cap = 1.0 / 3 + i * (2.0 / 3) / 10;
    const double bound = classical_witness_bound(f1, InfoBudget::from_cap(sc, cap));
    CHECK(bound == doctest::Approx(6 * cap - 1).epsilon(1e-9));
  }
}

TEST_CASE("second facet bound is linear up to two thirds") {
  const Witness f2 = witness_f2();
  const Scenario& sc = f2.scenario;
  for (int i = 0; i <= 10; ++i) {
    const double cap = 1.0 / 3 + i * (1.0 / 3) / 10;
    const double bound = classical_witness_bound(f2, InfoBudget::from_cap(sc, cap));
    CHECK(bound == doctest::Approx(12 * cap - 4).epsilon(1e-9));
  }
  // past two thirds the affine formula overshoots the true maximum
  const double top = classical_witness_bound(f2, InfoBudget::from_cap(sc, 1.0));
  CHECK(top == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(top < 12 * 1.0 - 4);
}

TEST_CASE("facet check at one bit") {
  const Witness f1 = witness_f1();
  const InfoBudget budget = InfoBudget::from_alpha(f1.scenario, 1.0);
  const InequalityReport report = check_inequality(f1, budget, 3.0);
  CHECK(report.valid);
  CHECK(report.tight);
  CHECK(report.facet);
  CHECK(report.polytope_rank == 7);
  CHECK(report.saturating_rank == 6);
}

TEST_CASE("positivity facet in the minimal scenario") {
  const Scenario sc = Scenario::uniform(2, 1, 2);
  // witness -p(0|x=1,y=0) with claimed maximum 0
  std::vector<double> coeffs(4, 0.0);
  coeffs[2] = -1.0;  // (x=1, y=0, b=0)
  const Witness w(sc, coeffs);
  const InequalityReport report = check_inequality(w, InfoBudget::from_cap(sc, 0.75), 0.0);
  CHECK(report.valid);
  CHECK(report.tight);
  CHECK(report.facet);
  CHECK(report.polytope_rank == 3);
  CHECK(report.saturating_rank == 2);
}

TEST_CASE("loose claims are valid but not tight") {
  const Witness f1 = witness_f1();
  const InfoBudget budget = InfoBudget::from_alpha(f1.scenario, 1.0);
  const InequalityReport report = check_inequality(f1, budget, 3.5);
  CHECK(report.valid);
  CHECK_FALSE(report.tight);
  CHECK_FALSE(report.facet);
}

TEST_CASE("violated claims are flagged") {
  const Witness f1 = witness_f1();
  const InfoBudget budget = InfoBudget::from_alpha(f1.scenario, 1.0);
  CHECK_FALSE(check_inequality(f1, budget, 2.5).valid);
}

TEST_CASE("oversized alphabets remap exactly") {
  DeterministicStrategy s;
  s.n = 2;
  s.d = 3;
  s.l = 1;
  s.k = 2;
  s.encoding = {0, 2};
  s.decoding = {0, 1, 1};
  const DeterministicStrategy r = remap_to_n_symbols(s);
  CHECK(r.d == 2);
  const Scenario sc = Scenario::uniform(2, 1, 2);
  CHECK(strategy_behavior(r, sc).table() == strategy_behavior(s, sc).table());
  CHECK(strategy_guessing(r, sc.prior) == doctest::Approx(strategy_guessing(s, sc.prior)));

  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int d = n + rng.uniform_int(1, 3);
    const int l = rng.uniform_int(1, 2);
    const int k = rng.uniform_int(2, 3);
    const DeterministicStrategy big = random_strategy(rng, n, d, l, k);
    const DeterministicStrategy small = remap_to_n_symbols(big);
    REQUIRE(small.d == n);
    for (const int m : small.encoding) CHECK(m < n);
    const Scenario scenario = Scenario::uniform(n, l, k);
    CHECK(strategy_behavior(small, scenario).table() == strategy_behavior(big, scenario).table());
    std::vector<double> prior;
    double total = 0;
    for (int x = 0; x < n; ++x) {
      prior.push_back(0.05 + rng.uniform());
      total += prior.back();
    }
    for (auto& p : prior) p /= total;
    CHECK(strategy_guessing(small, prior) ==
          doctest::Approx(strategy_guessing(big, prior)).epsilon(1e-12));
  }
}

TEST_CASE("affine rank of point sets") {
  CHECK(affine_rank({}) == 0);
  CHECK(affine_rank({{1.0, 2.0}}) == 1);
  CHECK(affine_rank({{0.0, 0.0}, {1.0, 1.0}}) == 2);
  CHECK(affine_rank({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}) == 2);  // collinear
  CHECK(affine_rank({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}) == 3);
}

TEST_SUITE_END();
