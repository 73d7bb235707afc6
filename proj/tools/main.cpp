// Command-line front end: every bound in the library behind one binary.
// Exit codes: 0 ok, 2 parse, 3 invalid input, 4 capacity, 5 solver
// convergence, 6 failed --check.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infocorr/classical.hpp"
#include "infocorr/dibound.hpp"
#include "infocorr/errors.hpp"
#include "infocorr/io.hpp"
#include "infocorr/lp.hpp"
#include "infocorr/quantum.hpp"
#include "infocorr/rac.hpp"
#include "infocorr/sdp.hpp"

namespace {

using namespace infocorr;

struct CheckFailure : Error {
  using Error::Error;
};

int default_workers() {
  if (const char* env = std::getenv("INFOCORR_WORKERS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      return 0;
    }
  }
  return 0;
}

std::vector<double> parse_grid(const std::string& grid) {
  std::vector<double> out;
  if (grid.find(':') != std::string::npos) {
    const auto c1 = grid.find(':');
    const auto c2 = grid.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("grid: expected lo:hi:count");
    const double lo = std::stod(grid.substr(0, c1));
    const double hi = std::stod(grid.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(grid.substr(c2 + 1));
    if (count < 1) throw ParseError("grid: count must be positive");
    for (int i = 0; i < count; ++i) {
      out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= grid.size()) {
    const auto comma = std::min(grid.find(',', pos), grid.size());
    out.push_back(std::stod(grid.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open " + out_path + " for writing");
    f << text;
  }
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  emit(j.dump(2) + "\n", out_path);
}

Witness load_witness(const std::string& witness_path, const std::string& scenario_path) {
  Witness w = witness_from_json(load_json_file(witness_path));
  if (!scenario_path.empty()) {
    const Scenario sc = scenario_from_json(load_json_file(scenario_path));
    if (!(sc == w.scenario))
      throw InvalidInputError("scenario file disagrees with the witness scenario");
  }
  return w;
}

// The restricted-polytope maximum plus the weights attaining it.
struct BoundWithMixture {
  double bound = 0;
  std::vector<Vertex> verts;
  Eigen::VectorXd weights;
};

BoundWithMixture witness_bound_mixture(const Witness& w, const InfoBudget& budget) {
  BoundWithMixture out;
  out.verts = vertices(w.scenario);
  const int ncols = static_cast<int>(out.verts.size());
  LpProblem lp = LpProblem::make(LpSense::Maximize, ncols, 2);
  for (int g = 0; g < ncols; ++g) {
    lp.objective(g) = witness_value(w, out.verts[static_cast<std::size_t>(g)].behavior);
    lp.constraints(0, g) = 1.0;
    lp.constraints(1, g) = out.verts[static_cast<std::size_t>(g)].cost;
  }
  lp.rhs(0) = 1.0;
  lp.rhs(1) = budget.cap;
  lp.row_sense = {RowSense::Equal, RowSense::LessEqual};
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw InvalidInputError("witness bound program did not reach an optimum");
  out.bound = sol.value;
  out.weights = sol.primal;
  return out;
}

int cmd_classical_bound(const std::string& witness_path, const std::string& scenario_path,
                        double alpha, bool check, const std::string& out_path) {
  const Witness w = load_witness(witness_path, scenario_path);
  const InfoBudget budget = InfoBudget::from_alpha(w.scenario, alpha);
  const BoundWithMixture r = witness_bound_mixture(w, budget);

  nlohmann::json mixture = nlohmann::json::array();
  for (int g = 0; g < static_cast<int>(r.verts.size()); ++g) {
    if (r.weights(g) <= 1e-9) continue;
    mixture.push_back({{"vertex", g},
                       {"weight", r.weights(g)},
                       {"cost", r.verts[static_cast<std::size_t>(g)].cost}});
  }
  nlohmann::json report{{"alpha", alpha},
                        {"cap", budget.cap},
                        {"bound", r.bound},
                        {"vertex_count", r.verts.size()},
                        {"mixture", std::move(mixture)}};
  if (w.bound_fn) {
    const double claimed = w.bound_fn(budget.cap);
    const InequalityReport rep = check_inequality(w, budget, claimed);
    report["claimed"] = {{"value", claimed},
                        {"valid", rep.valid},
                        {"tight", rep.tight},
                        {"facet", rep.facet},
                        {"polytope_rank", rep.polytope_rank},
                        {"saturating_rank", rep.saturating_rank}};
  }

  if (check) {
    // Independent route: the maximum over the restricted vertex candidates.
    double probe = -std::numeric_limits<double>::infinity();
    for (const auto& p : restricted_vertices(w.scenario, budget)) {
      probe = std::max(probe, witness_value(w, p));
    }
    if (std::abs(probe - r.bound) > 1e-7) {
      throw CheckFailure("vertex probe disagrees with the LP bound");
    }
    const double again = classical_witness_bound(w, budget);
    if (std::abs(again - r.bound) > 1e-9) {
      throw CheckFailure("witness bound is not reproducible");
    }
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_info(const std::string& ensemble_path, double tol, bool check,
             const std::string& out_path) {
  const QuantumEnsemble e = ensemble_from_json(load_json_file(ensemble_path));
  SdpOptions options;
  if (tol > 0) options.gap_tol = tol;
  const SdpSolution sol = solve_guessing_sdp(e, options);
  const double bits = hmin(e.prior) + std::log2(sol.value);
  const EigenBound eb = info_eigen_bound(e);

  nlohmann::json report{{"info_bits", bits},
                        {"guessing_probability", sol.value},
                        {"dual_trace", sol.dual_value},
                        {"gap", sol.gap},
                        {"eigen_bound_bits", eb.bits},
                        {"eigen_bound_tight", eb.tight},
                        {"hmin_bits", hmin(e.prior)},
                        {"newton_steps", sol.newton_steps}};

  if (check) {
    // The certificate must dominate every weighted state and close the gap.
    for (int x = 0; x < e.size(); ++x) {
      const Matrix slack = sol.certificate.get() -
                           e.prior[static_cast<std::size_t>(x)] *
                               e.states[static_cast<std::size_t>(x)].get();
      if (min_eigenvalue(slack) < -1e-7) {
        throw CheckFailure("dual certificate is not feasible");
      }
    }
    if (sol.dual_value - sol.value > 1e-6 || sol.dual_value < sol.value - 1e-9) {
      throw CheckFailure("certificate gap out of tolerance");
    }
    double primal = 0;
    for (int x = 0; x < e.size(); ++x) {
      primal += e.prior[static_cast<std::size_t>(x)] *
                (e.states[static_cast<std::size_t>(x)].get() *
                 sol.povm.effects[static_cast<std::size_t>(x)].get())
                    .trace()
                    .real();
    }
    if (std::abs(primal - sol.value) > 1e-9) {
      throw CheckFailure("reported value does not match the returned measurement");
    }
    if (bits > eb.bits + 1e-6) throw CheckFailure("info exceeds the spectral bound");
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_curve(const std::string& witness_path, const std::string& scenario_path,
              const std::string& grid, int dim, int restarts, std::uint64_t seed,
              int workers, double tol, bool check, const std::string& out_path) {
  const Witness w = load_witness(witness_path, scenario_path);
  const std::vector<double> alphas = parse_grid(grid);

  SeesawOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  opts.workers = workers;
  if (tol > 0) opts.sdp.gap_tol = tol;

  std::vector<std::vector<double>> rows;
  for (const double alpha : alphas) {
    const InfoBudget budget = InfoBudget::from_alpha(w.scenario, alpha);
    const double classical = classical_witness_bound(w, budget);
    const SeesawResult sees = seesaw_max_witness(w.scenario, w, alpha, dim, opts);
    const double quantum = std::max(classical, sees.value);
    const double di = di_max_witness(w, budget);
    rows.push_back({alpha, classical, quantum, di});
  }

  if (check) {
    for (const auto& row : rows) {
      if (!(row[3] >= row[2] - 1e-7 && row[2] >= row[1] - 1e-9)) {
        throw CheckFailure("curve ordering violated: need di >= quantum >= classical");
      }
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][0] >= rows[i - 1][0] && rows[i][1] < rows[i - 1][1] - 1e-9) {
        throw CheckFailure("classical bound must be nondecreasing in alpha");
      }
    }
  }
  emit(format_csv({"alpha", "classical_bound", "quantum_lower_bound", "di_upper_bound"},
                  rows),
       out_path);
  return 0;
}

int cmd_membership(const std::string& behavior_path, bool check,
                   const std::string& out_path) {
  const Behavior p = behavior_from_json(load_json_file(behavior_path));
  const double bits = min_info_membership(p);
  nlohmann::json report{{"min_info_bits", bits},
                        {"hmin_bits", p.scenario().hmin_bits()},
                        {"guessing_cost", std::exp2(bits - p.scenario().hmin_bits())}};
  if (check) {
    const double di = di_min_info(p);
    if (di > bits + 1e-6) {
      throw CheckFailure("theory-independent bound exceeds the classical requirement");
    }
    if (std::abs(min_info_membership(p) - bits) > 1e-9) {
      throw CheckFailure("membership value is not reproducible");
    }
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_di_bound(const std::string& witness_path, const std::string& behavior_path,
                 std::optional<double> alpha, bool check, const std::string& out_path) {
  if (!behavior_path.empty()) {
    const Behavior p = behavior_from_json(load_json_file(behavior_path));
    const double bits = di_min_info(p);
    nlohmann::json report{{"di_min_info_bits", bits},
                          {"hmin_bits", p.scenario().hmin_bits()}};
    if (check) {
      // Exhaustive deterministic post-processings must not beat the closed form.
      const Scenario& sc = p.scenario();
      double best = 0;
      std::vector<int> guess(static_cast<std::size_t>(sc.k), 0);
      for (int y = 0; y < sc.l; ++y) {
        std::uint64_t total = 1;
        for (int b = 0; b < sc.k; ++b) total *= static_cast<std::uint64_t>(sc.n);
        for (std::uint64_t code = 0; code < total; ++code) {
          std::uint64_t t = code;
          for (int b = 0; b < sc.k; ++b) {
            guess[static_cast<std::size_t>(b)] = static_cast<int>(t % sc.n);
            t /= static_cast<std::uint64_t>(sc.n);
          }
          double win = 0;
          for (int b = 0; b < sc.k; ++b) {
            const int x = guess[static_cast<std::size_t>(b)];
            win += sc.prior[static_cast<std::size_t>(x)] * p.at(x, y, b);
          }
          best = std::max(best, win);
        }
      }
      const double oracle = sc.hmin_bits() + std::log2(best);
      if (std::abs(oracle - bits) > 1e-9) {
        throw CheckFailure("post-processing oracle disagrees with the closed form");
      }
      report["check"] = "ok";
    }
    emit_json(report, out_path);
    return 0;
  }

  if (!alpha) throw ParseError("di-bound needs --alpha (with --witness) or --behavior");
  const Witness w = witness_from_json(load_json_file(witness_path));
  const InfoBudget budget = InfoBudget::from_alpha(w.scenario, *alpha);
  const double ceiling = di_max_witness(w, budget);
  nlohmann::json report{{"alpha", *alpha}, {"cap", budget.cap}, {"ceiling", ceiling}};
  if (check) {
    const double classical = classical_witness_bound(w, budget);
    if (ceiling < classical - 1e-7) {
      throw CheckFailure("theory-independent ceiling fell below the classical bound");
    }
    const double looser =
        di_max_witness(w, InfoBudget::from_alpha(w.scenario, *alpha + 0.05));
    if (looser < ceiling - 1e-9) {
      throw CheckFailure("ceiling must be nondecreasing in alpha");
    }
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_rac(int n_bits, double tol, bool check, const std::string& out_path) {
  std::pair<QuantumEnsemble, std::vector<Povm>> built =
      n_bits == 4 ? four_bit_rac_construction() : qubit_rac_reference(n_bits);
  const Behavior p = behavior_from_quantum(built.first, built.second);
  RacSpec spec;
  spec.n_bits = n_bits;
  spec.variant = RacVariant::Average;
  const double average = rac_score(p, spec);
  spec.variant = RacVariant::WorstCase;
  const double worst = rac_score(p, spec);

  SdpOptions options;
  if (tol > 0) options.gap_tol = tol;
  const double bits = info_of_ensemble(built.first, options);
  const EigenBound eb = info_eigen_bound(built.first);

  nlohmann::json report{{"n_bits", n_bits},
                        {"average_score", average},
                        {"worst_case_score", worst},
                        {"info_bits", bits},
                        {"eigen_bound_bits", eb.bits},
                        {"eigen_bound_tight", eb.tight},
                        {"dimension", built.first.dim()}};
  if (check) {
    double recount = 0;
    const int n = 1 << n_bits;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n_bits; ++y) {
        recount += p.at(x, y, (x >> (n_bits - 1 - y)) & 1);
      }
    }
    recount /= static_cast<double>(n_bits) * n;
    if (std::abs(recount - average) > 1e-12) {
      throw CheckFailure("score recount disagrees");
    }
    if (bits > std::log2(static_cast<double>(built.first.dim())) + 1e-6) {
      throw CheckFailure("info exceeds the dimension cap");
    }
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_seesaw(const std::string& witness_path, const std::string& scenario_path,
               double alpha, int dim, int restarts, std::uint64_t seed, int workers,
               double tol, bool check, const std::string& out_path,
               const std::string& strategy_path) {
  const Witness w = load_witness(witness_path, scenario_path);
  SeesawOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  opts.workers = workers;
  if (tol > 0) opts.sdp.gap_tol = tol;
  const SeesawResult res = seesaw_max_witness(w.scenario, w, alpha, dim, opts);

  nlohmann::json report{{"value", res.value},
                        {"info_bits", res.info},
                        {"raw_value", res.raw_value},
                        {"raw_info_bits", res.raw_info},
                        {"alpha", alpha},
                        {"dim", dim},
                        {"restarts", restarts},
                        {"seed", seed},
                        {"best_restart", res.best_restart},
                        {"proposals_total", res.proposals_total},
                        {"proposals_accepted", res.proposals_accepted}};
  if (!strategy_path.empty()) {
    save_json_file(strategy_path, strategy_to_json(res.strategy));
    report["strategy_file"] = strategy_path;
  }
  if (check) {
    const auto [bits, value] = strategy_info_and_value(res.strategy, w, opts.sdp);
    if (std::abs(bits - res.info) > 1e-6 || std::abs(value - res.value) > 1e-6) {
      throw CheckFailure("strategy does not reproduce the reported point");
    }
    if (res.info > alpha + 1e-4) {
      throw CheckFailure("reported strategy exceeds the information budget");
    }
    report["check"] = "ok";
  }
  emit_json(report, out_path);
  return 0;
}

int cmd_vertices(const std::string& scenario_path, std::optional<double> alpha,
                 const std::string& out_path) {
  const Scenario sc = scenario_from_json(load_json_file(scenario_path));
  nlohmann::json report;
  const auto verts = vertices(sc);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : verts) {
    list.push_back({{"cost", v.cost}, {"behavior", behavior_to_json(v.behavior)}});
  }
  report["vertices"] = std::move(list);
  report["count"] = verts.size();
  if (alpha) {
    const InfoBudget budget = InfoBudget::from_alpha(sc, *alpha);
    const auto restricted = restricted_vertices(sc, budget);
    nlohmann::json rl = nlohmann::json::array();
    for (const auto& b : restricted) rl.push_back(behavior_to_json(b));
    report["restricted_count"] = restricted.size();
    report["restricted"] = std::move(rl);
    report["cap"] = budget.cap;
  }
  emit_json(report, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical, quantum and theory-independent limits on "
               "prepare-and-measure correlations under an information budget"};
  app.require_subcommand(1);

  std::string witness_path, scenario_path, ensemble_path, behavior_path, out_path,
      strategy_path, grid = "0:1.584962500721156:11";
  double alpha = 1.0, tol = 0;
  std::optional<double> alpha_opt;
  int dim = 2, restarts = 50, n_bits = 4;
  int workers = default_workers();
  std::uint64_t seed = 1;
  bool check = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "also write the report to this file");
    cmd->add_flag("--check", check, "re-verify the result against independent oracles");
  };

  auto* cb = app.add_subcommand("classical-bound",
                                "restricted-polytope maximum of a witness");
  cb->add_option("--witness", witness_path)->required();
  cb->add_option("--scenario", scenario_path, "optional cross-check of the scenario");
  cb->add_option("--alpha", alpha, "information budget in bits")->required();
  add_common(cb);

  auto* in = app.add_subcommand("info", "information carried by an ensemble");
  in->add_option("--ensemble", ensemble_path)->required();
  in->add_option("--tol", tol, "solver gap tolerance");
  add_common(in);

  auto* cv = app.add_subcommand("curve", "classical/quantum/theory-independent curves");
  cv->add_option("--witness", witness_path)->required();
  cv->add_option("--scenario", scenario_path);
  cv->add_option("--grid", grid, "alpha grid: lo:hi:count or comma list");
  cv->add_option("--dim", dim, "search dimension for the quantum lower bound");
  cv->add_option("--restarts", restarts);
  cv->add_option("--seed", seed);
  cv->add_option("--workers", workers);
  cv->add_option("--tol", tol);
  add_common(cv);

  auto* mb = app.add_subcommand("membership", "least information of a classical model");
  mb->add_option("--behavior", behavior_path)->required();
  add_common(mb);

  auto* di = app.add_subcommand("di-bound", "theory-independent bounds");
  di->add_option("--witness", witness_path);
  di->add_option("--behavior", behavior_path, "bound the information of this behavior");
  di->add_option("--alpha", alpha_opt, "budget for the witness ceiling");
  add_common(di);

  auto* rc = app.add_subcommand("rac", "random access code constructions");
  rc->add_option("--n-bits", n_bits)->check(CLI::IsMember({2, 3, 4}));
  rc->add_option("--tol", tol);
  add_common(rc);

  auto* ss = app.add_subcommand("seesaw", "randomized search for quantum violations");
  ss->add_option("--witness", witness_path)->required();
  ss->add_option("--scenario", scenario_path);
  ss->add_option("--alpha", alpha)->required();
  ss->add_option("--dim", dim);
  ss->add_option("--restarts", restarts);
  ss->add_option("--seed", seed);
  ss->add_option("--workers", workers);
  ss->add_option("--tol", tol);
  ss->add_option("--strategy-out", strategy_path, "write the found strategy as JSON");
  add_common(ss);

  auto* vx = app.add_subcommand("vertices", "deterministic behaviors and their costs");
  vx->add_option("--scenario", scenario_path)->required();
  vx->add_option("--alpha", alpha_opt, "also list the restricted vertex candidates");
  add_common(vx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cb->parsed()) {
      return cmd_classical_bound(witness_path, scenario_path, alpha, check, out_path);
    }
    if (in->parsed()) return cmd_info(ensemble_path, tol, check, out_path);
    if (cv->parsed()) {
      return cmd_curve(witness_path, scenario_path, grid, dim, restarts, seed, workers,
                       tol, check, out_path);
    }
    if (mb->parsed()) return cmd_membership(behavior_path, check, out_path);
    if (di->parsed()) {
      return cmd_di_bound(witness_path, behavior_path, alpha_opt, check, out_path);
    }
    if (rc->parsed()) return cmd_rac(n_bits, tol, check, out_path);
    if (ss->parsed()) {
      return cmd_seesaw(witness_path, scenario_path, alpha, dim, restarts, seed, workers,
                        tol, check, out_path, strategy_path);
    }
    if (vx->parsed()) return cmd_vertices(scenario_path, alpha_opt, out_path);
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 6;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << " (required " << e.required() << ")\n";
    return 4;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver: " << e.what() << " (bracket [" << e.lower() << ", " << e.upper()
              << "])\n";
    return 5;
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
