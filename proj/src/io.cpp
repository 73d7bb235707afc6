#include "infocorr/io.hpp"

#include <cstdio>
#include <fstream>
#include <utility>

#include "infocorr/errors.hpp"

namespace infocorr {
namespace {

// Every schema error, whether json's own or a shape mismatch, becomes
// ParseError so callers see a single failure mode for bad documents.
template <typename Fn>
auto parsed(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<double> doubles_from(const nlohmann::json& j) {
  return j.get<std::vector<double>>();
}

}  // namespace

nlohmann::json scenario_to_json(const Scenario& s) {
  return nlohmann::json{{"n", s.n}, {"l", s.l}, {"k", s.k}, {"prior", s.prior}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
  return parsed("scenario", [&] {
    return Scenario(j.at("n").get<int>(), j.at("l").get<int>(), j.at("k").get<int>(),
                    doubles_from(j.at("prior")));
  });
}

nlohmann::json behavior_to_json(const Behavior& b) {
  const Scenario& sc = b.scenario();
  nlohmann::json table = nlohmann::json::array();
  for (int x = 0; x < sc.n; ++x) {
    nlohmann::json per_y = nlohmann::json::array();
    for (int y = 0; y < sc.l; ++y) {
      nlohmann::json per_b = nlohmann::json::array();
      for (int kk = 0; kk < sc.k; ++kk) per_b.push_back(b.at(x, y, kk));
      per_y.push_back(std::move(per_b));
    }
    table.push_back(std::move(per_y));
  }
  return nlohmann::json{{"scenario", scenario_to_json(sc)}, {"table", std::move(table)}};
}

Behavior behavior_from_json(const nlohmann::json& j) {
  return parsed("behavior", [&] {
    Scenario sc = scenario_from_json(j.at("scenario"));
    const auto& table = j.at("table");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(sc.table_size()));
    if (static_cast<int>(table.size()) != sc.n) throw ParseError("behavior: table rows != n");
    for (const auto& per_y : table) {
      if (static_cast<int>(per_y.size()) != sc.l)
        throw ParseError("behavior: table columns != l");
      for (const auto& per_b : per_y) {
        if (static_cast<int>(per_b.size()) != sc.k)
          throw ParseError("behavior: outcome entries != k");
        for (const auto& v : per_b) flat.push_back(v.get<double>());
      }
    }
    return Behavior(std::move(sc), std::move(flat));
  });
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(nlohmann::json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  return parsed("matrix", [&] {
    const auto nrows = static_cast<Eigen::Index>(j.size());
    if (nrows == 0) throw ParseError("matrix: no rows");
    const auto ncols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(nrows, ncols);
    for (Eigen::Index r = 0; r < nrows; ++r) {
      const auto& row = j.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != ncols)
        throw ParseError("matrix: ragged rows");
      for (Eigen::Index c = 0; c < ncols; ++c) {
        const auto& cell = row.at(static_cast<std::size_t>(c));
        if (cell.size() != 2) throw ParseError("matrix: entries are [re, im] pairs");
        m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
    return m;
  });
}

nlohmann::json ensemble_to_json(const QuantumEnsemble& e) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : e.states) states.push_back(matrix_to_json(s.get()));
  return nlohmann::json{{"prior", e.prior}, {"states", std::move(states)}};
}

QuantumEnsemble ensemble_from_json(const nlohmann::json& j) {
  return parsed("ensemble", [&] {
    std::vector<HermitianMatrix> states;
    for (const auto& s : j.at("states")) states.emplace_back(matrix_from_json(s));
    return QuantumEnsemble(doubles_from(j.at("prior")), std::move(states));
  });
}

nlohmann::json witness_to_json(const Witness& w) {
  const Scenario& sc = w.scenario;
  nlohmann::json coeff = nlohmann::json::array();
  for (int x = 0; x < sc.n; ++x) {
    nlohmann::json per_y = nlohmann::json::array();
    for (int y = 0; y < sc.l; ++y) {
      nlohmann::json per_b = nlohmann::json::array();
      for (int kk = 0; kk < sc.k; ++kk) per_b.push_back(w.coeff(x, y, kk));
      per_y.push_back(std::move(per_b));
    }
    coeff.push_back(std::move(per_y));
  }
  nlohmann::json out{{"scenario", scenario_to_json(sc)}, {"coefficients", std::move(coeff)}};
  if (w.affine_bound) {
    out["bound"] = {{"slope", w.affine_bound->first}, {"offset", w.affine_bound->second}};
  }
  return out;
}

Witness witness_from_json(const nlohmann::json& j) {
  return parsed("witness", [&] {
    Scenario sc = scenario_from_json(j.at("scenario"));
    const auto& coeff = j.at("coefficients");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(sc.table_size()));
    if (static_cast<int>(coeff.size()) != sc.n)
      throw ParseError("witness: coefficient rows != n");
    for (const auto& per_y : coeff) {
      if (static_cast<int>(per_y.size()) != sc.l)
        throw ParseError("witness: coefficient columns != l");
      for (const auto& per_b : per_y) {
        if (static_cast<int>(per_b.size()) != sc.k)
          throw ParseError("witness: outcome entries != k");
        for (const auto& v : per_b) flat.push_back(v.get<double>());
      }
    }
    Witness w(std::move(sc), std::move(flat));
    if (j.contains("bound")) {
      const double slope = j.at("bound").at("slope").get<double>();
      const double offset = j.at("bound").at("offset").get<double>();
      w.affine_bound = {{slope, offset}};
      w.bound_fn = [slope, offset](double cap) { return slope * cap + offset; };
    }
    return w;
  });
}

nlohmann::json povm_to_json(const Povm& p) {
  nlohmann::json effects = nlohmann::json::array();
  for (const auto& e : p.effects) effects.push_back(matrix_to_json(e.get()));
  return nlohmann::json{{"effects", std::move(effects)}};
}

Povm povm_from_json(const nlohmann::json& j) {
  return parsed("povm", [&] {
    std::vector<HermitianMatrix> effects;
    for (const auto& e : j.at("effects")) effects.emplace_back(matrix_from_json(e));
    return Povm(std::move(effects));
  });
}

nlohmann::json strategy_to_json(const QuantumStrategy& s) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& br : s.branches) {
    nlohmann::json povms = nlohmann::json::array();
    for (const auto& p : br.measurements) povms.push_back(povm_to_json(p));
    branches.push_back(nlohmann::json{{"weight", br.weight},
                                      {"ensemble", ensemble_to_json(br.ensemble)},
                                      {"measurements", std::move(povms)}});
  }
  return nlohmann::json{{"branches", std::move(branches)}};
}

QuantumStrategy strategy_from_json(const nlohmann::json& j) {
  return parsed("strategy", [&] {
    std::vector<QuantumBranch> branches;
    for (const auto& br : j.at("branches")) {
      std::vector<Povm> povms;
      for (const auto& p : br.at("measurements")) povms.push_back(povm_from_json(p));
      branches.push_back({br.at("weight").get<double>(),
                          ensemble_from_json(br.at("ensemble")), std::move(povms)});
    }
    return QuantumStrategy(std::move(branches));
  });
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("failed writing " + path);
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw InvalidInputError("csv: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace infocorr
