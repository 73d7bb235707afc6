// Python bindings for the main operations. Matrices cross the boundary as
// complex numpy arrays; scenarios and behaviors as plain python structures.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "infocorr/classical.hpp"
#include "infocorr/dibound.hpp"
#include "infocorr/errors.hpp"
#include "infocorr/io.hpp"
#include "infocorr/model.hpp"
#include "infocorr/quantum.hpp"
#include "infocorr/rac.hpp"

namespace py = pybind11;
using namespace infocorr;

namespace {

QuantumEnsemble make_ensemble(const std::vector<double>& prior,
                              const std::vector<Matrix>& states) {
  std::vector<HermitianMatrix> hs;
  hs.reserve(states.size());
  for (const auto& m : states) hs.emplace_back(m);
  return QuantumEnsemble(prior, std::move(hs));
}

std::vector<Povm> make_povms(const std::vector<std::vector<Matrix>>& effects) {
  std::vector<Povm> povms;
  povms.reserve(effects.size());
  for (const auto& povm : effects) {
    std::vector<HermitianMatrix> hs;
    hs.reserve(povm.size());
    for (const auto& e : povm) hs.emplace_back(e);
    povms.emplace_back(std::move(hs));
  }
  return povms;
}

std::vector<Matrix> ensemble_states(const QuantumEnsemble& e) {
  std::vector<Matrix> out;
  out.reserve(e.states.size());
  for (const auto& s : e.states) out.push_back(s.get());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Limits on prepare-and-measure correlations under an "
            "accessible-information budget";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](int n, int l, int k, std::optional<std::vector<double>> prior) {
             Scenario sc{n, l, k,
                         prior ? *prior
                               : std::vector<double>(static_cast<std::size_t>(n),
                                                     1.0 / n)};
             return sc;
           }),
           py::arg("n"), py::arg("l"), py::arg("k"), py::arg("prior") = std::nullopt)
      .def_readonly("n", &Scenario::n)
      .def_readonly("l", &Scenario::l)
      .def_readonly("k", &Scenario::k)
      .def_readonly("prior", &Scenario::prior)
      .def_property_readonly("hmin_bits", &Scenario::hmin_bits)
      .def("__repr__", [](const Scenario& s) {
        return "Scenario(n=" + std::to_string(s.n) + ", l=" + std::to_string(s.l) +
               ", k=" + std::to_string(s.k) + ")";
      });

  py::class_<Behavior>(m, "Behavior")
      .def(py::init([](const Scenario& sc,
                       const std::vector<std::vector<std::vector<double>>>& table) {
             std::vector<double> flat;
             for (const auto& per_x : table) {
               for (const auto& per_y : per_x) {
                 flat.insert(flat.end(), per_y.begin(), per_y.end());
               }
             }
             return Behavior(sc, std::move(flat));
           }),
           py::arg("scenario"), py::arg("table"),
           "table is nested [x][y][b]")
      .def_property_readonly("scenario", &Behavior::scenario)
      .def_property_readonly("table", &Behavior::table)
      .def("at", &Behavior::at, py::arg("x"), py::arg("y"), py::arg("b"))
      .def("to_json", [](const Behavior& b) { return behavior_to_json(b).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return behavior_from_json(nlohmann::json::parse(s));
      });

  py::class_<QuantumEnsemble>(m, "Ensemble")
      .def(py::init(&make_ensemble), py::arg("prior"), py::arg("states"))
      .def_readonly("prior", &QuantumEnsemble::prior)
      .def_property_readonly("states", &ensemble_states)
      .def_property_readonly("dim", &QuantumEnsemble::dim)
      .def("to_json", [](const QuantumEnsemble& e) { return ensemble_to_json(e).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return ensemble_from_json(nlohmann::json::parse(s));
      });

  py::class_<Witness>(m, "Witness")
      .def_static("correlator",
                  [](const Scenario& sc, const std::vector<std::vector<double>>& t) {
                    return correlator_witness(sc, t);
                  },
                  py::arg("scenario"), py::arg("t"))
      .def_static("f1", &witness_f1)
      .def_static("f2", &witness_f2)
      .def_property_readonly("scenario",
                             [](const Witness& w) { return w.scenario; })
      .def("value",
           [](const Witness& w, const Behavior& p) { return witness_value(w, p); },
           py::arg("behavior"))
      .def("to_json", [](const Witness& w) { return witness_to_json(w).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return witness_from_json(nlohmann::json::parse(s));
      });

  m.def("hmin", &hmin, py::arg("prior"), "min-entropy of a distribution in bits");
  m.def("witness_value", &witness_value, py::arg("witness"), py::arg("behavior"));
  m.def("behavior_from_quantum",
        [](const QuantumEnsemble& e, const std::vector<std::vector<Matrix>>& povms) {
          return behavior_from_quantum(e, make_povms(povms));
        },
        py::arg("ensemble"), py::arg("measurements"));

  m.def("strategy_count", &strategy_count, py::arg("scenario"));
  m.def("classical_witness_bound",
        [](const Witness& w, double alpha) {
          return classical_witness_bound(w, InfoBudget::from_alpha(w.scenario, alpha));
        },
        py::arg("witness"), py::arg("alpha"));
  m.def("min_info_membership",
        [](const Behavior& p) { return min_info_membership(p); }, py::arg("behavior"));

  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("bound", &InequalityReport::bound)
      .def_readonly("valid", &InequalityReport::valid)
      .def_readonly("tight", &InequalityReport::tight)
      .def_readonly("facet", &InequalityReport::facet)
      .def_readonly("polytope_rank", &InequalityReport::polytope_rank)
      .def_readonly("saturating_rank", &InequalityReport::saturating_rank);
  m.def("check_inequality",
        [](const Witness& w, double alpha, double claimed) {
          return check_inequality(w, InfoBudget::from_alpha(w.scenario, alpha), claimed);
        },
        py::arg("witness"), py::arg("alpha"), py::arg("claimed"));

  m.def("info_of_ensemble",
        [](const QuantumEnsemble& e) { return info_of_ensemble(e); },
        py::arg("ensemble"), "one-shot accessible information in bits, by SDP");
  m.def("info_eigen_bound",
        [](const QuantumEnsemble& e) {
          const EigenBound b = info_eigen_bound(e);
          return std::make_pair(b.bits, b.tight);
        },
        py::arg("ensemble"), "spectral upper bound; returns (bits, tight)");
  m.def("analytic_f1_curve", &analytic_f1_curve, py::arg("alpha"));

  py::class_<SeesawResult>(m, "SeesawResult")
      .def_readonly("value", &SeesawResult::value)
      .def_readonly("info", &SeesawResult::info)
      .def_readonly("raw_value", &SeesawResult::raw_value)
      .def_readonly("raw_info", &SeesawResult::raw_info)
      .def_readonly("best_restart", &SeesawResult::best_restart)
      .def_readonly("proposals_total", &SeesawResult::proposals_total)
      .def_readonly("proposals_accepted", &SeesawResult::proposals_accepted)
      .def("strategy_json",
           [](const SeesawResult& r) { return strategy_to_json(r.strategy).dump(); });
  m.def("seesaw_max_witness",
        [](const Witness& w, double alpha, int dim, int restarts, std::uint64_t seed,
           int workers) {
          SeesawOptions opt;
          opt.restarts = restarts;
          opt.seed = seed;
          opt.workers = workers;
          return seesaw_max_witness(w.scenario, w, alpha, dim, opt);
        },
        py::arg("witness"), py::arg("alpha"), py::arg("dim") = 2,
        py::arg("restarts") = 50, py::arg("seed") = 1, py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());

  m.def("di_min_info", &di_min_info, py::arg("behavior"));
  m.def("di_max_witness",
        [](const Witness& w, double alpha) {
          return di_max_witness(w, InfoBudget::from_alpha(w.scenario, alpha));
        },
        py::arg("witness"), py::arg("alpha"));
  m.def("di_info_curve", &di_info_curve, py::arg("witness"), py::arg("values"));

  m.def("rac_score",
        [](const Behavior& p, int n_bits, const std::string& variant) {
          RacSpec spec;
          spec.n_bits = n_bits;
          if (variant == "average") {
            spec.variant = RacVariant::Average;
          } else if (variant == "worst") {
            spec.variant = RacVariant::WorstCase;
          } else {
            throw InvalidInputError("variant must be 'average' or 'worst'");
          }
          return rac_score(p, spec);
        },
        py::arg("behavior"), py::arg("n_bits"), py::arg("variant") = "average");
  m.def("four_bit_rac", []() {
    auto [ensemble, povms] = four_bit_rac_construction();
    std::vector<std::vector<Matrix>> effects;
    for (const auto& p : povms) {
      std::vector<Matrix> row;
      for (const auto& e : p.effects) row.push_back(e.get());
      effects.push_back(std::move(row));
    }
    return std::make_pair(ensemble, effects);
  });
  m.def("qubit_rac", [](int n_bits) {
    auto [ensemble, povms] = qubit_rac_reference(n_bits);
    std::vector<std::vector<Matrix>> effects;
    for (const auto& p : povms) {
      std::vector<Matrix> row;
      for (const auto& e : p.effects) row.push_back(e.get());
      effects.push_back(std::move(row));
    }
    return std::make_pair(ensemble, effects);
  }, py::arg("n_bits"));

#ifdef INFOCORR_VERSION
  m.attr("__version__") = INFOCORR_VERSION;
#else
  m.attr("__version__") = "0.0.0";
#endif
}
