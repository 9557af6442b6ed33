#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catlab/counterexample.hpp"
#include "catlab/errors.hpp"
#include "catlab/estimator.hpp"
#include "catlab/irt.hpp"
#include "catlab/simulator.hpp"
#include "catlab/stats.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace catlab;

namespace {

std::vector<Response> responses(const std::vector<Item>& items, const std::vector<int>& ys) {
  if (items.size() != ys.size()) throw InvalidInput("items and ys differ in length");
  std::vector<Response> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out.emplace_back(items[i], ys[i]);
  return out;
}

py::dict row_dict(const SummaryRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["bias"] = r.bias;
  d["variance"] = r.variance;
  d["mse"] = r.mse;
  d["info_ratio"] = r.info_ratio ? py::cast(*r.info_ratio) : py::none();
  d["std_err_var"] = r.std_err_var;
  d["ks_stat"] = r.ks_stat;
  d["fallback_count"] = r.fallback_count;
  return d;
}

py::list table_list(const SummaryTable& t) {
  py::list out;
  for (const auto& r : t.rows) out.append(row_dict(r));
  return out;
}

SimulationConfig make_config(const std::string& model, double theta, std::size_t n_items,
                             std::size_t replications, std::uint64_t seed,
                             const std::string& a_schedule, double c, double a_min, double a_max,
                             const std::vector<std::size_t>& checkpoints,
                             const std::string& standardization, unsigned threads) {
  SimulationConfig cfg;
  cfg.model = parse_model(model);
  cfg.theta_true = theta;
  cfg.n_items = n_items;
  cfg.replications = replications;
  cfg.master_seed = seed;
  cfg.policy.a_min = a_min;
  cfg.policy.a_max = a_max;
  cfg.policy.a_schedule = cli::parse_a_schedule(a_schedule, a_min, a_max);
  if (c != 0.0) cfg.policy.c_rule = guessing::Constant{c};
  cfg.checkpoints = checkpoints;
  if (standardization == "sum-a2") {
    cfg.standardization = Standardization::SumASquared;
  } else if (standardization != "information") {
    throw InvalidInput("standardization must be 'information' or 'sum-a2'");
  }
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logistic IRT models, ability estimation and adaptive designs";
  m.attr("__version__") = CATLAB_VERSION;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<InitializationIncomplete>(m, "InitializationIncomplete", PyExc_RuntimeError);
  py::register_exception<DegenerateTranscript>(m, "DegenerateTranscript", PyExc_RuntimeError);

  py::enum_<ModelKind>(m, "ModelKind")
      .value("Rasch", ModelKind::Rasch)
      .value("TwoPL", ModelKind::TwoPL)
      .value("ThreePL", ModelKind::ThreePL);

  py::enum_<EstimatingMode>(m, "EstimatingMode")
      .value("RaschScore", EstimatingMode::RaschScore)
      .value("TwoPLScore", EstimatingMode::TwoPLScore)
      .value("ThreePLRaw", EstimatingMode::ThreePLRaw)
      .value("ThreePLModified", EstimatingMode::ThreePLModified);

  py::enum_<RootMethod>(m, "RootMethod")
      .value("Bisection", RootMethod::Bisection)
      .value("SafeguardedNewton", RootMethod::SafeguardedNewton);

  py::class_<Item>(m, "Item")
      .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c") = 0.0)
      .def_static("rasch", &Item::rasch, py::arg("b"))
      .def_property_readonly("a", &Item::a)
      .def_property_readonly("b", &Item::b)
      .def_property_readonly("c", &Item::c)
      .def("conforms", &conforms, py::arg("model"))
      .def(py::self == py::self)
      .def("__repr__", [](const Item& i) {
        return "Item(a=" + cli::format_double(i.a()) + ", b=" + cli::format_double(i.b()) +
               ", c=" + cli::format_double(i.c()) + ")";
      });

  py::class_<AbilityEstimate>(m, "AbilityEstimate")
      .def_readonly("value", &AbilityEstimate::value)
      .def_readonly("observed_info", &AbilityEstimate::observed_info)
      .def_property_readonly("is_fallback", [](const AbilityEstimate& e) {
        return e.source == EstimateSource::Fallback;
      })
      .def("__repr__", [](const AbilityEstimate& e) {
        return "AbilityEstimate(value=" + cli::format_double(e.value) +
               (e.source == EstimateSource::Fallback ? ", fallback)" : ")");
      });

  m.def("logistic", &logistic, py::arg("t"));
  m.def("icc", &icc, py::arg("theta"), py::arg("item"));
  m.def("fisher_info", &fisher_info, py::arg("theta"), py::arg("item"));
  m.def("optimal_difficulty", &optimal_difficulty, py::arg("theta"), py::arg("a"), py::arg("c"));
  m.def("max_info_closed_form", &max_info_closed_form, py::arg("a"), py::arg("c"));
  m.def("weight", &weight, py::arg("a"), py::arg("c"));

  m.def(
      "score",
      [](double theta, const std::vector<Item>& items, const std::vector<int>& ys,
         EstimatingMode mode) { return score(theta, responses(items, ys), mode); },
      py::arg("theta"), py::arg("items"), py::arg("ys"), py::arg("mode"));
  m.def(
      "solvable",
      [](const std::vector<Item>& items, const std::vector<int>& ys, EstimatingMode mode) {
        return solvable(responses(items, ys), mode);
      },
      py::arg("items"), py::arg("ys"), py::arg("mode"));
  m.def(
      "solve_ability",
      [](const std::vector<Item>& items, const std::vector<int>& ys, EstimatingMode mode,
         double tol, RootMethod method) {
        return solve_ability(responses(items, ys), mode, items.size(), {tol, method});
      },
      py::arg("items"), py::arg("ys"), py::arg("mode"), py::arg("tol") = 1e-10,
      py::arg("method") = RootMethod::Bisection);
  m.def(
      "find_roots_raw",
      [](const std::vector<Item>& items, const std::vector<int>& ys, double lo, double hi,
         std::size_t grid_points) { return find_roots_raw(responses(items, ys), lo, hi, grid_points); },
      py::arg("items"), py::arg("ys"), py::arg("lo") = -8.0, py::arg("hi") = 8.0,
      py::arg("grid_points") = 1601);
  m.def(
      "observed_info",
      [](double theta, const std::vector<Item>& items) {
        double s = 0.0;
        for (const auto& it : items) s += fisher_info(theta, it);
        return s;
      },
      py::arg("theta"), py::arg("items"));
  m.def(
      "normalizer_v",
      [](const std::vector<Item>& items) {
        return normalizer_v(responses(items, std::vector<int>(items.size(), 0)));
      },
      py::arg("items"));

  m.def("find_n0", &find_n0, py::arg("eps0") = 1.0);
  m.def(
      "check_n0_conditions",
      [](std::size_t n0, double eps0) {
        const auto c = check_n0_conditions(n0, eps0);
        py::dict d;
        d["tail_sum"] = c.tail_sum;
        d["tail_ok"] = c.tail_ok;
        d["step_term"] = c.step_term;
        d["step_ok"] = c.step_ok;
        d["cubic_lhs"] = c.cubic_lhs;
        d["cubic_rhs"] = c.cubic_rhs;
        d["cubic_ok"] = c.cubic_ok;
        d["all"] = c.all();
        return d;
      },
      py::arg("n0"), py::arg("eps0") = 1.0);
  m.def(
      "divergent_trajectory",
      [](double theta, double theta0, double eps0, std::size_t horizon) {
        DivergenceScenario s;
        s.theta_true = theta;
        s.theta0 = theta0;
        s.eps0 = eps0;
        s.horizon = horizon;
        const auto trace = build_trajectory(s);
        py::list steps;
        for (const auto& st : trace.steps) {
          py::dict d;
          d["k"] = st.k;
          d["a"] = st.a;
          d["b"] = st.b;
          d["y"] = st.y;
          d["theta_hat"] = st.theta_hat;
          d["bound_a13"] = st.bound_a13 ? py::cast(*st.bound_a13) : py::none();
          d["below_theta_minus_1"] = st.below_theta_minus_1;
          d["bound_ok"] = st.bound_ok;
          steps.append(d);
        }
        py::dict out;
        out["n0"] = trace.scenario.n0;
        out["steps"] = steps;
        out["all_bounds_ok"] = trace.all_bounds_ok();
        out["log_prob"] = log_prob_event_A(trace, theta);
        return out;
      },
      py::arg("theta") = 0.0, py::arg("theta0") = -2.7, py::arg("eps0") = 1.0,
      py::arg("horizon") = 200);

  m.def(
      "run_replications",
      [](const std::string& model, double theta, std::size_t n_items, std::size_t replications,
         std::uint64_t seed, const std::string& a_schedule, double c, double a_min, double a_max,
         const std::vector<std::size_t>& checkpoints, const std::string& standardization,
         unsigned threads) {
        const auto cfg = make_config(model, theta, n_items, replications, seed, a_schedule, c,
                                     a_min, a_max, checkpoints, standardization, threads);
        SummaryTable table;
        {
          py::gil_scoped_release release;
          table = run_replications(cfg);
        }
        return table_list(table);
      },
      py::arg("model") = "rasch", py::arg("theta") = 0.0, py::arg("n_items") = 400,
      py::arg("replications") = 2000, py::arg("seed") = 42, py::arg("a_schedule") = "const:1",
      py::arg("c") = 0.0, py::arg("a_min") = 0.5, py::arg("a_max") = 2.0,
      py::arg("checkpoints") = std::vector<std::size_t>{},
      py::arg("standardization") = "information", py::arg("threads") = 0);
  m.def(
      "mse_compare",
      [](std::size_t n_items, std::size_t replications, std::uint64_t seed, double a_min,
         double a_max, const std::vector<std::size_t>& checkpoints, unsigned threads) {
        auto asc = make_config("2pl", 0.0, n_items, replications, seed, "asc", 0.0, a_min, a_max,
                               checkpoints, "information", threads);
        auto desc = asc;
        desc.policy.a_schedule = schedule::LinearDescending{a_max, a_min};
        PairedSummary p;
        {
          py::gil_scoped_release release;
          p = mse_compare(asc, desc);
        }
        py::dict d;
        d["ascending"] = table_list(p.ascending);
        d["descending"] = table_list(p.descending);
        return d;
      },
      py::arg("n_items") = 30, py::arg("replications") = 5000, py::arg("seed") = 42,
      py::arg("a_min") = 0.5, py::arg("a_max") = 2.0,
      py::arg("checkpoints") = std::vector<std::size_t>{10, 15, 20, 25, 30},
      py::arg("threads") = 0);

  m.def("ks_statistic", [](const std::vector<double>& xs) { return ks_statistic(xs); },
        py::arg("samples"));
}
