#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbox/chained.hpp"
#include "gbox/corrfn.hpp"
#include "gbox/json_io.hpp"
#include "gbox/lhv.hpp"
#include "gbox/quantum.hpp"
#include "gbox/rng.hpp"

namespace py = pybind11;

namespace {

py::dict report_to_dict(const gbox::WitnessReport& r) {
  py::dict d;
  d["n"] = r.n_settings;
  d["lhs"] = r.lhs;
  d["bound"] = r.classical_bound;
  d["violated"] = r.violated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gbox, m) {
  m.doc() = "Rotation-symmetric Bell-test toolkit";

  py::class_<gbox::CorrelationFunction>(m, "CorrelationFunction")
      .def(py::init<int, double>(), py::arg("two_j"), py::arg("constant") = 0.0)
      .def_property_readonly("two_j", &gbox::CorrelationFunction::two_j)
      .def_property_readonly("constant", &gbox::CorrelationFunction::constant)
      .def("add_term",
           [](gbox::CorrelationFunction& f, int mm, int nn, double c, double s) {
             f.add_term({mm, nn}, c, s);
           },
           py::arg("m"), py::arg("n"), py::arg("cos"), py::arg("sin") = 0.0)
      .def("evaluate", &gbox::CorrelationFunction::evaluate, py::arg("alpha"),
           py::arg("beta"))
      .def("terms",
           [](const gbox::CorrelationFunction& f) {
             std::vector<std::tuple<int, int, double, double>> out;
             for (const auto& [p, c] : f.terms())
               out.emplace_back(p.m, p.n, c.cos_coeff, c.sin_coeff);
             return out;
           })
      .def("to_json", [](const gbox::CorrelationFunction& f) {
        return gbox::to_json(f).dump();
      })
      .def_static("from_json", [](const std::string& s) {
        return gbox::correlation_from_json(nlohmann::json::parse(s));
      });

  m.def("relational_core", &gbox::relational_core);
  m.def("max_abs", [](const gbox::CorrelationFunction& f) { return gbox::max_abs(f); });
  m.def("max_deviation",
        [](const gbox::CorrelationFunction& f) { return gbox::max_deviation(f); });
  m.def("second_derivative_bound", &gbox::second_derivative_bound);

  m.def("fit_trig_series",
        [](const std::vector<std::tuple<double, double, double>>& samples,
           int two_j) {
          std::vector<gbox::TrigSample> in;
          for (const auto& [a, b, v] : samples) in.push_back({a, b, v});
          const auto fit = gbox::fit_trig_series(in, two_j);
          return py::make_tuple(fit.function, fit.residual_rms);
        },
        py::arg("samples"), py::arg("two_j"));

  m.def("chsh_value",
        [](const gbox::CorrelationFunction& f, double a1, double b2, double a3,
           double b4) {
          return gbox::chsh_value(
              [&](double a, double b) { return f.evaluate(a, b); }, a1, b2, a3, b4);
        });
  m.def("chsh_maximize", [](const gbox::CorrelationFunction& f) {
    const auto opt = gbox::chsh_maximize(
        [&](double a, double b) { return f.evaluate(a, b); });
    return py::make_tuple(opt.value, opt.angles);
  });

  m.def("bci_value",
        [](const gbox::CorrelationFunction& f, int n, double tp, double tm) {
          const auto setting = gbox::make_chained_setting(n, tp, tm);
          return report_to_dict(gbox::bci_value(
              [&](double a, double b) { return f.evaluate(a, b); }, setting));
        },
        py::arg("f"), py::arg("n"), py::arg("theta_plus"), py::arg("theta_minus"));

  m.def("witness_search",
        [](const gbox::CorrelationFunction& f, double tp, double tm, int cap) {
          const auto res = gbox::witness_search(f, tp, tm, cap);
          py::dict d = report_to_dict(res.report);
          d["epsilon"] = res.epsilon;
          d["delta"] = res.delta;
          d["epsilon_limit"] = res.epsilon_limit;
          d["guaranteed"] = res.guaranteed;
          return d;
        },
        py::arg("f"), py::arg("theta_plus"), py::arg("theta_minus"),
        py::arg("n_cap") = 10000);

  m.def("gamma_n", [](int n) {
    const auto g = gbox::gamma_n(n);
    return py::make_tuple(g.gamma, g.xi_star);
  });
  m.def("gamma_j", &gbox::gamma_j);

  m.def("locality_certificate", [](const gbox::CorrelationFunction& f) {
    const auto c = gbox::locality_certificate(f);
    py::dict d;
    d["passed"] = c.passed;
    d["deviation"] = c.deviation;
    d["bound"] = c.bound;
    d["gamma"] = c.gamma;
    d["n"] = c.n_used;
    return d;
  });

  m.def("sample_certified_correlation",
        [](const gbox::CorrelationFunction& f, double alpha, double beta,
           long long shots, std::uint64_t seed) {
          const auto model = gbox::build_certified_lhv(f);
          double sum = 0.0;
          for (long long i = 0; i < shots; ++i) {
            gbox::RngStream rng(seed, 0, static_cast<std::uint64_t>(i));
            const auto [a, b] = gbox::sample_certified(model, alpha, beta, rng);
            sum += a * b;
          }
          return sum / shots;
        },
        py::arg("f"), py::arg("alpha"), py::arg("beta"), py::arg("shots") = 100000,
        py::arg("seed") = 0);

  m.def("werner_correlation",
        [](double p, double alpha, double beta) {
          return gbox::quantum_correlation(gbox::werner_state(p), alpha, beta);
        },
        py::arg("p"), py::arg("alpha"), py::arg("beta"));
  m.def("werner_chsh_max", [](double p) {
    const auto rho = gbox::werner_state(p);
    const auto opt = gbox::chsh_maximize([&](double a, double b) {
      return gbox::quantum_correlation(rho, a, b);
    });
    return py::make_tuple(opt.value, opt.angles);
  });
}
