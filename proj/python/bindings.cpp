#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "homspec/analysis.hpp"
#include "homspec/error.hpp"
#include "homspec/geometry.hpp"
#include "homspec/jacobi.hpp"
#include "homspec/nystrom.hpp"
#include "homspec/zonal.hpp"

namespace py = pybind11;
using namespace homspec;

namespace {

py::object to_int(const BigInt& v) { return py::int_(py::str(v.str())); }

template <class T, class Parse>
T parse_or_throw(Parse parse, const std::string& name, const char* what) {
  if (auto v = parse(name)) return *v;
  throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + name + "'");
}

GeometryParams space(const std::string& name, int m) {
  return space_params(parse_or_throw<SpaceKind>(parse_space, name, "space"), m);
}

CoefficientFamily family(const std::string& name) {
  return parse_or_throw<CoefficientFamily>(parse_family, name, "coefficient family");
}

py::list spectrum_list(const Spectrum& s) {
  py::list out;
  for (const auto& e : s.entries) out.append(py::make_tuple(e.value, e.degree));
  return out;
}

py::dict report_dict(const DecayReport& r) {
  py::dict d;
  d["theorem"] = std::string(theorem_label(r.theorem));
  d["space"] = std::string(space_name(r.space));
  d["m"] = r.m;
  d["r"] = r.r;
  d["p"] = r.p;
  d["gamma"] = r.gamma;
  d["count"] = r.count;
  d["fitted_slope"] = r.fitted_slope;
  d["theorem_exponent"] = r.theoretical_exponent;
  d["constructed_exponent"] = r.constructed_exponent;
  d["margin"] = r.margin;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_homspec, mod) {
  mod.doc() = "Spectra of zonal kernels on compact two-point homogeneous spaces";

  py::register_exception<Error>(mod, "HomspecError", PyExc_ValueError);

  mod.def(
      "space_parameters",
      [](const std::string& name, int m) {
        const auto g = space(name, m);
        py::dict d;
        d["sigma"] = g.sigma();
        d["rho"] = g.rho();
        d["alpha"] = g.alpha_value();
        d["beta"] = g.beta_value();
        return d;
      },
      py::arg("space"), py::arg("m"));
  mod.def(
      "eigenspace_dim", [](const std::string& s, int m, std::int64_t n) { return to_int(eigenspace_dim(space(s, m), n)); },
      py::arg("space"), py::arg("m"), py::arg("n"));
  mod.def(
      "cumulative_dim", [](const std::string& s, int m, std::int64_t n) { return to_int(cumulative_dim(space(s, m), n)); },
      py::arg("space"), py::arg("m"), py::arg("n"));
  mod.def(
      "laplace_eigenvalue",
      [](const std::string& s, int m, std::int64_t n) { return laplace_eigenvalue_value(space(s, m), n); },
      py::arg("space"), py::arg("m"), py::arg("n"));

  mod.def(
      "gauss_jacobi",
      [](double alpha, double beta, int n) {
        const auto rule = gauss_jacobi(JacobiParams(alpha, beta), n);
        return py::make_tuple(rule.nodes, rule.weights);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("nodes"));
  mod.def(
      "jacobi_eval", [](double alpha, double beta, int n, double t) { return jacobi_eval(JacobiParams(alpha, beta), n, t); },
      py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("t"));

  mod.def(
      "family_spectrum",
      [](const std::string& s, int m, const std::string& fam, double param, std::size_t count, int r) {
        const auto g = space(s, m);
        const auto k = apply_lb(make_family_kernel(g, family(fam), param, static_cast<int>(degree_to_fill(g, count))),
                                SobolevOrder(r));
        return spectrum_list(zonal_spectrum(k, count));
      },
      py::arg("space"), py::arg("m"), py::arg("family"), py::arg("param"), py::arg("count"), py::arg("r") = 0);

  mod.def(
      "nystrom_check",
      [](const std::string& fam, double param, int n_polar, int n_azimuthal, std::size_t top_k) {
        const auto c = nystrom_check(family(fam), param, n_polar, n_azimuthal, top_k);
        py::dict d;
        d["analytic"] = spectrum_list(c.analytic);
        d["numeric"] = spectrum_list(c.numeric);
        d["max_rel_error"] = c.max_rel_error;
        return d;
      },
      py::arg("family"), py::arg("param"), py::arg("n_polar") = 24, py::arg("n_azimuthal") = 48, py::arg("top_k") = 16);

  mod.def(
      "verify_theorem",
      [](const std::string& theorem, const std::string& s, int m, int r, double gamma, double p, std::size_t count) {
        const auto t = parse_or_throw<DecayTheorem>(parse_theorem, theorem, "theorem");
        return report_dict(verify_theorem(t, space(s, m), r, p, gamma, count));
      },
      py::arg("theorem"), py::arg("space"), py::arg("m"), py::arg("r"), py::arg("gamma"), py::arg("p") = 2.0,
      py::arg("count") = 10000);

  mod.def(
      "fit_decay",
      [](const std::vector<double>& values, double tail_fraction) {
        const auto f = fit_decay(std::span<const double>(values), tail_fraction);
        return py::make_tuple(f.slope, f.intercept);
      },
      py::arg("values"), py::arg("tail_fraction") = kDefaultTailFraction);

  mod.def(
      "counting_lemmas",
      [](const std::string& s, int m, std::int64_t n_max) {
        py::list out;
        for (const auto& l : check_counting_lemmas(space(s, m), n_max)) {
          py::dict d;
          d["id"] = l.id;
          d["delta"] = l.delta ? py::object(py::int_(*l.delta)) : py::object(py::none());
          d["violations"] = l.violations;
          d["pass"] = l.pass();
          out.append(d);
        }
        return out;
      },
      py::arg("space"), py::arg("m"), py::arg("n_max"));

  mod.def(
      "weyl_sweep",
      [](const std::string& kind, std::size_t max_order, std::size_t matrices, std::uint64_t seed) {
        const auto w = weyl_sweep(parse_or_throw<WeylCase>(parse_weyl_case, kind, "matrix kind"), max_order, matrices, seed);
        py::dict d;
        d["holds"] = w.holds;
        d["equalities"] = w.equalities;
        d["pass"] = w.pass;
        return d;
      },
      py::arg("kind"), py::arg("max_order"), py::arg("matrices"), py::arg("seed"));
}
