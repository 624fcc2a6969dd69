#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "itespec/errors.hpp"
#include "itespec/ite_1d.hpp"
#include "itespec/ite_1d_complex.hpp"
#include "itespec/ite_nd.hpp"
#include "itespec/scattering.hpp"
#include "itespec/special_functions.hpp"

namespace py = pybind11;
using namespace itespec;

namespace {

Contrast contrast_from(py::object gamma, py::object m, py::object rational) {
  const int given = !gamma.is_none() + !m.is_none() + !rational.is_none();
  if (given != 1) throw DomainError("exactly one of gamma, m, rational is required");
  if (!rational.is_none()) {
    const auto pq = rational.cast<std::pair<std::int64_t, std::int64_t>>();
    return Contrast::from_rational(pq.first, pq.second);
  }
  if (!m.is_none()) return Contrast::from_index(m.cast<double>());
  return Contrast::from_gamma(gamma.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_itespec, mod) {
  mod.doc() = "Interior transmission eigenvalues of the half-line and the ball.";

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(mod, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);

  py::enum_<RootKind>(mod, "RootKind")
      .value("Intersection", RootKind::Intersection)
      .value("CommonZero", RootKind::CommonZero);
  py::enum_<CountMode>(mod, "CountMode")
      .value("Geometric", CountMode::Geometric)
      .value("Algebraic", CountMode::Algebraic);

  py::class_<Contrast>(mod, "Contrast")
      .def(py::init(&contrast_from), py::kw_only(), py::arg("gamma") = py::none(),
           py::arg("m") = py::none(), py::arg("rational") = py::none())
      .def_property_readonly("gamma", &Contrast::gamma)
      .def_property_readonly("rational", [](const Contrast& c) -> py::object {
        if (!c.rational()) return py::none();
        return py::make_tuple(c.rational()->p, c.rational()->q);
      })
      .def("reciprocal", &Contrast::reciprocal)
      .def("__repr__", [](const Contrast& c) { return "Contrast(gamma=" + std::to_string(c.gamma()) + ")"; });

  py::class_<RealIte>(mod, "RealIte")
      .def_readonly("lambda_", &RealIte::lambda)
      .def_readonly("alg_mult", &RealIte::alg_mult)
      .def_readonly("geom_mult", &RealIte::geom_mult)
      .def_readonly("kind", &RealIte::kind)
      .def_readonly("l", &RealIte::momentum)
      .def_readonly("nu", &RealIte::nu)
      .def("__repr__", [](const RealIte& r) {
        return "RealIte(lambda=" + std::to_string(r.lambda) + ", alg_mult=" + std::to_string(r.alg_mult) + ")";
      });

  py::class_<ComplexIte>(mod, "ComplexIte")
      .def_readonly("z", &ComplexIte::z)
      .def_readonly("mult", &ComplexIte::mult);

  py::class_<CountReport>(mod, "CountReport")
      .def_readonly("dimension", &CountReport::dimension)
      .def_readonly("coefficient", &CountReport::coefficient)
      .def_readonly("radii", &CountReport::radii)
      .def_readonly("counts", &CountReport::counts)
      .def_readonly("dirichlet_diff", &CountReport::dirichlet_diff)
      .def_readonly("weyl", &CountReport::weyl)
      .def_readonly("residual_scaled", &CountReport::residual_scaled)
      .def_readonly("fit_coefficient", &CountReport::fit_coefficient);

  mod.def("bessel_j", [](double nu, double x) { return bessel_j(Order(nu), x); }, py::arg("nu"), py::arg("x"));
  mod.def("hankel1", [](double nu, double x) { return hankel1(Order(nu), x); }, py::arg("nu"), py::arg("x"));
  mod.def("bessel_zeros",
          [](double nu, double upper) {
            const auto table = bessel_zeros(Order(nu), upper);
            const auto z = table.zeros();
            return std::vector<double>(z.begin(), z.end());
          },
          py::arg("nu"), py::arg("upper"));

  mod.def("f_1d", py::overload_cast<const Contrast&, double>(&f_1d), py::arg("contrast"), py::arg("lam"));
  mod.def("f_1d", py::overload_cast<const Contrast&, std::complex<double>>(&f_1d), py::arg("contrast"),
          py::arg("z"));
  mod.def("enumerate_real_ites_1d",
          [](const Contrast& c, double r) { return enumerate_real_ites_1d(c, r); }, py::arg("contrast"),
          py::arg("r"));
  mod.def("count_1d", [](const Contrast& c, double r, CountMode mode) { return count_1d(c, r, mode); },
          py::arg("contrast"), py::arg("r"), py::arg("mode") = CountMode::Geometric);

  mod.def("strip_bound", &strip_bound, py::arg("contrast"));
  mod.def("winding_count",
          [](const Contrast& c, double re_lo, double re_hi, double im_lo, double im_hi) {
            return winding_count(c, Rectangle(re_lo, re_hi, im_lo, im_hi));
          },
          py::arg("contrast"), py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"), py::arg("im_hi"));
  mod.def("enumerate_complex_ites", &enumerate_complex_ites, py::arg("contrast"), py::arg("R"),
          py::call_guard<py::gil_scoped_release>());

  py::class_<DimensionConfig>(mod, "DimensionConfig")
      .def(py::init<int, double>(), py::arg("n"), py::arg("m"))
      .def_property_readonly("n", &DimensionConfig::n)
      .def_property_readonly("m", &DimensionConfig::m)
      .def_property_readonly("gamma", &DimensionConfig::gamma)
      .def("nu", [](const DimensionConfig& d, int l) { return d.nu(l).value(); }, py::arg("l"))
      .def("contrast", &DimensionConfig::contrast);

  mod.def("f_nu", [](const Contrast& c, double nu, double x) { return f_nu(c, Order(nu), x); },
          py::arg("contrast"), py::arg("nu"), py::arg("lam"));
  mod.def("enumerate_ites_for_nu",
          [](const Contrast& c, double nu, double r) { return enumerate_ites_for_nu(c, Order(nu), r).roots; },
          py::arg("contrast"), py::arg("nu"), py::arg("r"));
  mod.def("multiplicity_mu", &multiplicity_mu, py::arg("n"), py::arg("l"));
  mod.def("enumerate_nd",
          [](const DimensionConfig& d, double r, int threads) {
            NdOptions opts;
            opts.threads = threads;
            return enumerate_nd(d, r, opts).merged();
          },
          py::arg("cfg"), py::arg("r"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  mod.def("count_nd",
          [](const DimensionConfig& d, double r, int threads) {
            NdOptions opts;
            opts.threads = threads;
            return count_nd(d, r, opts);
          },
          py::arg("cfg"), py::arg("r"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  mod.def("weyl_coefficient", [](const DimensionConfig& d) { return weyl_coefficient(d).value; }, py::arg("cfg"));
  mod.def("weyl_report",
          [](const DimensionConfig& d, const std::vector<double>& grid) { return weyl_report(d, grid); },
          py::arg("cfg"), py::arg("grid"), py::call_guard<py::gil_scoped_release>());

  mod.def("s_matrix_entry", &s_matrix_entry, py::arg("cfg"), py::arg("l"), py::arg("lam"));
  mod.def("amplitude_entry", &amplitude_entry, py::arg("cfg"), py::arg("l"), py::arg("lam"));
  mod.def("verify_ite_te_coincidence",
          [](const DimensionConfig& d, double r) {
            CoincidenceReport rep;
            {
              py::gil_scoped_release nogil;
              rep = verify_ite_te_coincidence(d, r);
            }
            py::dict out;
            out["ites"] = rep.ites;
            out["amplitude_zeros"] = rep.amplitude_zeros;
            out["mismatches"] = rep.mismatches.size();
            out["max_amplitude_at_ite"] = rep.max_amplitude_at_ite;
            out["max_unitarity_defect"] = rep.max_unitarity_defect;
            return out;
          },
          py::arg("cfg"), py::arg("r"));
}
