// Python bindings. Rationals cross the boundary as fractions.Fraction (ints
// and "p/q" strings are accepted on input); composite results that already
// have a JSON form are returned as parsed Python objects.

#include "continua/io.hpp"
#include "continua/quasi_attractor.hpp"
#include "continua/svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace continua;

namespace pybind11::detail {

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = Rational::parse(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src) || py::isinstance<py::float_>(src)) return false;
      if (py::isinstance<py::int_>(src)) {
        value = Rational::parse(py::str(src).cast<std::string>());
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        value = Rational::from_parts(py::str(src.attr("numerator")).cast<std::string>(),
                                     py::str(src.attr("denominator")).cast<std::string>());
        return true;
      }
    } catch (const std::exception&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    // Leaked so that no destructor runs after interpreter shutdown.
    static auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*fraction)(py::int_(py::reinterpret_steal<py::object>(
                        PyLong_FromString(r.numerator_str().c_str(), nullptr, 10))),
                    py::int_(py::reinterpret_steal<py::object>(
                        PyLong_FromString(r.denominator_str().c_str(), nullptr, 10))))
        .release();
  }
};

}  // namespace pybind11::detail

namespace {

py::object to_python(const io::json& j) {
  static auto* loads = new py::object(py::module_::import("json").attr("loads"));
  return (*loads)(j.dump());
}

Orientation orientation_of(const std::string& s) {
  if (s == "R") return Orientation::R;
  if (s == "L") return Orientation::L;
  throw py::value_error("orientation must be 'R' or 'L'");
}

std::vector<std::tuple<Rational, Rational, std::string>> oriented(const std::vector<OrientedInterval>& w) {
  std::vector<std::tuple<Rational, Rational, std::string>> out;
  for (const auto& i : w) out.emplace_back(i.a, i.b, std::string(1, to_char(i.orientation)));
  return out;
}

std::vector<std::pair<Rational, Rational>> pairs(const std::vector<Interval>& v) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& i : v) out.emplace_back(i.lo, i.hi);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact piecewise-linear dynamics on intervals and arc models";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InsufficientIntervals>(m, "InsufficientIntervals", PyExc_RuntimeError);
  py::register_exception<NoInwardStub>(m, "NoInwardStub", PyExc_RuntimeError);
  py::register_exception<CoverFailure>(m, "CoverFailure", PyExc_RuntimeError);

  py::class_<PLHomeo>(m, "PLHomeo")
      .def(py::init<std::vector<Rational>, std::vector<Rational>>(), py::arg("breakpoints"),
           py::arg("values"))
      .def_static("identity", py::overload_cast<const Rational&, const Rational&>(&PLHomeo::identity))
      .def_static("from_json", [](const std::string& text) { return io::plhomeo_from_json(io::parse_json(text)); })
      .def("__call__", &PLHomeo::operator())
      .def("preimage", &PLHomeo::preimage)
      .def_property_readonly("domain", [](const PLHomeo& f) { return std::make_pair(f.lo(), f.hi()); })
      .def_property_readonly("breakpoints", [](const PLHomeo& f) {
        return std::vector<Rational>(f.breakpoints().begin(), f.breakpoints().end());
      })
      .def_property_readonly("values", [](const PLHomeo& f) {
        return std::vector<Rational>(f.values().begin(), f.values().end());
      })
      .def("to_json", [](const PLHomeo& f) { return io::dump(io::to_json(f)); })
      .def("svg", [](const PLHomeo& f) { return svg::phase_diagram(f); })
      .def("__eq__", [](const PLHomeo& f, const PLHomeo& g) { return f == g; })
      .def("__repr__", [](const PLHomeo& f) {
        return "<PLHomeo on [" + f.lo().str() + ", " + f.hi().str() + "] with " +
               std::to_string(f.size()) + " breakpoints>";
      });

  m.def("compose", &compose, "compose(f, g) is f after g");
  m.def("invert", &invert);
  m.def("iterate", &iterate, py::arg("f"), py::arg("x"), py::arg("n"));
  m.def("c0_distance", &c0_distance);
  m.def("canonical_r", &canonical_r);
  m.def("canonical_l", &canonical_l);
  m.def("fixed_set", [](const PLHomeo& f) { return pairs(fixed_set(f)); });
  m.def("wandering_intervals", [](const PLHomeo& f) { return oriented(wandering_intervals(f)); },
        "List of (a, b, 'R' | 'L').");

  m.def("build_f_star", &build_f_star, py::arg("depth"));
  m.def("build_f_star_edges", &build_f_star_edges, py::arg("depth"), py::arg("edge_depth"));
  m.def("check_P_eps", [](const PLHomeo& f, const Rational& eps) -> std::optional<py::list> {
    auto w = check_P_eps(f, eps);
    if (!w) return std::nullopt;
    return py::cast(oriented(w->intervals));
  }, "Witness chain as a list of (a, b, orientation), or None.");
  m.def("p_eps_threshold", [](unsigned depth) { return p_eps_threshold(depth); }, py::arg("depth"));
  m.def("p_eps_threshold_of", &p_eps_threshold_of);
  m.def("build_conjugacy", [](const PLHomeo& g, unsigned depth) {
    auto r = build_conjugacy(g, depth);
    py::dict out;
    out["h"] = r.h;
    out["residual"] = r.residual;
    out["matched"] = to_python(io::to_json(r)["matched"]);
    return out;
  }, py::arg("g"), py::arg("depth"));
  m.def("explode_fixed_point", [](const PLHomeo& f, const Rational& p, const Rational& delta,
                                  const std::string& o) {
    return explode_fixed_point(f, p, delta, orientation_of(o));
  }, py::arg("f"), py::arg("p"), py::arg("delta"), py::arg("orientation") = "R");
  m.def("densify_to_P_eps", &densify_to_P_eps);

  m.def("generate_pseudo_orbit", [](const PLHomeo& f, const Rational& delta, long first, long last,
                                    const Rational& x0, std::uint64_t seed) {
    auto o = generate_pseudo_orbit(f, delta, Window{first, last}, x0, seed);
    return std::make_pair(o.first_index, o.points);
  }, py::arg("f"), py::arg("delta"), py::arg("first"), py::arg("last"), py::arg("x0"), py::arg("seed"),
        "Returns (first_index, points).");
  m.def("verify_pseudo_orbit", [](const PLHomeo& f, long first, std::vector<Rational> points) {
    return verify_pseudo_orbit(f, IntervalOrbit{first, std::move(points), Rational(0)});
  }, py::arg("f"), py::arg("first"), py::arg("points"));
  m.def("shadowing_set", [](const PLHomeo& f, long first, std::vector<Rational> points, const Rational& eps) {
    return pairs(shadowing_set(f, IntervalOrbit{first, std::move(points), Rational(0)}, eps).intervals);
  }, py::arg("f"), py::arg("first"), py::arg("points"), py::arg("eps"));
  m.def("estimate_shadowing_modulus", [](const PLHomeo& f, const Rational& eps, unsigned trials,
                                         std::uint64_t seed) {
    return estimate_shadowing_modulus(f, eps, trials, seed);
  }, py::arg("f"), py::arg("eps"), py::arg("trials"), py::arg("seed"));

  py::class_<YModel>(m, "YModel")
      .def_property_readonly("arc_labels", [](const YModel& y) {
        std::vector<std::string> out;
        for (const auto& a : y.arcs()) out.push_back(a.label);
        return out;
      })
      .def("to_json", [](const YModel& y) { return io::dump(io::to_json(y)); })
      .def("svg", [](const YModel& y) { return svg::model_diagram(y); })
      .def_static("from_json", [](const std::string& text) { return io::ymodel_from_json(io::parse_json(text)); });
  py::class_<YHomeo>(m, "YHomeo")
      .def_property_readonly("maps", [](const YHomeo& g) { return g.maps; })
      .def("to_json", [](const YHomeo& g) { return io::dump(io::to_json(g)); });

  m.def("build_y", &build_y, py::arg("segments") = 8);
  m.def("build_g_star", [](const YModel& y, unsigned depth, std::optional<unsigned> edge_depth) {
    return build_g_star(y, depth, edge_depth);
  }, py::arg("model"), py::arg("depth"), py::arg("edge_depth") = py::none());
  m.def("global_shadowing_delta", [](const YModel& y, const YHomeo& g, const Rational& eps) {
    return to_python(io::to_json(global_shadowing_delta(y, g, eps)));
  }, py::arg("model"), py::arg("g"), py::arg("eps"), "Certificate bundle as parsed JSON.");
  m.def("sample_global", [](const YModel& y, const YHomeo& g, const Rational& eps, unsigned orbits,
                            unsigned steps, std::uint64_t seed) {
    auto global = global_shadowing_delta(y, g, eps);
    auto r = sample_global(y, g, global, eps, orbits, steps, seed);
    py::dict out;
    out["delta"] = global.delta;
    out["orbits"] = r.orbits;
    out["failed"] = r.failed;
    return out;
  }, py::arg("model"), py::arg("g"), py::arg("eps"), py::arg("orbits"), py::arg("steps"), py::arg("seed"));
}
