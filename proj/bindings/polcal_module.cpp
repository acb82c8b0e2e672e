#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polcal/runner.hpp"
#include "polcal/taylor.hpp"

namespace py = pybind11;
using namespace polcal;

namespace {

Scalar scalar_from_py(const py::handle& obj) {
  if (py::isinstance<Scalar>(obj)) return obj.cast<Scalar>();
  if (py::isinstance<py::int_>(obj)) {
    Rational r;
    if (!try_parse_rational(py::str(obj).cast<std::string>(), r))
      throw py::value_error("unsupported integer literal");
    return Scalar::exact(r);
  }
  if (py::isinstance<py::float_>(obj)) return Scalar::real(obj.cast<double>());
  if (py::isinstance<py::str>(obj)) return Scalar::parse(obj.cast<std::string>());
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    Rational num, den;
    if (try_parse_rational(py::str(obj.attr("numerator")).cast<std::string>(), num) &&
        try_parse_rational(py::str(obj.attr("denominator")).cast<std::string>(), den))
      return Scalar::exact(num / den);
  }
  throw py::value_error("cannot interpret value as a scalar (use int, float, str or Fraction)");
}

std::vector<Scalar> coords_from_py(const py::sequence& seq) {
  std::vector<Scalar> out;
  out.reserve(seq.size());
  for (const auto& item : seq) out.push_back(scalar_from_py(item));
  return out;
}

Point point_from_py(const py::sequence& seq) { return Point(coords_from_py(seq)); }
Direction direction_from_py(const py::sequence& seq) { return Direction(coords_from_py(seq)); }

std::vector<Direction> directions_from_py(const py::sequence& seq) {
  std::vector<Direction> out;
  out.reserve(seq.size());
  for (const auto& item : seq) out.push_back(direction_from_py(item.cast<py::sequence>()));
  return out;
}

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default: return py::none();
  }
}

RichardsonOptions richardson_opts(const std::string& s0, int levels) {
  RichardsonOptions opts;
  Scalar parsed = Scalar::parse(s0);
  if (!parsed.is_exact() || parsed.sign() <= 0) throw py::value_error("s0 must be a positive rational");
  opts.s0 = parsed.rat();
  opts.levels = levels;
  return opts;
}

void register_exceptions(py::module_& m) {
  static py::exception<Error> base(m, "PolcalError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      base(e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_polcal, m) {
  m.doc() = "finite polarization calculus: multidirectional differences, homogeneity "
            "classification, derivatives and Taylor diagnostics";

  register_exceptions(m);

  py::class_<Scalar>(m, "Scalar")
      .def(py::init([](const py::handle& v) { return scalar_from_py(v); }))
      .def("__str__", &Scalar::str)
      .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.str() + "')"; })
      .def("__float__", &Scalar::dbl)
      .def("__eq__", [](const Scalar& a, const py::handle& b) { return a == scalar_from_py(b); })
      .def_property_readonly("exact", &Scalar::is_exact);

  py::class_<Polynomial>(m, "Polynomial")
      .def("__str__", [](const Polynomial& p) { return to_json(p).dump(); })
      .def_property_readonly("degree", &Polynomial::degree)
      .def("eval", [](const Polynomial& p, const py::sequence& q) { return p.eval(point_from_py(q)); })
      .def("rebase",
           [](const Polynomial& p, const py::sequence& q) { return p.rebase(point_from_py(q).exact_coords()); })
      .def("homogeneous_parts", &Polynomial::homogeneous_parts)
      .def("to_dict", [](const Polynomial& p) { return json_to_py(to_json(p)); });

  py::class_<ScalarField>(m, "ScalarField")
      .def_property_readonly("dimension", &ScalarField::dimension)
      .def_property_readonly("polynomial_backed", &ScalarField::polynomial_backed)
      .def("eval", [](const ScalarField& f, const py::sequence& q) { return f.eval(point_from_py(q)); })
      .def("to_polynomial", &ScalarField::to_polynomial);

  py::class_<AffineMap>(m, "AffineMap")
      .def(py::init<std::vector<ScalarField>>())
      .def("eval", [](const AffineMap& g, const py::sequence& p) {
        return json_to_py(to_json(g.eval(point_from_py(p))));
      });

  m.def(
      "parse_field",
      [](const std::string& src, const std::vector<std::string>& vars) {
        return ScalarField::parse(src, static_cast<int>(vars.size()), vars);
      },
      py::arg("src"), py::arg("vars"));

  m.def(
      "polynomial_field",
      [](const std::string& src, const std::vector<std::string>& vars) {
        return ScalarField::from_polynomial(
            ScalarField::parse(src, static_cast<int>(vars.size()), vars).to_polynomial());
      },
      py::arg("src"), py::arg("vars"));

  m.def(
      "polarize",
      [](const ScalarField& f, const py::sequence& q, const py::sequence& dirs, bool with_terms) {
        return json_to_py(to_json(polarize(f, point_from_py(q), directions_from_py(dirs), with_terms)));
      },
      py::arg("field"), py::arg("point"), py::arg("dirs"), py::arg("with_terms") = false);

  m.def(
      "polarize_unidirectional",
      [](const ScalarField& f, const py::sequence& q, const py::sequence& v, int n) {
        return polarize_unidirectional(f, point_from_py(q), direction_from_py(v), n);
      },
      py::arg("field"), py::arg("point"), py::arg("dir"), py::arg("order"));

  m.def(
      "reconstruct_increment",
      [](const ScalarField& f, const py::sequence& q, const py::sequence& dirs) {
        return reconstruct_increment(f, point_from_py(q), directions_from_py(dirs));
      },
      py::arg("field"), py::arg("point"), py::arg("dirs"));

  m.def(
      "leibniz_expand",
      [](const ScalarField& f, const ScalarField& f2, const py::sequence& q, const py::sequence& dirs) {
        return leibniz_expand(f, f2, point_from_py(q), directions_from_py(dirs));
      },
      py::arg("field"), py::arg("field2"), py::arg("point"), py::arg("dirs"));

  m.def(
      "chain_expand",
      [](const ScalarField& f, const AffineMap& g, const py::sequence& p, const py::sequence& dirs) {
        return chain_expand(f, g, point_from_py(p), directions_from_py(dirs));
      },
      py::arg("field"), py::arg("map"), py::arg("point"), py::arg("dirs"));

  m.def(
      "derive",
      [](const ScalarField& f, const py::sequence& q, const py::sequence& dirs, const std::string& s0,
         int levels) {
        return json_to_py(
            to_json(derive(f, point_from_py(q), directions_from_py(dirs), richardson_opts(s0, levels))));
      },
      py::arg("field"), py::arg("point"), py::arg("dirs"), py::arg("s0") = "1/8", py::arg("levels") = 5);

  m.def(
      "is_homogeneous",
      [](const ScalarField& f, const py::sequence& q, int n, int samples, std::uint64_t seed) {
        SampleOptions opts;
        opts.seed = seed;
        return json_to_py(to_json(is_homogeneous(f, point_from_py(q), n, samples, opts)));
      },
      py::arg("field"), py::arg("point"), py::arg("degree"), py::arg("samples") = 40,
      py::arg("seed") = kDefaultSeed);

  m.def(
      "is_homogeneous_polynomial",
      [](const ScalarField& f, const py::sequence& q, int n, int samples, std::uint64_t seed) {
        SampleOptions opts;
        opts.seed = seed;
        return json_to_py(to_json(is_homogeneous_polynomial(f, point_from_py(q), n, samples, opts)));
      },
      py::arg("field"), py::arg("point"), py::arg("degree"), py::arg("samples") = 40,
      py::arg("seed") = kDefaultSeed);

  m.def(
      "extract_components",
      [](const ScalarField& f, const py::sequence& q0, int n) {
        std::vector<ScalarField> parts = extract_homogeneous_components(f, point_from_py(q0), n);
        py::list out;
        for (const auto& part : parts) out.append(part);
        return out;
      },
      py::arg("field"), py::arg("point"), py::arg("degree"));

  m.def(
      "euler_scaling_check",
      [](const ScalarField& f, const py::sequence& q, int n, int k, const py::sequence& v,
         const py::handle& lambda) {
        auto [lhs, rhs] =
            euler_scaling_check(f, point_from_py(q), n, k, direction_from_py(v), scalar_from_py(lambda));
        return py::make_tuple(lhs, rhs);
      },
      py::arg("field"), py::arg("point"), py::arg("degree"), py::arg("k"), py::arg("dir"),
      py::arg("lam"));

  m.def(
      "taylor",
      [](const ScalarField& f, const py::sequence& q, int n) {
        TaylorOptions opts;
        Point at = point_from_py(q);
        TaylorResult result = taylor_polynomial(f, at, n, opts);
        RemainderProfile profile = remainder_profile(result.remainder, at, n, opts);
        py::dict out;
        out["polynomial"] = json_to_py(to_json(result.polynomial));
        out["remainder_profile"] = json_to_py(to_json(profile));
        return out;
      },
      py::arg("field"), py::arg("point"), py::arg("order"));

  m.def("euler_alternating_sum", &euler_alternating_sum, py::arg("n"), py::arg("m"), py::arg("l"));
  m.def(
      "delta_chi",
      [](int k, int n, const py::handle& lambda) { return delta_chi(k, n, scalar_from_py(lambda)); },
      py::arg("k"), py::arg("n"), py::arg("lam"));
  m.def(
      "multinomial",
      [](int n, const std::vector<int>& parts) { return multinomial(n, parts); },
      py::arg("n"), py::arg("parts"));

  m.def(
      "verify_suite",
      [](const std::string& suite, long long trials, std::uint64_t seed) {
        bool any_failure = false;
        Json doc = run_verify_suite(suite, trials, seed, any_failure);
        return json_to_py(doc);
      },
      py::arg("suite"), py::arg("trials") = 100, py::arg("seed") = kDefaultSeed);
}
