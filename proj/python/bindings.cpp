#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <sstream>

#include "apnlab/apn.hpp"
#include "apnlab/bench.hpp"
#include "apnlab/certificate.hpp"
#include "apnlab/runtime.hpp"

namespace py = pybind11;
using namespace apnlab;

namespace {

py::object json_to_py(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

nlohmann::json py_to_json(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

BoolFn bool_fn(const std::vector<std::uint8_t>& table) {
  if (table.empty() || (table.size() & (table.size() - 1)) != 0)
    throw std::invalid_argument("table length must be a power of two");
  return BoolFn(static_cast<unsigned>(__builtin_ctzll(table.size())), table);
}

VecFn vec_fn(const std::vector<Elem>& table) {
  if (table.empty() || (table.size() & (table.size() - 1)) != 0)
    throw std::invalid_argument("table length must be a power of two");
  const unsigned n = static_cast<unsigned>(__builtin_ctzll(table.size()));
  unsigned m = n;
  for (Elem v : table) m = std::max(m, v ? 32u - static_cast<unsigned>(__builtin_clz(v)) : 0u);
  return VecFn(n, m, table);
}

FamilyParams family_params(const Field& field, const std::string& name, const py::kwargs& kw) {
  FamilyParams p;
  p.family = parse_family(name);
  p.n = field.degree();
  auto get = [&](const char* key) -> std::optional<py::object> {
    if (!kw.contains(key) || kw[key].is_none()) return std::nullopt;
    return py::reinterpret_borrow<py::object>(kw[key]);
  };
  if (auto v = get("i")) p.i = v->cast<unsigned>();
  if (auto v = get("j")) p.j = v->cast<unsigned>();
  if (auto v = get("s")) p.s_exp = v->cast<unsigned>();
  if (auto v = get("b")) p.b = v->cast<Elem>();
  if (auto v = get("c")) p.c = v->cast<Elem>();
  if (auto v = get("t")) p.t = v->cast<Elem>();
  if (auto v = get("s_elem")) p.s_elem = v->cast<Elem>();
  if (auto v = get("r")) p.r = v->cast<std::vector<Elem>>();
  return complete_params(field, p);
}

}  // namespace

PYBIND11_MODULE(_apnlab, m) {
  m.doc() = "GF(2^n) arithmetic, Walsh spectra and APN family certificates";

  py::register_exception<CapError>(m, "CapError", PyExc_ValueError);

  py::class_<PowerMapInfo>(m, "PowerMapInfo")
      .def_readonly("d", &PowerMapInfo::d)
      .def_readonly("is_permutation", &PowerMapInfo::is_permutation)
      .def_readonly("residue_count", &PowerMapInfo::residue_count);

  py::class_<Field>(m, "Field")
      .def(py::init<unsigned>(), py::arg("n"))
      .def(py::init<unsigned, gf2::Poly>(), py::arg("n"), py::arg("poly"))
      .def_property_readonly("n", &Field::degree)
      .def_property_readonly("poly", &Field::reduction_poly)
      .def_property_readonly("size", &Field::size)
      .def_property_readonly("primitive", &Field::primitive)
      .def_static("add", &Field::add)
      .def("mul", &Field::mul)
      .def("pow", &Field::pow)
      .def("inverse", &Field::inverse)
      .def("frobenius", &Field::frobenius)
      .def("abs_trace", &Field::abs_trace)
      .def("rel_trace_half", &Field::rel_trace_half)
      .def("is_in_subfield", &Field::is_in_subfield)
      .def("find_omega", &Field::find_omega)
      .def("decompose", &Field::decompose)
      .def("recompose", &Field::recompose)
      .def("power_map_analysis", &Field::power_map_analysis)
      .def("is_kth_power", &Field::is_kth_power)
      .def("__repr__", [](const Field& f) {
        std::ostringstream s;
        s << "Field(n=" << f.degree() << ", poly=0x" << std::hex << f.reduction_poly() << ")";
        return s.str();
      });

  m.def("count_subspaces", [](std::uint64_t p, unsigned n) {
    return py::int_(py::str(count_subspaces(p, n).str()));
  });

  m.def("walsh", [](const Field& f, const std::vector<std::uint8_t>& table, const std::string& method) {
        const BoolFn fn = bool_fn(table);
        if (method == "naive") return walsh_naive(f, fn).values;
        if (method == "fast") return walsh_fast(f, fn).values;
        throw std::invalid_argument("method must be naive or fast");
      }, py::arg("field"), py::arg("table"), py::arg("method") = "fast");
  m.def("walsh_monomial", [](const Field& f, std::uint64_t i, Elem a, const std::string& method) {
        return walsh_monomial(f, a, i, parse_walsh_method(method)).values;
      }, py::arg("field"), py::arg("i"), py::arg("a") = 1, py::arg("method") = "classes");
  m.def("is_bent", [](const Field& f, const std::vector<std::uint8_t>& table) { return is_bent(f, bool_fn(table)); });

  m.def("differential_spectrum", [](const std::vector<Elem>& table) {
    const DifferentialSpectrum ds = differential_spectrum(vec_fn(table));
    return py::make_tuple(ds.uniformity, ds.histogram);
  });
  m.def("is_apn", [](const std::vector<Elem>& table) { return is_apn(vec_fn(table)); });
  m.def("power_table", [](const Field& f, std::uint64_t e) { return VecFn::power(f, e).table; });

  m.def("bent_scan", [](unsigned k_min, unsigned k_max, const std::string& method) {
        const ScanReport r = bent_scan(k_min, k_max, parse_walsh_method(method));
        py::list out;
        for (const auto& x : r.records) {
          py::dict d;
          d["k"] = x.k;
          d["i"] = x.i;
          d["a"] = x.a;
          d["chi_zero_sign"] = x.chi_zero_sign ? py::object(py::str(to_string(*x.chi_zero_sign))) : py::object(py::none());
          d["sign_rule_holds"] = x.sign_rule_holds;
          out.append(d);
        }
        return out;
      }, py::arg("k_min"), py::arg("k_max"), py::arg("method") = "classes");

  m.def("build_family", [](unsigned n, const std::string& name, const py::kwargs& kw) {
        const Field field(n);
        return json_to_py(to_json(build_family(field, family_params(field, name, kw))));
      }, py::arg("n"), py::arg("name"));
  m.def("search_family", [](unsigned n, const std::string& name, std::size_t budget) {
        const Field field(n);
        const SearchResult r = search_family(field, parse_family(name), {.budget = budget});
        py::list certs;
        for (const auto& c : r.certificates) certs.append(json_to_py(to_json(c)));
        return py::make_tuple(certs, r.diagnostics);
      }, py::arg("n"), py::arg("name"), py::arg("budget") = 10);
  m.def("verify_certificate", [](const py::object& doc) {
    const VerifyResult v = verify_certificate(py_to_json(doc));
    return py::make_tuple(v.reproduced, v.mismatched_keys);
  });

  m.def("set_worker_count", &set_worker_count);
}
