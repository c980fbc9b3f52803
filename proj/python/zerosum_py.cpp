#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "zerosum/bass.hpp"
#include "zerosum/constants.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/productone.hpp"
#include "zerosum/sequence.hpp"

namespace py = pybind11;
using namespace zerosum;

namespace {

py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default:
      return py::none();
  }
}

std::vector<std::uint32_t> codes(const ElementSet& s) {
  std::vector<std::uint32_t> out;
  s.for_each([&](Element e) { out.push_back(e.code); });
  return out;
}

SearchBudget budget_for(std::size_t max_order_d, std::size_t max_order_e, std::uint64_t max_nodes) {
  SearchBudget b;
  b.max_order_davenport = max_order_d;
  b.max_order_gao = max_order_e;
  b.max_nodes = max_nodes;
  return b;
}

py::dict search_to_python(const SearchResult& r) {
  py::dict out;
  out["exact"] = r.exact();
  out["value"] = r.value ? py::object(py::int_(*r.value)) : py::object(py::none());
  py::list ws;
  for (const auto& w : r.witnesses) ws.append(format_sequence(w));
  out["witnesses"] = ws;
  out["nodes"] = r.nodes;
  out["reason"] = r.reason;
  return out;
}

}  // namespace

PYBIND11_MODULE(_zerosum, m) {
  m.doc() = "zero-sum invariants of finite groups";

  py::register_exception<Error>(m, "ZerosumError", PyExc_ValueError);

  py::class_<FiniteGroup, std::shared_ptr<FiniteGroup>>(m, "Group")
      .def_static(
          "metacyclic",
          [](long mm, long n, long s) {
            return std::const_pointer_cast<FiniteGroup>(mk_metacyclic(MetacyclicParams::make(mm, n, s)));
          },
          py::arg("m"), py::arg("n"), py::arg("s"))
      .def_static("cyclic", [](int n) { return std::const_pointer_cast<FiniteGroup>(mk_cyclic(n)); })
      .def_static("from_table",
                  [](const std::vector<std::vector<std::uint32_t>>& table) {
                    return std::const_pointer_cast<FiniteGroup>(FiniteGroup::from_table(table));
                  })
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("identity", [](const FiniteGroup& g) { return g.identity().code; })
      .def("mul", [](const FiniteGroup& g, std::uint32_t a, std::uint32_t b) { return g.mul({a}, {b}).code; })
      .def("inverse", [](const FiniteGroup& g, std::uint32_t a) { return g.inverse({a}).code; })
      .def("element", [](const FiniteGroup& g, long a, long b) { return g.element(a, b).code; })
      .def("exponents", [](const FiniteGroup& g, std::uint32_t c) { return g.exponents({c}); })
      .def("label", [](const FiniteGroup& g, std::uint32_t c) { return g.label({c}); })
      .def("element_order", [](const FiniteGroup& g, std::uint32_t c) { return element_order(g, {c}); })
      .def("is_abelian", [](const FiniteGroup& g) { return is_abelian(g); })
      .def("is_cyclic", [](const FiniteGroup& g) { return is_cyclic(g); })
      .def("__repr__", [](const FiniteGroup& g) { return describe(g); });

  py::class_<GroupSequence>(m, "Sequence")
      .def_static("parse",
                  [](const std::shared_ptr<FiniteGroup>& g, const std::string& text) { return parse_sequence(g, text); })
      .def_static("from_terms",
                  [](const std::shared_ptr<FiniteGroup>& g, const std::vector<std::uint32_t>& terms) {
                    GroupSequence s(g);
                    for (auto t : terms) s.add(Element{t});
                    return s;
                  })
      .def("__len__", &GroupSequence::length)
      .def("__str__", [](const GroupSequence& s) { return format_sequence(s); })
      .def("__repr__", [](const GroupSequence& s) { return "Sequence('" + format_sequence(s) + "')"; })
      .def("__eq__", [](const GroupSequence& a, const GroupSequence& b) { return a == b; })
      .def("terms",
           [](const GroupSequence& s) {
             std::vector<std::uint32_t> out;
             for (auto e : s.terms()) out.push_back(e.code);
             return out;
           })
      .def("concat", [](const GroupSequence& a, const GroupSequence& b) { return concat(a, b); })
      .def("subtract", [](const GroupSequence& a, const GroupSequence& b) { return subtract(a, b); });

  m.def("ord_mod", &ord_mod, py::arg("s"), py::arg("n"));
  m.def("verify_dicyclic_presentation", &verify_dicyclic_presentation, py::arg("n"));

  m.def("pi_set", [](const GroupSequence& s) { return codes(pi_set(s)); });
  m.def("big_pi_set", [](const GroupSequence& s) { return codes(big_pi_set(s)); });
  m.def("is_product_one_free", [](const GroupSequence& s) { return is_product_one_free(s); });
  m.def("has_k_product_one", [](const GroupSequence& s, std::size_t k) { return has_k_product_one(s, k); });
  m.def("find_k_product_one", [](const GroupSequence& s, std::size_t k) -> py::object {
    auto w = find_k_product_one(s, k);
    if (!w) return py::none();
    std::vector<std::uint32_t> order;
    for (auto e : w->ordering) order.push_back(e.code);
    py::dict out;
    out["subsequence"] = format_sequence(w->subsequence);
    out["ordering"] = order;
    return out;
  });

  m.def("davenport_bounds", [](const std::shared_ptr<FiniteGroup>& g) {
    const auto b = davenport_bounds(g);
    py::dict out;
    out["lower"] = b.lower;
    out["upper"] = b.upper;
    py::list certs;
    for (const auto& c : b.certificates) certs.append(to_python(certificate_to_json(c)));
    out["certificates"] = certs;
    return out;
  });
  m.def(
      "davenport_exact",
      [](const std::shared_ptr<FiniteGroup>& g, std::size_t max_order, std::uint64_t max_nodes) {
        return search_to_python(davenport_exact(g, budget_for(max_order, 8, max_nodes)));
      },
      py::arg("group"), py::arg("max_order") = 24, py::arg("max_nodes") = 50'000'000);
  m.def(
      "gao_exact",
      [](const std::shared_ptr<FiniteGroup>& g, std::size_t max_order, std::uint64_t max_nodes) {
        return search_to_python(gao_exact(g, budget_for(24, max_order, max_nodes)));
      },
      py::arg("group"), py::arg("max_order") = 8, py::arg("max_nodes") = 50'000'000);
  m.def(
      "constant_report",
      [](const std::shared_ptr<FiniteGroup>& g, bool search_d, bool search_e) {
        ReportOptions opts;
        opts.search_d = search_d;
        opts.search_e = search_e;
        return to_python(report_to_json(constant_report(g, opts)));
      },
      py::arg("group"), py::arg("search_d") = false, py::arg("search_e") = false);

  m.def(
      "bass_check",
      [](long mm, long n, long s) { return to_python(verdict_to_json(bass_check(MetacyclicParams::make(mm, n, s)))); },
      py::arg("m"), py::arg("n"), py::arg("s"));
  m.def(
      "counterexample_scan",
      [](const std::string& ms, const std::string& ns) {
        py::list out;
        for (const auto& hit : counterexample_scan(parse_range(ms), parse_range(ns)))
          out.append(to_python(scan_hit_to_json(hit)));
        return out;
      },
      py::arg("m_range"), py::arg("n_range"));
  m.def("template_match", [](const GroupSequence& s, int m0, int n0) -> py::object {
    auto t = template_match(s, m0, n0);
    return t ? to_python(template_to_json(*t)) : py::none();
  });
  m.def(
      "condition_b_audit",
      [](int m0, int n0, long sigma) {
        const auto a = condition_b_audit(m0, n0, sigma);
        py::dict out;
        out["length"] = a.candidate_length;
        out["gao_exact"] = a.gao_exact ? py::object(py::int_(*a.gao_exact)) : py::object(py::none());
        out["conditional_on_a"] = a.conditional_on_a;
        py::list matches;
        for (const auto& [seq, t] : a.matches) matches.append(format_sequence(seq));
        py::list exceptions;
        for (const auto& seq : a.exceptions) exceptions.append(format_sequence(seq));
        out["matches"] = matches;
        out["exceptions"] = exceptions;
        return out;
      },
      py::arg("m0"), py::arg("n0"), py::arg("sigma"));
  m.def("k_solver", &k_solver, py::arg("a"), py::arg("b"), py::arg("t"), py::arg("r"), py::arg("n0"), py::arg("n"));
  m.def(
      "pigeonhole_pairs",
      [](long mm, long n, long s, const std::string& text) {
        const auto dp = doubling_params(mm, n, s);
        const auto g = mk_metacyclic(dp.params);
        const auto ds = doubling_subgroup(g);
        return to_python(pairs_to_json(pigeonhole_pairs(parse_sequence(g, text), ds.h)));
      },
      py::arg("m"), py::arg("n"), py::arg("s"), py::arg("sequence"));
}
