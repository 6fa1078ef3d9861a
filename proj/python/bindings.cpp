#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gca/linalg.hpp"
#include "gca/reports.hpp"
#include "gca/serialize.hpp"

namespace py = pybind11;
using namespace gca;

namespace {

struct PySystem {
    SystemPtr sys;
};

struct PyElement {
    GroupElem g;
};

PySystem load(const std::string& name_or_json) {
    if (!name_or_json.empty() && name_or_json.front() == '{')
        return {system_from_json(name_or_json)};
    return {load_system(name_or_json)};
}

std::vector<Letter> to_letters(const std::vector<int>& xs) {
    return std::vector<Letter>(xs.begin(), xs.end());
}

InfWord parse_inf_word(const std::string& pre, const std::string& per) {
    return InfWord{Word::from_digits(pre), Word::from_digits(per)};
}

}  // namespace

PYBIND11_MODULE(_gca, m) {
    m.doc() = "exact computations with self-similar actions, tight groupoids and Steinberg "
              "algebras";

    py::register_exception<UndecidedError>(m, "UndecidedError", PyExc_RuntimeError);

    py::class_<PySystem>(m, "System")
        .def_property_readonly("name", [](const PySystem& s) { return s.sys->name(); })
        .def_property_readonly("alphabet_size",
                               [](const PySystem& s) { return s.sys->alphabet_size(); })
        .def("__repr__", [](const PySystem& s) { return "<System " + s.sys->name() + ">"; });

    py::class_<PyElement>(m, "Element")
        .def("__repr__", [](const PyElement& e) { return e.g.to_string(); })
        .def("__str__", [](const PyElement& e) { return e.g.to_string(); })
        .def("inverse", [](const PyElement& e) { return PyElement{e.g.inverse()}; })
        .def("__mul__", [](const PyElement& a, const PyElement& b) {
            return PyElement{a.g * b.g};
        });

    m.def("system", &load, py::arg("name_or_json"),
          "Builtin system name, spec file path, or inline JSON spec");
    m.def("element", [](const PySystem& s, const std::string& text) {
        return PyElement{GroupElem::parse(s.sys, text)};
    });
    m.def("equal", [](const PyElement& a, const PyElement& b) {
        return elements_equal(a.g, b.g);
    });
    m.def("act_letter", [](const PyElement& e, Letter x) {
        auto [y, r] = act_letter(e.g, x);
        return py::make_tuple(y, PyElement{r});
    });
    m.def("act_word", [](const PyElement& e, const std::vector<int>& w) {
        auto [img, r] = act_word(e.g, Word{to_letters(w)});
        return py::make_tuple(img.letters(), PyElement{r});
    });
    m.def("act_infinite",
          [](const PyElement& e, const std::string& pre, const std::string& per) {
              InfWord img = act_infinite(e.g, parse_inf_word(pre, per));
              return py::make_tuple(img.preperiod().to_string(), img.period().to_string());
          });
    m.def("is_fixed", [](const PyElement& e, const std::vector<int>& w) {
        return is_fixed(e.g, Word{to_letters(w)});
    });
    m.def("is_strongly_fixed", [](const PyElement& e, const std::vector<int>& w) {
        return is_strongly_fixed(e.g, Word{to_letters(w)});
    });

    m.def("nucleus", [](const PySystem& s) {
        std::vector<std::string> out;
        for (const auto& g : compute_nucleus(s.sys).elements) out.push_back(g.to_string());
        return out;
    });
    m.def("msfw", [](const PySystem& s, const std::string& g, int max_len) {
        std::vector<std::string> out;
        for (const Word& w : enumerate_msfw(GroupElem::parse(s.sys, g), max_len))
            out.push_back(w.to_string());
        return out;
    });
    m.def("hausdorff", [](const PySystem& s) {
        return hausdorff_json(hausdorff_test(s.sys)).dump();
    });
    m.def("faithful", [](const PySystem& s) {
        auto res = faithfulness_probe(s.sys);
        switch (res.verdict) {
            case FaithfulnessResult::Verdict::Faithful: return std::string("Faithful");
            case FaithfulnessResult::Verdict::NotFaithful: return std::string("NotFaithful");
            default: return std::string("Undecided");
        }
    });

    m.def("singular_test",
          [](const PySystem& s, const std::string& field, const std::string& element_json,
             int depth) {
              CoeffField f = CoeffField::parse(field);
              AlgebraElement elem = algebra_from_json(s.sys, f, element_json);
              return support_json(singular_test(elem, depth)).dump();
          },
          py::arg("system"), py::arg("field"), py::arg("element_json"), py::arg("depth") = 12);
    m.def("grig_nucleus_family_json",
          [](const std::string& field, const std::vector<std::string>& coeffs, int m) {
              CoeffField f = CoeffField::parse(field);
              std::vector<FieldElem> cs;
              for (const auto& c : coeffs) cs.push_back(FieldElem::parse(f, c));
              return algebra_to_json(grig_nucleus_family(cs, m));
          });
    m.def("convolve",
          [](const PySystem& s, const std::string& field, const std::string& lhs,
             const std::string& rhs) {
              CoeffField f = CoeffField::parse(field);
              return algebra_to_json(convolve(algebra_from_json(s.sys, f, lhs),
                                              algebra_from_json(s.sys, f, rhs)));
          });
    m.def("regular_open",
          [](const PySystem& s, const std::vector<std::string>& gens, int depth) {
              std::vector<BasicBisection> family;
              for (const auto& g : gens)
                  family.push_back(BasicBisection::full(
                      Triple::make(Word{}, GroupElem::parse(s.sys, g), Word{})));
              return region_report_json(regular_open_test(family, depth)).dump();
          },
          py::arg("system"), py::arg("generators"), py::arg("depth") = 12);

    m.def("solve_homogeneous",
          [](const std::string& field, const std::vector<std::vector<std::string>>& rows) {
              CoeffField f = CoeffField::parse(field);
              FieldMatrix m2;
              for (const auto& row : rows) {
                  m2.emplace_back();
                  for (const auto& e : row) m2.back().push_back(FieldElem::parse(f, e));
              }
              std::vector<std::vector<std::string>> out;
              for (const auto& v : solve_homogeneous(m2)) {
                  out.emplace_back();
                  for (const auto& e : v) out.back().push_back(e.to_string());
              }
              return out;
          });

    m.def("grig_report", [](int depth) { return grig_report_json(depth).dump(); },
          py::arg("depth") = 12);
    m.def("katsura_report", [](const std::string& matrices_json) {
        KatsuraTriple t = matrices_json.empty() ? KatsuraTriple::paper()
                                                : katsura_from_json(matrices_json);
        return katsura_report_json(t).dump();
    }, py::arg("matrices_json") = "");
    m.def("katsura_act", [](std::int64_t n, const std::string& edge) {
        KatsuraTriple t = KatsuraTriple::paper();
        auto [image, phi] = t.act(n, t.parse_edge(edge));
        return py::make_tuple(t.edge_name(image), phi);
    });
}
