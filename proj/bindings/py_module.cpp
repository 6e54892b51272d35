// Python bindings for the exact character/limit-cycle machinery. Rationals
// cross the boundary as fraction strings so exactness survives.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thomalab/dense_oracle.hpp"
#include "thomalab/errors.hpp"
#include "thomalab/json_io.hpp"
#include "thomalab/tensor_model.hpp"
#include "thomalab/verify.hpp"

namespace py = pybind11;
using namespace thomalab;

namespace {

ThomaParams params_from_strings(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<Rat> ra, rb;
  for (const auto& s : a) ra.push_back(rat_from_string(s));
  for (const auto& s : b) rb.push_back(rat_from_string(s));
  return ThomaParams::make(ra, rb);
}

ExperimentConfig config_from_string(const std::string& text) {
  if (text.empty()) return {};
  return config_from_json(Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_thomalab, m) {
  m.doc() = "exact combinatorics, characters and tensor-model traces for the "
            "infinite symmetric group";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ResourceCapError>(m, "ResourceCapError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<>())
      .def_static("transposition", &Permutation::transposition)
      .def_static("from_cycles", &Permutation::from_cycles)
      .def("__call__", [](const Permutation& p, int k) { return p(k); })
      .def("inverse", &Permutation::inverse)
      .def("is_identity", &Permutation::is_identity)
      .def("support", &Permutation::support)
      .def("max_support", &Permutation::max_support)
      .def("sign", [](const Permutation& p) { return sgn(p); })
      .def("cycles",
           [](const Permutation& p) {
             std::vector<std::vector<int>> out;
             for (const auto& c : cycle_decompose(p)) out.push_back(c.points());
             return out;
           })
      .def("cycle_type",
           [](const Permutation& p) {
             return std::map<int, int>(cycle_type(p));
           })
      .def("to_json", [](const Permutation& p) { return permutation_to_json(p).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return permutation_from_json(Json::parse(s)); })
      .def("__mul__", [](const Permutation& p, const Permutation& q) { return p * q; })
      .def("__eq__", [](const Permutation& p, const Permutation& q) { return p == q; })
      .def("__repr__", [](const Permutation& p) { return permutation_to_json(p).dump(); });

  m.def("eval_star_word", [](const std::vector<int>& letters) {
    return eval_word({Alphabet::Star, letters});
  });
  m.def("eval_coxeter_word", [](const std::vector<int>& letters) {
    return eval_word({Alphabet::Coxeter, letters});
  });
  m.def("star_word_of_cycle", [](const std::vector<int>& points) {
    return star_word_of_cycle(Cycle(points)).letters;
  });
  m.def("shift", &shift_m, py::arg("p"), py::arg("m") = 0);
  m.def("n_derivative", &n_derivative);
  m.def("excursion_length", &excursion_length);
  m.def("orbits", &orbits);
  m.def("stirling_sum", [](int n) {
    std::vector<std::string> out;
    for (const auto& c : stirling_sum(n)) out.push_back(c.str());
    return out;
  });

  m.def("character",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b,
           const Permutation& p) {
          return rat_to_string(character(params_from_strings(a, b), p));
        },
        py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("spectral_measure",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
          return measure_to_json(spectral_measure(params_from_strings(a, b))).dump();
        });
  m.def("moment", [](const std::string& measure_json, int k) {
    return rat_to_string(moment(measure_from_json(Json::parse(measure_json)), k));
  });
  m.def("is_markov_params",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
          const MarkovWitness w = is_markov_params(params_from_strings(a, b));
          return py::make_tuple(w.is_markov, rat_to_string(w.t));
        });

  py::class_<ModelSpace>(m, "ModelSpace")
      .def_static("from_params",
                  [](const std::vector<std::string>& a, const std::vector<std::string>& b,
                     int slot_count, int zero_labels) {
                    return ModelSpace::from_params(params_from_strings(a, b), slot_count,
                                                   zero_labels);
                  },
                  py::arg("a"), py::arg("b"), py::arg("slot_count"),
                  py::arg("zero_labels") = 1)
      .def_static("from_params_limit",
                  [](const std::vector<std::string>& a, const std::vector<std::string>& b,
                     int slot_count) {
                    return ModelSpace::from_params_limit(params_from_strings(a, b),
                                                         slot_count);
                  })
      .def("slot_count", &ModelSpace::slot_count)
      .def("label_count", &ModelSpace::label_count);

  py::class_<ModelOperator>(m, "ModelOperator")
      .def_static("identity", &ModelOperator::identity)
      .def("is_zero", &ModelOperator::is_zero)
      .def("max_slot", &ModelOperator::max_slot)
      .def("term_count", [](const ModelOperator& x) { return x.terms().size(); })
      .def("to_json", [](const ModelOperator& x) { return operator_to_json(x).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return operator_from_json(Json::parse(s)); })
      .def("__eq__",
           [](const ModelOperator& x, const ModelOperator& y) { return x == y; });

  m.def("represent", &represent);
  m.def("multiply", &multiply);
  m.def("trace", [](const ModelSpace& s, const ModelOperator& x) {
    return rat_to_string(trace(s, x));
  });
  m.def("conditional_E", &conditional_E);
  m.def("limit_cycle_A", &limit_cycle_A);
  m.def("cesaro_A", &cesaro_A);
  m.def("shift_endo", &shift_endo);
  m.def("transition_R0", &transition_R0);
  m.def("antisymmetrizer_check",
        [](const ModelSpace& space, const std::vector<std::string>& a,
           const std::vector<std::string>& b, const std::string& t, int n) {
          const auto [lhs, rhs] = antisymmetrizer_check(space, params_from_strings(a, b),
                                                        rat_from_string(t), n);
          return py::make_tuple(rat_to_string(lhs), rat_to_string(rhs));
        });

  m.def("suite_names", [] { return suite_names(); });
  m.def("run_suite", [](const std::string& name, const std::string& config_json) {
    const VerificationReport report = run_suite(name, config_from_string(config_json));
    return report_to_json(report).dump(2);
  }, py::arg("name"), py::arg("config_json") = "");
  m.def("character_table", [](const std::string& config_json) {
    const ExperimentConfig config = config_from_string(config_json);
    return character_table_to_json(config, character_table(config)).dump(2);
  }, py::arg("config_json") = "");
}
