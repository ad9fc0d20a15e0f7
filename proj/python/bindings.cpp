#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "fdqubo/fzn.hpp"
#include "fdqubo/io.hpp"
#include "fdqubo/pipeline.hpp"
#include "fdqubo/roundtrip.hpp"
#include "fdqubo/solve.hpp"

namespace py = pybind11;
using namespace fdqubo;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.str());
}

Rational from_python(const py::handle& value) {
  return Rational::parse(py::str(value).cast<std::string>());
}

QipModel load(const std::string& text) {
  auto lowered = fzn::lower_to_qip(fzn::parse_model(text));
  if (!lowered) {
    throw lowered.inconsistent();
  }
  return std::move(lowered).value();
}

CompileOptions make_options(const std::string& encoding, std::uint64_t onehot_threshold,
                            const std::string& binary_rule, const std::optional<py::object>& penalty,
                            bool keep_defined) {
  CompileOptions o;
  if (encoding == "onehot") {
    o.encoding.strategy = EncodingStrategy::onehot;
  } else if (encoding == "binary") {
    o.encoding.strategy = EncodingStrategy::binary;
  } else if (encoding != "auto") {
    throw std::invalid_argument("encoding must be 'auto', 'onehot' or 'binary'");
  }
  if (binary_rule == "recursive") {
    o.encoding.binary_rule = BinaryRule::recursive;
  } else if (binary_rule != "coefficient") {
    throw std::invalid_argument("binary_rule must be 'coefficient' or 'recursive'");
  }
  o.encoding.onehot_threshold = onehot_threshold;
  o.encoding.eliminate_defined = !keep_defined;
  if (penalty && !penalty->is_none()) {
    o.penalty = from_python(*penalty);
    if (*o.penalty <= 0) {
      throw std::invalid_argument("penalty must be positive");
    }
  }
  return o;
}

Bits to_bits(const std::vector<int>& values) {
  Bits b;
  b.reserve(values.size());
  for (int v : values) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("bits must be 0 or 1");
    }
    b.push_back(static_cast<std::uint8_t>(v));
  }
  return b;
}

std::vector<int> from_bits(const Bits& bits) { return {bits.begin(), bits.end()}; }

py::dict named_values(const Sidecar& s, const Bits& bits) {
  const Assignment values = decode(s, bits);
  py::dict out;
  for (VarId v : s.outputs) {
    out[py::str(s.variables.at(v).name)] = values.at(v);
  }
  return out;
}

py::list stats_list(const std::vector<StageStats>& stats) {
  py::list out;
  for (const auto& s : stats) {
    py::dict d;
    d["stage"] = s.stage;
    d["variables"] = s.variables;
    d["linear"] = s.linear;
    d["products"] = s.products;
    d["substitutions"] = s.substitutions;
    out.append(d);
  }
  return out;
}

py::object optional_fraction(const std::optional<Rational>& r) {
  return r ? to_fraction(*r) : py::none();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "FlatZinc to QUBO compiler";

  static py::exception<Inconsistent> inconsistent_error(m, "InconsistentError", PyExc_ValueError);
  static py::exception<GuardExceeded> guard_error(m, "GuardExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const Inconsistent& e) {
      py::set_error(inconsistent_error, e.reason.c_str());
    } catch (const GuardExceeded& e) {
      py::set_error(guard_error, e.what());
    } catch (const fzn::ParseError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const FormatError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<Qubo>(m, "Qubo")
      .def_static("from_text", &read_qubo, py::arg("text"))
      .def("to_text", &write_qubo)
      .def_readonly("n", &Qubo::n)
      .def_property_readonly("offset", [](const Qubo& q) { return to_fraction(q.offset); })
      .def_property_readonly("scale", [](const Qubo& q) { return to_fraction(q.scale); })
      .def_property_readonly("entries",
                             [](const Qubo& q) {
                               py::dict d;
                               for (const auto& [key, w] : q.entries) {
                                 d[py::make_tuple(key.first, key.second)] = to_fraction(w);
                               }
                               return d;
                             })
      .def("energy",
           [](const Qubo& q, const std::vector<int>& bits) {
             return to_fraction(energy(q, to_bits(bits)));
           },
           py::arg("bits"))
      .def("__repr__", [](const Qubo& q) {
        return "<Qubo n=" + std::to_string(q.n) + " entries=" + std::to_string(q.entries.size()) +
               ">";
      });

  py::class_<Sidecar>(m, "Sidecar")
      .def_static("from_json", &read_sidecar, py::arg("text"))
      .def("to_json", &write_sidecar)
      .def_property_readonly("penalty", [](const Sidecar& s) { return to_fraction(s.penalty); })
      .def_property_readonly("outputs",
                             [](const Sidecar& s) {
                               std::vector<std::string> names;
                               for (VarId v : s.outputs) {
                                 names.push_back(s.variables.at(v).name);
                               }
                               return names;
                             })
      .def("decode",
           [](const Sidecar& s, const std::vector<int>& bits) {
             return named_values(s, to_bits(bits));
           },
           py::arg("bits"));

  py::class_<Compiled>(m, "Compiled")
      .def_readonly("qubo", &Compiled::qubo)
      .def_readonly("sidecar", &Compiled::sidecar)
      .def_property_readonly("stats", [](const Compiled& c) { return stats_list(c.stats); })
      .def_property_readonly("density", [](const Compiled& c) { return matrix_density(c.qubo); });

  m.def(
      "compile",
      [](const std::string& text, const std::string& encoding, std::uint64_t onehot_threshold,
         const std::string& binary_rule, std::optional<py::object> penalty, bool keep_defined) {
        auto c = fdqubo::compile(
            load(text), make_options(encoding, onehot_threshold, binary_rule, penalty, keep_defined));
        if (!c) {
          throw c.inconsistent();
        }
        return std::move(c).value();
      },
      py::arg("fzn"), py::kw_only(), py::arg("encoding") = "auto", py::arg("onehot_threshold") = 4,
      py::arg("binary_rule") = "coefficient", py::arg("penalty") = py::none(),
      py::arg("keep_defined") = false,
      "Compile FlatZinc text; raises InconsistentError when infeasibility is proved.");

  m.def(
      "solve_exhaustive",
      [](const Qubo& q) {
        auto r = exhaustive_qubo(q);
        return py::make_tuple(to_fraction(r.energy), from_bits(r.argmin), r.argmin_count);
      },
      py::arg("qubo"), "Return (min energy, first argmin, number of argmins).");

  m.def(
      "anneal",
      [](const Qubo& q, std::uint64_t seed, std::uint32_t sweeps, std::uint32_t restarts) {
        AnnealParams p;
        p.seed = seed;
        p.sweeps = sweeps;
        p.restarts = restarts;
        auto r = anneal_qubo(q, p);
        return py::make_tuple(to_fraction(r.energy), from_bits(r.bits));
      },
      py::arg("qubo"), py::kw_only(), py::arg("seed") = 0, py::arg("sweeps") = 2000,
      py::arg("restarts") = 8, "Return (energy, bits) of the best state found.");

  m.def(
      "roundtrip",
      [](const std::string& text, const std::string& encoding) {
        py::dict d;
        RoundtripReport r;
        try {
          r = roundtrip_check(load(text), make_options(encoding, 4, "coefficient", {}, false));
        } catch (const Inconsistent& e) {
          r.inconsistent = e.reason;
          r.pass = true;
        }
        d["pass"] = r.pass;
        d["oracle_feasible"] = r.oracle_feasible;
        d["oracle_objective"] = optional_fraction(r.oracle_objective);
        d["inconsistent"] = r.inconsistent ? py::cast(*r.inconsistent) : py::none();
        d["bits"] = r.bits;
        d["min_energy"] = optional_fraction(r.min_energy);
        d["argmin_count"] = r.argmin_count;
        d["decoded_feasible"] = r.decoded_feasible;
        d["decoded_objective"] = optional_fraction(r.decoded_objective);
        d["objective_match"] = r.objective_match;
        d["stages"] = stats_list(r.stages);
        return d;
      },
      py::arg("fzn"), py::kw_only(), py::arg("encoding") = "auto",
      "Compile, solve exhaustively and compare against brute force on the source model.");

  m.def("check_qubo", [](const std::string& text) { return check_qubo(text); }, py::arg("text"),
        "Diagnostics for a .qubo text; empty when it is valid.");
}
