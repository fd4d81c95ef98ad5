#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reescalc/analysis.hpp"
#include "reescalc/cli.hpp"
#include "reescalc/polynomial.hpp"

namespace py = pybind11;
using namespace reescalc;

namespace {

using Strings = std::vector<std::string>;
using Columns = std::vector<Strings>;

py::object entry(const PolyVector& v) {
  if (v.size() == 1) return py::str(v[0].to_string());
  py::list out;
  for (const auto& p : v) out.append(p.to_string());
  return out;
}

py::list generators(const Submodule& u) {
  py::list out;
  for (const auto& g : cli::sorted_generators(u)) out.append(entry(g));
  return out;
}

py::object length(const std::optional<std::uint64_t>& v) { return v ? py::object(py::int_(*v)) : py::object(py::none()); }

py::int_ big(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

Ring make_ring(const Strings& vars, std::uint32_t characteristic) {
  if (vars.size() != 2) throw InputError("the base ring has exactly two variables");
  return RingContext::make(Field(characteristic), vars);
}

PolyVector parse_column(const Strings& c, const Ring& a) {
  PolyVector v;
  for (const auto& s : c) v.push_back(parse_polynomial(s, a));
  return v;
}

ChainOptions chain_options(unsigned lmax, unsigned window) {
  ChainOptions o;
  o.lmax = lmax;
  o.window = window;
  return o;
}

// M ⊆ A^r with A = k[X, Y], built from generator columns.
class Module {
 public:
  Module(const Columns& columns, const Strings& vars, std::uint32_t characteristic)
      : ring_(make_ring(vars, characteristic)) {
    if (columns.empty()) throw InputError("no generators");
    std::vector<PolyVector> cols;
    for (const auto& c : columns) {
      if (c.size() != columns.front().size()) throw InputError("columns have different lengths");
      cols.push_back(parse_column(c, ring_));
    }
    e_ = ModuleEmbedding(ring_, columns.front().size(), std::move(cols));
  }

  static Module from_rows(const Columns& rows, const Strings& vars, std::uint32_t characteristic) {
    if (rows.empty()) throw InputError("no rows");
    Columns cols(rows.front().size());
    for (const auto& r : rows) {
      if (r.size() != cols.size()) throw InputError("rows have different lengths");
      for (std::size_t j = 0; j < r.size(); ++j) cols[j].push_back(r[j]);
    }
    return Module(cols, vars, characteristic);
  }

  std::size_t rank() const { return e_.rank(); }
  py::list gens() const { return generators(e_.module()); }
  py::object colength() const { return length(e_.colength()); }
  std::size_t mu() const { return min_gens(e_); }
  bool is_graded() const { return detect_grading(e_).graded; }

  py::list power(unsigned n) const { return generators(e_.power(n).module); }

  py::dict is_parameter() const {
    auto p = is_parameter_module(e_);
    py::dict d;
    d["value"] = p.value;
    d["colength"] = length(p.colength);
    d["mu"] = p.mu;
    d["expected_mu"] = p.expected_mu;
    return d;
  }

  py::dict ratliff_rush(unsigned n, unsigned lmax, unsigned window) const {
    auto rr = ratliff_rush_module(e_, n, chain_options(lmax, window));
    const auto& input = e_.power(n).module;
    py::dict d;
    d["generators"] = generators(rr.value);
    d["equals_input"] = equal(rr.value, input);
    d["length_over_input"] = length(relative_length(rr.value, input));
    d["stabilization_index"] = rr.stabilization_index;
    d["certified"] = rr.certified;
    return d;
  }

  py::dict integral_closure(const Columns& candidates) const {
    auto c = closure(candidates);
    py::dict d;
    d["generators"] = generators(c.value);
    d["method"] = to_string(c.method);
    d["certified"] = c.certified;
    d["length_over_input"] = length(relative_length(c.value, e_.module()));
    return d;
  }

  py::tuple is_integral(const Strings& element, unsigned s_max) const {
    auto r = is_integral_element(e_, parse_column(element, ring_), s_max);
    return py::make_tuple(r.yes, r.s);
  }

  py::dict buchsbaum(const Columns& candidates) const {
    auto b = buchsbaum_check(e_, closure(candidates));
    py::dict d;
    d["verdict"] = b.value();
    d["m_closure_in_m"] = b.m_closure_in_m;
    d["product_clause"] = b.product_clause;
    d["witness"] = b.witness ? py::object(py::str(b.witness->to_string())) : py::object(py::none());
    d["closure_certified"] = b.closure_certified;
    return d;
  }

  py::dict theorem12(unsigned n_max, const Columns& candidates) const {
    auto t = theorem12_check(e_, closure(candidates), n_max);
    py::dict d;
    py::list table;
    for (const auto& row : t.table) {
      py::dict r;
      r["n"] = row.n;
      r["colength"] = length(row.colength);
      r["rr_gap"] = length(row.rr_gap);
      r["ic_gap"] = length(row.ic_gap);
      table.append(r);
    }
    d["table"] = table;
    d["conditions"] = py::make_tuple(to_string(t.c1.verdict), to_string(t.c2.verdict), to_string(t.c3.verdict),
                                     to_string(t.c4.verdict));
    d["first_equal_power"] = t.first_equal_power ? py::object(py::int_(*t.first_equal_power)) : py::object(py::none());
    d["integrally_closed"] = t.integrally_closed;
    return d;
  }

  py::list br_coefficients(std::optional<unsigned> n_max) const {
    auto b = reescalc::br_coefficients(e_, n_max.value_or(static_cast<unsigned>(e_.rank()) + 6));
    py::list out;
    for (const auto& z : b.coeffs) out.append(big(z));
    return out;
  }

  py::list fitting(std::size_t i) const { return generators(fitting_ideal(e_, i)); }

  std::string repr() const { return "Module(rank=" + std::to_string(rank()) + ", " + e_.module().to_string() + ")"; }

 private:
  Ring ring_;
  ModuleEmbedding e_;

  ClosureResult closure(const Columns& candidates) const {
    std::vector<PolyVector> cs;
    for (const auto& c : candidates) cs.push_back(parse_column(c, ring_));
    return integral_closure_module(e_, cs);
  }
};

py::list ratliff_rush_ideal_py(const Strings& gens, const Strings& vars, std::uint32_t characteristic, unsigned lmax,
                               unsigned window) {
  auto a = make_ring(vars, characteristic);
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, a));
  return generators(ratliff_rush_ideal(Submodule::ideal(a, ps), chain_options(lmax, window)).value);
}

py::list newton_closure_py(const Strings& gens, const Strings& vars) {
  auto a = make_ring(vars, 0);
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, a));
  return generators(integral_closure_monomial(Submodule::ideal(a, ps)).value);
}

py::tuple run_py(const std::string& command, const std::string& text, std::optional<unsigned> lmax,
                 std::optional<unsigned> window, std::optional<unsigned> nmax, std::optional<std::uint32_t> ch) {
  cli::Overrides o;
  o.lmax = lmax;
  o.window = window;
  o.nmax = nmax;
  o.characteristic = ch;
  cli::Outcome out;
  {
    py::gil_scoped_release release;
    out = cli::run(command, text, o);
  }
  return py::make_tuple(out.exit_code, out.json);
}

py::tuple run_fixtures_py(const std::string& filter) {
  cli::Outcome out;
  {
    py::gil_scoped_release release;
    out = cli::run_fixtures(filter);
  }
  return py::make_tuple(out.exit_code, out.json);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact closures and Rees-algebra data for modules over k[X, Y]";

  // Translators run newest first, so the base class goes first.
  auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SoundnessAlert>(m, "SoundnessAlert", base.ptr());
  py::register_exception<UnstableChain>(m, "UnstableChain", base.ptr());

  const Strings xy{"X", "Y"};
  py::class_<Module>(m, "Module")
      .def(py::init<const Columns&, const Strings&, std::uint32_t>(), py::arg("columns"), py::arg("vars") = xy,
           py::arg("char") = 0)
      .def_static("from_rows", &Module::from_rows, py::arg("rows"), py::arg("vars") = xy, py::arg("char") = 0)
      .def_property_readonly("rank", &Module::rank)
      .def_property_readonly("generators", &Module::gens)
      .def("colength", &Module::colength)
      .def("mu", &Module::mu)
      .def("is_graded", &Module::is_graded)
      .def("power", &Module::power, py::arg("n"))
      .def("is_parameter", &Module::is_parameter)
      .def("ratliff_rush", &Module::ratliff_rush, py::arg("n") = 1, py::arg("lmax") = 10, py::arg("window") = 2)
      .def("integral_closure", &Module::integral_closure, py::arg("candidates") = Columns{})
      .def("is_integral", &Module::is_integral, py::arg("element"), py::arg("s_max") = 3)
      .def("buchsbaum", &Module::buchsbaum, py::arg("candidates") = Columns{})
      .def("theorem12", &Module::theorem12, py::arg("n_max") = 4, py::arg("candidates") = Columns{})
      .def("br_coefficients", &Module::br_coefficients, py::arg("n_max") = py::none())
      .def("fitting_ideal", &Module::fitting, py::arg("i"))
      .def("__repr__", &Module::repr);

  m.def("ratliff_rush_ideal", &ratliff_rush_ideal_py, py::arg("generators"), py::arg("vars") = xy,
        py::arg("char") = 0, py::arg("lmax") = 10, py::arg("window") = 2);
  m.def("newton_closure", &newton_closure_py, py::arg("generators"), py::arg("vars") = xy);
  m.def("run", &run_py, py::arg("command"), py::arg("text"), py::arg("lmax") = py::none(),
        py::arg("window") = py::none(), py::arg("nmax") = py::none(), py::arg("char") = py::none());
  m.def("run_fixtures", &run_fixtures_py, py::arg("filter") = "");
  m.def("commands", &cli::commands);
  m.def("fixture_names", [] {
    Strings out;
    for (const auto& f : cli::fixtures()) out.push_back(f.name);
    return out;
  });
}
