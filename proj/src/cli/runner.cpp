#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "reescalc/analysis.hpp"
#include "reescalc/cli.hpp"
#include "reescalc/polynomial.hpp"
#include "reescalc/problem.hpp"

namespace reescalc::cli {
namespace {

using Json = nlohmann::ordered_json;

Json vector_json(const PolyVector& v) {
  if (v.size() == 1) return v[0].to_string();
  Json out = Json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

Json generators_json(const Submodule& u) {
  Json out = Json::array();
  for (const auto& g : sorted_generators(u)) out.push_back(vector_json(g));
  return out;
}

Json optional_json(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json basis_json(const ModuleEmbedding& e, unsigned n) {
  Json out = Json::array();
  for (const auto& m : e.fiber_basis(n).monomials()) out.push_back(monomial_to_string(m, *e.rees_ring()));
  return out;
}

Json closure_json(const ClosureResult& c, const Submodule& input) {
  Json out;
  out["generators"] = generators_json(c.value);
  out["method"] = to_string(c.method);
  out["certified"] = c.certified;
  out["equals_input"] = equal(c.value, input);
  out["length_over_input"] = optional_json(relative_length(c.value, input));
  if (c.method == ClosureMethod::kColonChain || c.method == ClosureMethod::kReductionBased) {
    out["stabilization_index"] = c.stabilization_index;
    out["window"] = c.window;
    out["chain_lengths"] = c.chain_lengths;
    out["power_equality_index"] = c.power_equality_index ? Json(*c.power_equality_index) : Json(nullptr);
  }
  return out;
}

Json buchsbaum_json(const BuchsbaumReport& b) {
  Json out;
  out["verdict"] = b.value();
  out["m_closure_in_m"] = b.m_closure_in_m;
  out["product_clause"] = b.product_clause;
  out["witness"] = b.witness ? Json(b.witness->to_string()) : Json(nullptr);
  out["h1_proxy"] = optional_json(b.h1_proxy);
  Json tail = Json::array();
  for (auto [n, same] : b.tail) tail.push_back({{"n", n}, {"closure_equals_power", same}});
  out["tail"] = tail;
  out["closure_certified"] = b.closure_certified;
  return out;
}

struct Context {
  Problem problem;
  Overrides overrides;
  ChainOptions chain;
  ClosureOptions closure_opts;
  Json certification = Json::object();
  std::vector<std::string> warnings;
  bool unproven = false;
  std::ostringstream summary;

  const ModuleEmbedding& e() const { return problem.embedding; }
  unsigned nmax(unsigned fallback) const {
    if (overrides.nmax) return *overrides.nmax;
    return problem.options.nmax.value_or(fallback);
  }
  unsigned degree() const { return problem.options.degree.value_or(1); }

  ClosureResult closure() {
    auto c = integral_closure_module(e(), problem.candidates, closure_opts);
    certification["closure_method"] = to_string(c.method);
    certification["closure_certified"] = c.certified;
    if (!c.notes.empty()) certification["closure_notes"] = c.notes;
    if (!c.certified) warnings.push_back("integral closure is not certified: it contains M plus verified elements only");
    return c;
  }
};

Json cmd_rr(Context& c) {
  const unsigned n = c.degree();
  if (n == 0) throw PreconditionError("degree must be positive");
  Json out;
  out["degree"] = n;
  const Submodule& input = c.e().power(n, c.chain.deadline).module;
  ClosureResult rr = c.e().rank() == 1 ? ratliff_rush_ideal(input, c.chain) : ratliff_rush_module(c.e(), n, c.chain);
  if (c.e().rank() > 1 || n > 1) out["basis"] = basis_json(c.e(), n);
  out["closure"] = closure_json(rr, input);
  c.certification["rr_method"] = to_string(rr.method);
  c.certification["rr_certified"] = rr.certified;
  if (!rr.notes.empty()) c.certification["rr_notes"] = rr.notes;
  c.summary << "Ratliff-Rush closure of M^" << n << ": " << rr.value.reduced().generators().size()
            << " generators, " << (equal(rr.value, input) ? "closed" : "strictly larger") << "\n";
  return out;
}

Json cmd_iclose(Context& c) {
  auto bar = c.closure();
  Json out = closure_json(bar, c.e().module());
  out["colength"] = optional_json(colength(bar.value));
  c.summary << "integral closure: " << bar.value.reduced().generators().size() << " generators ("
            << to_string(bar.method) << (bar.certified ? ", certified" : ", not certified") << ")\n";
  return out;
}

Json cmd_br(Context& c) {
  const unsigned n_max = c.nmax(static_cast<unsigned>(c.e().rank()) + 6);
  auto b = br_coefficients(c.e(), n_max, c.chain.deadline);
  Json out;
  Json coeffs = Json::array();
  for (const auto& z : b.coeffs) coeffs.push_back(mpz_json(z));
  out["coefficients"] = coeffs;
  out["lengths"] = b.lengths;
  out["fit"] = {{"lo", b.fit_lo}, {"hi", b.fit_hi}, {"validated", b.validated}, {"postulation", b.postulation}};

  auto bar = c.closure();
  auto rr = ratliff_rush_module(c.e(), 1, c.chain);
  if (bar.certified && equal(rr.value, bar.value)) {
    auto k = br_corollary_check(b, c.e(), bar, rr);
    out["corollary"] = {{"holds", k.value()},
                        {"br1_identity", k.br1_identity},
                        {"vanishing", k.vanishing},
                        {"closed_form", k.closed_form},
                        {"sample_degrees", k.sample_degrees},
                        {"closure_colength", k.closure_colength}};
  } else {
    out["corollary"] = nullptr;
    c.warnings.push_back("corollary identities skipped: the Ratliff-Rush closure is not a certified integral closure");
  }
  c.summary << "Buchsbaum-Rim coefficients:";
  for (const auto& z : b.coeffs) c.summary << ' ' << z.get_str();
  c.summary << "\n";
  return out;
}

Json cmd_thm12(Context& c) {
  auto bar = c.closure();
  auto rep = theorem12_check(c.e(), bar, c.nmax(4), c.chain);
  Json out;
  Json table = Json::array();
  for (const auto& row : rep.table)
    table.push_back({{"n", row.n},
                     {"colength", optional_json(row.colength)},
                     {"rr_gap", optional_json(row.rr_gap)},
                     {"ic_gap", optional_json(row.ic_gap)},
                     {"rr_certified", row.rr_certified}});
  out["table"] = table;
  Json conds;
  const std::pair<const char*, const Condition*> named[] = {{"c1", &rep.c1}, {"c2", &rep.c2}, {"c3", &rep.c3}, {"c4", &rep.c4}};
  for (auto [key, cond] : named) {
    conds[key] = {{"verdict", to_string(cond->verdict)}, {"evidence", cond->evidence}};
    if (cond->verdict == Verdict::kUnproven) c.unproven = true;
  }
  out["conditions"] = conds;
  out["first_equal_power"] = rep.first_equal_power ? Json(*rep.first_equal_power) : Json(nullptr);
  out["integrally_closed"] = rep.integrally_closed;
  out["consistent"] = rep.consistent;
  out["notes"] = rep.notes;
  c.summary << "equivalence battery: (1) " << to_string(rep.c1.verdict) << ", (2) " << to_string(rep.c2.verdict)
            << ", (3) " << to_string(rep.c3.verdict) << ", (4) " << to_string(rep.c4.verdict) << "\n";
  return out;
}

ModuleEmbedding sum_of(const Ring& a, const std::vector<Submodule>& ideals) {
  std::vector<PolyVector> cols;
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (const auto& g : ideals[i].generators()) {
      PolyVector v(ideals.size(), Polynomial(a));
      v[i] = g[0];
      cols.push_back(std::move(v));
    }
  return ModuleEmbedding(a, ideals.size(), std::move(cols));
}

Json cmd_buchsbaum(Context& c) {
  auto bar = c.closure();
  auto rep = buchsbaum_check(c.e(), bar);
  Json out = buchsbaum_json(rep);
  out["closure"] = generators_json(bar.value);
  out["notes"] = rep.notes;
  c.summary << "Buchsbaum criterion: " << (rep.value() ? "true" : "false");
  if (rep.witness) c.summary << " (witness " << rep.witness->to_string() << ")";
  c.summary << "\n";

  if (c.e().rank() >= 2) {
    if (auto parts = monomial_summands(c.e())) {
      auto first = ModuleEmbedding::from_ideal((*parts)[0]);
      auto rest = sum_of(c.problem.ring, std::vector<Submodule>(parts->begin() + 1, parts->end()));
      auto ds = direct_sum_buchsbaum(first, rest);
      out["direct_sum"] = {{"value", ds.value},
                           {"consistent", ds.consistent},
                           {"mixed_products", ds.mixed_products},
                           {"first", ds.first.value()},
                           {"second", ds.second.value()}};
      c.summary << "direct sum criterion: " << (ds.value ? "true" : "false") << "\n";
    }
  }
  if (!c.problem.scales.empty()) {
    Json scaled = Json::array();
    for (const auto& i : c.problem.scales) {
      auto s = scaled_buchsbaum_check(c.e(), bar, i);
      scaled.push_back({{"ideal", generators_json(i)}, {"verdict", s.report.value()},
                        {"closure_certified", s.report.closure_certified}});
      c.summary << "scaled by " << i.reduced().to_string() << ": " << (s.report.value() ? "true" : "false") << "\n";
    }
    out["scaled"] = scaled;
  }
  return out;
}

Json cmd_fitting(Context& c) {
  Json out;
  Json list = Json::array();
  for (std::size_t i = 0; i < c.e().rank(); ++i) {
    auto f = fitting_ideal(c.e(), i);
    Json entry{{"i", i}, {"generators", generators_json(f)}};
    entry["ord"] = f.has_nonzero_generator() ? Json(ord(f)) : Json(nullptr);
    entry["colength"] = optional_json(colength(f));
    list.push_back(entry);
  }
  out["fitting"] = list;
  out["mu"] = min_gens(c.e());
  out["colength"] = optional_json(c.e().colength());
  c.summary << "mu(M) = " << min_gens(c.e()) << ", Fitt_0 = " << fitting_ideal(c.e(), 0).reduced().to_string() << "\n";
  return out;
}

Json cmd_param(Context& c) {
  auto p = is_parameter_module(c.e());
  Json out{{"value", p.value},
           {"finite_colength", p.finite_colength},
           {"colength", optional_json(p.colength)},
           {"inside_mf", p.inside_mf},
           {"mu", p.mu},
           {"expected_mu", p.expected_mu}};
  c.summary << "parameter module: " << (p.value ? "yes" : "no") << "\n";
  return out;
}

Json cmd_indec(Context& c) {
  if (c.problem.factors.empty()) throw InputError("'indec' needs a factors section");
  auto rep = indecomposability_check(c.e(), c.problem.factors);
  if (!rep.certified) c.unproven = true;
  c.summary << rep.message << "\n";
  return {{"certified", rep.certified},
          {"message", rep.message},
          {"ord_fitt1", rep.ord_fitt1},
          {"factor_ords", rep.factor_ords}};
}

using Handler = Json (*)(Context&);
const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"rr", cmd_rr},         {"iclose", cmd_iclose}, {"br", cmd_br},       {"thm12", cmd_thm12},
      {"buchsbaum", cmd_buchsbaum}, {"fitting", cmd_fitting}, {"param", cmd_param}, {"indec", cmd_indec}};
  return h;
}

Json error_json(const char* kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

}  // namespace

std::vector<PolyVector> sorted_generators(const Submodule& u) {
  const Submodule red = u.reduced();
  using Key = std::tuple<std::size_t, std::uint32_t, long>;
  std::vector<std::pair<Key, const PolyVector*>> keyed;
  for (const auto& g : red.generators()) {
    std::size_t k = 0;
    while (k < g.size() && g[k].is_zero()) ++k;
    Key key{k, 0, 0};
    if (k < g.size()) {
      const Monomial& m = g[k].leading().mono;
      key = {k, m.total_degree(), -static_cast<long>(m[0])};
    }
    keyed.emplace_back(key, &g);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PolyVector> out;
  for (const auto& kg : keyed) out.push_back(*kg.second);
  return out;
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : handlers()) out.push_back(name);
    out.push_back("fixtures");
    return out;
  }();
  return names;
}

Outcome run(const std::string& command, const std::string& problem_text, const Overrides& overrides) {
  Outcome outcome;
  Json report;
  report["input_digest"] = digest(problem_text);
  report["command"] = command;

  auto handler = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == command; });
  Context ctx;
  ctx.overrides = overrides;
  Json result = nullptr;
  Json error = nullptr;
  reset_work_counters();
  try {
    if (handler == handlers().end()) throw InputError("unknown command '" + command + "'");
    ctx.problem = parse_problem(problem_text, overrides.characteristic);
    const auto& o = ctx.problem.options;
    ctx.chain.lmax = overrides.lmax.value_or(o.lmax.value_or(ctx.chain.lmax));
    ctx.chain.window = overrides.window.value_or(o.window.value_or(ctx.chain.window));
    if (o.deadline_seconds) ctx.chain.deadline = Deadline::after(std::chrono::duration<double>(*o.deadline_seconds));
    ctx.closure_opts.chain = ctx.chain;
    ctx.closure_opts.deadline = ctx.chain.deadline;

    report["options"] = {{"char", ctx.problem.ring->field().characteristic()},
                         {"rank", ctx.e().rank()},
                         {"lmax", ctx.chain.lmax},
                         {"window", ctx.chain.window},
                         {"nmax", overrides.nmax ? Json(*overrides.nmax)
                                                 : (o.nmax ? Json(*o.nmax) : Json(nullptr))},
                         {"degree", ctx.degree()},
                         {"deadline_seconds", o.deadline_seconds ? Json(*o.deadline_seconds) : Json(nullptr)}};
    auto grading = detect_grading(ctx.e());
    ctx.certification["graded"] = grading.graded;
    if (!grading.graded)
      ctx.warnings.push_back("local-global gap possible: the input is not graded for any positive weight");
    result = handler->second(ctx);
    outcome.exit_code = ctx.unproven ? kExitUnproven : kExitOk;
  } catch (const SoundnessAlert& err) {
    error = error_json("soundness-alert", err.what());
    outcome.exit_code = kExitSoundness;
  } catch (const UnstableChain& err) {
    error = error_json("unstable-chain", err.what());
    outcome.exit_code = kExitUnproven;
  } catch (const DeadlineExceeded& err) {
    error = error_json("deadline-exceeded", err.what());
    outcome.exit_code = kExitUnproven;
  } catch (const InputError& err) {
    error = error_json("input", err.what());
    outcome.exit_code = kExitInput;
  } catch (const PreconditionError& err) {
    error = error_json("precondition", err.what());
    outcome.exit_code = kExitInput;
  } catch (const ContextMismatch& err) {
    error = error_json("input", err.what());
    outcome.exit_code = kExitInput;
  }
  if (!report.contains("options")) report["options"] = nullptr;
  report["result"] = result;
  report["certification"] = ctx.certification;
  report["warnings"] = ctx.warnings;
  const auto& w = work_counters();
  report["timings"] = {{"groebner_runs", w.groebner_runs.load()},
                       {"pairs_reduced", w.pairs_reduced.load()},
                       {"reductions_to_zero", w.reductions_to_zero.load()}};
  if (!error.is_null()) report["error"] = error;

  outcome.json = report.dump(2) + "\n";
  outcome.summary = ctx.summary.str();
  for (const auto& warning : ctx.warnings) outcome.summary += "warning: " + warning + "\n";
  if (!error.is_null()) outcome.summary += "error: " + error["message"].get<std::string>() + "\n";
  return outcome;
}

Outcome run_fixtures(const std::string& filter, const Overrides& overrides, bool include_reports) {
  Json list = Json::array();
  int passed = 0, failed = 0;
  bool alert = false;
  std::ostringstream summary;
  for (const auto& f : fixtures()) {
    if (!filter.empty() && f.name.find(filter) == std::string::npos) continue;
    auto o = run(f.command, f.problem, overrides);
    auto report = Json::parse(o.json);
    bool ok = true;
    Json checks = Json::array();
    for (const auto& [pointer, expected_text] : f.expect) {
      Json expected = Json::parse(expected_text);
      Json actual = nullptr;
      Json::json_pointer ptr(pointer);
      if (report.contains(ptr)) actual = report.at(ptr);
      const bool same = actual == expected;
      ok = ok && same;
      checks.push_back({{"pointer", pointer}, {"expected", expected}, {"actual", actual}, {"ok", same}});
    }
    {
      const bool same = o.exit_code == f.exit_code;
      ok = ok && same;
      checks.push_back({{"pointer", "exit_code"}, {"expected", f.exit_code}, {"actual", o.exit_code}, {"ok", same}});
    }
    alert = alert || o.exit_code == kExitSoundness;
    ok ? ++passed : ++failed;
    list.push_back({{"name", f.name},
                    {"command", f.command},
                    {"exit_code", o.exit_code},
                    {"report_digest", digest(o.json)},
                    {"passed", ok},
                    {"checks", checks}});
    if (include_reports) list.back()["report"] = report;
    summary << (ok ? "pass  " : "FAIL  ") << f.name << "\n";
  }
  Json report{{"command", "fixtures"}, {"fixtures", list}, {"passed", passed}, {"failed", failed}};
  Outcome out;
  out.json = report.dump(2) + "\n";
  summary << passed << " passed, " << failed << " failed\n";
  out.summary = summary.str();
  out.exit_code = alert ? kExitSoundness : (failed > 0 ? kExitFixtureFailed : kExitOk);
  return out;
}

}  // namespace reescalc::cli
