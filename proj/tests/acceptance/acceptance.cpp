// One line per acceptance criterion: `criterion N: PASS|FAIL`, followed by the
// individual clauses. `acceptance N` runs a single criterion; the exit status
// is 0 on pass, 1 on failure and 3 when a soundness alert fired.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "reescalc/analysis.hpp"
#include "reescalc/cli.hpp"
#include "unit/fixtures.hpp"
#include "unit/generators.hpp"
#include "unit/oracle.hpp"

using namespace reescalc;
using namespace reescalc::testing;

namespace {

struct Clause {
  std::string what;
  bool ok = true;
  std::string detail;
  bool info = false;
};

struct Criterion {
  int id;
  std::string title;
  double bound_seconds;
  std::function<void(std::vector<Clause>&)> body;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check(std::vector<Clause>& out, std::string what, bool ok, std::string detail = {}) {
  out.push_back({std::move(what), ok, std::move(detail), false});
}
void info(std::vector<Clause>& out, std::string what, std::string detail = {}) {
  out.push_back({std::move(what), true, std::move(detail), true});
}

// Runs `f` and records whether it finished within `bound` seconds.
template <class F>
void timed(std::vector<Clause>& out, const std::string& what, double bound, F&& f) {
  auto t0 = Clock::now();
  f();
  const double s = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s (bound %.0f s)", s, bound);
  check(out, what + " runtime", s < bound, buf);
}

std::string show(const Submodule& u) {
  std::string out;
  for (const auto& g : cli::sorted_generators(u)) out += (out.empty() ? "" : ", ") + g[0].to_string();
  return "(" + out + ")";
}

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "infinite"; }

PolyVector vec(const Ring& a, std::initializer_list<const char*> entries) {
  PolyVector v;
  for (const char* e : entries) v.push_back(P(e, a));
  return v;
}

// 1. Ratliff-Rush closures of two monomial ideals.
void criterion1(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "(X^4, X^3Y, XY^3, Y^4)", 10, [&] {
    auto r = ratliff_rush_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}));
    check(out, "closure of (X^4, X^3Y, XY^3, Y^4) equals m^4", equal(r.value, Submodule::maximal_ideal_power(a, 4)),
          show(r.value));
  });
  timed(out, "(X^5, X^2Y^2, Y^5)", 10, [&] {
    auto j = ideal(a, {"X^5", "X^2*Y^2", "Y^5"});
    auto r = ratliff_rush_ideal(j);
    check(out, "(X^5, X^2Y^2, Y^5) is its own closure", equal(r.value, j), show(r.value));
  });
}

// 2. The parameter module <(X,0), (Y,X), (0,Y)>.
void criterion2(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "parameter module", 10, [&] {
    auto e = parameter_module(a);
    auto p = is_parameter_module(e);
    check(out, "is a parameter module", p.value,
          "mu = " + str(p.mu) + ", expected " + str(p.expected_mu) + ", colength " + str(p.colength));
    auto rr = ratliff_rush_module(e, 1);
    check(out, "Ratliff-Rush closed", equal(rr.value, e.module()));
    auto oracle = colength_by_linear_algebra(e.module(), {0, 0}, 12);
    check(out, "colength 3, matching the linear-algebra count", e.colength() == 3u && oracle == 3u,
          "engine " + str(e.colength()) + ", oracle " + str(oracle));
  });
}

// 3. I + I with I = (X^4, X^3Y^2, XY^6, Y^8).
void criterion3(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "I + I", 60, [&] {
    auto e = equal_sum(a);
    auto bar = integral_closure_module(e);
    auto t = theorem12_check(e, bar, 4);
    const std::pair<const char*, const Condition*> conds[] = {{"(1)", &t.c1}, {"(2)", &t.c2}, {"(3)", &t.c3}, {"(4)", &t.c4}};
    for (auto [name, c] : conds)
      check(out, std::string("equivalence condition ") + name + " true", c->verdict == Verdict::kTrue, c->evidence);

    auto b = buchsbaum_check(e, bar);
    check(out, "Buchsbaum criterion false", !b.value());
    check(out, "witness reported", b.witness.has_value(), b.witness ? b.witness->to_string() : "none");
    if (!b.witness) return;
    const Polynomial& w = *b.witness;
    auto v = e.to_graded(w, 1);
    auto m_bar = ideal_times(Submodule::maximal_ideal_power(a, 1), bar.value);
    check(out, "witness lies in m*closure and outside M", is_member(v, m_bar) && !is_member(v, e.module()));
    // Independent check: a monomial, divisible by X or Y times a closure generator, by no generator of I.
    const Polynomial& base = v[0].is_zero() ? v[1] : v[0];
    bool monomial = w.is_monomial() && base.is_monomial();
    const Monomial& wm = base.leading().mono;
    auto divides = [&](const std::string& g, unsigned dx, unsigned dy) {
      const Monomial gm = P(g, a).leading().mono;
      return gm[0] + dx <= wm[0] && gm[1] + dy <= wm[1];
    };
    bool in_i = false, in_m_bar = false;
    for (const auto& g : kEqual) in_i = in_i || divides(g, 0, 0);
    for (const auto& g : kEqualBar) in_m_bar = in_m_bar || divides(g, 1, 0) || divides(g, 0, 1);
    check(out, "witness confirmed by monomial division", monomial && in_m_bar && !in_i);
  });
}

// 4. I1 + I2.
void criterion4(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "I1 + I2", 120, [&] {
    auto e = distinct_sum(a);
    auto bar = integral_closure_module(e);
    auto b = buchsbaum_check(e, bar);
    check(out, "m*closure inside M", b.m_closure_in_m);
    check(out, "M*closure = M^2", b.product_clause);
    auto ds = direct_sum_buchsbaum(ideal_sum(a, {kFirst}), ideal_sum(a, {kSecond}));
    check(out, "direct-sum criterion true and consistent", ds.value && ds.consistent);
    for (unsigned n = 2; n <= 4; ++n) {
      auto gap = relative_length(integral_closure_power(e, bar, n).value, e.power(n).module);
      check(out, "closure of M^" + std::to_string(n) + " equals M^" + std::to_string(n), gap == 0u,
            "length " + str(gap));
    }
    info(out, "closure over M has length", str(relative_length(bar.value, e.module())));
  });
}

// 5. The indecomposable rank-two module with seven generators.
void criterion5(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "rank-two corpus module", 300, [&] {
    auto e = seven_gen(a);
    const auto& s = e.rees_ring();
    auto x = P("X*Y^4*t1", s);
    auto c1 = P("-Y*(X*Y^3*t1 + X^3*t2)", s);
    auto printed = P("(X^3*t1)*(Y^5*t2)", s);
    auto residual = x * x + c1 * x + printed;
    check(out, "displayed integral equation holds", check_integral_equation(x, {c1, printed}),
          "left side evaluates to " + residual.to_string());
    auto corrected = P("(X^3*t1)*(X*Y^5*t2)", s);
    info(out, "with constant term (X^3 t1)(X Y^5 t2) the equation holds",
         std::string(check_integral_equation(x, {c1, corrected}) ? "yes" : "no") + ", coefficients in powers of MS: " +
             (coefficients_in_powers(e, {c1, corrected}) ? "yes" : "no"));

    auto candidate = vec(a, {"X*Y^4", "0"});
    auto integral = is_integral_element(e, candidate, 3);
    check(out, "(XY^4, 0) is integral with s <= 3", integral.yes && integral.s <= 3, "s = " + std::to_string(integral.s));

    auto bar = integral_closure_module(e, {candidate});
    Submodule expected = sum(e.module(), Submodule(a, 2, {candidate}));
    check(out, "closure with that candidate is M + <(XY^4, 0)>", equal(bar.value, expected),
          std::string("method ") + to_string(bar.method) + (bar.certified ? ", certified" : ", not certified"));
    auto b = buchsbaum_check(e, bar);
    check(out, "Buchsbaum criterion true on both clauses", b.m_closure_in_m && b.product_clause);
    check(out, "mu(M) = 7", min_gens(e) == 7, str(min_gens(e)));

    auto f1 = fitting_ideal(e, 1);
    check(out, "Fitt_1 = (X^3, X^2Y^2, XY^3, Y^5)", equal(f1, ideal(a, {"X^3", "X^2*Y^2", "X*Y^3", "Y^5"})),
          show(f1));
    auto n58 = integral_closure_monomial(ideal(a, {"X^5", "Y^8"})).value;
    auto f0 = fitting_ideal(e, 0);
    check(out, "Fitt_0 = (X, Y^2) * closure of (X^5, Y^8)", equal(f0, ideal_times(ideal(a, {"X", "Y^2"}), n58)),
          show(f0));
    auto ind = indecomposability_check(e, {ideal(a, {"X", "Y^2"}), n58});
    check(out, "indecomposability certified", ind.certified, ind.message);
  });
}

// 6. Buchsbaum-Rim corollary on I1 + I2.
void criterion6(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "Buchsbaum-Rim corollary", 300, [&] {
    auto e = distinct_sum(a);
    auto bar = integral_closure_module(e);
    auto rr = ratliff_rush_module(e, 1);
    auto b = br_coefficients(e, 8);
    std::string coeffs;
    for (const auto& z : b.coeffs) coeffs += (coeffs.empty() ? "" : ", ") + z.get_str();
    info(out, "coefficients", coeffs + " (postulation " + std::to_string(b.postulation) + ")");
    auto k = br_corollary_check(b, e, bar, rr);
    check(out, "br_1 = br_0 - l(F/closure)", k.br1_identity, "l(F/closure) = " + str(k.closure_colength));
    check(out, "br_2 = br_3 = 0", k.vanishing);
    std::string degs;
    for (unsigned d : k.sample_degrees) degs += (degs.empty() ? "n = " : ", ") + std::to_string(d);
    check(out, "closed form matches measured colengths at 3 degrees", k.closed_form && k.sample_degrees.size() == 3, degs);
  });
}

// 7. Property suites on random monomial data.
void criterion7(std::vector<Clause>& out) {
  auto a = ring_xy();
  constexpr int kInstances = 100;
  auto suite = [&](const std::string& name, std::uint32_t seed, auto&& one) {
    std::mt19937 rng(seed);
    int failures = 0;
    std::string first;
    for (int k = 0; k < kInstances; ++k) {
      std::string why = one(rng);
      if (!why.empty() && failures++ == 0) first = "instance " + std::to_string(k) + ": " + why;
    }
    check(out, name + " (" + std::to_string(kInstances) + " instances)", failures == 0,
          failures == 0 ? "0 failures" : std::to_string(failures) + " failures; " + first);
  };

  timed(out, "property suites", 900, [&] {
    suite("sandwich M^n inside its Ratliff-Rush closure inside its integral closure, n <= 3", 11, [&](std::mt19937& rng) {
      auto e = random_monomial_module(rng, a);
      auto bar = integral_closure_module(e);
      for (unsigned n = 1; n <= 3; ++n) {
        auto rr = ratliff_rush_module(e, n).value;
        if (!contains(rr, e.power(n).module) || !contains(integral_closure_power(e, bar, n).value, rr))
          return std::string("n = ") + std::to_string(n);
      }
      return std::string();
    });
    suite("Ratliff-Rush idempotence", 12, [&](std::mt19937& rng) {
      auto e = random_monomial_module(rng, a);
      auto once = ratliff_rush_module(e, 1).value;
      return equal(ratliff_rush_module(ModuleEmbedding::from_submodule(once), 1).value, once) ? std::string()
                                                                                             : std::string("differs");
    });
    suite("eventual equality with the power for some n <= 6, then stays", 13, [&](std::mt19937& rng) {
      auto e = random_monomial_module(rng, a);
      for (unsigned n = 1; n <= 6; ++n) {
        if (!equal(ratliff_rush_module(e, n).value, e.power(n).module)) continue;
        return equal(ratliff_rush_module(e, n + 1).value, e.power(n + 1).module) ? std::string()
                                                                                 : "breaks at " + std::to_string(n + 1);
      }
      return std::string("no n <= 6");
    });
    suite("equal powers persist", 14, [&](std::mt19937& rng) {
      auto e = random_monomial_module(rng, a);
      auto n = ModuleEmbedding::from_submodule(ratliff_rush_module(e, 1).value);
      unsigned l = 1;
      while (l <= 10 && !equal(n.power(l).module, e.power(l).module)) ++l;
      if (l > 10) return std::string("no equal power up to 10");
      for (unsigned m = l + 1; m <= l + 2; ++m)
        if (!equal(n.power(m).module, e.power(m).module)) return "differs at " + std::to_string(m);
      return std::string();
    });
    suite("closure of M^n equals (closure of M)^n, n <= 4", 15, [&](std::mt19937& rng) {
      auto e = random_monomial_module(rng, a);
      auto bar = integral_closure_module(e);
      for (unsigned n = 1; n <= 4; ++n)
        if (!equal(integral_closure_power(e, bar, n).value, power_of(bar.value, n))) return "n = " + std::to_string(n);
      return std::string();
    });
    suite("colon adjunction against a monomial oracle", 16, [&](std::mt19937& rng) {
      auto i = random_primary_monomial_ideal(rng, a, 8);
      auto j = random_monomial_ideal(rng, a, 1 + static_cast<int>(rng() % 3), 8);
      auto q = colon(i, j);
      if (!contains(i, ideal_times(q, j)) || !contains(q, i)) return std::string("adjunction");
      for (int x = 0; x <= 9; ++x)
        for (int y = 0; y <= 9; ++y) {
          auto m = P("X^" + std::to_string(x) + "*Y^" + std::to_string(y), a);
          bool lands = true;
          for (const auto& g : j.generators()) lands = lands && is_member({m * g[0]}, i);
          if (is_member({m}, q) != lands) return "X^" + std::to_string(x) + "Y^" + std::to_string(y);
        }
      return std::string();
    });
    suite("reduced basis independent of generator order", 17, [&](std::mt19937& rng) {
      std::vector<Polynomial> gens;
      for (int g = 0; g < 3; ++g) gens.push_back(random_poly(rng, a, 3, 5));
      gens.push_back(gens[0] * gens[1] + gens[2]);
      auto ref = Submodule::ideal(a, gens).reduced().to_string();
      for (int s = 0; s < 3; ++s) {
        std::shuffle(gens.begin(), gens.end(), rng);
        if (Submodule::ideal(a, gens).reduced().to_string() != ref) return std::string("differs");
      }
      return std::string();
    });
  });
}

// 8. Scaling by integrally closed ideals keeps the criterion.
void criterion8(std::vector<Clause>& out) {
  auto a = ring_xy();
  timed(out, "scaled criterion", 120, [&] {
    auto e = distinct_sum(a);
    auto bar = integral_closure_module(e);
    for (unsigned k = 1; k <= 2; ++k) {
      auto s = scaled_buchsbaum_check(e, bar, Submodule::maximal_ideal_power(a, k));
      check(out, "criterion holds for m^" + std::to_string(k) + "M", s.report.value(),
            s.report.closure_certified ? "closure certified" : "closure not certified");
    }
    for (const auto& f : cli::fixtures()) {
      if (f.name != "sum_distinct_buchsbaum") continue;
      auto o = cli::run(f.command, f.problem);
      check(out, "CLI exit status 0 on the scaled fixture", o.exit_code == cli::kExitOk,
            "exit " + std::to_string(o.exit_code));
    }
  });
}

// 9. Byte-identical reports.
void criterion9(std::vector<Clause>& out) {
  int same = 0, total = 0;
  for (const auto& f : cli::fixtures()) {
    ++total;
    auto first = cli::run(f.command, f.problem);
    auto second = cli::run(f.command, f.problem);
    if (first.json == second.json && first.exit_code == second.exit_code) {
      ++same;
    } else {
      check(out, f.name + " reports differ", false);
    }
  }
  check(out, "every fixture report is byte-identical across two runs", same == total,
        std::to_string(same) + " of " + std::to_string(total));
  auto c1 = cli::run_fixtures(), c2 = cli::run_fixtures();
  check(out, "corpus report is byte-identical", c1.json == c2.json);
  auto j = nlohmann::json::parse(c1.json);
  check(out, "corpus expectations hold", j["failed"] == 0,
        std::to_string(j["passed"].get<int>()) + " passed, " + std::to_string(j["failed"].get<int>()) + " failed");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "Ratliff-Rush closures of ideals", 20, criterion1},
      {2, "parameter module", 10, criterion2},
      {3, "equivalence battery and failing criterion on I + I", 60, criterion3},
      {4, "Buchsbaum criterion on I1 + I2", 120, criterion4},
      {5, "rank-two indecomposable module", 300, criterion5},
      {6, "Buchsbaum-Rim corollary", 300, criterion6},
      {7, "property suites", 900, criterion7},
      {8, "scaled criterion and soundness alarms", 120, criterion8},
      {9, "determinism", 600, criterion9},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all_ok = true, alert = false;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    std::vector<Clause> clauses;
    auto t0 = Clock::now();
    try {
      c.body(clauses);
    } catch (const SoundnessAlert& e) {
      alert = true;
      check(clauses, "soundness alert", false, e.what());
    } catch (const std::exception& e) {
      check(clauses, "unexpected exception", false, e.what());
    }
    const double s = seconds_since(t0);
    bool ok = s < c.bound_seconds;
    for (const auto& cl : clauses) ok = ok && cl.ok;
    all_ok = all_ok && ok;
    std::printf("criterion %d: %s  %s  (%.2f s, bound %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), s,
                c.bound_seconds);
    for (const auto& cl : clauses)
      std::printf("    %-4s  %s%s%s\n", cl.info ? "info" : (cl.ok ? "ok" : "FAIL"), cl.what.c_str(),
                  cl.detail.empty() ? "" : ": ", cl.detail.c_str());
    std::fflush(stdout);
  }
  if (alert) return 3;
  return all_ok ? 0 : 1;
}
