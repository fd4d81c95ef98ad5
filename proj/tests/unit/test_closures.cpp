#include <random>

#include "doctest.h"
#include "reescalc/closures.hpp"
#include "unit/fixtures.hpp"
#include "unit/generators.hpp"
#include "unit/oracle.hpp"

using namespace reescalc;
using namespace reescalc::testing;

namespace {

PolyVector vec(const Ring& a, std::initializer_list<const char*> entries) {
  PolyVector v;
  for (const char* e : entries) v.push_back(P(e, a));
  return v;
}

}  // namespace

TEST_CASE("Ratliff-Rush closure of ideals") {
  auto a = ring_xy();
  auto i = ratliff_rush_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}));
  CHECK(equal(i.value, Submodule::maximal_ideal_power(a, 4)));
  CHECK(i.method == ClosureMethod::kColonChain);
  CHECK_FALSE(i.certified);
  CHECK(i.window == 2);
  REQUIRE(i.power_equality_index.has_value());
  CHECK(*i.power_equality_index <= 2);

  auto j = ideal(a, {"X^5", "X^2*Y^2", "Y^5"});
  CHECK(equal(ratliff_rush_ideal(j).value, j));
  CHECK(equal(ratliff_rush_ideal(ideal(a, {"X"})).value, ideal(a, {"X"})));

  CHECK_FALSE(ratliff_rush_ideal(Submodule::zero(a, 1)).value.has_nonzero_generator());
  CHECK(equal(ratliff_rush_ideal(ideal(a, {"X", "1 + X"})).value, Submodule::ambient(a, 1)));

  ChainOptions tight;
  tight.lmax = 0;
  CHECK_THROWS_AS(ratliff_rush_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}), tight), UnstableChain);

  // Non-monomial input: (X^2, Y^2, XY + Y^2)... has m^2 as its closure.
  auto g = ideal(a, {"X^2", "X*Y + Y^2", "Y^2"});
  CHECK(equal(ratliff_rush_ideal(g).value, Submodule::maximal_ideal_power(a, 2)));
}

TEST_CASE("Ratliff-Rush closure of modules") {
  auto a = ring_xy();
  auto pm = parameter_module(a);
  auto r = ratliff_rush_module(pm, 1);
  CHECK(equal(r.value, pm.module()));
  CHECK(r.stabilization_index >= 1);

  auto eq = equal_sum(a);
  auto bar = ideal_sum(a, {kEqualBar, kEqualBar});
  CHECK(equal(ratliff_rush_module(eq, 1).value, bar.module()));

  auto ds = distinct_sum(a);
  auto closed53 = integral_closure_module(ds);
  CHECK(equal(ratliff_rush_module(ds, 1).value, closed53.value));

  // m F is Ratliff-Rush closed and proper.
  auto mf = rows(a, {{"X", "Y", "0", "0"}, {"0", "0", "X", "Y"}});
  auto rmf = ratliff_rush_module(mf, 1);
  CHECK(contains(rmf.value, mf.module()));
  CHECK_FALSE(equal(rmf.value, Submodule::ambient(a, 2)));

  CHECK(ratliff_rush_module(rows(a, {{"1", "0"}, {"0", "1"}}), 1).certified);
  CHECK(equal(ratliff_rush_module(pm, 0).value, Submodule::ambient(a, 1)));
}

TEST_CASE("both Ratliff-Rush routes agree") {
  auto a = ring_xy();
  ChainOptions in_s;
  in_s.route = RrRoute::kIdealInS;
  std::vector<ModuleEmbedding> cases{parameter_module(a), equal_sum(a), distinct_sum(a), seven_gen(a),
                                     ModuleEmbedding::from_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}))};
  for (const auto& e : cases) {
    CHECK(equal(ratliff_rush_module(e, 1).value, ratliff_rush_module(e, 1, in_s).value));
  }
  auto i = ModuleEmbedding::from_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}));
  CHECK(equal(ratliff_rush_module(i, 2).value, ratliff_rush_module(i, 2, in_s).value));
}

TEST_CASE("the closure of a direct sum need not be the sum of closures") {
  auto a = ring_xy();
  auto i = ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"});
  auto j = ideal(a, {"X^5", "X^2*Y^2", "Y^5"});
  auto e = ModuleEmbedding::direct_sum(ModuleEmbedding::from_ideal(i), ModuleEmbedding::from_ideal(j));
  auto sum_of = ModuleEmbedding::direct_sum(ModuleEmbedding::from_ideal(ratliff_rush_ideal(i).value),
                                            ModuleEmbedding::from_ideal(ratliff_rush_ideal(j).value));
  auto rr = ratliff_rush_module(e, 1).value;
  CHECK(contains(sum_of.module(), rr));
  CHECK(contains(rr, e.module()));
}

TEST_CASE("reductions") {
  auto a = ring_xy();
  auto m4 = ModuleEmbedding::from_ideal(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}));
  auto pure = ModuleEmbedding::from_ideal(ideal(a, {"X^4", "Y^4"}));
  auto self = is_reduction(m4, m4, 3);
  CHECK(self.yes);
  CHECK(self.s == 0);
  auto d = is_reduction(pure, m4, 4);
  CHECK(d.yes);
  CHECK(d.s >= 1);
  CHECK(d.s <= 3);
  auto x8 = ModuleEmbedding::from_ideal(ideal(a, {"X^8"}));
  CHECK_FALSE(is_reduction(x8, ModuleEmbedding::from_ideal(Submodule::maximal_ideal_power(a, 4)), 6).yes);
  CHECK_THROWS_AS(is_reduction(m4, pure, 2), PreconditionError);

  // Via a reduction, the closure agrees with the colon chain.
  auto vr = rr_via_reduction(m4, {vec(a, {"X^4"}), vec(a, {"Y^4"})}, 10);
  CHECK(vr.method == ClosureMethod::kReductionBased);
  CHECK(equal(vr.value, Submodule::maximal_ideal_power(a, 4)));
  auto mm = ModuleEmbedding::from_ideal(Submodule::maximal_ideal_power(a, 1));
  CHECK(equal(rr_via_reduction(mm, {vec(a, {"X"}), vec(a, {"Y"})}, 10).value, mm.module()));
  CHECK_THROWS_AS(rr_via_reduction(ModuleEmbedding::from_ideal(Submodule::maximal_ideal_power(a, 4)),
                                   {vec(a, {"X^8"})}, 10),
                  PreconditionError);

  auto p = distinct_sum(a);
  auto pr = parameter_module(a);
  CHECK(equal(rr_via_reduction(pr, pr.columns(), 10).value, ratliff_rush_module(pr, 1).value));
  CHECK(equal(rr_via_reduction(p, p.columns(), 10).value, ratliff_rush_module(p, 1).value));
}

TEST_CASE("integral elements") {
  auto a = ring_xy();
  auto p = seven_gen(a);
  auto member = is_integral_element(p, vec(a, {"X^3", "0"}), 3);
  CHECK(member.yes);
  CHECK(member.s == 0);
  auto c = is_integral_element(p, vec(a, {"X*Y^4", "0"}), 3);
  CHECK(c.yes);
  CHECK(c.s >= 1);
  CHECK(c.s <= 2);
  for (unsigned s = 0; s <= 4; ++s) CHECK_FALSE(is_integral_element(p, vec(a, {"1", "0"}), s).yes);
  CHECK_FALSE(is_integral_element(p, vec(a, {"Y^4", "0"}), 3).yes);
  CHECK_THROWS_AS(is_integral_element(p, vec(a, {"X"}), 3), ContextMismatch);
}

TEST_CASE("integral equations") {
  auto a = ring_xy();
  auto p = seven_gen(a);
  const auto& s = p.rees_ring();
  auto x = P("X*Y^4*t1", s);
  // As printed, the constant term leaves -X^4*Y^5*t1*t2 + X^3*Y^5*t1*t2 behind.
  auto c1 = P("-Y*(X*Y^3*t1 + X^3*t2)", s);
  CHECK_FALSE(check_integral_equation(x, {c1, P("(X^3*t1)*(Y^5*t2)", s)}));
  auto c2 = P("(X^3*t1)*(X*Y^5*t2)", s);
  CHECK(check_integral_equation(x, {c1, c2}));
  CHECK(coefficients_in_powers(p, {c1, c2}));
  CHECK_FALSE(coefficients_in_powers(p, {c1, P("X*Y^4*t1*t2", s)}));

  auto y = P("X*Y^3*t1 + X^3*t2", s);
  CHECK(check_integral_equation(y, {-y}));
  CHECK_FALSE(check_integral_equation(y, {P("2*X^3*t1", s)}));
  CHECK_THROWS_AS(check_integral_equation(x, {P("X*t1*t2", s)}), PreconditionError);

  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto r1 = random_poly(rng, a, 3, 4);
    auto r2 = random_poly(rng, a, 3, 4);
    auto wrong1 = p.from_graded({r1, r2}, 1);
    auto wrong2 = p.from_graded({r2, r1, r1}, 2);
    if (wrong1 == c1 && wrong2 == c2) continue;
    CHECK_FALSE(check_integral_equation(x, {wrong1, wrong2}));
  }
}

TEST_CASE("Newton closure of monomial ideals") {
  auto a = ring_xy();
  auto n = integral_closure_monomial(ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}));
  CHECK(n.certified);
  CHECK(n.method == ClosureMethod::kNewton);
  CHECK(equal(n.value, Submodule::maximal_ideal_power(a, 4)));
  CHECK(equal(n.value, newton_closure_oracle(a, ideal(a, {"X^4", "X^3*Y", "X*Y^3", "Y^4"}), 8)));
  auto i52 = ideal(a, {"X^4", "X^3*Y^2", "X*Y^6", "Y^8"});
  CHECK(equal(integral_closure_monomial(i52).value, ideal(a, {"X^4", "X^3*Y^2", "X^2*Y^4", "X*Y^6", "Y^8"})));
  CHECK(equal(integral_closure_monomial(i52).value, newton_closure_oracle(a, i52, 10)));
  CHECK(equal(integral_closure_monomial(ideal(a, {"X^5"})).value, ideal(a, {"X^5"})));
  CHECK(equal(integral_closure_monomial(ideal(a, {"X^5", "Y^8"})).value,
              newton_closure_oracle(a, ideal(a, {"X^5", "Y^8"}), 9)));
  CHECK_THROWS_AS(integral_closure_monomial(ideal(a, {"X + Y"})), PreconditionError);

  std::mt19937 rng(11);
  for (int k = 0; k < 150; ++k) {
    auto i = random_primary_monomial_ideal(rng, a, 8);
    auto closed = integral_closure_monomial(i).value;
    REQUIRE(equal(closed, newton_closure_oracle(a, i, 8)));
    REQUIRE(contains(closed, i));
    REQUIRE(equal(integral_closure_monomial(closed).value, closed));
  }
}

TEST_CASE("integral closure of modules") {
  auto a = ring_xy();
  auto ds = distinct_sum(a);
  auto bar = integral_closure_module(ds);
  CHECK(bar.certified);
  auto expected = ModuleEmbedding::direct_sum(
      ModuleEmbedding::from_ideal(newton_closure_oracle(a, ideal_sum(a, {kFirst}).module(), 10)),
      ModuleEmbedding::from_ideal(newton_closure_oracle(a, ideal_sum(a, {kSecond}).module(), 10)));
  CHECK(equal(bar.value, expected.module()));

  auto p = seven_gen(a);
  auto pc = integral_closure_module(p, {vec(a, {"X*Y^4", "0"})});
  CHECK_FALSE(pc.certified);
  CHECK(pc.method == ClosureMethod::kCandidateVerified);
  auto cols = p.columns();
  cols.push_back(vec(a, {"X*Y^4", "0"}));
  CHECK(equal(pc.value, Submodule(a, 2, cols)));
  CHECK(relative_length(pc.value, p.module()) == 1u);
  CHECK_THROWS_AS(integral_closure_module(p, {vec(a, {"Y^4", "0"})}), PreconditionError);
  // Without the candidate the socle probes find it.
  CHECK(equal(integral_closure_module(p).value, pc.value));

  auto m3 = ModuleEmbedding::from_ideal(Submodule::maximal_ideal_power(a, 3));
  CHECK(equal(integral_closure_module(m3).value, m3.module()));
  auto pm = parameter_module(a);
  auto pmc = integral_closure_module(pm);
  CHECK_FALSE(equal(pmc.value, pm.module()));
  CHECK(integral_closure_module(rows(a, {{"0"}, {"0"}})).certified);
}

TEST_CASE("closure of powers") {
  auto a = ring_xy();
  auto e = equal_sum(a);
  auto bar = integral_closure_module(e);
  for (unsigned n = 1; n <= 3; ++n) {
    auto multi = integral_closure_power(e, bar, n);
    CHECK(multi.certified);
    CHECK(equal(multi.value, power_of(bar.value, n)));
  }
  auto p = seven_gen(a);
  auto pc = integral_closure_module(p, {vec(a, {"X*Y^4", "0"})});
  auto p2 = integral_closure_power(p, pc, 2);
  CHECK_FALSE(p2.certified);
  CHECK(equal(p2.value, p.power(2).module));
  CHECK(integral_closure_power(p, pc, 0).certified);
}

// ---------------------------------------------------------------------------
// Property suites over random monomial modules.

TEST_CASE("sandwich: M^n inside its Ratliff-Rush closure inside its integral closure") {
  std::mt19937 rng(101);
  auto a = ring_xy();
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    auto e = random_monomial_module(rng, a);
    auto bar = integral_closure_module(e);
    for (unsigned n = 1; n <= 3; ++n) {
      auto rr = ratliff_rush_module(e, n).value;
      auto ic = integral_closure_power(e, bar, n).value;
      REQUIRE(contains(rr, e.power(n).module));
      REQUIRE(contains(ic, rr));
      ++checked;
    }
  }
  CHECK(checked == 300);
}

TEST_CASE("Ratliff-Rush closure is idempotent") {
  std::mt19937 rng(202);
  auto a = ring_xy();
  for (int k = 0; k < 100; ++k) {
    auto e = random_monomial_module(rng, a);
    auto once = ratliff_rush_module(e, 1).value;
    auto twice = ratliff_rush_module(ModuleEmbedding::from_submodule(once), 1).value;
    REQUIRE(equal(once, twice));
  }
  // Also through the ideal routine.
  for (int k = 0; k < 100; ++k) {
    auto i = any_ideal(rng, a);
    auto once = ratliff_rush_ideal(i).value;
    REQUIRE(equal(ratliff_rush_ideal(once).value, once));
  }
}

TEST_CASE("high powers are Ratliff-Rush closed") {
  std::mt19937 rng(303);
  auto a = ring_xy();
  for (int k = 0; k < 100; ++k) {
    auto e = random_monomial_module(rng, a);
    std::optional<unsigned> first;
    for (unsigned n = 1; n <= 6 && !first; ++n)
      if (equal(ratliff_rush_module(e, n).value, e.power(n).module)) first = n;
    REQUIRE(first.has_value());
    for (unsigned n = *first + 1; n <= *first + 2; ++n) REQUIRE(equal(ratliff_rush_module(e, n).value, e.power(n).module));
  }
}

TEST_CASE("equal powers persist") {
  std::mt19937 rng(404);
  auto a = ring_xy();
  int nontrivial = 0;
  for (int k = 0; k < 100; ++k) {
    auto e = random_monomial_module(rng, a);
    auto rr = ratliff_rush_module(e, 1);
    if (!equal(rr.value, e.module())) ++nontrivial;
    auto n = ModuleEmbedding::from_submodule(rr.value);
    unsigned l = 1;
    while (l <= 10 && !equal(n.power(l).module, e.power(l).module)) ++l;
    REQUIRE(l <= 10);
    if (rr.power_equality_index) CHECK(*rr.power_equality_index == l);
    for (unsigned m = l + 1; m <= l + 3; ++m) REQUIRE(equal(n.power(m).module, e.power(m).module));
  }
  CHECK(nontrivial >= 10);
}

TEST_CASE("closure of powers is the power of the closure") {
  std::mt19937 rng(505);
  auto a = ring_xy();
  for (int k = 0; k < 100; ++k) {
    auto i = random_monomial_ideal(rng, a, 1 + static_cast<int>(rng() % 4), 8);
    auto bar = integral_closure_monomial(i).value;
    Submodule in = i, barn = bar;
    for (unsigned n = 1; n <= 4; ++n) {
      if (n > 1) {
        in = minimalize_monomial(ideal_times(i, in));
        barn = minimalize_monomial(ideal_times(bar, barn));
      }
      REQUIRE(equal(integral_closure_monomial(in).value, barn));
    }
  }
  // Modules: the multi-Rees rule against powers of the closed module.
  for (int k = 0; k < 100; ++k) {
    auto e = random_monomial_module(rng, a);
    auto bar = integral_closure_module(e);
    for (unsigned n = 1; n <= 4; ++n) REQUIRE(equal(integral_closure_power(e, bar, n).value, power_of(bar.value, n)));
  }
}

TEST_CASE("reductions have smaller Ratliff-Rush closures") {
  std::mt19937 rng(606);
  auto a = ring_xy();
  int pairs = 0;
  for (int k = 0; k < 5000 && pairs < 100; ++k) {
    auto i = minimalize_monomial(any_ideal(rng, a));
    const auto& gens = i.generators();
    if (gens.size() < 3) continue;
    // Drop one generator that is not a pure power.
    std::vector<Polynomial> kept;
    std::size_t drop = 1 + rng() % (gens.size() - 2);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (g != drop) kept.push_back(gens[g][0]);
    auto l = ModuleEmbedding::from_ideal(Submodule::ideal(a, kept));
    auto m = ModuleEmbedding::from_ideal(i);
    if (!is_reduction(l, m, 4).yes) continue;
    ++pairs;
    REQUIRE(contains(ratliff_rush_module(m, 1).value, ratliff_rush_module(l, 1).value));
  }
  CHECK(pairs == 100);
}

TEST_CASE("closure gaps do not depend on the embedding") {
  std::mt19937 rng(707);
  auto a = ring_xy();
  for (int k = 0; k < 25; ++k) {
    auto e = random_monomial_module(rng, a, Shape::kSum);
    const std::size_t r = e.rank();
    auto bar = integral_closure_module(e);

    // Same module inside F ⊕ A: one more zero row.
    std::vector<PolyVector> padded;
    for (auto c : e.columns()) {
      c.push_back(Polynomial(a));
      padded.push_back(std::move(c));
    }
    ModuleEmbedding z(a, r + 1, padded);

    // Same module after the change of basis e_0 -> e_0 + X e_last of F.
    std::vector<PolyVector> moved;
    for (auto c : e.columns()) {
      c[r - 1] += P("X", a) * c[0];
      moved.push_back(std::move(c));
    }
    ModuleEmbedding g(a, r, moved);
    std::vector<PolyVector> candidates;
    for (auto c : bar.value.generators()) {
      c[r - 1] += P("X", a) * c[0];
      candidates.push_back(std::move(c));
    }
    ClosureOptions deep;
    deep.s_max = 8;
    auto gbar = integral_closure_module(g, candidates, deep);

    for (unsigned n = 1; n <= 3; ++n) {
      auto gap = relative_length(ratliff_rush_module(e, n).value, e.power(n).module);
      REQUIRE(gap.has_value());
      CHECK(relative_length(ratliff_rush_module(z, n).value, z.power(n).module) == gap);
      CHECK(relative_length(ratliff_rush_module(g, n).value, g.power(n).module) == gap);
      auto igap = relative_length(integral_closure_power(e, bar, n).value, e.power(n).module);
      CHECK(relative_length(integral_closure_power(g, gbar, n).value, g.power(n).module) == igap);
    }
  }
}
