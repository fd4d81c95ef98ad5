#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "reescalc/groebner.hpp"
#include "unit/support.hpp"

using namespace reescalc;
using namespace reescalc::testing;

namespace {

Monomial xy(const Ring& r, int a, int b) {
  std::vector<Exponent> e(r->num_vars(), 0);
  e[0] = static_cast<Exponent>(a);
  e[1] = static_cast<Exponent>(b);
  return Monomial(r->layout(), e);
}

bool monomial_in_monomial_ideal(const Monomial& m, const Submodule& i) {
  for (const auto& g : i.generators())
    if (!g[0].is_zero() && g[0].leading().mono.divides(m)) return true;
  return false;
}

// Rank of a set of dense rows over Q, by plain Gaussian elimination.
std::size_t rank_of(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

Polynomial random_homogeneous(std::mt19937& rng, const Ring& r, int deg, int terms) {
  std::uniform_int_distribution<int> a(0, deg), c(-3, 3);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    int x = a(rng);
    ts.push_back({xy(r, x, deg - x), Scalar(c(rng), r->field())});
  }
  return Polynomial::from_terms(r, std::move(ts));
}

// f in (g_1..g_s) for homogeneous data, decided in the degree-d slice.
bool member_by_linear_algebra(const Polynomial& f, const std::vector<Polynomial>& gens, int d) {
  auto r = f.ring();
  auto column = [&](const Monomial& m) { return static_cast<std::size_t>(m[0]); };
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    int dg = static_cast<int>(g.leading().mono.base_degree());
    if (dg > d) continue;
    for (int a = 0; a <= d - dg; ++a) {
      auto p = g.times(xy(r, a, d - dg - a), Scalar::one(r->field()));
      std::vector<mpq_class> row(d + 1);
      for (const auto& t : p.terms()) row[column(t.mono)] = t.coeff.value();
      rows.push_back(std::move(row));
    }
  }
  std::size_t base = rank_of(rows);
  std::vector<mpq_class> frow(d + 1);
  for (const auto& t : f.terms()) frow[column(t.mono)] = t.coeff.value();
  rows.push_back(frow);
  return rank_of(rows) == base;
}

}  // namespace

TEST_CASE("reduced basis of (X - Y^2, Y^3)") {
  auto r = ring_xy();
  auto i = ideal(r, {"X - Y^2", "Y^3"});
  auto gb = i.reduced();
  CHECK(gb.to_string() == "<Y^2 - X, X*Y, X^2>");
  // k[X,Y]/(X - Y^2, Y^3) is k[Y]/(Y^3).
  CHECK(colength(i) == 3u);
  CHECK(normal_form({P("Y^2", r)}, i)[0] == P("X", r));
  CHECK(normal_form({P("X^3 + Y^5", r)}, i)[0].is_zero());
  CHECK(is_member({P("X*Y - Y^3", r)}, i));
  CHECK_FALSE(is_member({P("Y", r)}, i));
}

TEST_CASE("basic ideal operations") {
  auto r = ring_xy();
  CHECK(equal(colon(ideal(r, {"X^2", "X*Y"}), ideal(r, {"X"})), ideal(r, {"X", "Y"})));
  CHECK(equal(intersect(ideal(r, {"X"}), ideal(r, {"Y"})), ideal(r, {"X*Y"})));
  CHECK(equal(intersect(ideal(r, {"X + Y"}), ideal(r, {"X - Y"})), ideal(r, {"X^2 - Y^2"})));
  CHECK(equal(saturate(ideal(r, {"X^2", "X*Y"}), ideal(r, {"X", "Y"})), ideal(r, {"X"})));
  CHECK(equal(ideal_times(ideal(r, {"X", "Y"}), ideal(r, {"X", "Y"})),
              Submodule::maximal_ideal_power(r, 2)));
  CHECK(exact_divide(P("X^2 - Y^2", r), P("X + Y", r)) == P("X - Y", r));
  CHECK_THROWS_AS(exact_divide(P("X^2 + Y^2", r), P("X + Y", r)), PreconditionError);

  ColonFlags flags;
  auto all = colon(ideal(r, {"X^2"}), Submodule::zero(r, 1), &flags);
  CHECK(flags.colon_by_zero_ideal);
  CHECK(equal(all, Submodule::ambient(r, 1)));

  auto t = RingContext::make(Field(), {"T", "X", "Y"});
  auto curve = ideal(t, {"X - T^2", "Y - T^3"});
  CHECK(equal(eliminate(curve, {"T"}), ideal(t, {"X^3 - Y^2"})));
  // Resultant of tX - Y and t^2 in t is Y^2.
  auto lin = eliminate(ideal(t, {"T*X - Y", "T^2"}), {"T"});
  CHECK(contains(lin, ideal(t, {"Y^2"})));
  for (const auto& g : lin.generators()) CHECK(g[0].leading().mono[0] == 0);

  CHECK(equal(saturate(ideal(r, {"X^2*Y"}), ideal(r, {"Y"})), ideal(r, {"X^2"})));
  auto u = ideal(r, {"X^3", "X*Y^2 + Y^3"});
  CHECK(equal(colon(u, ideal(r, {"1"})), u));
  CHECK(equal(saturate(u, ideal(r, {"1"})), u));
  auto m = Submodule::maximal_ideal_power(r, 1);
  CHECK(equal(colon(ideal_times(m, m), m), m));

  CHECK(colength(Submodule::maximal_ideal_power(r, 4)) == 10u);
  CHECK(relative_length(Submodule::maximal_ideal_power(r, 1), Submodule::maximal_ideal_power(r, 2)) == 2u);
  CHECK_FALSE(colength(ideal(r, {"X"})).has_value());
  CHECK(colength(ideal(r, {"X^2 + Y^2", "X*Y"})) == 4u);
}

TEST_CASE("module operations") {
  auto r = ring_xy();
  auto m_f = module(r, {{"X", "0"}, {"Y", "0"}, {"0", "X"}, {"0", "Y"}});
  CHECK(equal(colon(m_f, ideal(r, {"X", "Y"})), Submodule::ambient(r, 2)));
  CHECK(colength(m_f) == 2u);

  auto a = module(r, {{"X", "0"}, {"0", "1"}});
  auto b = module(r, {{"Y", "0"}, {"0", "X"}});
  CHECK(equal(intersect(a, b), module(r, {{"X*Y", "0"}, {"0", "X"}})));

  // Mixed generators: both components live in one syzygy.
  auto c = module(r, {{"X", "Y"}});
  auto d = module(r, {{"X^2", "X*Y"}, {"Y^2", "0"}});
  CHECK(equal(intersect(c, d), module(r, {{"X^2", "X*Y"}})));

  auto w = Submodule::ambient(r, 1);
  auto pre = preimage(w, {{P("X", r), P("Y", r)}}, module(r, {{"X^2", "X*Y"}}));
  CHECK(equal(pre, ideal(r, {"X"})));

  auto e = module(r, {{"X", "Y"}, {"0", "X"}});
  CHECK(is_member({P("X^2", r), P("X*Y + X^2", r)}, e));
  CHECK_FALSE(is_member({P("Y", r), P("0", r)}, e));
  CHECK(colength(e) == std::nullopt);
  CHECK(colength(module(r, {{"X", "Y"}, {"Y", "0"}, {"0", "X"}})) == 3u);
  CHECK(colength(module(r, {{"X", "Y", "0"}, {"0", "X", "Y"}})) == std::nullopt);
  CHECK(colength(module(r, {{"X", "0"}, {"Y", "X"}, {"0", "Y"}})) == 3u);

  auto other = ring_xy(7);
  CHECK_THROWS_AS(sum(a, module(other, {{"X", "0"}})), ContextMismatch);
  CHECK_THROWS_AS(sum(a, ideal(r, {"X"})), ContextMismatch);
}

TEST_CASE("colon adjunction on monomial ideals") {
  std::mt19937 rng(2024);
  auto r = ring_xy();
  for (int k = 0; k < 200; ++k) {
    auto i = random_primary_monomial_ideal(rng, r, 7);
    auto j = random_monomial_ideal(rng, r, 1 + k % 3, 4);
    auto q = colon(i, j);
    REQUIRE(contains(i, ideal_times(q, j)));
    REQUIRE(contains(q, i));
    // Brute force: x^a y^b is in I : J iff every generator of J lands in I.
    for (int a = 0; a <= 8; ++a) {
      for (int b = 0; b <= 8; ++b) {
        auto m = xy(r, a, b);
        bool oracle = true;
        for (const auto& g : j.generators())
          oracle = oracle && monomial_in_monomial_ideal(m * g[0].leading().mono, i);
        REQUIRE(is_member({Polynomial::monomial(r, m)}, q) == oracle);
      }
    }
  }
}

TEST_CASE("colon adjunction on polynomial ideals") {
  std::mt19937 rng(31);
  auto r = ring_xy();
  for (int k = 0; k < 200; ++k) {
    std::vector<Polynomial> gi, gj;
    gi.push_back(P("X^5", r));
    gi.push_back(P("Y^5", r));
    gi.push_back(random_homogeneous(rng, r, 3, 2));
    gj.push_back(random_homogeneous(rng, r, 1 + k % 2, 2));
    auto i = Submodule::ideal(r, gi);
    auto j = Submodule::ideal(r, gj);
    auto q = colon(i, j);
    REQUIRE(contains(i, ideal_times(q, j)));
    REQUIRE(contains(q, i));
    // Anything that multiplies J into I lies in the colon.
    auto probe = random_homogeneous(rng, r, 3, 3);
    bool lands = is_member({probe * gj[0]}, i);
    REQUIRE(is_member({probe}, q) == lands);
  }
}

TEST_CASE("reduced basis is independent of generator order") {
  std::mt19937 rng(5);
  auto r = ring_xy();
  for (int k = 0; k < 100; ++k) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_poly(rng, r, 3, 4));
    gens.push_back(gens[0] * gens[1] + gens[2]);
    auto ref = Submodule::ideal(r, gens).reduced().to_string();
    for (int s = 0; s < 3; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      REQUIRE(Submodule::ideal(r, gens).reduced().to_string() == ref);
    }
  }
}

TEST_CASE("membership agrees with a linear algebra oracle") {
  std::mt19937 rng(8);
  auto r = ring_xy();
  int members = 0;
  for (int k = 0; k < 200; ++k) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(random_homogeneous(rng, r, 2 + g, 2));
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Polynomial& p) { return p.is_zero(); }),
               gens.end());
    if (gens.empty()) continue;
    int d = 4 + k % 2;
    Polynomial f(r);
    if (k % 2 == 0) {
      for (const auto& g : gens) {
        int dg = static_cast<int>(g.leading().mono.base_degree());
        f += g * random_homogeneous(rng, r, d - dg, 2);
      }
    } else {
      f = random_homogeneous(rng, r, d, 3);
    }
    auto i = Submodule::ideal(r, gens);
    bool oracle = member_by_linear_algebra(f, gens, d);
    members += oracle;
    REQUIRE(is_member({f}, i) == oracle);
  }
  CHECK(members > 50);
}

TEST_CASE("intersection properties") {
  std::mt19937 rng(77);
  auto r = ring_xy();
  for (int k = 0; k < 100; ++k) {
    auto i = random_primary_monomial_ideal(rng, r, 6);
    auto j = random_primary_monomial_ideal(rng, r, 6);
    auto n = intersect(i, j);
    for (int a = 0; a <= 7; ++a)
      for (int b = 0; b <= 7; ++b) {
        auto m = xy(r, a, b);
        bool oracle = monomial_in_monomial_ideal(m, i) && monomial_in_monomial_ideal(m, j);
        REQUIRE(is_member({Polynomial::monomial(r, m)}, n) == oracle);
      }
  }
  for (int k = 0; k < 50; ++k) {
    auto i = Submodule::ideal(r, {random_poly(rng, r, 2, 3), random_poly(rng, r, 2, 3)});
    auto j = Submodule::ideal(r, {random_poly(rng, r, 2, 3)});
    auto n = intersect(i, j);
    REQUIRE(contains(i, n));
    REQUIRE(contains(j, n));
    REQUIRE(contains(n, ideal_times(i, j)));
  }
}

TEST_CASE("relative length matches colength differences") {
  std::mt19937 rng(3);
  auto r = ring_xy();
  for (int k = 0; k < 100; ++k) {
    auto i = random_primary_monomial_ideal(rng, r, 6);
    auto j = random_monomial_ideal(rng, r, 2, 5);
    auto big = sum(i, j);
    auto ci = colength(i), cb = colength(big);
    REQUIRE(ci.has_value());
    REQUIRE(cb.has_value());
    REQUIRE(relative_length(big, i) == *ci - *cb);
  }
}
