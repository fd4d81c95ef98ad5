#pragma once

#include <random>
#include <string>
#include <vector>

#include "reescalc/groebner.hpp"
#include "reescalc/polynomial.hpp"

namespace reescalc::testing {

inline Ring ring_xy(std::uint32_t p = 0) { return RingContext::make(Field(p), {"X", "Y"}); }

inline Polynomial P(const std::string& s, const Ring& r) { return parse_polynomial(s, r); }

inline Submodule ideal(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(P(g, r));
  return Submodule::ideal(r, std::move(ps));
}

/// Columns given as strings, one vector of r entries per column.
inline Submodule module(const Ring& r, std::vector<std::vector<std::string>> cols) {
  std::vector<PolyVector> gens;
  std::size_t rank = cols.empty() ? 0 : cols.front().size();
  for (const auto& c : cols) {
    PolyVector v;
    for (const auto& e : c) v.push_back(P(e, r));
    gens.push_back(std::move(v));
  }
  return Submodule(r, rank, std::move(gens));
}

/// Random polynomial with `terms` terms, exponents < `max_exp`, coefficients in [-3, 3].
inline Polynomial random_poly(std::mt19937& rng, const Ring& r, int terms, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp - 1), c(-3, 3);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<Exponent> ex(r->num_vars());
    for (auto& x : ex) x = static_cast<Exponent>(e(rng));
    ts.push_back({Monomial(r->layout(), ex), Scalar(c(rng), r->field())});
  }
  return Polynomial::from_terms(r, std::move(ts));
}

/// Random monomial ideal in the base variables with generators of degree <= max_deg.
inline Submodule random_monomial_ideal(std::mt19937& rng, const Ring& r, int ngens, int max_deg) {
  std::uniform_int_distribution<int> d(1, max_deg);
  std::vector<Polynomial> gens;
  for (int k = 0; k < ngens; ++k) {
    int deg = d(rng);
    std::uniform_int_distribution<int> a(0, deg);
    int x = a(rng);
    std::vector<Exponent> ex(r->num_vars(), 0);
    ex[0] = static_cast<Exponent>(x);
    ex[1] = static_cast<Exponent>(deg - x);
    gens.push_back(Polynomial::monomial(r, Monomial(r->layout(), ex)));
  }
  return Submodule::ideal(r, std::move(gens));
}

/// m-primary random monomial ideal: pure powers plus random mixed generators.
inline Submodule random_primary_monomial_ideal(std::mt19937& rng, const Ring& r, int max_deg) {
  std::uniform_int_distribution<int> d(1, max_deg), extra(0, 3);
  std::vector<Polynomial> gens;
  std::vector<Exponent> ex(r->num_vars(), 0);
  ex[0] = static_cast<Exponent>(d(rng));
  gens.push_back(Polynomial::monomial(r, Monomial(r->layout(), ex)));
  ex[0] = 0;
  ex[1] = static_cast<Exponent>(d(rng));
  gens.push_back(Polynomial::monomial(r, Monomial(r->layout(), ex)));
  auto more = random_monomial_ideal(rng, r, extra(rng), max_deg);
  for (const auto& g : more.generators()) gens.push_back(g[0]);
  return Submodule::ideal(r, std::move(gens));
}

}  // namespace reescalc::testing
