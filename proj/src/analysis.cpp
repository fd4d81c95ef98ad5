#include "reescalc/analysis.hpp"

#include <algorithm>

namespace reescalc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "true";
    case Verdict::kFalse: return "false";
    case Verdict::kUnproven: return "unproven";
  }
  return "unknown";
}

namespace {

mpz_class binom(unsigned long top, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), top, k);
  return out;
}

std::size_t fit_dimension(std::size_t rank) { return 2 + rank; }

mpz_class basis_value(std::size_t dim, std::size_t i, unsigned long n) {
  const unsigned long k = static_cast<unsigned long>(dim - 1 - i);
  mpz_class v = binom(n + k, k);
  return i % 2 == 0 ? v : mpz_class(-v);
}

// Solves the square system in place; nullopt when singular.
std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::uint64_t finite_length(const std::optional<std::uint64_t>& v, const char* what) {
  if (!v) throw PreconditionError(std::string(what) + " has infinite length");
  return *v;
}

GradedPiece degree_one(const Submodule& u) { return GradedPiece{1, u}; }

// Embeds a submodule of A^k into A^total at the given offset.
Submodule shifted(const Submodule& u, std::size_t offset, std::size_t total) {
  std::vector<PolyVector> gens;
  for (const auto& g : u.generators()) {
    PolyVector v(total, Polynomial(u.ring()));
    for (std::size_t k = 0; k < g.size(); ++k) v[offset + k] = g[k];
    gens.push_back(std::move(v));
  }
  return Submodule(u.ring(), total, std::move(gens));
}

bool is_unit_ideal(const Submodule& i) { return contains(i, Submodule::ambient(i.ring(), 1)); }

}  // namespace

// ---------------------------------------------------------------------------
// Buchsbaum-Rim coefficients

mpz_class BrPolynomial::evaluate(long n) const {
  if (n < 0) throw PreconditionError("the length polynomial is evaluated at n >= 0 only");
  const std::size_t dim = coeffs.size();
  mpz_class total = 0;
  for (std::size_t i = 0; i < dim; ++i) total += coeffs[i] * basis_value(dim, i, static_cast<unsigned long>(n));
  return total;
}

BrPolynomial br_from_lengths(std::size_t rank, const std::vector<std::uint64_t>& lengths) {
  const std::size_t dim = fit_dimension(rank);
  if (lengths.size() < dim + 2)
    throw PreconditionError("need at least " + std::to_string(dim + 2) + " measured lengths, got " +
                            std::to_string(lengths.size()));
  BrPolynomial b;
  b.rank = rank;
  b.lengths = lengths;
  b.fit_hi = static_cast<unsigned>(lengths.size() - 1);
  b.fit_lo = static_cast<unsigned>(lengths.size() - dim);

  std::vector<std::vector<mpq_class>> m;
  std::vector<mpq_class> rhs;
  for (unsigned n = b.fit_lo; n <= b.fit_hi; ++n) {
    std::vector<mpq_class> row;
    for (std::size_t i = 0; i < dim; ++i) row.emplace_back(basis_value(dim, i, n));
    m.push_back(std::move(row));
    rhs.emplace_back(mpz_class(static_cast<unsigned long>(lengths[n])));
  }
  auto x = solve(std::move(m), std::move(rhs));
  if (!x) throw Error("singular fit system");
  for (auto& c : *x) {
    if (c.get_den() != 1)
      throw PreconditionError("lengths are not yet polynomial in the fit window; raise n_max");
    b.coeffs.push_back(c.get_num());
  }
  b.postulation = b.fit_lo;
  for (long n = static_cast<long>(b.fit_lo) - 1; n >= 0; --n) {
    if (b.evaluate(n) != mpz_class(static_cast<unsigned long>(lengths[static_cast<std::size_t>(n)]))) break;
    ++b.validated;
    b.postulation = static_cast<unsigned>(n);
  }
  if (b.validated < 2)
    throw PreconditionError("only " + std::to_string(b.validated) +
                            " degrees below the fit window agree with the fit; raise n_max");
  return b;
}

BrPolynomial br_coefficients(const ModuleEmbedding& e, unsigned n_max, const Deadline& deadline) {
  if (n_max < e.rank() + 4)
    throw PreconditionError("n_max must be at least r + 4 = " + std::to_string(e.rank() + 4));
  finite_length(e.colength(), "F/M");
  std::vector<std::uint64_t> lengths;
  for (unsigned n = 0; n <= n_max; ++n) {
    deadline.check();
    lengths.push_back(finite_length(colength(e.power(n + 1, deadline).module), "F^n/M^n"));
  }
  return br_from_lengths(e.rank(), lengths);
}

BrCorollary br_corollary_check(const BrPolynomial& b, const ModuleEmbedding& e, const ClosureResult& closure,
                               const ClosureResult& rr) {
  if (!closure.certified || !equal(closure.value, rr.value))
    throw PreconditionError("the identities need the Ratliff-Rush closure to equal a certified integral closure");
  if (b.rank != e.rank()) throw PreconditionError("coefficients were fitted for a different rank");
  BrCorollary out;
  const std::size_t r = e.rank();
  out.closure_colength = finite_length(colength(closure.value), "F/closure");
  out.br1_identity = b.coeffs[1] == b.coeffs[0] - mpz_class(static_cast<unsigned long>(out.closure_colength));
  out.vanishing = true;
  for (std::size_t i = 2; i <= r + 1; ++i)
    if (b.coeffs[i] != 0) out.vanishing = false;
  out.closed_form = true;
  for (unsigned n = b.postulation; n <= b.fit_hi && out.sample_degrees.size() < 3; ++n) {
    out.sample_degrees.push_back(n);
    mpz_class predicted = b.coeffs[0] * binom(n + r + 1, r + 1) - b.coeffs[1] * binom(n + r, r);
    if (predicted != mpz_class(static_cast<unsigned long>(b.lengths[n]))) out.closed_form = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence battery

Theorem12Report theorem12_check(const ModuleEmbedding& e, const ClosureResult& closure, unsigned n_max,
                                const ChainOptions& chain) {
  if (e.base_ring()->num_base() != 2) throw PreconditionError("the analysis needs exactly two base variables");
  finite_length(e.colength(), "F/M");
  if (n_max == 0) throw PreconditionError("n_max must be positive");
  Theorem12Report rep;
  rep.closure_certified = closure.certified;

  std::vector<bool> agree;  // M̃^n == closure of M^n
  for (unsigned n = 1; n <= n_max; ++n) {
    chain.deadline.check();
    DegreeRow row;
    row.n = n;
    const Submodule& mn = e.power(n, chain.deadline).module;
    row.colength = colength(mn);
    ClosureResult icn = integral_closure_power(e, closure, n);
    row.ic_gap = relative_length(icn.value, mn);
    if (row.ic_gap == 0u && icn.certified) {
      row.rr_gap = 0;
      row.rr_certified = true;
      agree.push_back(true);
    } else {
      ClosureResult rr = ratliff_rush_module(e, n, chain);
      if (!contains(icn.value, rr.value))
        throw SoundnessAlert("Ratliff-Rush value exceeds the integral closure in degree " + std::to_string(n));
      row.rr_gap = relative_length(rr.value, mn);
      const bool same = row.rr_gap == row.ic_gap;
      row.rr_certified = same && icn.certified;
      agree.push_back(same);
    }
    rep.table.push_back(row);
  }

  auto gaps = [](const DegreeRow& r) {
    return "l(rr/M^n) = " + std::to_string(*r.rr_gap) + ", l(closure/M^n) = " + std::to_string(*r.ic_gap);
  };
  rep.c1.verdict = agree[0] ? Verdict::kTrue : Verdict::kFalse;
  rep.c1.evidence = "n = 1: " + gaps(rep.table[0]);

  auto first_disagreement = std::find(agree.begin(), agree.end(), false);
  if (first_disagreement == agree.end()) {
    rep.c2 = {Verdict::kTrue, "equal for 1 <= n <= " + std::to_string(n_max)};
  } else {
    const std::size_t k = static_cast<std::size_t>(first_disagreement - agree.begin());
    rep.c2 = {Verdict::kFalse, "n = " + std::to_string(k + 1) + ": " + gaps(rep.table[k])};
  }

  for (const auto& row : rep.table)
    if (row.ic_gap == 0u) {
      rep.first_equal_power = row.n;
      break;
    }
  if (rep.first_equal_power) {
    const unsigned l = *rep.first_equal_power;
    rep.c3 = {Verdict::kTrue, "closure of M^n equals M^n at n = " + std::to_string(l)};
    rep.c4 = {Verdict::kTrue, "equality holds for " + std::to_string(l) + " <= n <= " + std::to_string(n_max)};
    for (const auto& row : rep.table)
      if (row.n > l && row.ic_gap != 0u) {
        rep.consistent = false;
        rep.c4 = {Verdict::kFalse, "equality breaks at n = " + std::to_string(row.n)};
      }
  } else if (rep.c1.verdict == Verdict::kFalse) {
    rep.c3 = {Verdict::kFalse, "no equality for n <= " + std::to_string(n_max) + ", as forced by (1) failing"};
    rep.c4 = rep.c3;
  } else {
    rep.c3 = {Verdict::kUnproven, "no equality for n <= " + std::to_string(n_max) + "; raise n_max"};
    rep.c4 = rep.c3;
  }

  if (rep.c1.verdict == Verdict::kTrue && rep.c2.verdict == Verdict::kFalse) rep.consistent = false;
  if (rep.c1.verdict == Verdict::kFalse && rep.c3.verdict == Verdict::kTrue) rep.consistent = false;
  if (!rep.consistent)
    throw SoundnessAlert("conditions (1)-(4) disagree: (1) " + rep.c1.evidence + "; (2) " + rep.c2.evidence +
                         "; (3) " + rep.c3.evidence + "; (4) " + rep.c4.evidence);

  rep.integrally_closed = rep.table[0].ic_gap == 0u;
  if (rep.integrally_closed) rep.notes.push_back("M is integrally closed: Cohen-Macaulay case");
  if (!closure.certified) rep.notes.push_back("integral closure is candidate-verified, not certified");
  rep.notes.push_back("Ratliff-Rush values are colon-chain results unless pinned by the closure");
  return rep;
}

// ---------------------------------------------------------------------------
// Buchsbaum criterion

BuchsbaumReport buchsbaum_check(const ModuleEmbedding& e, const ClosureResult& closure) {
  if (closure.value.rank() != e.rank()) throw PreconditionError("closure lives in a different free module");
  if (!contains(closure.value, e.module())) throw PreconditionError("closure does not contain M");
  BuchsbaumReport rep;
  rep.closure_certified = closure.certified;
  const Ring& a = e.base_ring();
  const Submodule& m = e.module();

  rep.m_closure_in_m = true;
  for (const auto& g : closure.value.generators()) {
    for (std::size_t v = 0; v < a->num_base() && rep.m_closure_in_m; ++v) {
      const Polynomial x = Polynomial::variable(a, v);
      PolyVector xg;
      for (const auto& c : g) xg.push_back(x * c);
      if (!is_member(xg, m)) {
        rep.m_closure_in_m = false;
        rep.witness = e.from_graded(xg, 1);
      }
    }
    if (!rep.m_closure_in_m) break;
  }

  GradedPiece prod = piece_product(e, e.power(1), degree_one(closure.value));
  rep.product_clause = contains(e.power(2).module, prod.module);
  rep.h1_proxy = relative_length(closure.value, m);

  if (rep.value()) {
    for (unsigned n = 2; n <= 4; ++n) {
      const bool same = equal(integral_closure_power(e, closure, n).value, e.power(n).module);
      rep.tail.emplace_back(n, same);
      if (!same)
        throw SoundnessAlert("criterion holds but the closure of M^" + std::to_string(n) + " differs from M^" +
                             std::to_string(n));
    }
  }
  if (!closure.certified) rep.notes.push_back("integral closure is candidate-verified, not certified");
  return rep;
}

DirectSumReport direct_sum_buchsbaum(const ModuleEmbedding& m1, const ModuleEmbedding& m2) {
  if (!monomial_summands(m1) || !monomial_summands(m2))
    throw PreconditionError("direct-sum criterion needs monomial summands");
  DirectSumReport rep;
  ClosureResult c1 = integral_closure_module(m1), c2 = integral_closure_module(m2);
  rep.first = buchsbaum_check(m1, c1);
  rep.second = buchsbaum_check(m2, c2);

  ModuleEmbedding sum = ModuleEmbedding::direct_sum(m1, m2);
  rep.combined = buchsbaum_check(sum, integral_closure_module(sum));

  const std::size_t r1 = m1.rank(), r = sum.rank();
  auto piece = [&](const Submodule& u, std::size_t offset) { return degree_one(shifted(u, offset, r)); };
  GradedPiece a1 = piece(m1.module(), 0), b1 = piece(c1.value, 0);
  GradedPiece a2 = piece(m2.module(), r1), b2 = piece(c2.value, r1);
  const Submodule base = piece_product(sum, a1, a2).module;
  rep.mixed_products =
      equal(piece_product(sum, a1, b2).module, base) && equal(piece_product(sum, b1, a2).module, base);
  rep.value = rep.first.value() && rep.second.value() && rep.mixed_products;
  rep.consistent = rep.value == rep.combined.value();
  if (!rep.consistent)
    throw SoundnessAlert("direct-sum criterion disagrees with the criterion on the sum");
  return rep;
}

ScaledReport scaled_buchsbaum_check(const ModuleEmbedding& e, const ClosureResult& closure, const Submodule& i) {
  if (!i.is_ideal() || !i.has_nonzero_generator()) throw PreconditionError("scaling needs a nonzero ideal");
  if (!buchsbaum_check(e, closure).value()) throw PreconditionError("M does not satisfy the criterion");
  ScaledReport out;
  if (is_unit_ideal(i)) {
    out.scaled = e;
    out.report = buchsbaum_check(e, closure);
    return out;
  }
  if (!i.is_monomial()) throw PreconditionError("scaling ideal must be monomial");
  if (!colength(i)) throw PreconditionError("scaling ideal must be m-primary");
  if (!equal(integral_closure_monomial(i).value, i)) throw PreconditionError("scaling ideal is not integrally closed");

  const Ring& a = e.base_ring();
  auto scale = [&](const std::vector<PolyVector>& cols) {
    std::vector<PolyVector> out_cols;
    for (const auto& f : i.generators())
      for (const auto& c : cols) {
        PolyVector v;
        for (const auto& x : c) v.push_back(f[0] * x);
        out_cols.push_back(std::move(v));
      }
    return out_cols;
  };
  out.scaled = ModuleEmbedding(a, e.rank(), scale(e.columns()));
  ClosureResult scaled_closure = monomial_summands(out.scaled)
                                     ? integral_closure_module(out.scaled)
                                     : integral_closure_module(out.scaled, scale(closure.value.generators()));
  out.report = buchsbaum_check(out.scaled, scaled_closure);
  if (!out.report.value()) throw SoundnessAlert("criterion fails for IM although it holds for M");
  return out;
}

IndecomposabilityReport indecomposability_check(const ModuleEmbedding& e, const std::vector<Submodule>& factors) {
  if (e.rank() != 2) throw PreconditionError("the Fitting order criterion needs rank 2");
  if (factors.empty()) throw PreconditionError("no factors given");
  IndecomposabilityReport rep;
  const Ring& a = e.base_ring();
  Submodule product = Submodule::ambient(a, 1);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& f = factors[k];
    const std::string name = "factor " + std::to_string(k + 1);
    if (!f.is_ideal() || !f.is_monomial() || !f.has_nonzero_generator())
      throw PreconditionError(name + " must be a nonzero monomial ideal");
    if (!colength(f)) throw PreconditionError(name + " is not m-primary");
    if (!equal(integral_closure_monomial(f).value, f)) throw PreconditionError(name + " is not integrally closed");
    product = ideal_times(f, product);
    rep.factor_ords.push_back(ord(f));
  }
  Submodule fitt0 = fitting_ideal(e, 0);
  if (!equal(product, fitt0)) throw PreconditionError("factor product differs from Fitt_0(F/M)");
  if (fitt0.is_monomial() && !equal(integral_closure_monomial(minimalize_monomial(fitt0)).value, fitt0))
    throw PreconditionError("Fitt_0(F/M) is not integrally closed");
  rep.ord_fitt1 = ord(fitting_ideal(e, 1));
  const unsigned smallest = *std::min_element(rep.factor_ords.begin(), rep.factor_ords.end());
  rep.certified = rep.ord_fitt1 > smallest;
  rep.message = rep.certified ? "indecomposable (ord Fitt_1 = " + std::to_string(rep.ord_fitt1) +
                                    " exceeds the least factor order " + std::to_string(smallest) + ")"
                              : "criterion inconclusive";
  return rep;
}

}  // namespace reescalc
