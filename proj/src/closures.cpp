#include "reescalc/closures.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace reescalc {

std::string to_string(ClosureMethod m) {
  switch (m) {
    case ClosureMethod::kTrivial: return "trivial";
    case ClosureMethod::kColonChain: return "colon-chain";
    case ClosureMethod::kReductionBased: return "reduction-based";
    case ClosureMethod::kNewton: return "newton";
    case ClosureMethod::kCandidateVerified: return "candidate-verified";
  }
  return "unknown";
}

namespace {

Submodule tidy(const Submodule& u, const Deadline& deadline = {}) {
  if (u.is_monomial()) return minimalize_monomial(u);
  return prune_generators(u, deadline);
}

bool is_zero_vector(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool is_whole(const Submodule& u) { return contains(u, Submodule::ambient(u.ring(), u.rank())); }

std::optional<std::uint64_t> length_over(const Submodule& w, const Submodule& u) {
  if (w.ring()->num_fiber() != 0) return std::nullopt;
  return relative_length(w, u);
}

// ---- monomial ideals in the base ring, as minimal generator lists ----

using MonoIdeal = std::vector<Monomial>;

MonoIdeal minimal(MonoIdeal gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    auto ea = a.exponents(), eb = b.exponents();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  });
  MonoIdeal out;
  for (const auto& g : gens) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& k) { return k.divides(g); });
    if (!redundant) out.push_back(g);
  }
  return out;
}

MonoIdeal mono_intersect(const MonoIdeal& a, const MonoIdeal& b) {
  MonoIdeal out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x.lcm(y));
  return minimal(std::move(out));
}

MonoIdeal mono_colon(const MonoIdeal& a, const Monomial& m) {
  MonoIdeal out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x / x.gcd(m));
  return minimal(std::move(out));
}

// Single nonzero entry that is a monomial: (component, monomial).
std::optional<std::pair<std::size_t, Monomial>> monomial_vector(const PolyVector& v) {
  std::optional<std::pair<std::size_t, Monomial>> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (out || !v[k].is_monomial()) return std::nullopt;
    out = std::make_pair(k, v[k].leading().mono);
  }
  return out;
}

// {y ∈ F^n : y·p ∈ big for every p in small}, where small ⊆ F^b and big ⊆ F^{n+b}.
Submodule graded_colon(const ModuleEmbedding& e, unsigned n, const Submodule& big,
                       const std::vector<PolyVector>& small, unsigned b, const Deadline& deadline) {
  const Ring& a = e.base_ring();
  const auto& bn = e.fiber_basis(n);
  const auto& bb = e.fiber_basis(b);
  const auto& bt = e.fiber_basis(n + b);

  std::vector<std::pair<std::size_t, Monomial>> mono_small;
  bool monomial = big.is_monomial();
  for (const auto& p : small) {
    if (!monomial) break;
    if (is_zero_vector(p)) continue;
    auto mv = monomial_vector(p);
    if (!mv) monomial = false;
    else mono_small.push_back(*mv);
  }

  if (monomial) {
    std::vector<MonoIdeal> big_comp(bt.size());
    for (const auto& g : big.generators())
      for (std::size_t c = 0; c < g.size(); ++c)
        if (!g[c].is_zero()) big_comp[c].push_back(g[c].leading().mono);
    for (auto& c : big_comp) c = minimal(std::move(c));
    std::vector<PolyVector> gens;
    for (std::size_t k = 0; k < bn.size(); ++k) {
      MonoIdeal w{a->one()};
      for (const auto& [l, m] : mono_small) {
        deadline.check();
        std::size_t idx = *bt.index_of(bn[k] * bb[l]);
        w = mono_intersect(w, mono_colon(big_comp[idx], m));
        if (w.empty()) break;
      }
      for (const auto& g : w) {
        PolyVector v(bn.size(), Polynomial(a));
        v[k] = Polynomial::monomial(a, g);
        gens.push_back(std::move(v));
      }
    }
    return Submodule(a, bn.size(), std::move(gens));
  }

  Submodule w = Submodule::ambient(a, bn.size());
  for (const auto& p : small) {
    if (is_zero_vector(p)) continue;
    deadline.check();
    auto images = multiply_vectors(e, w.generators(), n, p, b);
    bool inside = std::all_of(images.begin(), images.end(), [&](const PolyVector& v) { return is_member(v, big); });
    if (inside) continue;
    w = tidy(preimage(w, images, big, deadline), deadline);
  }
  return w;
}

struct Chain {
  std::vector<Submodule> values;
  unsigned first_index = 0;
  std::optional<unsigned> stable_from;
};

// Pushes a new chain value and reports whether the last window+1 values agree.
bool push_and_test(Chain& chain, Submodule value, unsigned window) {
  chain.values.push_back(std::move(value));
  const std::size_t k = chain.values.size();
  if (k < window + 1) return false;
  for (std::size_t i = k - window; i < k; ++i)
    if (!equal(chain.values[i - 1], chain.values[i])) return false;
  chain.stable_from = chain.first_index + static_cast<unsigned>(k - window - 1);
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ratliff–Rush

ClosureResult ratliff_rush_ideal(const Submodule& j, const ChainOptions& opts) {
  if (!j.is_ideal()) throw PreconditionError("ratliff_rush_ideal expects an ideal");
  ClosureResult res;
  res.window = opts.window;
  if (!j.has_nonzero_generator()) {
    res.value = j;
    res.certified = true;
    res.notes.push_back("zero ideal");
    return res;
  }
  if (is_whole(j)) {
    res.value = Submodule::ambient(j.ring(), 1);
    res.certified = true;
    res.notes.push_back("unit ideal");
    return res;
  }
  std::deque<Submodule> pw{Submodule::ambient(j.ring(), 1), tidy(j)};
  auto power = [&](unsigned k) -> const Submodule& {
    while (pw.size() <= k) {
      opts.deadline.check();
      pw.push_back(tidy(ideal_times(j, pw.back()), opts.deadline));
    }
    return pw[k];
  };
  Chain chain;
  chain.first_index = 0;
  for (unsigned l = 0; l <= opts.lmax; ++l) {
    opts.deadline.check();
    Submodule w = l == 0 ? pw[1] : tidy(colon(power(l + 1), power(l), nullptr, opts.deadline), opts.deadline);
    if (auto len = length_over(w, j)) res.chain_lengths.push_back(*len);
    if (push_and_test(chain, std::move(w), opts.window)) break;
  }
  if (!chain.stable_from)
    throw UnstableChain("Ratliff-Rush chain did not stabilize within lmax = " + std::to_string(opts.lmax),
                        chain.values.back());
  res.value = chain.values.back();
  res.method = ClosureMethod::kColonChain;
  res.stabilization_index = *chain.stable_from;
  res.certified = false;

  // Necessary conditions: extensive, and W·J^ℓ* ⊆ J^{ℓ*+1}.
  if (!contains(res.value, j)) throw SoundnessAlert("Ratliff-Rush result does not contain the input");
  if (!contains(power(res.stabilization_index + 1), ideal_times(res.value, power(res.stabilization_index))))
    throw SoundnessAlert("Ratliff-Rush result fails the colon condition");
  // W^m = J^m proves W ⊆ J~.
  Submodule wm = Submodule::ambient(j.ring(), 1);
  for (unsigned m = 1; m <= opts.power_check_max; ++m) {
    wm = tidy(ideal_times(res.value, wm), opts.deadline);
    if (contains(power(m), wm)) {
      res.power_equality_index = m;
      break;
    }
  }
  return res;
}

ClosureResult ratliff_rush_module(const ModuleEmbedding& e, unsigned n, const ChainOptions& opts) {
  ClosureResult res;
  res.window = opts.window;
  const GradedPiece& mn = e.power(n, opts.deadline);
  if (n == 0 || e.is_zero() || is_whole(mn.module)) {
    res.value = mn.module;
    res.certified = true;
    res.notes.push_back(n == 0 ? "degree zero" : e.is_zero() ? "zero module" : "M^n = F^n");
    return res;
  }

  if (opts.route == RrRoute::kIdealInS) {
    Submodule jn = e.rees_ideal();
    for (unsigned k = 1; k < n; ++k) jn = ideal_times(e.rees_ideal(), jn);
    ClosureResult ideal = ratliff_rush_ideal(jn, opts);
    res = ideal;
    res.value = graded_component(e, ideal.value, n).module;
    res.chain_lengths.clear();
    res.power_equality_index.reset();
    res.notes.push_back("computed as the degree-" + std::to_string(n) + " piece of the closure of (MS)^" +
                        std::to_string(n));
    return res;
  }

  Chain chain;
  chain.first_index = 1;
  for (unsigned l = 1; l <= opts.lmax; ++l) {
    opts.deadline.check();
    const GradedPiece& big = e.power(n * (l + 1), opts.deadline);
    const GradedPiece& small = e.power(n * l, opts.deadline);
    Submodule w = tidy(graded_colon(e, n, big.module, small.module.generators(), n * l, opts.deadline),
                       opts.deadline);
    if (auto len = length_over(w, mn.module)) res.chain_lengths.push_back(*len);
    if (push_and_test(chain, std::move(w), opts.window)) break;
  }
  if (!chain.stable_from)
    throw UnstableChain("Ratliff-Rush chain did not stabilize within lmax = " + std::to_string(opts.lmax),
                        chain.values.back());
  res.value = chain.values.back();
  res.method = ClosureMethod::kColonChain;
  res.stabilization_index = *chain.stable_from;
  res.certified = false;
  if (!contains(res.value, mn.module)) throw SoundnessAlert("Ratliff-Rush result does not contain M^n");

  GradedPiece w{n, res.value};
  GradedPiece wm = w;
  for (unsigned m = 1; m <= opts.power_check_max; ++m) {
    if (m > 1) wm = piece_product(e, wm, w, opts.deadline);
    if (contains(e.power(n * m, opts.deadline).module, wm.module)) {
      res.power_equality_index = m;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Reductions and integrality

SemiDecision is_reduction(const ModuleEmbedding& l, const ModuleEmbedding& m, unsigned s_max,
                          const Deadline& deadline) {
  if (!contains(m.module(), l.module())) throw PreconditionError("L is not contained in M");
  const GradedPiece& l1 = l.power(1, deadline);
  for (unsigned s = 0; s <= s_max; ++s) {
    deadline.check();
    const GradedPiece& ms = m.power(s, deadline);
    GradedPiece prod = s == 0 ? l1 : piece_product(m, l1, ms, deadline);
    if (contains(prod.module, m.power(s + 1, deadline).module)) return {true, s};
  }
  return {false, 0};
}

SemiDecision is_integral_element(const ModuleEmbedding& e, const PolyVector& x, unsigned s_max,
                                 const Deadline& deadline) {
  if (x.size() != e.rank()) throw ContextMismatch("element length differs from the rank");
  if (is_member(x, e.module())) return {true, 0};
  auto cols = e.columns();
  cols.push_back(x);
  ModuleEmbedding n(e.base_ring(), e.rank(), std::move(cols));
  return is_reduction(e, n, s_max, deadline);
}

ClosureResult rr_via_reduction(const ModuleEmbedding& e, const std::vector<PolyVector>& reduction,
                               unsigned n_max, const ChainOptions& opts) {
  ModuleEmbedding l(e.base_ring(), e.rank(), reduction);
  auto red = is_reduction(l, e, opts.lmax, opts.deadline);
  if (!red.yes) throw PreconditionError("the given columns were not verified to be a reduction");
  ClosureResult res;
  res.window = opts.window;
  res.method = ClosureMethod::kReductionBased;
  res.notes.push_back("reduction number witness s = " + std::to_string(red.s));
  const Submodule& m1 = e.power(1, opts.deadline).module;
  Chain chain;
  chain.first_index = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    opts.deadline.check();
    std::vector<PolyVector> powers;
    for (const auto& x : reduction) {
      if (is_zero_vector(x)) continue;
      powers.push_back(e.to_graded(e.linear_form(x).pow(n), n));
    }
    Submodule w = tidy(graded_colon(e, 1, e.power(n + 1, opts.deadline).module, powers, n, opts.deadline),
                       opts.deadline);
    if (auto len = length_over(w, m1)) res.chain_lengths.push_back(*len);
    if (push_and_test(chain, std::move(w), opts.window)) break;
  }
  if (!chain.stable_from)
    throw UnstableChain("reduction colon chain did not stabilize within n_max = " + std::to_string(n_max),
                        chain.values.back());
  res.value = chain.values.back();
  res.stabilization_index = *chain.stable_from;
  if (!contains(res.value, m1)) throw SoundnessAlert("reduction-based closure does not contain M");
  return res;
}

// ---------------------------------------------------------------------------
// Integral closure

ClosureResult integral_closure_monomial(const Submodule& ideal) {
  if (!ideal.is_ideal()) throw PreconditionError("integral_closure_monomial expects an ideal");
  const Ring& ring = ideal.ring();
  if (ring->num_base() != 2) throw PreconditionError("Newton closure needs exactly two base variables");
  ClosureResult res;
  res.method = ClosureMethod::kNewton;
  res.certified = true;
  if (!ideal.has_nonzero_generator()) {
    res.value = ideal;
    return res;
  }
  if (!ideal.is_monomial()) throw PreconditionError("integral_closure_monomial: generator is not a monomial");
  struct Pt {
    long a, b;
  };
  std::vector<Pt> pts;
  const Submodule minimal_gens = minimalize_monomial(ideal);
  for (const auto& g : minimal_gens.generators()) {
    const Monomial& m = g[0].leading().mono;
    for (std::size_t i = 2; i < m.size(); ++i)
      if (m[i]) throw PreconditionError("Newton closure: generator uses a non-base variable");
    pts.push_back({m[0], m[1]});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& p, const Pt& q) { return p.a < q.a || (p.a == q.a && p.b < q.b); });
  std::vector<Pt> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& q = hull.back();
      long cross = (q.a - o.a) * (p.b - o.b) - (q.b - o.b) * (p.a - o.a);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<PolyVector> gens;
  auto add = [&](long a, long b) {
    std::vector<Exponent> e(ring->num_vars(), 0);
    e[0] = static_cast<Exponent>(a);
    e[1] = static_cast<Exponent>(b);
    gens.push_back({Polynomial::monomial(ring, Monomial(ring->layout(), e))});
  };
  add(hull.front().a, hull.front().b);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Pt& p = hull[i];
    const Pt& q = hull[i + 1];
    const long dx = q.a - p.a;
    for (long a = p.a + 1; a <= q.a; ++a) {
      long num = p.b * dx + (q.b - p.b) * (a - p.a);
      add(a, (num + dx - 1) / dx);
    }
  }
  res.value = minimalize_monomial(Submodule(ring, 1, std::move(gens)));
  return res;
}

std::optional<std::vector<Submodule>> monomial_summands(const ModuleEmbedding& e) {
  std::vector<std::vector<Polynomial>> rows(e.rank());
  for (const auto& c : e.columns()) {
    if (is_zero_vector(c)) continue;
    auto mv = monomial_vector(c);
    if (!mv) return std::nullopt;
    rows[mv->first].push_back(c[mv->first]);
  }
  std::vector<Submodule> out;
  for (auto& r : rows) out.push_back(Submodule::ideal(e.base_ring(), std::move(r)));
  return out;
}

namespace {

Submodule direct_sum_of(const Ring& ring, const std::vector<Submodule>& ideals) {
  std::vector<PolyVector> gens;
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (const auto& g : ideals[i].generators()) {
      if (g[0].is_zero()) continue;
      PolyVector v(ideals.size(), Polynomial(ring));
      v[i] = g[0];
      gens.push_back(std::move(v));
    }
  return Submodule(ring, ideals.size(), std::move(gens));
}

}  // namespace

ClosureResult integral_closure_module(const ModuleEmbedding& e, const std::vector<PolyVector>& candidates,
                                      const ClosureOptions& opts) {
  ClosureResult res;
  const Ring& a = e.base_ring();
  if (e.is_zero() || is_whole(e.module())) {
    res.value = e.module();
    res.certified = true;
    res.notes.push_back(e.is_zero() ? "zero module" : "M = F");
    return res;
  }
  if (auto summands = monomial_summands(e)) {
    std::vector<Submodule> closed;
    for (const auto& s : *summands) closed.push_back(integral_closure_monomial(s).value);
    res.value = direct_sum_of(a, closed);
    res.method = ClosureMethod::kNewton;
    res.certified = true;
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if (!is_member(candidates[k], res.value))
        throw PreconditionError("candidate " + std::to_string(k + 1) + " is not integral over M");
    return res;
  }
  if (!e.colength()) throw PreconditionError("integral closure of a non-monomial module needs finite colength");

  std::vector<PolyVector> cols = e.columns();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    auto dec = is_integral_element(e, candidates[k], opts.s_max, opts.deadline);
    if (!dec.yes)
      throw PreconditionError("candidate " + std::to_string(k + 1) + " was not verified integral with s <= " +
                              std::to_string(opts.s_max));
    res.notes.push_back("candidate " + std::to_string(k + 1) + " integral with s = " + std::to_string(dec.s));
    cols.push_back(candidates[k]);
  }
  Submodule n = tidy(Submodule(a, e.rank(), cols), opts.deadline);
  if (candidates.empty()) res.notes.push_back("no candidates supplied");

  Submodule mideal = Submodule::maximal_ideal_power(a, 1);
  for (int round = 0; round < 64; ++round) {
    bool grew = false;
    if (opts.socle_probes) {
      Submodule socle = colon(n, mideal, nullptr, opts.deadline);
      for (const auto& q : socle.generators()) {
        if (is_member(q, n)) continue;
        opts.deadline.check();
        if (is_integral_element(e, q, opts.probe_s_max, opts.deadline).yes) {
          n = tidy(sum(n, Submodule(a, e.rank(), {q})), opts.deadline);
          res.notes.push_back("adjoined an integral socle element");
          grew = true;
          break;
        }
      }
      if (grew) continue;
    }
    if (opts.check_ratliff_rush) {
      ModuleEmbedding en = ModuleEmbedding::from_submodule(n);
      ClosureResult rr = ratliff_rush_module(en, 1, opts.chain);
      if (!contains(n, rr.value)) {
        n = tidy(rr.value, opts.deadline);
        res.notes.push_back("adjoined Ratliff-Rush closure elements");
        grew = true;
      }
    }
    if (!grew) break;
  }
  if (opts.socle_probes) res.notes.push_back("maximality: socle basis probes found nothing further");
  if (opts.check_ratliff_rush) res.notes.push_back("maximality: result is Ratliff-Rush closed");
  res.value = n;
  res.method = ClosureMethod::kCandidateVerified;
  res.certified = false;
  return res;
}

ClosureResult integral_closure_power(const ModuleEmbedding& e, const ClosureResult& closure, unsigned n) {
  ClosureResult res;
  const Ring& a = e.base_ring();
  if (n == 0) {
    res.value = Submodule::ambient(a, 1);
    res.certified = true;
    return res;
  }
  if (auto summands = monomial_summands(e)) {
    const auto& basis = e.fiber_basis(n);
    const std::size_t f0 = e.rees_ring()->fiber_begin();
    std::map<std::vector<Exponent>, Submodule> memo;
    std::vector<PolyVector> gens;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Submodule prod = Submodule::ambient(a, 1);
      for (std::size_t i = 0; i < e.rank(); ++i)
        for (Exponent c = 0; c < basis[k][f0 + i]; ++c) prod = minimalize_monomial(ideal_times((*summands)[i], prod));
      Submodule closed = integral_closure_monomial(prod).value;
      for (const auto& g : closed.generators()) {
        if (g[0].is_zero()) continue;
        PolyVector v(basis.size(), Polynomial(a));
        v[k] = g[0];
        gens.push_back(std::move(v));
      }
    }
    res.value = Submodule(a, basis.size(), std::move(gens));
    res.method = ClosureMethod::kNewton;
    res.certified = true;
    return res;
  }
  ModuleEmbedding bar = ModuleEmbedding::from_submodule(closure.value);
  res.value = bar.power(n).module;
  res.method = closure.method;
  res.certified = closure.certified;
  res.notes.push_back("closure of M^n taken as the n-th power of the closure of M");
  return res;
}

bool check_integral_equation(const Polynomial& x, const std::vector<Polynomial>& coeffs) {
  if (coeffs.empty()) throw PreconditionError("an integral equation needs at least one coefficient");
  if (!x.is_fiber_homogeneous()) throw PreconditionError("x is not fiber-homogeneous");
  const unsigned deg = x.fiber_degree();
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = coeffs[i];
    if (c.is_zero()) continue;
    require_same_ring(c.ring(), x.ring());
    if (!c.is_fiber_homogeneous() || c.fiber_degree() != (i + 1) * deg)
      throw PreconditionError("degree mismatch: coefficient " + std::to_string(i + 1) + " must have fiber degree " +
                              std::to_string((i + 1) * deg));
  }
  Polynomial total = x.pow(static_cast<unsigned>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!coeffs[i].is_zero()) total += coeffs[i] * x.pow(static_cast<unsigned>(n - i - 1));
  return total.is_zero();
}

bool coefficients_in_powers(const ModuleEmbedding& e, const std::vector<Polynomial>& coeffs) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& c = coeffs[i];
    if (c.is_zero()) continue;
    const unsigned k = static_cast<unsigned>(i + 1);
    const unsigned deg = c.fiber_degree();
    if (!c.is_fiber_homogeneous() || deg < k) return false;
    if (!is_member(e.to_graded(c, deg), graded_piece(e, k, deg).module)) return false;
  }
  return true;
}

}  // namespace reescalc
