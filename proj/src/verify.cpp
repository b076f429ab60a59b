#include "uea/verify.hpp"

#include <chrono>
#include <climits>
#include <functional>
#include <stdexcept>

#include "uea/echelon.hpp"
#include "uea/identities.hpp"
#include "uea/koszul.hpp"

namespace uea {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inconclusive:
      return "inconclusive-window";
  }
  return "?";
}

void VerificationReport::fail(std::string w) {
  if (status == CheckStatus::Fail) return;
  status = CheckStatus::Fail;
  witness = std::move(w);
}

void VerificationReport::inconclusive(std::string w) {
  if (status != CheckStatus::Pass) return;
  status = CheckStatus::Inconclusive;
  witness = std::move(w);
}

void VerificationReport::absorb_parts() {
  for (const auto& p : parts) {
    if (p.status == CheckStatus::Fail) fail(p.check + ": " + p.witness);
  }
  for (const auto& p : parts) {
    if (p.status == CheckStatus::Inconclusive) inconclusive(p.check + ": " + p.witness);
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  VerificationReport& rep;
  Clock::time_point start = Clock::now();
  ~Timer() { rep.seconds = std::chrono::duration<double>(Clock::now() - start).count(); }
};

VerificationReport start(const char* check, int window, int arity = 0) {
  VerificationReport r;
  r.check = check;
  r.window = window;
  r.arity = arity;
  return r;
}

std::vector<long> table(const std::map<int, int>& dims, int lo, int hi, long degree_zero = -1) {
  std::vector<long> out(hi + 1, 0);
  if (degree_zero >= 0) out[0] = degree_zero;
  for (int n = lo; n <= hi; ++n) {
    auto it = dims.find(n);
    out[n] = it == dims.end() ? 0 : it->second;
  }
  return out;
}

std::vector<long> space_dims(const GradedSpace& sp, int lo, int hi) {
  std::vector<long> out(hi + 1, 0);
  for (int n = lo; n <= hi; ++n) out[n] = sp.dim(n);
  return out;
}

int known_arity(const AInfinityStructure& a) { return a.max_arity() == INT_MAX ? 0 : a.max_arity(); }

// First degree where two tables differ.
int first_difference(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n)
    if (a[n] != b[n]) return static_cast<int>(n);
  return -1;
}

std::string vec_text(const GradedSpace& sp, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += to_string(c) + " " + sp.name(i);
  }
  return s;
}

GradedMap l1_map(const LInfinityAlgebra& g) {
  GradedMap l1(g.space, g.space, -1);
  for (int x = 0; x < g.space->size(); ++x) {
    const int one[1] = {x};
    l1.set_column(x, g.bracket(one));
  }
  return l1;
}

// Minimum suspended letter degree of a space (the shortest bar letter).
int min_degree(const GradedSpace& sp) {
  int m = INT_MAX;
  for (int i = 0; i < sp.size(); ++i) m = std::min(m, sp.degree(i));
  return m;
}

}  // namespace

std::vector<long> symmetric_dimensions(const std::vector<int>& generator_degrees, int max_degree) {
  std::vector<long> series(max_degree + 1, 0);
  series[0] = 1;
  for (int d : generator_degrees) {
    if (d < 1) throw PreconditionError("generator degrees must be positive");
    if (d % 2 != 0) {
      for (int n = max_degree; n >= d; --n) series[n] += series[n - d];
    } else {
      for (int n = d; n <= max_degree; ++n) series[n] += series[n - d];
    }
  }
  return series;
}

VerificationReport derived_pbw_check(const LInfinityAlgebra& g, int window) {
  VerificationReport rep = start("derived-pbw", window);
  Timer timer{rep};
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, window + 2));
  CobarAlgebra om(ce, window + 1);
  auto hom = table(homology_dims(om.complex(), {1, window}), 1, window, 1);
  std::vector<int> hdeg;
  for (const auto& [n, k] : homology_dims(make_complex(g.space, l1_map(g)), {1, window}))
    hdeg.insert(hdeg.end(), k, n);
  auto sym = symmetric_dimensions(hdeg, window);
  rep.tables.emplace_back("homology of cobar", hom);
  rep.tables.emplace_back("symmetric algebra", sym);
  if (int n = first_difference(hom, sym); n >= 0)
    rep.fail("degree " + std::to_string(n) + ": homology " + std::to_string(hom[n]) + ", symmetric algebra " +
             std::to_string(sym[n]));
  return rep;
}

VerificationReport classical_pbw_check(const DgLieAlgebra& g, int window) {
  VerificationReport rep = start("classical-pbw", window);
  Timer timer{rep};
  require_dg_lie(g);
  ClassicalEnvelope u(g, window + 1);
  auto udims = space_dims(*u.space(), 0, window);
  udims[0] = 1;
  auto sym = symmetric_dimensions(g.degrees(), window);
  rep.tables.emplace_back("envelope", udims);
  rep.tables.emplace_back("symmetric algebra", sym);
  if (int n = first_difference(udims, sym); n >= 0) {
    rep.fail("envelope dimension differs in degree " + std::to_string(n));
    return rep;
  }
  HomologyLie hl = homology_lie(g, window);
  ClassicalEnvelope uh(hl.lie, window);
  auto sbar = symmetric_algebra_basis(hl.lie.space, window);
  const auto& uw = u.words();
  auto in_u = [&](const Vec& x) {
    Vec out;
    for (const auto& [gen, c] : x) add_term(out, uw.index(Word{gen}), c);
    return out;
  };
  auto mul = [&](const Vec& x, const Vec& y) {
    Vec out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) add_scaled(out, u.multiply(a, b), ca * cb);
    return out;
  };
  const auto hdeg = hl.lie.degrees();
  RepresentativeChoice choice;
  for (int idx = 0; idx < sbar->size(); ++idx) {
    const Word& w = sbar->word(idx);
    std::vector<Vec> factors;
    std::vector<int> degs;
    for (int y : w) {
      factors.push_back(in_u(hl.representatives[y]));
      degs.push_back(hdeg[y]);
    }
    const int n = sbar->degree(w);
    choice.cycles[n].push_back(symmetrized_product(factors, degs, mul));
    choice.names[n].push_back(sbar->space()->name(idx));
  }
  Contraction c;
  try {
    c = contraction_onto_homology(u.complex(), {1, window}, &choice);
  } catch (const PreconditionError& e) {
    rep.fail(std::string("symmetrized representatives are not a homology basis: ") + e.what());
    return rep;
  }
  rep.tables.emplace_back("homology of envelope", table(homology_dims(u.complex(), {1, window}), 1, window, 1));
  rep.notes.emplace_back("identification", "PBW symmetrization of homology representatives");
  // Φ: U(H) -> H(U), PBW monomial y_1..y_k -> [r_1 ⋯ r_k]
  const auto& hsp = *c.small.space;
  const auto& ush = *uh.space();
  std::vector<Vec> phi(ush.size());
  for (int a = 0; a < ush.size(); ++a) {
    const Word& w = uh.words().word(a);
    Vec prod = in_u(hl.representatives[w[0]]);
    for (std::size_t t = 1; t < w.size(); ++t) prod = mul(prod, in_u(hl.representatives[w[t]]));
    phi[a] = c.p.apply(prod);
  }
  for (int n = 1; n <= window; ++n) {
    Echelon e(false);
    int k = 0;
    for (int a : ush.in_degree(n)) e.insert(phi[a], k++);
    if (e.rank() != hsp.dim(n)) {
      rep.fail("U(H) -> H(U) is not bijective in degree " + std::to_string(n));
      return rep;
    }
  }
  for (int a = 0; a < ush.size(); ++a)
    for (int b = 0; b < ush.size(); ++b) {
      if (ush.degree(a) + ush.degree(b) > window) continue;
      Vec lhs;
      for (const auto& [z, k] : uh.multiply(a, b)) add_scaled(lhs, phi[z], k);
      Vec rhs = c.p.apply(mul(c.i.apply(phi[a]), c.i.apply(phi[b])));
      if (lhs != rhs) {
        rep.fail("product of " + ush.name(a) + " and " + ush.name(b) + ": " + vec_text(hsp, lhs) + " vs " +
                 vec_text(hsp, rhs));
        return rep;
      }
    }
  return rep;
}

VerificationReport quillen_check(const LInfinityAlgebra& g, std::shared_ptr<const AInfinityStructure> envelope,
                                 int window) {
  VerificationReport rep = start("quillen", window, known_arity(*envelope));
  Timer timer{rep};
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, window + 2));
  TwistingCochain t = canonical_twisting_cochain(ce, envelope);

  VerificationReport mc = start("maurer-cartan", window);
  IdentityReport mr = check_maurer_cartan(t, window);
  if (!mr.ok) {
    mc.fail(mr.witness + " (degree " + std::to_string(mr.degree) + ")");
  } else if (mr.inconclusive) {
    mc.inconclusive(mr.note);
  }
  rep.parts.push_back(mc);

  const auto& asp = *envelope->space();
  const int longest = (window + 2) / (min_degree(asp) + 1);
  if (envelope->top_degree() < window || longest > envelope->max_arity()) {
    VerificationReport skip = start("bar", window);
    skip.inconclusive("bar construction of the envelope needs products of arity " + std::to_string(longest));
    rep.parts.push_back(skip);
    rep.absorb_parts();
    return rep;
  }
  auto bar_a = std::make_shared<DgCoalgebra>(bar(*envelope, window + 2, envelope->max_arity()));
  GradedMap q = coalgebra_map_from_cochain(t, *bar_a);
  const auto& csp = *ce->complex.space;

  VerificationReport chain = start("chain-map", window);
  for (int idx = 0; idx < csp.size() && chain.status == CheckStatus::Pass; ++idx) {
    if (csp.degree(idx) > window + 1) continue;
    Vec lhs = bar_a->complex.d.apply(q.column(idx));
    Vec rhs = q.apply(ce->complex.d.column(idx));
    if (lhs != rhs) chain.fail(csp.name(idx));
  }
  rep.parts.push_back(chain);

  VerificationReport inj = start("injective", window);
  std::vector<long> ranks(window + 1, 0);
  for (int n = 0; n <= window; ++n) {
    Echelon e(false);
    int k = 0;
    for (int idx : csp.in_degree(n)) e.insert(q.column(idx), k++);
    ranks[n] = e.rank();
    if (e.rank() != csp.dim(n) && inj.status == CheckStatus::Pass) inj.fail("degree " + std::to_string(n));
  }
  inj.tables.emplace_back("rank of q", ranks);
  rep.parts.push_back(inj);

  auto iso_part = [&](const char* name, const ChainComplex& src, const ChainComplex& tgt, const GradedMap& f,
                      int lo) {
    VerificationReport part = start(name, window);
    auto hs = table(homology_dims(src, {lo, window}), lo, window, 1);
    auto ht = table(homology_dims(tgt, {lo, window}), lo, window, 1);
    auto rk = table(induced_rank(src, tgt, f, {lo, window}), lo, window, 1);
    part.tables.emplace_back("source homology", hs);
    part.tables.emplace_back("target homology", ht);
    part.tables.emplace_back("induced rank", rk);
    for (int n = 0; n <= window && part.status == CheckStatus::Pass; ++n)
      if (hs[n] != ht[n] || rk[n] != hs[n]) part.fail("degree " + std::to_string(n));
    rep.parts.push_back(part);
  };
  iso_part("homology-q", ce->complex, bar_a->complex, q, 0);

  CobarAlgebra om_c(ce, window + 1), om_b(bar_a, window + 1);
  const auto& ocw = om_c.words();
  GradedMap omega_q(om_c.space(), om_b.space(), 0);
  std::vector<Vec> letter_image(ocw.alphabet().size());
  for (int l = 0; l < ocw.alphabet().size(); ++l)
    for (const auto& [bw, coef] : q.column(om_c.coalgebra_index(l)))
      add_term(letter_image[l], om_b.letter_of(bw), coef);
  for (int idx = 0; idx < ocw.size(); ++idx) {
    WordVec acc{{Word{}, Scalar(1)}};
    for (int l : ocw.word(idx)) {
      WordVec next;
      for (const auto& [w, c] : acc)
        for (const auto& [y, k] : letter_image[l]) {
          Word nw = w;
          nw.push_back(y);
          add_term(next, nw, c * k);
        }
      acc = std::move(next);
    }
    Vec col;
    for (const auto& [w, c] : acc) add_term(col, om_b.words().index(w), c);
    omega_q.set_column(idx, std::move(col));
  }
  iso_part("homology-cobar-q", om_c.complex(), om_b.complex(), omega_q, 1);
  rep.absorb_parts();
  return rep;
}

std::shared_ptr<const AInfinityStructure> default_envelope(const LInfinityAlgebra& g, int arity_bound, int window) {
  if (g.is_minimal()) return baranovsky_envelope(g, arity_bound, window).algebra;
  require_dg_lie(g);
  return std::make_shared<ClassicalEnvelope>(g, window + 1);
}

VerificationReport strictness_check(const AInfinityStructure& envelope, const LInfinityAlgebra& g, int arity_bound) {
  VerificationReport rep = start("strictness", envelope.top_degree(), arity_bound);
  Timer timer{rep};
  const auto& esp = *envelope.space();
  std::vector<int> to_env(g.space->size());
  for (int x = 0; x < g.space->size(); ++x) {
    auto i = esp.find(g.space->name(x));
    if (!i || esp.degree(*i) != g.space->degree(x))
      throw PreconditionError("envelope has no one-letter word for generator " + g.space->name(x));
    to_env[x] = *i;
  }
  std::vector<int> letter_of_env(esp.size(), -1);
  for (int x = 0; x < g.space->size(); ++x) letter_of_env[to_env[x]] = x;
  auto l = antisymmetrize(envelope, std::min(arity_bound, envelope.max_arity()));
  const auto degs = g.degrees();
  std::function<void(Word&, int)> rec = [&](Word& w, int deg) {
    if (rep.status != CheckStatus::Pass) return;
    const int k = static_cast<int>(w.size());
    if (k >= 1) {
      Word mapped;
      for (int x : w) mapped.push_back(to_env[x]);
      Vec got;
      for (const auto& [z, c] : l.bracket(mapped))
        if (letter_of_env[z] >= 0) add_term(got, letter_of_env[z], c);
      if (got != g.bracket(w)) {
        std::string name;
        for (int x : w) name += (name.empty() ? "" : " ") + g.space->name(x);
        rep.fail("l_" + std::to_string(k) + "(" + name + "): envelope gives " + vec_text(*g.space, got) +
                 ", algebra gives " + vec_text(*g.space, g.bracket(w)));
        return;
      }
    }
    if (k == arity_bound) return;
    for (int a = w.empty() ? 0 : w.back(); a < g.space->size(); ++a) {
      if (!w.empty() && a == w.back() && degs[a] % 2 == 0) continue;
      if (deg + degs[a] + k + 1 - 2 > envelope.top_degree()) continue;
      w.push_back(a);
      rec(w, deg + degs[a]);
      w.pop_back();
    }
  };
  Word w;
  rec(w, 0);
  return rep;
}

VerificationReport twisted_acyclicity_check(const LInfinityAlgebra& g,
                                            std::shared_ptr<const AInfinityStructure> envelope, int window) {
  VerificationReport rep = start("twisted-acyclicity", window, known_arity(*envelope));
  Timer timer{rep};
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, window + 1));
  TwistingCochain t = canonical_twisting_cochain(ce, envelope);
  ChainComplex k;
  try {
    k = twisted_tensor(t, window + 1);
  } catch (const WindowError& e) {
    rep.inconclusive(e.what());
    return rep;
  }
  auto check = check_complex(k, {0, window + 1});
  if (!check.ok) {
    rep.fail("d^2 != 0 on " + k.space->name(check.element));
    return rep;
  }
  auto dims = table(homology_dims(k, {0, window}), 0, window);
  rep.tables.emplace_back("homology", dims);
  for (int n = 0; n <= window; ++n)
    if (dims[n] != (n == 0 ? 1 : 0)) {
      rep.fail("H_" + std::to_string(n) + " has dimension " + std::to_string(dims[n]));
      break;
    }
  return rep;
}

VerificationReport koszul_dual_check(const LInfinityAlgebra& g, std::shared_ptr<const AInfinityStructure> envelope,
                                     int window) {
  VerificationReport rep = start("koszul-dual", window, known_arity(*envelope));
  Timer timer{rep};
  const int longest = (window + 1) / (min_degree(*envelope->space()) + 1);
  if (envelope->top_degree() < window - 1 || longest > envelope->max_arity()) {
    rep.inconclusive("bar construction of the envelope needs products of arity " + std::to_string(longest));
    return rep;
  }
  DgCoalgebra ce = chevalley_eilenberg(g, window + 1);
  DgCoalgebra ba = bar(*envelope, window + 1, envelope->max_arity());
  auto hc = table(homology_dims(ce.complex, {0, window}), 0, window);
  auto hb = table(homology_dims(ba.complex, {0, window}), 0, window);
  rep.tables.emplace_back("Chevalley-Eilenberg homology", hc);
  rep.tables.emplace_back("bar homology of envelope", hb);
  if (int n = first_difference(hc, hb); n >= 0) rep.fail("degree " + std::to_string(n));
  return rep;
}

VerificationReport envelope_preserves_qis(const StrictMorphism& f, int window) {
  VerificationReport rep = start("envelope-preserves-qis", window);
  Timer timer{rep};
  require_dg_lie(f.source);
  require_dg_lie(f.target);
  if (auto bad = strict_morphism_defect(f)) {
    std::string name;
    for (int x : *bad) name += (name.empty() ? "" : " ") + f.source.space->name(x);
    rep.fail("not a strict morphism on " + name);
    return rep;
  }
  ChainComplex gs = make_complex(f.source.space, l1_map(f.source));
  ChainComplex gt = make_complex(f.target.space, l1_map(f.target));
  auto hs = table(homology_dims(gs, {1, window}), 1, window, 0);
  auto ht = table(homology_dims(gt, {1, window}), 1, window, 0);
  auto rk = table(induced_rank(gs, gt, f.linear, {1, window}), 1, window, 0);
  rep.tables.emplace_back("source homology", hs);
  rep.tables.emplace_back("target homology", ht);
  rep.tables.emplace_back("induced rank", rk);
  for (int n = 1; n <= window; ++n)
    if (hs[n] != ht[n] || rk[n] != hs[n]) {
      rep.fail("precondition: f is not a quasi-isomorphism in degree " + std::to_string(n));
      return rep;
    }
  ClassicalEnvelope us(f.source, window + 1), ut(f.target, window + 1);
  GradedMap uf(us.space(), ut.space(), 0);
  std::vector<Vec> image(f.source.space->size());
  for (int x = 0; x < f.source.space->size(); ++x)
    for (const auto& [y, c] : f.linear.column(x)) add_term(image[x], ut.words().index(Word{y}), c);
  auto mul = [&](const Vec& x, const Vec& y) {
    Vec out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) add_scaled(out, ut.multiply(a, b), ca * cb);
    return out;
  };
  for (int idx = 0; idx < us.space()->size(); ++idx) {
    const Word& w = us.words().word(idx);
    Vec acc = image[w[0]];
    for (std::size_t t = 1; t < w.size(); ++t) acc = mul(acc, image[w[t]]);
    uf.set_column(idx, std::move(acc));
  }
  for (int idx = 0; idx < us.space()->size(); ++idx) {
    if (us.space()->degree(idx) > window + 1) continue;
    if (ut.differential().apply(uf.column(idx)) != uf.apply(us.differential().column(idx))) {
      rep.fail("U(f) is not a chain map on " + us.space()->name(idx));
      return rep;
    }
  }
  auto us_h = table(homology_dims(us.complex(), {1, window}), 1, window, 1);
  auto ut_h = table(homology_dims(ut.complex(), {1, window}), 1, window, 1);
  auto urk = table(induced_rank(us.complex(), ut.complex(), uf, {1, window}), 1, window, 1);
  rep.tables.emplace_back("source envelope homology", us_h);
  rep.tables.emplace_back("target envelope homology", ut_h);
  rep.tables.emplace_back("envelope induced rank", urk);
  for (int n = 0; n <= window; ++n)
    if (us_h[n] != ut_h[n] || urk[n] != us_h[n]) {
      rep.fail("U(f) is not a homology isomorphism in degree " + std::to_string(n));
      break;
    }
  return rep;
}

namespace {

// Affine expression: (basis index, unknown id or -1 for the constant part).
using Affine = std::map<std::pair<int, int>, Scalar>;

void add_affine(Affine& acc, const std::pair<int, int>& key, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

// Shifted product b̂_k(s y_1..s y_k) = (décalage sign) s m_k(y_1..y_k).
Vec shifted(const AInfinityStructure& a, const Word& w) {
  std::vector<int> degs(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) degs[t] = a.space()->degree(w[t]);
  Vec m = a.product(w);
  if (decalage_sign(degs) < 0) m = scaled(m, Scalar(-1));
  return m;
}

int out_degree(const GradedSpace& sp, const Word& w) {
  int d = static_cast<int>(w.size()) - 2;
  for (int x : w) d += sp.degree(x);
  return d;
}

// Σ_{r=2..r_max} Σ_{w = w_1..w_r} b̂^B_r(F(w_1),..,F(w_r)) - Σ_{i,k>=2} ± F(.. b̂^A_k(..) ..)
// for the A∞-morphism equation on the word u, where F(w) = f̂_{|w|}(w).
Affine morphism_equation(const AInfinityStructure& a, const std::function<Vec(const Word&)>& bhat,
                         const std::function<Affine(const Word&)>& F, const Word& u, int r_max) {
  const int n = static_cast<int>(u.size());
  const auto& asp = *a.space();
  Affine out;
  for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    const int r = __builtin_popcount(cuts) + 1;
    if (r < 2 || r > r_max) continue;
    std::vector<Affine> parts;
    Word piece{u[0]};
    for (int t = 1; t < n; ++t) {
      if (cuts & (1u << (t - 1))) {
        parts.push_back(F(piece));
        piece.clear();
      }
      piece.push_back(u[t]);
    }
    parts.push_back(F(piece));
    // multilinear expansion with at most one non-constant factor
    std::function<void(std::size_t, Word&, Scalar, int)> rec = [&](std::size_t t, Word& w, Scalar c, int unknown) {
      if (t == parts.size()) {
        for (const auto& [z, k] : bhat(w)) add_affine(out, {z, unknown}, c * k);
        return;
      }
      for (const auto& [key, k] : parts[t]) {
        if (key.second >= 0 && unknown >= 0) throw std::logic_error("iso search: two unknown factors");
        w.push_back(key.first);
        rec(t + 1, w, c * k, key.second >= 0 ? key.second : unknown);
        w.pop_back();
      }
    };
    Word w;
    rec(0, w, Scalar(1), -1);
  }
  long before = 0;
  for (int i = 0; i < n; ++i) {
    const Scalar sign(((before & 1) != 0) ? -1 : 1);
    for (int k = 2; i + k <= n; ++k) {
      Word inner(u.begin() + i, u.begin() + i + k);
      Vec m = shifted(a, inner);
      for (const auto& [z, c] : m) {
        Word nw(u.begin(), u.begin() + i);
        nw.push_back(z);
        nw.insert(nw.end(), u.begin() + i + k, u.end());
        for (const auto& [key, v] : F(nw)) add_affine(out, key, -sign * c * v);
      }
    }
    before += asp.degree(u[i]) + 1;
  }
  return out;
}

void for_each_word_upto(const GradedSpace& sp, int length, int max_out, const std::function<void(const Word&)>& f) {
  std::function<void(Word&, int)> rec = [&](Word& w, int deg) {
    if (static_cast<int>(w.size()) == length) {
      if (deg + length - 2 <= max_out) f(w);
      return;
    }
    for (int a = 0; a < sp.size(); ++a) {
      if (deg + sp.degree(a) + length - 2 > max_out) continue;
      w.push_back(a);
      rec(w, deg + sp.degree(a));
      w.pop_back();
    }
  };
  Word w;
  rec(w, 0);
}

}  // namespace

IsoSearchResult a_infinity_iso_search(const AInfinityAlgebra& a, const AInfinityAlgebra& b, int arity_bound,
                                      int window) {
  if (!a.is_minimal() || !b.is_minimal()) throw PreconditionError("iso search needs minimal A-infinity algebras");
  const auto& asp = *a.space();
  const auto& bsp = *b.space();
  if (asp.size() != bsp.size()) throw PreconditionError("iso search: graded dimensions differ");
  std::vector<int> to_b(asp.size());
  for (int x = 0; x < asp.size(); ++x) {
    auto y = bsp.find(asp.name(x));
    if (!y || bsp.degree(*y) != asp.degree(x))
      throw PreconditionError("iso search: basis element " + asp.name(x) + " has no counterpart");
    to_b[x] = *y;
  }
  if (std::min(a.top_degree(), b.top_degree()) < window)
    throw WindowError("iso search window beyond the known products");
  IsoSearchResult res;
  auto bhat = [&](const Word& w) { return shifted(b, w); };
  for (int n = 1; n < arity_bound; ++n) {
    // unknowns: f̂_{n}(w) -> z for n >= 2
    std::map<std::pair<Word, int>, int> unknown_id;
    std::vector<std::pair<Word, int>> unknowns;
    auto F = [&](const Word& w) {
      Affine out;
      if (w.size() == 1) {
        out[{to_b[w[0]], -1}] = 1;
        return out;
      }
      if (static_cast<int>(w.size()) == n) {
        int d = out_degree(asp, w) + 1;
        for (int z : bsp.in_degree(d)) {
          auto [it, inserted] = unknown_id.try_emplace({w, z}, static_cast<int>(unknowns.size()));
          if (inserted) unknowns.emplace_back(w, z);
          out[{z, it->second}] = 1;
        }
        return out;
      }
      if (auto it = res.components.find(w); it != res.components.end())
        for (const auto& [z, c] : it->second) out[{z, -1}] = c;
      return out;
    };
    std::vector<std::pair<Word, Affine>> equations;
    for_each_word_upto(asp, n + 1, window, [&](const Word& u) {
      equations.emplace_back(u, morphism_equation(a, bhat, F, u, n + 1));
    });
    // columns: unknown -> equation rows; rhs: minus the constant part
    std::map<std::pair<std::size_t, int>, int> row_id;
    auto row = [&](std::size_t e, int z) {
      return row_id.try_emplace({e, z}, static_cast<int>(row_id.size())).first->second;
    };
    std::vector<Vec> columns(unknowns.size());
    Vec rhs;
    for (std::size_t e = 0; e < equations.size(); ++e)
      for (const auto& [key, c] : equations[e].second) {
        const int r = row(e, key.first);
        if (key.second < 0) {
          add_term(rhs, r, -c);
        } else {
          add_term(columns[key.second], r, c);
        }
      }
    Echelon ech(true);
    for (std::size_t j = 0; j < columns.size(); ++j) ech.insert(columns[j], static_cast<int>(j));
    auto sol = ech.solve(rhs);
    if (!sol) {
      res.failed_arity = n + 1;
      // first equation that makes the system inconsistent
      const int u_count = static_cast<int>(unknowns.size());
      std::map<int, Vec> rows;
      for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [r, c] : columns[j]) rows[r][static_cast<int>(j)] = c;
      for (const auto& [r, c] : rhs) rows[r][u_count] = c;
      std::vector<std::pair<std::size_t, int>> by_row(row_id.size());
      for (const auto& [key, r] : row_id) by_row[r] = key;
      Echelon rech(false);
      for (int r = 0; r < static_cast<int>(by_row.size()); ++r) {
        auto it = rows.find(r);
        if (it == rows.end()) continue;
        if (rech.insert(it->second, r).independent && rech.rows().back().vec.begin()->first == u_count) {
          const auto& [e, z] = by_row[r];
          const Word& u = equations[e].first;
          std::string name;
          for (int x : u) name += (name.empty() ? "" : "|") + asp.name(x);
          res.failed_degree = out_degree(asp, u);
          res.witness = "arity " + std::to_string(n + 1) + " equation on [" + name + "], component " + bsp.name(z);
          break;
        }
      }
      return res;
    }
    for (const auto& [j, c] : *sol) add_term(res.components[unknowns[j].first], unknowns[j].second, c);
    for (auto it = res.components.begin(); it != res.components.end();)
      it = it->second.empty() ? res.components.erase(it) : std::next(it);
  }
  res.found = true;
  return res;
}

AInfinityAlgebra gauge_transform(const AInfinityAlgebra& a, const std::map<Word, Vec>& components, int arity_bound,
                                 int window) {
  if (!a.is_minimal()) throw PreconditionError("gauge transform needs a minimal A-infinity algebra");
  const auto& sp = *a.space();
  std::map<Word, Vec> shifted_b;  // b̂ on words
  auto bhat = [&](const Word& w) {
    auto it = shifted_b.find(w);
    return it == shifted_b.end() ? Vec{} : it->second;
  };
  auto F = [&](const Word& w) {
    Affine out;
    if (w.size() == 1) {
      out[{w[0], -1}] = 1;
      return out;
    }
    if (auto it = components.find(w); it != components.end())
      for (const auto& [z, c] : it->second) out[{z, -1}] = c;
    return out;
  };
  for (int n = 2; n <= arity_bound; ++n) {
    std::map<Word, Vec> level;
    for_each_word_upto(sp, n, window, [&](const Word& u) {
      // b̂^B_n(u) = -(everything else in the equation)
      Affine rest = morphism_equation(a, bhat, F, u, n - 1);
      Vec v;
      for (const auto& [key, c] : rest) add_term(v, key.first, -c);
      if (!v.empty()) level.emplace(u, std::move(v));
    });
    shifted_b.insert(level.begin(), level.end());
  }
  std::map<Word, Vec> products;
  for (const auto& [w, v] : shifted_b) {
    std::vector<int> degs(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) degs[t] = sp.degree(w[t]);
    products.emplace(w, decalage_sign(degs) < 0 ? scaled(v, Scalar(-1)) : v);
  }
  return AInfinityAlgebra(a.space(), std::move(products), arity_bound, window);
}

}  // namespace uea
