#include "uea/perturbation.hpp"

#include <stdexcept>

#include "uea/koszul.hpp"

namespace uea {

namespace {

int parity(long e) { return (e & 1) ? -1 : 1; }

// Letterwise image of a word under a degree-0 map; empty when a letter maps to 0.
WordVec tensor_power(const GradedMap& f, const Word& w) {
  WordVec acc{{Word{}, Scalar(1)}};
  for (int x : w) {
    const Vec& col = f.column(x);
    if (col.empty()) return {};
    WordVec next;
    for (const auto& [pw, c] : acc)
      for (const auto& [y, k] : col) {
        Word nw = pw;
        nw.push_back(y);
        add_term(next, nw, c * k);
      }
    acc = std::move(next);
  }
  return acc;
}

WordVec tensor_power(const std::vector<Vec>& cols, const Word& prefix, const Word& w, std::size_t from) {
  WordVec acc{{prefix, Scalar(1)}};
  for (std::size_t t = from; t < w.size(); ++t) {
    const Vec& col = cols[w[t]];
    if (col.empty()) return {};
    WordVec next;
    for (const auto& [pw, c] : acc)
      for (const auto& [y, k] : col) {
        Word nw = pw;
        nw.push_back(y);
        add_term(next, nw, c * k);
      }
    acc = std::move(next);
  }
  return acc;
}

// Σ_i (-1)^{shifted degrees before i} [..| f(y_i) |..] for a degree -1 letter map.
WordVec letter_derivation(const GradedMap& f, const GradedSpace& sp, const Word& w) {
  WordVec out;
  long before = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int sign = parity(before);
    for (const auto& [y, c] : f.column(w[i])) {
      Word nw = w;
      nw[i] = y;
      add_term(out, nw, c * sign);
    }
    before += sp.degree(w[i]) + 1;
  }
  return out;
}

WordVec staggered_homotopy(const GradedMap& h, const std::vector<Vec>& ip, const GradedSpace& sp, const Word& w) {
  WordVec out;
  long before = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Scalar sign(parity(before));
    for (const auto& [y, c] : h.column(w[j])) {
      Word prefix(w.begin(), w.begin() + j);
      prefix.push_back(y);
      add_scaled(out, tensor_power(ip, prefix, w, j + 1), c * sign);
    }
    before += sp.degree(w[j]) + 1;
  }
  return out;
}

void require_letters(const Contraction& c, const GradedSpace& sp, const Word& w, const char* what) {
  for (int x : w)
    if (!c.window.contains(sp.degree(x)))
      throw WindowError(std::string(what) + ": letter " + sp.name(x) + " of degree " + std::to_string(sp.degree(x)) +
                        " outside the contraction window");
}

std::vector<Vec> ip_columns(const Contraction& c) {
  std::vector<Vec> ip(c.big.space->size());
  for (int x = 0; x < c.big.space->size(); ++x)
    if (c.window.contains(c.big.space->degree(x))) ip[x] = c.i.apply(c.p.column(x));
  return ip;
}

Vec coefficients_in(const WordBasis& basis, const WordVec& v) {
  Vec out;
  for (const auto& [w, c] : v) add_term(out, basis.index(w), c);
  return out;
}

std::string word_text(const GradedSpace& sp, const Word& w) {
  std::string s = "[";
  for (std::size_t t = 0; t < w.size(); ++t) s += (t ? "|" : "") + sp.name(w[t]);
  return s + "]";
}

}  // namespace

std::optional<std::pair<int, int>> filtration_defect(const GradedMap& delta) {
  const auto& src = *delta.source();
  const auto& tgt = *delta.target();
  for (int x = 0; x < src.size(); ++x)
    for (const auto& [y, c] : delta.column(x))
      if (src.weight(x) < 0 || tgt.weight(y) < 0 || tgt.weight(y) >= src.weight(x)) return std::make_pair(x, y);
  return std::nullopt;
}

PerturbedContraction basic_perturbation_lemma(const Contraction& c, const Perturbation& pert, int max_terms) {
  if (pert.delta.degree() != -1) throw PreconditionError("perturbation must have degree -1");
  if (pert.filtration == "weight") {
    if (auto bad = filtration_defect(pert.delta))
      throw PreconditionError("perturbation does not lower the weight on " + c.big.space->name(bad->first) +
                              " -> " + c.big.space->name(bad->second));
  }
  GradedMap hd = c.h.after(pert.delta);
  GradedMap term = GradedMap::identity(c.big.space);
  GradedMap series = term;
  PerturbedContraction out;
  out.series_terms = 1;
  for (;;) {
    term = hd.after(term);
    if (term.is_zero()) break;
    if (out.series_terms >= max_terms) {
      for (const auto& [deg, block] : term.blocks())
        for (std::size_t k = 0; k < block.size(); ++k)
          if (!block[k].empty())
            throw PreconditionError("(h delta)^k does not vanish on " +
                                    c.big.space->name(c.big.space->in_degree(deg)[k]));
    }
    series = series.plus(term);
    ++out.series_terms;
  }
  GradedMap a = pert.delta.after(series);
  GradedMap ai = a.after(c.i);
  GradedMap ah = a.after(c.h);
  out.contraction = c;
  out.contraction.big.d = c.big.d.plus(pert.delta);
  out.contraction.small.d = c.small.d.plus(c.p.after(ai));
  out.contraction.i = c.i.plus(c.h.after(ai));
  out.contraction.p = c.p.plus(c.p.after(ah));
  out.contraction.h = c.h.plus(c.h.after(ah));
  return out;
}

std::shared_ptr<WordBasis> bar_words(const SpacePtr& letters, int max_degree, int max_length) {
  Alphabet alpha;
  for (int i = 0; i < letters->size(); ++i) {
    alpha.names.push_back(letters->name(i));
    alpha.degrees.push_back(letters->degree(i) + 1);
    alpha.weights.push_back(std::max(letters->weight(i), 0));
  }
  WordOptions opt;
  opt.kind = WordKind::Tensor;
  opt.max_degree = max_degree;
  opt.max_length = max_length;
  opt.prefix = "[";
  opt.suffix = "]";
  opt.empty_name = "[]";
  return std::make_shared<WordBasis>(alpha, opt);
}

Contraction tensor_trick(const Contraction& c, int max_degree, int max_length) {
  if (auto rep = check_side_conditions(c, c.window); !rep.ok)
    throw PreconditionError("tensor trick input fails the side condition " + rep.failed);
  if (max_degree - 1 > c.window.hi) throw WindowError("tensor trick: bar degree beyond the contraction window");
  auto big = bar_words(c.big.space, max_degree, max_length);
  auto small = bar_words(c.small.space, max_degree, max_length);
  const auto& bsp = *c.big.space;
  const auto& ssp = *c.small.space;
  const auto ip = ip_columns(c);
  Contraction out;
  out.window = {0, max_degree};
  GradedMap dbig(big->space(), big->space(), -1), dsmall(small->space(), small->space(), -1);
  GradedMap i(small->space(), big->space(), 0), p(big->space(), small->space(), 0);
  GradedMap h(big->space(), big->space(), 1);
  for (int idx = 0; idx < big->size(); ++idx) {
    const Word& w = big->word(idx);
    dbig.set_column(idx, coefficients_in(*big, letter_derivation(c.big.d, bsp, w)));
    p.set_column(idx, coefficients_in(*small, tensor_power(c.p, w)));
    if (big->degree(w) < max_degree) h.set_column(idx, coefficients_in(*big, staggered_homotopy(c.h, ip, bsp, w)));
  }
  for (int idx = 0; idx < small->size(); ++idx) {
    const Word& w = small->word(idx);
    dsmall.set_column(idx, coefficients_in(*small, letter_derivation(c.small.d, ssp, w)));
    i.set_column(idx, coefficients_in(*big, tensor_power(c.i, w)));
  }
  out.big = make_complex(big->space(), std::move(dbig), {kUnbounded.lo, max_degree});
  out.small = make_complex(small->space(), std::move(dsmall), {kUnbounded.lo, max_degree});
  out.i = std::move(i);
  out.p = std::move(p);
  out.h = std::move(h);
  out.window = {0, max_degree - 1};
  return out;
}

BarTransfer::BarTransfer(const Contraction& letters, Delta delta, Filtration filtration, int max_steps)
    : c_(letters), delta_(std::move(delta)), filt_(std::move(filtration)), max_steps_(max_steps) {
  ip_ = ip_columns(c_);
}

WordVec BarTransfer::include(const Word& small_word) const {
  require_letters(c_, *c_.small.space, small_word, "inclusion");
  return tensor_power(c_.i, small_word);
}

WordVec BarTransfer::project(const WordVec& big) const {
  WordVec out;
  for (const auto& [w, c] : big) {
    require_letters(c_, *c_.big.space, w, "projection");
    add_scaled(out, tensor_power(c_.p, w), c);
  }
  return out;
}

WordVec BarTransfer::homotopy(const WordVec& big) const {
  WordVec out;
  for (const auto& [w, c] : big) {
    for (int x : w)
      if (c_.big.space->degree(x) > c_.window.hi)
        throw WindowError("homotopy: letter " + c_.big.space->name(x) + " outside the contraction window");
    add_scaled(out, staggered_homotopy(c_.h, ip_, *c_.big.space, w), c);
  }
  return out;
}

const WordVec& BarTransfer::series(const Word& u, int depth) {
  if (auto it = memo_.find(u); it != memo_.end()) return it->second;
  if (depth > max_steps_)
    throw PreconditionError("perturbation series does not terminate at " + word_text(*c_.big.space, u));
  const WordVec du = delta_(u);
  WordVec out = project(du);
  const auto fu = filt_(u);
  for (const auto& [v, c] : homotopy(du)) {
    if (filt_(v) >= fu)
      throw PreconditionError("perturbation does not lower the filtration: " + word_text(*c_.big.space, u) +
                              " -> " + word_text(*c_.big.space, v));
    add_scaled(out, series(v, depth + 1), c);
  }
  return memo_.emplace(u, std::move(out)).first->second;
}

WordVec BarTransfer::transferred(const Word& small_word) {
  WordVec out = letter_derivation(c_.small.d, *c_.small.space, small_word);
  for (const auto& [u, c] : include(small_word)) add_scaled(out, series(u, 0), c);
  return out;
}

WordVec BarTransfer::transferred(const WordVec& small) {
  WordVec out;
  for (const auto& [w, c] : small) add_scaled(out, transferred(w), c);
  return out;
}

const WordVec& BarTransfer::resolvent(const Word& u, int depth) {
  if (auto it = resolvent_.find(u); it != resolvent_.end()) return it->second;
  if (depth > max_steps_)
    throw PreconditionError("perturbation series does not terminate at " + word_text(*c_.big.space, u));
  WordVec out{{u, Scalar(1)}};
  const auto fu = filt_(u);
  for (const auto& [v, c] : homotopy(delta_(u))) {
    if (filt_(v) >= fu)
      throw PreconditionError("perturbation does not lower the filtration: " + word_text(*c_.big.space, u) +
                              " -> " + word_text(*c_.big.space, v));
    add_scaled(out, resolvent(v, depth + 1), c);
  }
  return resolvent_.emplace(u, std::move(out)).first->second;
}

WordVec BarTransfer::perturbation_series(const WordVec& big) {
  WordVec out;
  for (const auto& [u, c] : big)
    for (const auto& [v, k] : resolvent(u, 0)) add_scaled(out, delta_(v), c * k);
  return out;
}

WordVec BarTransfer::perturbed_big_d(const WordVec& big) {
  WordVec out;
  for (const auto& [u, c] : big) {
    add_scaled(out, letter_derivation(c_.big.d, *c_.big.space, u), c);
    add_scaled(out, delta_(u), c);
  }
  return out;
}

WordVec BarTransfer::perturbed_i(const WordVec& small) {
  WordVec in;
  for (const auto& [w, c] : small) add_scaled(in, include(w), c);
  WordVec out = in;
  add_scaled(out, homotopy(perturbation_series(in)), Scalar(1));
  return out;
}

WordVec BarTransfer::perturbed_p(const WordVec& big) {
  WordVec out = project(big);
  add_scaled(out, project(perturbation_series(homotopy(big))), Scalar(1));
  return out;
}

WordVec BarTransfer::perturbed_h(const WordVec& big) {
  WordVec hb = homotopy(big);
  WordVec out = hb;
  add_scaled(out, homotopy(perturbation_series(hb)), Scalar(1));
  return out;
}

std::string BarTransfer::side_condition_defect(int max_degree, int max_length) {
  if (max_degree > c_.window.hi) throw WindowError("side-condition check beyond the contraction window");
  const auto& bsp = *c_.big.space;
  const auto& ssp = *c_.small.space;
  auto small = bar_words(c_.small.space, max_degree, max_length);
  for (int idx = 0; idx < small->size(); ++idx) {
    const Word& w = small->word(idx);
    const WordVec wv{{w, Scalar(1)}};
    const WordVec iw = perturbed_i(wv);
    if (perturbed_p(iw) != wv) return "p'i' = 1 fails on " + word_text(ssp, w);
    if (!perturbed_h(iw).empty()) return "h'i' = 0 fails on " + word_text(ssp, w);
    if (perturbed_big_d(iw) != perturbed_i(transferred(wv))) return "i' is not a chain map on " + word_text(ssp, w);
  }
  auto big = bar_words(c_.big.space, max_degree, max_length);
  for (int idx = 0; idx < big->size(); ++idx) {
    const Word& u = big->word(idx);
    const WordVec uv{{u, Scalar(1)}};
    const WordVec hu = perturbed_h(uv);
    const WordVec pu = perturbed_p(uv);
    const WordVec du = perturbed_big_d(uv);
    WordVec lhs = perturbed_i(pu);
    add_term(lhs, u, Scalar(-1));
    WordVec rhs = perturbed_big_d(hu);
    add_scaled(rhs, perturbed_h(du), Scalar(1));
    if (lhs != rhs) return "i'p' - 1 = d'h' + h'd' fails on " + word_text(bsp, u);
    if (!perturbed_h(hu).empty()) return "h'h' = 0 fails on " + word_text(bsp, u);
    if (!perturbed_p(hu).empty()) return "p'h' = 0 fails on " + word_text(bsp, u);
    if (transferred(pu) != perturbed_p(du)) return "p' is not a chain map on " + word_text(bsp, u);
  }
  return {};
}

namespace {

// Output space of a transfer plus the map from small-side indices into it.
struct Relabel {
  SpacePtr space;
  std::vector<int> index;
};

Relabel identity_relabel(const SpacePtr& sp) {
  Relabel r{sp, std::vector<int>(sp->size())};
  for (int i = 0; i < sp->size(); ++i) r.index[i] = i;
  return r;
}

Relabel relabel_by_name(const SpacePtr& small, const SpacePtr& target) {
  Relabel r{target, std::vector<int>(small->size())};
  for (int i = 0; i < small->size(); ++i) {
    auto j = target->find(small->name(i));
    if (!j || target->degree(*j) != small->degree(i))
      throw std::logic_error("transfer: small basis element " + small->name(i) + " missing from the output basis");
    r.index[i] = *j;
  }
  return r;
}

void for_each_small_word(const Contraction& c, int arity_bound, int max_bar_degree,
                         const std::function<void(const Word&)>& f) {
  const auto& sp = *c.small.space;
  std::function<void(Word&, int)> rec = [&](Word& w, int deg) {
    if (!w.empty()) f(w);
    if (static_cast<int>(w.size()) == arity_bound) return;
    for (int a = 0; a < sp.size(); ++a) {
      if (!c.window.contains(sp.degree(a))) continue;
      if (deg + sp.degree(a) + 1 > max_bar_degree) continue;
      w.push_back(a);
      rec(w, deg + sp.degree(a) + 1);
      w.pop_back();
    }
  };
  Word w;
  rec(w, 0);
}

TransferredStructure extract(BarTransfer& bt, const Contraction& c, const Relabel& out_space, int arity_bound,
                             int window, std::string provenance, const TransferOptions& options) {
  if (window + 1 > c.window.hi) throw WindowError("transfer: contraction window must reach window + 1");
  const auto& ssp = *c.small.space;
  std::map<Word, Vec> products;
  std::vector<std::pair<Word, WordVec>> transferred;
  long words = 0;
  for_each_small_word(c, arity_bound, window + 2, [&](const Word& w) {
    ++words;
    WordVec dw = bt.transferred(w);
    Vec m;
    std::vector<int> degs(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) degs[t] = ssp.degree(w[t]);
    const Scalar sign(decalage_sign(degs));
    for (const auto& [u, coef] : dw)
      if (u.size() == 1) add_term(m, out_space.index[u[0]], coef * sign);
    if (!m.empty()) {
      Word key(w.size());
      for (std::size_t t = 0; t < w.size(); ++t) key[t] = out_space.index[w[t]];
      products.emplace(std::move(key), std::move(m));
    }
    transferred.emplace_back(w, std::move(dw));
  });
  TransferredStructure ts;
  ts.provenance = std::move(provenance);
  ts.arity_bound = arity_bound;
  ts.window = window;
  ts.algebra = std::make_shared<AInfinityAlgebra>(out_space.space, std::move(products), arity_bound, window);
  // reassemble the coderivation from the extracted products
  for (const auto& [w, dw] : transferred) {
    WordVec rebuilt;
    long before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int sign_i = parity(before);
      for (std::size_t k = 1; i + k <= w.size(); ++k) {
        Word key(k);
        std::vector<int> degs(k);
        for (std::size_t t = 0; t < k; ++t) {
          key[t] = out_space.index[w[i + t]];
          degs[t] = ssp.degree(w[i + t]);
        }
        auto it = ts.algebra->products().find(key);
        if (it == ts.algebra->products().end()) continue;
        const int sign = sign_i * decalage_sign(degs);
        for (const auto& [z, coef] : it->second) {
          auto zs = ssp.find(out_space.space->name(z));
          Word nw(w.begin(), w.begin() + i);
          nw.push_back(*zs);
          nw.insert(nw.end(), w.begin() + i + k, w.end());
          add_term(rebuilt, nw, coef * sign);
        }
      }
      before += ssp.degree(w[i]) + 1;
    }
    if (rebuilt != dw) {
      ts.extraction_sound = false;
      ts.extraction_witness = word_text(ssp, w);
      break;
    }
  }
  if (options.side_check_degree > 0) {
    ts.side_conditions_checked = true;
    ts.side_condition_defect = bt.side_condition_defect(options.side_check_degree, options.side_check_length);
  }
  ts.stats["small_bar_words"] = words;
  ts.stats["series_memo"] = static_cast<long>(bt.visited());
  ts.stats["products"] = static_cast<long>(ts.algebra->products().size());
  return ts;
}

WordVec product_perturbation(const AInfinityStructure& a, int arity_bound, const Word& u) {
  const auto& sp = *a.space();
  WordVec out;
  long before = 0;
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i) {
    const int sign_i = parity(before);
    for (int k = 2; i + k <= n && k <= std::min(arity_bound, a.max_arity()); ++k) {
      std::span<const int> inputs(u.data() + i, k);
      std::vector<int> degs(k);
      for (int t = 0; t < k; ++t) degs[t] = sp.degree(inputs[t]);
      Vec m = a.product(inputs);
      if (m.empty()) continue;
      const int sign = sign_i * decalage_sign(degs);
      Word nw(u.begin(), u.begin() + i);
      nw.push_back(0);
      nw.insert(nw.end(), u.begin() + i + k, u.end());
      for (const auto& [z, coef] : m) {
        nw[i] = z;
        add_term(out, nw, coef * sign);
      }
    }
    before += sp.degree(u[i]) + 1;
  }
  return out;
}

TransferredStructure transfer_products(const AInfinityStructure& a, const Contraction& c, const Relabel& out,
                                       int arity_bound, int window, std::string provenance,
                                       const TransferOptions& options) {
  if (c.big.space->size() != a.space()->size()) throw PreconditionError("contraction is not of the algebra's complex");
  BarTransfer bt(
      c, [&](const Word& u) { return product_perturbation(a, arity_bound, u); },
      [](const Word& u) { return std::make_pair(static_cast<int>(u.size()), 0); });
  return extract(bt, c, out, arity_bound, window, std::move(provenance), options);
}

}  // namespace

TransferredStructure homotopy_transfer(const AInfinityStructure& a, const Contraction& c, int arity_bound,
                                       int window, const TransferOptions& options) {
  return transfer_products(a, c, identity_relabel(c.small.space), arity_bound, window, "generic-htt", options);
}

namespace {

LInfinityAlgebra abelianization(const LInfinityAlgebra& g) {
  LInfinityAlgebra ab;
  ab.space = g.space;
  ab.max_arity = g.max_arity;
  return ab;
}

// Cobar letter of the one-letter coalgebra word s x, for every generator x.
std::vector<int> generator_letters(const CobarAlgebra& om, const LInfinityAlgebra& g) {
  const auto& ce = *om.coalgebra();
  std::vector<int> out(g.space->size());
  for (int x = 0; x < g.space->size(); ++x) out[x] = om.letter_of(ce.words->index(Word{x}));
  return out;
}

// (1/n!) Σ_σ ε(σ) ⟨x_σ(1)⟩..⟨x_σ(n)⟩ as an element of Ω̄.
Vec symmetrized_cobar_word(const CobarAlgebra& om, const std::vector<int>& letters, const std::vector<int>& gdeg,
                           const Word& sym) {
  const int n = static_cast<int>(sym.size());
  std::vector<int> degs(n);
  for (int t = 0; t < n; ++t) degs[t] = gdeg[sym[t]];
  Scalar fact = 1;
  for (int t = 2; t <= n; ++t) fact *= t;
  Vec out;
  for (const auto& sigma : all_permutations(n)) {
    Word w(n);
    for (int t = 0; t < n; ++t) w[t] = letters[sym[sigma[t]]];
    add_term(out, om.words().index(w), Scalar(koszul_sign(sigma, degs)) / fact);
  }
  return out;
}

RepresentativeChoice symmetric_choice(const WordBasis& sbar, const std::function<Vec(const Word&)>& rep) {
  RepresentativeChoice choice;
  for (int idx = 0; idx < sbar.size(); ++idx) {
    const Word& w = sbar.word(idx);
    const int n = sbar.degree(w);
    choice.cycles[n].push_back(rep(w));
    choice.names[n].push_back(sbar.space()->name(idx));
    choice.weights[n].push_back(static_cast<int>(w.size()));
  }
  return choice;
}

// Contraction onto S̄ with PBW representatives. A dimension mismatch means the
// symmetrized words are not a basis of homology.
Contraction pbw_contraction(const ChainComplex& c, const WordBasis& sbar, int window,
                            const std::function<Vec(const Word&)>& rep) {
  RepresentativeChoice choice = symmetric_choice(sbar, rep);
  try {
    return contraction_onto_homology(c, {1, window + 1}, &choice);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("symmetrized representatives do not give the homology "
                                        "(check the cobar and symmetrization sign conventions): ") +
                            e.what());
  }
}

}  // namespace

TransferredStructure baranovsky_envelope(const LInfinityAlgebra& g, int arity_bound, int window,
                                         const TransferOptions& options) {
  if (!g.is_minimal()) throw PreconditionError("Baranovsky envelope needs a minimal L-infinity algebra");
  if (g.top_arity() > arity_bound)
    throw PreconditionError("arity bound " + std::to_string(arity_bound) + " below the top bracket arity " +
                            std::to_string(g.top_arity()));
  const int letters_top = window + 2;
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, letters_top + 1));
  auto ce_ab = std::make_shared<DgCoalgebra>(chevalley_eilenberg(abelianization(g), letters_top + 1));
  CobarAlgebra om(ce, letters_top), om_ab(ce_ab, letters_top);
  if (om.space()->size() != om_ab.space()->size())
    throw std::logic_error("cobar bases of g and its abelianization differ");
  auto sbar = symmetric_algebra_basis(g.space, window + 1);
  const auto gen = generator_letters(om_ab, g);
  const auto gdeg = g.degrees();
  Contraction c = pbw_contraction(om_ab.complex(), *sbar, window,
                                  [&](const Word& w) { return symmetrized_cobar_word(om_ab, gen, gdeg, w); });
  const GradedMap internal = om.differential().plus(om_ab.differential(), Scalar(-1));
  if (auto bad = filtration_defect(internal))
    throw PreconditionError("cobar perturbation does not lower the weight on " + om.space()->name(bad->first));
  const auto& osp = *om.space();
  auto delta = [&](const Word& u) {
    WordVec out = letter_derivation(internal, osp, u);
    long before = 0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      // b_2(su, sv) = (-1)^{|u|} s(uv), after passing the letters before u
      const int sign = parity(before + osp.degree(u[i]));
      before += osp.degree(u[i]) + 1;
      Word nw(u.begin(), u.begin() + i);
      nw.push_back(0);
      nw.insert(nw.end(), u.begin() + i + 2, u.end());
      for (const auto& [z, coef] : om.multiply(u[i], u[i + 1])) {
        nw[i] = z;
        add_term(out, nw, coef * sign);
      }
    }
    return out;
  };
  auto filtration = [&](const Word& u) {
    int weight = 0;
    for (int x : u) weight += osp.weight(x);
    return std::make_pair(static_cast<int>(u.size()), weight);
  };
  BarTransfer bt(c, delta, filtration);
  TransferredStructure ts =
      extract(bt, c, relabel_by_name(c.small.space, sbar->space()), arity_bound, window, "baranovsky", options);
  ts.words = sbar;
  ts.stats["cobar_dim"] = osp.size();
  if (!ts.algebra->is_minimal()) throw std::logic_error("Baranovsky output has a nonzero m_1");
  return ts;
}

HomologyLie homology_lie(const DgLieAlgebra& g, int max_degree) {
  require_dg_lie(g);
  GradedMap l1(g.space, g.space, -1);
  for (int x = 0; x < g.space->size(); ++x) {
    const int one[1] = {x};
    l1.set_column(x, g.bracket(one));
  }
  ChainComplex cx = make_complex(g.space, l1);
  Contraction first = contraction_onto_homology(cx, {1, max_degree});
  RepresentativeChoice choice;
  const auto& ssp = *first.small.space;
  for (int j = 0; j < ssp.size(); ++j) {
    const int n = ssp.degree(j);
    Vec rep = first.i.column(j);
    std::string name = ssp.name(j);
    if (rep.size() == 1 && rep.begin()->second == 1) name = g.space->name(rep.begin()->first);
    choice.cycles[n].push_back(std::move(rep));
    choice.names[n].push_back(name);
    choice.weights[n].push_back(1);
  }
  Contraction k = contraction_onto_homology(cx, {1, max_degree}, &choice);
  HomologyLie out;
  out.lie.space = k.small.space;
  out.lie.max_arity = 2;
  const auto& hsp = *k.small.space;
  const auto gdeg = g.degrees();
  for (int a = 0; a < hsp.size(); ++a) out.representatives.push_back(k.i.column(a));
  for (int a = 0; a < hsp.size(); ++a)
    for (int b = a; b < hsp.size(); ++b) {
      if (a == b && hsp.degree(a) % 2 == 0) continue;
      if (hsp.degree(a) + hsp.degree(b) > max_degree) continue;
      Vec br;
      for (const auto& [x, cx1] : out.representatives[a])
        for (const auto& [y, cy] : out.representatives[b]) {
          const int pair[2] = {x, y};
          add_scaled(br, g.bracket(pair), cx1 * cy);
        }
      Vec val = k.p.apply(br);
      if (!val.empty()) out.lie.brackets.emplace(Word{a, b}, std::move(val));
    }
  out.lie.top_degree = max_degree;
  return out;
}

TransferredStructure moreno_fernandez_envelope(const LInfinityAlgebra& g, int arity_bound, int window,
                                               const TransferOptions& options) {
  if (g.top_arity() <= 2) {
    HomologyLie hl = homology_lie(g, window + 1);
    auto sbar = symmetric_algebra_basis(hl.lie.space, window + 1);
    auto u = std::make_shared<ClassicalEnvelope>(g, window + 2);
    const auto& uw = u->words();
    const auto hdeg = hl.lie.degrees();
    auto in_u = [&](const Vec& x) {
      Vec out;
      for (const auto& [gen, c] : x) add_term(out, uw.index(Word{gen}), c);
      return out;
    };
    auto mul = [&](const Vec& x, const Vec& y) {
      Vec out;
      for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) add_scaled(out, u->multiply(a, b), ca * cb);
      return out;
    };
    auto rep = [&](const Word& w) {
      std::vector<Vec> factors;
      std::vector<int> degs;
      for (int y : w) {
        factors.push_back(in_u(hl.representatives[y]));
        degs.push_back(hdeg[y]);
      }
      return symmetrized_product(factors, degs, mul);
    };
    Contraction c = pbw_contraction(u->complex(), *sbar, window, rep);
    TransferredStructure ts =
        transfer_products(*u, c, relabel_by_name(c.small.space, sbar->space()), arity_bound, window, "moreno", options);
    ts.words = sbar;
    ts.stats["envelope_dim"] = u->space()->size();
    return ts;
  }
  if (!g.is_minimal()) throw PreconditionError("Moreno-Fernández envelope of an L-infinity algebra needs minimal input");
  // The envelope of the rectification is the cobar construction Ω̄𝒞(g).
  const int letters_top = window + 2;
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, letters_top + 1));
  CobarAlgebra om(ce, letters_top);
  auto sbar = symmetric_algebra_basis(g.space, window + 1);
  const auto gen = generator_letters(om, g);
  const auto gdeg = g.degrees();
  Contraction c = pbw_contraction(om.complex(), *sbar, window,
                                  [&](const Word& w) { return symmetrized_cobar_word(om, gen, gdeg, w); });
  TransferredStructure ts =
      transfer_products(om, c, relabel_by_name(c.small.space, sbar->space()), arity_bound, window, "moreno", options);
  ts.words = sbar;
  ts.stats["envelope_dim"] = om.space()->size();
  return ts;
}

}  // namespace uea
