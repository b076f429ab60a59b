#include "uea/coalgebra.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "uea/koszul.hpp"

namespace uea {

namespace {

std::vector<int> letter_degrees_of(const WordBasis& b, const Word& w) {
  std::vector<int> d(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) d[t] = b.letter_degree(w[t]);
  return d;
}

}  // namespace

std::vector<DgCoalgebra::Split> DgCoalgebra::split(int index, int pieces) const {
  const Word& w = words->word(index);
  const int n = static_cast<int>(w.size());
  std::vector<Split> out;
  if (pieces < 1 || pieces > n) return out;
  if (pieces == 1) {
    out.push_back({Scalar(1), {index}});
    return out;
  }
  if (coproduct == CoproductKind::Deconcatenation) {
    // choose pieces-1 cut points among n-1 gaps
    std::vector<int> cuts;
    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(cuts.size()) == pieces - 1) {
        Split s{Scalar(1), {}};
        int prev = 0;
        for (int c : cuts) {
          s.parts.push_back(words->index(Word(w.begin() + prev, w.begin() + c)));
          prev = c;
        }
        s.parts.push_back(words->index(Word(w.begin() + prev, w.end())));
        out.push_back(std::move(s));
        return;
      }
      for (int c = from; c < n; ++c) {
        cuts.push_back(c);
        rec(c + 1);
        cuts.pop_back();
      }
    };
    rec(1);
    return out;
  }
  // positional unshuffles: assign each position a block label
  std::vector<int> label(n, 0);
  auto degs = letter_degrees_of(*words, w);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      std::vector<int> count(pieces, 0);
      for (int l : label) ++count[l];
      for (int c : count)
        if (c == 0) return;
      std::vector<int> perm;
      std::vector<Word> blocks(pieces);
      for (int b = 0; b < pieces; ++b)
        for (int p = 0; p < n; ++p)
          if (label[p] == b) {
            perm.push_back(p);
            blocks[b].push_back(w[p]);
          }
      Split s{Scalar(koszul_sign(perm, degs)), {}};
      for (const Word& blk : blocks) s.parts.push_back(words->index(blk));
      out.push_back(std::move(s));
      return;
    }
    for (int b = 0; b < pieces; ++b) {
      label[pos] = b;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

DgCoalgebra chevalley_eilenberg(const LInfinityAlgebra& g, int max_degree) {
  Alphabet alpha;
  const int n = g.space->size();
  auto gdeg = g.degrees();
  for (int i = 0; i < n; ++i) {
    alpha.names.push_back(g.space->name(i));
    alpha.degrees.push_back(gdeg[i] + 1);
  }
  WordOptions opt;
  opt.kind = WordKind::Symmetric;
  opt.max_degree = max_degree;
  opt.separator = "^";
  auto words = std::make_shared<WordBasis>(alpha, opt);
  const auto& sp = words->space();
  GradedMap d(sp, sp, -1);
  for (int idx = 0; idx < words->size(); ++idx) {
    const Word& w = words->word(idx);
    const int len = static_cast<int>(w.size());
    if (len == 0) continue;
    auto sdeg = letter_degrees_of(*words, w);
    Vec col;
    for (unsigned mask = 1; mask < (1u << len); ++mask) {
      const int k = __builtin_popcount(mask);
      if (k > g.max_arity) continue;
      Word wi, wj;
      std::vector<int> perm;
      for (int p = 0; p < len; ++p)
        if (mask & (1u << p)) {
          wi.push_back(w[p]);
          perm.push_back(p);
        }
      for (int p = 0; p < len; ++p)
        if (!(mask & (1u << p))) {
          wj.push_back(w[p]);
          perm.push_back(p);
        }
      auto it = g.brackets.find(wi);
      if (it == g.brackets.end()) continue;
      std::vector<int> udeg(k);
      int out_deg = k - 2;
      for (int t = 0; t < k; ++t) {
        udeg[t] = gdeg[wi[t]];
        out_deg += udeg[t];
      }
      if (out_deg > g.top_degree)
        throw WindowError("bracket output degree " + std::to_string(out_deg) + " beyond the known degree");
      const int sign = koszul_sign(perm, sdeg) * decalage_sign(udeg);
      for (const auto& [z, coef] : it->second) {
        Word nw;
        nw.reserve(wj.size() + 1);
        nw.push_back(z);
        nw.insert(nw.end(), wj.begin(), wj.end());
        auto sorted = sort_symmetric(nw, alpha.degrees);
        if (!sorted) continue;
        add_term(col, words->index(sorted->word), coef * (sign * sorted->sign));
      }
    }
    d.set_column(idx, std::move(col));
  }
  DgCoalgebra c;
  c.words = words;
  c.complex = make_complex(sp, std::move(d), {kUnbounded.lo, max_degree});
  c.coproduct = CoproductKind::Unshuffle;
  return c;
}

DgCoalgebra bar(const AInfinityStructure& a, int max_degree, int max_length) {
  const auto& asp = a.space();
  Alphabet alpha;
  std::vector<int> udeg(asp->size());
  for (int i = 0; i < asp->size(); ++i) {
    alpha.names.push_back(asp->name(i));
    alpha.degrees.push_back(asp->degree(i) + 1);
    udeg[i] = asp->degree(i);
  }
  WordOptions opt;
  opt.kind = WordKind::Tensor;
  opt.max_degree = max_degree;
  opt.max_length = max_length;
  opt.prefix = "[";
  opt.suffix = "]";
  opt.separator = "|";
  opt.empty_name = "[]";
  auto words = std::make_shared<WordBasis>(alpha, opt);
  const auto& sp = words->space();
  GradedMap d(sp, sp, -1);
  for (int idx = 0; idx < words->size(); ++idx) {
    const Word& w = words->word(idx);
    const int len = static_cast<int>(w.size());
    Vec col;
    int prefix_deg = 0;
    for (int i = 0; i < len; ++i) {
      const int sign_i = (prefix_deg % 2 != 0) ? -1 : 1;
      for (int k = 1; i + k <= len; ++k) {
        std::span<const int> inputs(w.data() + i, k);
        std::vector<int> in_deg(k);
        for (int t = 0; t < k; ++t) in_deg[t] = udeg[inputs[t]];
        Vec m = a.product(inputs);
        if (m.empty()) continue;
        const int sign = sign_i * decalage_sign(in_deg);
        Word nw(w.begin(), w.begin() + i);
        nw.push_back(0);
        nw.insert(nw.end(), w.begin() + i + k, w.end());
        for (const auto& [z, coef] : m) {
          nw[i] = z;
          add_term(col, words->index(nw), coef * sign);
        }
      }
      prefix_deg += alpha.degrees[w[i]];
    }
    d.set_column(idx, std::move(col));
  }
  DgCoalgebra c;
  c.words = words;
  c.complex = make_complex(sp, std::move(d), {kUnbounded.lo, max_degree});
  c.coproduct = CoproductKind::Deconcatenation;
  return c;
}

Vec DgAlgebra::product(std::span<const int> inputs) const {
  require_known(inputs);
  if (inputs.size() == 1) return d_.column(inputs[0]);
  if (inputs.size() == 2) return multiply(inputs[0], inputs[1]);
  return {};
}

CobarAlgebra::CobarAlgebra(CoalgebraPtr c, int max_degree) : c_(std::move(c)) {
  if (c_->max_degree() < max_degree + 1)
    throw WindowError("cobar up to degree " + std::to_string(max_degree) + " needs the coalgebra up to degree " +
                      std::to_string(max_degree + 1));
  const auto& csp = c_->complex.space;
  Alphabet alpha;
  letter_of_.assign(csp->size(), -1);
  for (int i = 0; i < csp->size(); ++i) {
    if (c_->words->word(i).empty()) continue;
    if (csp->degree(i) - 1 > max_degree) continue;
    if (csp->degree(i) < 2) throw PreconditionError("cobar needs the coaugmentation coideal in degrees >= 2");
    letter_of_[i] = alpha.size();
    letter_to_c_.push_back(i);
    alpha.names.push_back("<" + csp->name(i) + ">");
    alpha.degrees.push_back(csp->degree(i) - 1);
    alpha.weights.push_back(std::max(csp->weight(i), 0));
  }
  WordOptions opt;
  opt.kind = WordKind::Tensor;
  opt.max_degree = max_degree;
  opt.min_length = 1;
  opt.separator = "";
  words_ = std::make_unique<WordBasis>(alpha, opt);
  space_ = words_->space();
  top_ = max_degree;

  letter_d_.resize(alpha.size());
  for (int l = 0; l < alpha.size(); ++l) {
    const int ci = letter_to_c_[l];
    WordVec& v = letter_d_[l];
    for (const auto& [c2, coef] : c_->complex.d.column(ci)) {
      if (letter_of_[c2] < 0) throw std::logic_error("cobar: differential leaves the coideal");
      add_term(v, Word{letter_of_[c2]}, coef * kLinearSign);
    }
    for (const auto& s : c_->split(ci, 2)) {
      const int sign = (csp->degree(s.parts[0]) % 2 != 0) ? -1 : 1;
      add_term(v, Word{letter_of_[s.parts[0]], letter_of_[s.parts[1]]}, s.coef * sign);
    }
  }

  d_ = GradedMap(space_, space_, -1);
  for (int idx = 0; idx < words_->size(); ++idx) {
    const Word& w = words_->word(idx);
    Vec col;
    int prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int sign = (prefix % 2 != 0) ? -1 : 1;
      for (const auto& [piece, coef] : letter_d_[w[i]]) {
        Word nw(w.begin(), w.begin() + i);
        nw.insert(nw.end(), piece.begin(), piece.end());
        nw.insert(nw.end(), w.begin() + i + 1, w.end());
        add_term(col, words_->index(nw), coef * sign);
      }
      prefix += alpha.degrees[w[i]];
    }
    d_.set_column(idx, std::move(col));
  }
}

Vec CobarAlgebra::multiply(int a, int b) const {
  Word w = words_->word(a);
  const Word& wb = words_->word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  return Vec{{words_->index(w), Scalar(1)}};
}

TwistingCochain canonical_twisting_cochain(CoalgebraPtr ce, std::shared_ptr<const AInfinityStructure> target) {
  const auto& csp = ce->complex.space;
  const auto& asp = target->space();
  GradedMap tau(csp, asp, -1);
  for (int i = 0; i < csp->size(); ++i) {
    const Word& w = ce->words->word(i);
    if (w.size() != 1) continue;
    const std::string& gen = ce->words->alphabet().names[w[0]];
    auto found = asp->find(gen);
    if (!found) throw PreconditionError("target lacks a basis element for generator " + gen);
    if (asp->degree(*found) != csp->degree(i) - 1)
      throw PreconditionError("target element " + gen + " has the wrong degree");
    tau.set_column(i, Vec{{*found, Scalar(1)}});
  }
  return {std::move(ce), std::move(target), std::move(tau)};
}

namespace {

// Expands Σ_parts τ-images into A-words, calling f(word, coef).
void expand_tau(const GradedMap& tau, const std::vector<int>& parts, const Scalar& coef,
                const std::function<void(const Word&, const Scalar&)>& f) {
  Word img;
  std::function<void(std::size_t, Scalar)> rec = [&](std::size_t pos, Scalar c) {
    if (pos == parts.size()) {
      f(img, c);
      return;
    }
    for (const auto& [x, cx] : tau.column(parts[pos])) {
      img.push_back(x);
      rec(pos + 1, c * cx);
      img.pop_back();
    }
  };
  rec(0, coef);
}

Vec shifted_product(const AInfinityStructure& a, const Word& inputs) {
  std::vector<int> degs(inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t) degs[t] = a.space()->degree(inputs[t]);
  Vec m = a.product(inputs);
  if (decalage_sign(degs) < 0) m = scaled(m, Scalar(-1));
  return m;
}

}  // namespace

IdentityReport check_maurer_cartan(const TwistingCochain& t, int window) {
  IdentityReport rep;
  const auto& c = *t.source;
  const auto& csp = c.complex.space;
  const auto& a = *t.target;
  if (c.max_degree() < window + 2) throw WindowError("coalgebra too small for the Maurer–Cartan window");
  for (int n = 1; n <= window + 2; ++n) {
    for (int idx : csp->in_degree(n)) {
      const int len = static_cast<int>(c.words->word(idx).size());
      if (len == 0) continue;
      if (len > a.max_arity()) {
        if (!rep.inconclusive) {
          rep.inconclusive = true;
          rep.note = "coalgebra word " + csp->name(idx) + " needs products of arity " + std::to_string(len);
        }
        continue;
      }
      Vec lhs;
      for (int pieces = 1; pieces <= len; ++pieces) {
        for (const auto& s : c.split(idx, pieces)) {
          expand_tau(t.tau, s.parts, s.coef, [&](const Word& img, const Scalar& coef) {
            add_scaled(lhs, shifted_product(a, img), coef);
          });
        }
      }
      add_scaled(lhs, t.tau.apply(c.complex.d.column(idx)), Scalar(-1));
      if (!lhs.empty() && rep.ok) {
        rep.ok = false;
        rep.witness = csp->name(idx);
        rep.degree = n;
        rep.residual = lhs;
      }
    }
  }
  return rep;
}

GradedMap coalgebra_map_from_cochain(const TwistingCochain& t, const DgCoalgebra& target_bar) {
  const auto& c = *t.source;
  const auto& csp = c.complex.space;
  GradedMap q(csp, target_bar.complex.space, 0);
  for (int idx = 0; idx < csp->size(); ++idx) {
    const int len = static_cast<int>(c.words->word(idx).size());
    if (len == 0) {
      q.set_column(idx, Vec{{target_bar.words->index(Word{}), Scalar(1)}});
      continue;
    }
    Vec col;
    for (int pieces = 1; pieces <= len; ++pieces)
      for (const auto& s : c.split(idx, pieces))
        expand_tau(t.tau, s.parts, s.coef,
                   [&](const Word& img, const Scalar& coef) { add_term(col, target_bar.words->index(img), coef); });
    q.set_column(idx, std::move(col));
  }
  return q;
}

ChainComplex twisted_tensor(const TwistingCochain& t, int max_degree) {
  const auto& c = *t.source;
  const auto& csp = c.complex.space;
  const auto& a = *t.target;
  const auto& asp = a.space();
  if (c.max_degree() < max_degree) throw WindowError("coalgebra too small for the twisted tensor product");
  auto space = std::make_shared<GradedSpace>();
  // index of (c, a); a = -1 is the unit
  std::map<std::pair<int, int>, int> index;
  auto a_deg = [&](int ai) { return ai < 0 ? 0 : asp->degree(ai); };
  for (int n = 0; n <= max_degree; ++n) {
    for (int ci = 0; ci < csp->size(); ++ci) {
      for (int ai = -1; ai < asp->size(); ++ai) {
        if (csp->degree(ci) + a_deg(ai) != n) continue;
        std::string an = ai < 0 ? "1" : asp->name(ai);
        index[{ci, ai}] = space->add({csp->name(ci) + " (x) " + an, n, -1});
      }
    }
  }
  SpacePtr sp = space;
  GradedMap d(sp, sp, -1);
  auto idx_of = [&](int ci, int ai) {
    auto it = index.find({ci, ai});
    if (it == index.end()) throw WindowError("twisted tensor product: term beyond the window");
    return it->second;
  };
  const int empty = c.words->index(Word{});
  for (const auto& [key, id] : index) {
    const auto [ci, ai] = key;
    Vec col;
    for (const auto& [c2, coef] : c.complex.d.column(ci)) add_term(col, idx_of(c2, ai), coef);
    if (ai >= 0) {
      const int sign = (csp->degree(ci) % 2 != 0) ? -1 : 1;
      for (const auto& [a2, coef] : shifted_product(a, Word{ai})) add_term(col, idx_of(ci, a2), coef * sign);
    }
    // c_(0) ⊗ b_{t+1}(τ̂c_(1), .., τ̂c_(t), s a)
    const int len = static_cast<int>(c.words->word(ci).size());
    auto cap = [&](int c0, const std::vector<int>& rest, const Scalar& coef) {
      const int sign = (csp->degree(c0) % 2 != 0) ? -1 : 1;
      expand_tau(t.tau, rest, coef * sign, [&](const Word& img, const Scalar& cf) {
        if (ai < 0) {
          if (img.size() != 1) return;
          // b_2(sx, s1) = (-1)^{|x|} sx
          const int us = (asp->degree(img[0]) % 2 != 0) ? -1 : 1;
          add_term(col, idx_of(c0, img[0]), cf * us);
          return;
        }
        Word inputs = img;
        inputs.push_back(ai);
        for (const auto& [a2, cc] : shifted_product(a, inputs)) add_term(col, idx_of(c0, a2), cf * cc);
      });
    };
    for (int pieces = 1; pieces <= len; ++pieces) {
      // c_(0) empty
      for (const auto& s : c.split(ci, pieces)) cap(empty, s.parts, s.coef);
      // c_(0) nonempty
      if (pieces + 1 <= len) {
        for (const auto& s : c.split(ci, pieces + 1)) {
          std::vector<int> rest(s.parts.begin() + 1, s.parts.end());
          cap(s.parts[0], rest, s.coef);
        }
      }
    }
    d.set_column(id, std::move(col));
  }
  return make_complex(sp, std::move(d), {kUnbounded.lo, max_degree});
}

}  // namespace uea
