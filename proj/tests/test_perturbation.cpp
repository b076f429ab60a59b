#include <chrono>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "uea/identities.hpp"
#include "uea/io.hpp"
#include "uea/perturbation.hpp"

using namespace uea;
using namespace uea::testing;

namespace {

LInfinityAlgebra corpus_lie(const std::string& name) {
  return load_algebra(std::string(UEA_CORPUS_DIR) + "/" + name + ".lie").lie;
}

bool same_map(const GradedMap& a, const GradedMap& b) { return a.plus(b, Scalar(-1)).is_zero(); }

Contraction random_weighted_contraction(std::mt19937& rng, int weights) {
  RandomComplexShape shape;
  shape.lo = 0;
  shape.hi = 5;
  shape.max_dim = 8;
  shape.weights = weights;
  ChainComplex c = random_complex(rng, shape);
  return contraction_onto_homology(c, {0, 5});
}

// l_k of g on generators, embedded as one-letter words of the output basis.
Vec embedded_bracket(const LInfinityAlgebra& g, const TransferredStructure& ts, const Word& w) {
  Vec out;
  for (const auto& [z, c] : g.bracket(w)) add_term(out, *ts.algebra->space()->find(g.space->name(z)), c);
  return out;
}

void check_strict(const LInfinityAlgebra& g, const TransferredStructure& ts, int arity) {
  auto l = antisymmetrize(*ts.algebra, arity);
  std::vector<int> to_out(g.space->size());
  for (int x = 0; x < g.space->size(); ++x) to_out[x] = *ts.algebra->space()->find(g.space->name(x));
  for_each_canonical_word(g, arity, ts.window, [&](const Word& w) {
    if (w.size() < 2) return;
    Word mapped;
    for (int x : w) mapped.push_back(to_out[x]);
    CAPTURE(w.size());
    CHECK(l.bracket(mapped) == embedded_bracket(g, ts, w));
  });
}

}  // namespace

TEST_CASE("perturbation lemma with zero perturbation returns the input") {
  std::mt19937 rng(3);
  Contraction c = random_weighted_contraction(rng, 2);
  Perturbation pert{GradedMap(c.big.space, c.big.space, -1)};
  auto out = basic_perturbation_lemma(c, pert);
  CHECK(same_map(out.contraction.i, c.i));
  CHECK(same_map(out.contraction.p, c.p));
  CHECK(same_map(out.contraction.h, c.h));
  CHECK(same_map(out.contraction.small.d, c.small.d));
}

TEST_CASE("perturbation lemma on random filtered complexes") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Contraction c = random_weighted_contraction(rng, 3);
    Perturbation pert{random_weight_lowering_perturbation(rng, c.big)};
    auto out = basic_perturbation_lemma(c, pert);
    CHECK(check_complex(out.contraction.big, {0, 5}).ok);
    CHECK(check_complex(out.contraction.small, {0, 5}).ok);
    auto rep = check_side_conditions(out.contraction, {0, 5});
    CAPTURE(rep.failed);
    CHECK(rep.ok);
  }
}

TEST_CASE("perturbation lemma matches the two-term closed form when (h delta)^2 = 0") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Contraction c = random_weighted_contraction(rng, 2);
    GradedMap d = random_weight_lowering_perturbation(rng, c.big);
    REQUIRE(c.h.after(d).after(c.h.after(d)).is_zero());
    auto out = basic_perturbation_lemma(c, Perturbation{d});
    GradedMap a = d.plus(d.after(c.h).after(d));
    CHECK(same_map(out.contraction.small.d, c.small.d.plus(c.p.after(a).after(c.i))));
    CHECK(same_map(out.contraction.i, c.i.plus(c.h.after(a).after(c.i))));
    CHECK(same_map(out.contraction.p, c.p.plus(c.p.after(a).after(c.h))));
    CHECK(same_map(out.contraction.h, c.h.plus(c.h.after(a).after(c.h))));
  }
}

TEST_CASE("perturbation lemma rejects a perturbation that does not lower the filtration") {
  std::mt19937 rng(17);
  Contraction c = random_weighted_contraction(rng, 1);
  GradedMap delta(c.big.space, c.big.space, -1);
  bool placed = false;
  for (int x = 0; x < c.big.space->size() && !placed; ++x)
    for (int y : c.big.space->in_degree(c.big.space->degree(x) - 1)) {
      delta.set_column(x, Vec{{y, Scalar(1)}});
      placed = true;
      break;
    }
  REQUIRE(placed);
  CHECK_THROWS_AS(basic_perturbation_lemma(c, Perturbation{delta}), PreconditionError);
}

TEST_CASE("tensor trick") {
  std::mt19937 rng(19);
  SUBCASE("side conditions on random contractions") {
    for (int trial = 0; trial < 10; ++trial) {
      RandomComplexShape shape;
      shape.lo = 1;
      shape.hi = 5;
      shape.max_dim = 3;
      ChainComplex cx = random_complex(rng, shape);
      Contraction c = contraction_onto_homology(cx, {1, 4});
      Contraction t = tensor_trick(c, 5, 3);
      CHECK(check_complex(t.big, {0, 5}).ok);
      auto rep = check_side_conditions(t, t.window);
      CAPTURE(rep.failed);
      CHECK(rep.ok);
    }
  }
  SUBCASE("isomorphism case has zero homotopy") {
    auto sp = std::make_shared<GradedSpace>();
    sp->add({"a", 1, -1});
    sp->add({"b", 2, -1});
    ChainComplex cx = make_complex(sp, GradedMap(sp, sp, -1));
    Contraction c = contraction_onto_homology(cx, {1, 4});
    Contraction t = tensor_trick(c, 5);
    CHECK(t.h.is_zero());
    CHECK(check_side_conditions(t, t.window).ok);
  }
  SUBCASE("single letters reproduce the input contraction") {
    RandomComplexShape shape;
    shape.lo = 1;
    shape.hi = 5;
    shape.max_dim = 3;
    ChainComplex cx = random_complex(rng, shape);
    Contraction c = contraction_onto_homology(cx, {1, 4});
    Contraction t = tensor_trick(c, 5, 1);
    for (int x = 0; x < cx.space->size(); ++x) {
      if (cx.space->degree(x) > 3) continue;
      auto tx = *t.big.space->find("[" + cx.space->name(x) + "]");
      Vec expect;
      for (const auto& [y, k] : c.h.column(x)) add_term(expect, *t.big.space->find("[" + cx.space->name(y) + "]"), k);
      CHECK(t.h.column(tx) == expect);
    }
  }
}

TEST_CASE("homotopy transfer") {
  SUBCASE("identity contraction returns the input products") {
    ClassicalEnvelope u(corpus_lie("heisenberg"), 7);
    Contraction id;
    id.big = u.complex();
    id.small = u.complex();
    id.i = GradedMap::identity(u.space());
    id.p = GradedMap::identity(u.space());
    id.h = GradedMap(u.space(), u.space(), 1);
    id.window = {1, 6};
    auto ts = homotopy_transfer(u, id, 3, 5);
    CHECK(ts.extraction_sound);
    for (const auto& [w, m] : ts.algebra->products()) {
      CHECK(w.size() == 2);
      CHECK(m == u.product(w));
    }
    CHECK(store_products(u, 2, 5).products().size() == ts.algebra->products().size());
  }
  SUBCASE("a contractible pair transfers to nothing") {
    auto g = parse_algebra("format 1\nkind dg-lie\ngenerator v 1\ngenerator u 2\nbracket u -> 1 v\n").lie;
    ClassicalEnvelope u(g, 8);
    Contraction c = contraction_onto_homology(u.complex(), {1, 7});
    CHECK(c.small.space->size() == 0);
    auto ts = homotopy_transfer(u, c, 4, 6);
    CHECK(ts.extraction_sound);
    CHECK(ts.algebra->products().empty());
  }
  SUBCASE("acyclic pair: transferred structure satisfies the Stasheff identities") {
    ClassicalEnvelope u(corpus_lie("acyclic_pair"), 7);
    Contraction c = contraction_onto_homology(u.complex(), {1, 6});
    auto ts = homotopy_transfer(u, c, 4, 5);
    CHECK(ts.extraction_sound);
    CHECK(ts.algebra->is_minimal());
    CHECK(check_a_infinity(*ts.algebra, 4, 4).ok);
    for (int n = 1; n <= 6; ++n) CHECK(c.small.space->dim(n) == 2);
  }
}

TEST_CASE("Baranovsky envelope") {
  SUBCASE("abelian: graded commutative product, no higher products") {
    for (const char* name : {"abelian_odd", "abelian_mixed"}) {
      auto g = corpus_lie(name);
      auto ts = baranovsky_envelope(g, 4, 6);
      CHECK(ts.extraction_sound);
      CHECK(check_a_infinity(*ts.algebra, 4, 6).ok);
      for (const auto& [w, m] : ts.algebra->products()) CHECK(w.size() == 2);
      auto l = antisymmetrize(*ts.algebra, 2);
      CHECK(l.brackets.empty());
    }
  }
  SUBCASE("heisenberg") {
    auto g = corpus_lie("heisenberg");
    auto ts = baranovsky_envelope(g, 4, 6);
    CHECK(ts.extraction_sound);
    CHECK(ts.algebra->is_minimal());
    std::vector<int> dims{0, 2, 2, 2, 2, 2, 2};
    for (int n = 1; n <= 6; ++n) CHECK(ts.algebra->space()->dim(n) == dims[n]);
    CHECK(check_a_infinity(*ts.algebra, 4, 6).ok);
    check_strict(g, ts, 4);
  }
  SUBCASE("ternary bracket") {
    auto g = corpus_lie("ternary");
    auto t0 = std::chrono::steady_clock::now();
    auto ts = baranovsky_envelope(g, 4, 6);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("ternary Baranovsky envelope: " << secs << " s, " << ts.stats["series_memo"] << " memo entries");
    CHECK(ts.extraction_sound);
    CHECK(check_a_infinity(*ts.algebra, 4, 6).ok);
    check_strict(g, ts, 4);
  }
}

TEST_CASE("Moreno-Fernández envelope") {
  for (const char* name : {"heisenberg", "acyclic_pair", "abelian_mixed"}) {
    CAPTURE(name);
    auto ts = moreno_fernandez_envelope(corpus_lie(name), 4, 6);
    CHECK(ts.extraction_sound);
    CHECK(ts.algebra->is_minimal());
    CHECK(check_a_infinity(*ts.algebra, 4, 6).ok);
  }
}

TEST_CASE("perturbed bar contractions satisfy the side conditions") {
  TransferOptions opt;
  opt.side_check_degree = 4;
  opt.side_check_length = 3;
  for (const char* name : {"heisenberg", "ternary", "free_nilpotent"}) {
    CAPTURE(name);
    auto ts = baranovsky_envelope(corpus_lie(name), 4, 5, opt);
    CHECK(ts.side_conditions_checked);
    CHECK(ts.side_condition_defect == "");
  }
  for (const char* name : {"acyclic_pair", "heisenberg"}) {
    CAPTURE(name);
    auto ts = moreno_fernandez_envelope(corpus_lie(name), 4, 5, opt);
    CHECK(ts.side_condition_defect == "");
  }
}
