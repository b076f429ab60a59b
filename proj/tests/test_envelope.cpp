#include <random>

#include "doctest.h"
#include "uea/envelope.hpp"
#include "uea/identities.hpp"
#include "uea/io.hpp"

using namespace uea;

namespace {

LInfinityAlgebra corpus_lie(const std::string& name) {
  return load_algebra(std::string(UEA_CORPUS_DIR) + "/" + name + ".lie").lie;
}

int idx(const ClassicalEnvelope& u, const std::string& name) {
  auto i = u.space()->find(name);
  REQUIRE(i);
  return *i;
}

}  // namespace

TEST_CASE("classical envelope of an abelian odd generator") {
  ClassicalEnvelope u(corpus_lie("abelian_odd"), 6);
  CHECK(u.space()->size() == 1);
  int x = idx(u, "x");
  CHECK(u.multiply(x, x).empty());
  ClassicalEnvelope u1(corpus_lie("abelian_odd"), 1);
  CHECK_THROWS_AS(u1.multiply(x, x), WindowError);
}

TEST_CASE("classical envelope of the Heisenberg algebra") {
  ClassicalEnvelope u(corpus_lie("heisenberg"), 6);
  // S(g) on x, y odd of degree 1 and z even of degree 2
  std::vector<int> expect{0, 2, 2, 2, 2, 2, 2};
  for (int n = 1; n <= 6; ++n) CHECK(u.space()->dim(n) == expect[n]);
  int x = idx(u, "x"), y = idx(u, "y"), z = idx(u, "z"), xy = idx(u, "x*y");
  CHECK(u.multiply(x, y) == Vec{{xy, Scalar(1)}});
  CHECK(u.multiply(y, x) == Vec{{xy, Scalar(-1)}, {z, Scalar(1)}});
  CHECK(u.multiply(x, x).empty());
  // graded commutator recovers the bracket
  Vec comm = u.multiply(x, y);
  add_scaled(comm, u.multiply(y, x), Scalar(1));
  CHECK(comm == Vec{{z, Scalar(1)}});
}

TEST_CASE("x x = (1/2)[x, x] for an odd generator") {
  ClassicalEnvelope u(corpus_lie("heisenberg_square"), 4);
  int x = idx(u, "x"), z = idx(u, "z");
  CHECK(u.multiply(x, x) == Vec{{z, make_scalar(1, 2)}});
}

TEST_CASE("classical envelopes are associative dg algebras") {
  std::mt19937 rng(5);
  for (const char* name : {"heisenberg", "heisenberg_square", "acyclic_pair", "free_nilpotent", "abelian_mixed"}) {
    CAPTURE(name);
    ClassicalEnvelope u(corpus_lie(name), 7);
    const auto& sp = *u.space();
    std::uniform_int_distribution<int> pick(0, sp.size() - 1);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 100; ++trial) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (sp.degree(a) + sp.degree(b) + sp.degree(c) > 7) continue;
      ++tested;
      Vec ab_c, a_bc;
      for (const auto& [t, k] : u.multiply(a, b)) add_scaled(ab_c, u.multiply(t, c), k);
      for (const auto& [t, k] : u.multiply(b, c)) add_scaled(a_bc, u.multiply(a, t), k);
      CHECK(ab_c == a_bc);
    }
    CHECK(tested > 0);
    CHECK(check_complex(u.complex(), {1, 7}).ok);
    for (int a = 0; a < sp.size(); ++a)
      for (int b = 0; b < sp.size(); ++b) {
        if (sp.degree(a) + sp.degree(b) > 7) continue;
        Vec lhs = u.differential().apply(u.multiply(a, b));
        Vec rhs;
        for (const auto& [t, k] : u.differential().column(a)) add_scaled(rhs, u.multiply(t, b), k);
        const Scalar sign = sign_scalar(sp.degree(a) % 2 != 0);
        for (const auto& [t, k] : u.differential().column(b)) add_scaled(rhs, u.multiply(a, t), k * sign);
        CHECK(lhs == rhs);
      }
    CHECK(check_a_infinity(u, 3, 5).ok);
  }
}

TEST_CASE("antisymmetrized envelope product restricts to the bracket") {
  for (const char* name : {"heisenberg", "heisenberg_square", "free_nilpotent", "acyclic_pair"}) {
    CAPTURE(name);
    auto g = corpus_lie(name);
    ClassicalEnvelope u(g, 6);
    auto l = antisymmetrize(u, 2);
    auto degs = g.degrees();
    for (int a = 0; a < g.space->size(); ++a)
      for (int b = a; b < g.space->size(); ++b) {
        if (a == b && degs[a] % 2 == 0) continue;
        const int pair[2] = {a, b};
        Vec expect;
        for (const auto& [z, c] : g.bracket(pair)) add_term(expect, idx(u, g.space->name(z)), c);
        Vec got = l.bracket(pair);
        CHECK(got == expect);
      }
  }
}
