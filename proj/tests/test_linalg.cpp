#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "uea/echelon.hpp"
#include "uea/homology.hpp"
#include "uea/koszul.hpp"
#include "uea/scalar.hpp"

using namespace uea;
using namespace uea::testing;

namespace {

// Bubble-sorts the arrangement back to the identity, one adjacent swap at a time.
int adjacent_swap_sign(std::vector<int> perm, const std::vector<int>& deg) {
  int sign = 1;
  for (std::size_t pass = 0; pass < perm.size(); ++pass)
    for (std::size_t p = 0; p + 1 < perm.size(); ++p)
      if (perm[p] > perm[p + 1]) {
        if ((deg[perm[p]] * deg[perm[p + 1]]) % 2 != 0) sign = -sign;
        std::swap(perm[p], perm[p + 1]);
      }
  return sign;
}

SpacePtr space_of(std::vector<std::pair<std::string, int>> elems) {
  auto s = std::make_shared<GradedSpace>();
  for (auto& [n, d] : elems) s->add({n, d, -1});
  return s;
}

}  // namespace

TEST_CASE("scalars print and parse canonically") {
  CHECK(to_string(make_scalar(2, 4)) == "1/2");
  CHECK(to_string(make_scalar(-6, 3)) == "-2");
  CHECK(*parse_scalar("3/6") == make_scalar(1, 2));
  CHECK(*parse_scalar("+7") == Scalar(7));
  CHECK(*parse_scalar("-1/3") == make_scalar(-1, 3));
  CHECK_FALSE(parse_scalar("1/0"));
  CHECK_FALSE(parse_scalar("x"));
  CHECK_FALSE(parse_scalar(""));
  CHECK_FALSE(parse_scalar("1/"));
}

TEST_CASE("koszul sign on small arrangements") {
  std::vector<int> swap{1, 0};
  CHECK(koszul_sign(swap, std::vector<int>{1, 1}) == -1);
  CHECK(koszul_sign(swap, std::vector<int>{1, 2}) == 1);
  CHECK(koszul_sign(swap, std::vector<int>{2, 2}) == 1);
  std::vector<int> cyc{1, 2, 0};
  CHECK(koszul_sign(cyc, std::vector<int>{1, 1, 1}) == 1);
  CHECK(koszul_sign(cyc, std::vector<int>{1, 1, 0}) == -1);
  CHECK(koszul_sign(cyc, std::vector<int>{0, 1, 1}) == 1);
  CHECK(koszul_sign(cyc, std::vector<int>{1, 0, 1}) == -1);
  CHECK(permutation_sign(cyc) == 1);
  CHECK(permutation_sign(swap) == -1);
  CHECK_THROWS_AS(koszul_sign(std::vector<int>{0, 0}, std::vector<int>{1, 1}), PreconditionError);
  CHECK_THROWS_AS(koszul_sign(std::vector<int>{0, 1}, std::vector<int>{1}), PreconditionError);
}

TEST_CASE("koszul sign agrees with adjacent transpositions") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(-2, 3);
  for (int n = 0; n <= 6; ++n) {
    for (const auto& perm : all_permutations(n)) {
      std::vector<int> d(n);
      for (int& x : d) x = deg(rng);
      CHECK(koszul_sign(perm, d) == adjacent_swap_sign(perm, d));
      std::vector<int> odd(n, 1);
      CHECK(koszul_sign(perm, odd) == permutation_sign(perm));
    }
  }
}

TEST_CASE("koszul sign is multiplicative under composition") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> deg(0, 3);
  const int n = 5;
  auto perms = all_permutations(n);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& sigma = perms[pick(rng)];
    const auto& tau = perms[pick(rng)];
    std::vector<int> d(n);
    for (int& x : d) x = deg(rng);
    std::vector<int> rho(n), d_tau(n);
    for (int p = 0; p < n; ++p) rho[p] = tau[sigma[p]];
    for (int p = 0; p < n; ++p) d_tau[p] = d[tau[p]];
    CHECK(koszul_sign(rho, d) == koszul_sign(tau, d) * koszul_sign(sigma, d_tau));
  }
}

TEST_CASE("echelon solves within the span and reports relations") {
  Echelon e(true);
  CHECK(e.insert(Vec{{0, 1}, {1, 2}}, 10).independent);
  CHECK(e.insert(Vec{{1, 1}, {2, 1}}, 11).independent);
  auto dep = e.insert(Vec{{0, 1}, {1, 3}, {2, 1}}, 12);
  CHECK_FALSE(dep.independent);
  CHECK(dep.relation == Vec{{10, 1}, {11, 1}});
  auto sol = e.solve(Vec{{0, 2}, {1, 3}, {2, -1}});
  REQUIRE(sol);
  CHECK(*sol == Vec{{10, 2}, {11, -1}});
  CHECK_FALSE(e.solve(Vec{{2, 1}}));
  CHECK(e.rank() == 2);
}

TEST_CASE("complex checks") {
  SUBCASE("zero differential") {
    auto s = space_of({{"a", 0}, {"b", 1}, {"c", 2}});
    ChainComplex c = make_complex(s, GradedMap(s, s, -1));
    CHECK(check_complex(c, {0, 2}).ok);
    auto dims = homology_dims(ChainComplex{c.space, c.d, kUnbounded}, {0, 2});
    CHECK(dims[0] == 1);
    CHECK(dims[1] == 1);
    CHECK(dims[2] == 1);
  }
  SUBCASE("two-term identity is acyclic") {
    auto s = space_of({{"u", 1}, {"v", 2}});
    GradedMap d(s, s, -1);
    d.set_column(1, Vec{{0, 1}});
    ChainComplex c = make_complex(s, d);
    CHECK(check_complex(c, {0, 3}).ok);
    auto dims = homology_dims(c, {0, 3});
    for (auto [n, k] : dims) CHECK(k == 0);
  }
  SUBCASE("a broken differential is reported") {
    auto s = space_of({{"a", 0}, {"b", 1}, {"c", 2}});
    GradedMap d(s, s, -1);
    d.set_column(1, Vec{{0, 1}});
    d.set_column(2, Vec{{1, 3}});
    ChainComplex c = make_complex(s, d);
    auto chk = check_complex(c, {0, 2});
    CHECK_FALSE(chk.ok);
    CHECK(chk.degree == 2);
    CHECK(chk.element == 2);
    CHECK(chk.residual == Vec{{0, 3}});
  }
  SUBCASE("differential of the wrong degree is rejected") {
    auto s = space_of({{"a", 0}});
    CHECK_THROWS_AS(make_complex(s, GradedMap(s, s, 0)), PreconditionError);
  }
}

TEST_CASE("homology needs margin inside the valid range") {
  auto s = space_of({{"a", 0}, {"b", 1}});
  ChainComplex c = make_complex(s, GradedMap(s, s, -1), {0, 3});
  CHECK_NOTHROW(homology_dims(c, {1, 2}));
  CHECK_THROWS_AS(homology_dims(c, {1, 3}), WindowError);
  CHECK_THROWS_AS(contraction_onto_homology(c, {0, 2}), WindowError);
}

TEST_CASE("homology of random complexes matches the dense rank formula") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    ChainComplex c = random_complex(rng, {0, 5, 6, 1});
    REQUIRE(check_complex(c, {0, 5}).ok);
    auto dims = homology_dims(c, {1, 4});
    for (int n = 1; n <= 4; ++n) {
      int expect = c.space->dim(n) - dense_rank(dense_block(c.d, n)) - dense_rank(dense_block(c.d, n + 1));
      CHECK(dims[n] == expect);
    }
  }
}

TEST_CASE("homology dimensions do not depend on basis order") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ChainComplex c = random_complex(rng, {0, 5, 6, 1});
    std::vector<int> order(c.space->size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto s = std::make_shared<GradedSpace>();
    std::vector<int> new_index(order.size());
    for (int old : order) new_index[old] = s->add(c.space->element(old));
    GradedMap d(s, s, -1);
    for (int old = 0; old < c.space->size(); ++old) {
      Vec col;
      for (const auto& [r, coef] : c.d.column(old)) col[new_index[r]] = coef;
      d.set_column(new_index[old], col);
    }
    ChainComplex shuffled = make_complex(s, d);
    CHECK(homology_dims(c, {1, 4}) == homology_dims(shuffled, {1, 4}));
  }
}

TEST_CASE("contraction onto homology satisfies every side condition") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    ChainComplex c = random_complex(rng, {0, 6, 6, 3});
    Contraction k = contraction_onto_homology(c, {1, 5});
    auto rep = check_side_conditions(k, {1, 5});
    INFO(rep.failed);
    CHECK(rep.ok);
    auto dims = homology_dims(c, {1, 5});
    for (int n = 1; n <= 5; ++n) CHECK(k.small.space->dim(n) == dims[n]);
    // weights are preserved by i, p and h
    for (int e = 0; e < c.space->size(); ++e) {
      if (!DegreeWindow{1, 5}.contains(c.space->degree(e))) continue;
      for (const auto& [r, coef] : k.h.column(e)) CHECK(c.space->weight(r) == c.space->weight(e));
      for (const auto& [r, coef] : k.p.column(e)) CHECK(k.small.space->weight(r) == c.space->weight(e));
    }
  }
}

TEST_CASE("prescribed representatives are honoured and validated") {
  // a (0) <- b (1), c (1) with d b = a, d c = a: H_1 spanned by b - c
  auto s = space_of({{"a", 0}, {"b", 1}, {"c", 1}});
  GradedMap d(s, s, -1);
  d.set_column(1, Vec{{0, 1}});
  d.set_column(2, Vec{{0, 1}});
  ChainComplex c = make_complex(s, d);
  RepresentativeChoice choice;
  choice.cycles[1] = {Vec{{1, 2}, {2, -2}}};
  choice.names[1] = {"z"};
  Contraction k = contraction_onto_homology(c, {0, 1}, &choice);
  CHECK(check_side_conditions(k, {0, 1}).ok);
  REQUIRE(k.small.space->find("z"));
  CHECK(k.i.column(*k.small.space->find("z")) == Vec{{1, 2}, {2, -2}});

  RepresentativeChoice bad;
  bad.cycles[1] = {Vec{{1, 1}}};
  CHECK_THROWS_AS(contraction_onto_homology(c, {0, 1}, &bad), PreconditionError);
  RepresentativeChoice wrong_count;
  CHECK_THROWS_AS(contraction_onto_homology(c, {0, 1}, &wrong_count), PreconditionError);
}

TEST_CASE("normalization restores the side conditions") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    ChainComplex c = random_complex(rng, {0, 6, 5, 1});
    Contraction k = contraction_onto_homology(c, {1, 5});
    // spoil h by adding d g + g d for a random degree-2 map g, keeping the homotopy equation
    GradedMap g(c.space, c.space, 2);
    for (int e = 0; e < c.space->size(); ++e) {
      Vec col;
      for (int t : c.space->in_degree(c.space->degree(e) + 2))
        if (rng() % 3 == 0) col[t] = small_random(rng);
      g.set_column(e, col);
    }
    Contraction spoiled = k;
    spoiled.h = k.h.plus(c.d.after(g)).plus(g.after(c.d), Scalar(-1));
    // i p - 1 = d h + h d still holds since d(dg - gd) + (dg - gd)d = 0
    Contraction fixed = normalize_side_conditions(spoiled);
    auto rep = check_side_conditions(fixed, {2, 4});
    INFO(rep.failed);
    CHECK(rep.ok);
  }
}
