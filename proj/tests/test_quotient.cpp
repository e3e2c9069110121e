#include <random>

#include "doctest.h"
#include "klr/error.hpp"
#include "klr/quotient.hpp"
#include "support/oracles.hpp"

using namespace klr;

TEST_SUITE("quotient") {

TEST_CASE("morita classes verify with and without an engine") {
  for (int n = 3; n <= 5; ++n) {
    Algebra a(n);
    MoritaReport rep = verify_morita_classes(n, &a);
    CAPTURE(n);
    CHECK(rep.pass());
    CHECK(rep.engine_checked);
    CHECK(rep.inverses_ok);
    CHECK(rep.cross_class_zero);
    CHECK(rep.failures.empty());
    CHECK(static_cast<int>(rep.classes.size()) == n - 1);
    for (const auto& [k, members] : rep.classes)
      CHECK(static_cast<long long>(members.size()) == oracles::binom(n - 2, k - 1));
  }
  for (int n = 6; n <= 9; ++n) {
    MoritaReport rep = verify_morita_classes(n, nullptr);
    CHECK(rep.pass());
    CHECK(!rep.engine_checked);
  }
}

TEST_CASE("same-class matched elements are mutually inverse") {
  Algebra a(4);
  ResidueSeq i({0, 1, 3, 2});
  ResidueSeq j({0, 3, 1, 2});
  REQUIRE(morita_class(i) == morita_class(j));
  CHECK(projective_isomorphism_check(a, i, j));
  CHECK(projective_isomorphism_check(a, i, i));
  AlgebraElement ij = a.one_ij(i, j);
  AlgebraElement ji = a.one_ij(j, i);
  CHECK(a.multiply(ij, ji) == a.rewrite(AlgebraElement(4, Word{Generator::idem(i)})));
  CHECK(a.multiply(ji, ij) == a.rewrite(AlgebraElement(4, Word{Generator::idem(j)})));
}

TEST_CASE("cross-class matched elements fail the isomorphism check") {
  Algebra a4(4);
  CHECK(!projective_isomorphism_check(a4, ResidueSeq({0, 1, 2, 3}),
                                      ResidueSeq({0, 3, 2, 1})));
  Algebra a3(3);
  CHECK(!projective_isomorphism_check(a3, ResidueSeq({0, 1, 2}),
                                      ResidueSeq({0, 2, 1})));
}

TEST_CASE("quiver presentation relations hold with the recorded signs") {
  for (int n = 3; n <= 5; ++n) {
    Algebra a(n);
    QuiverPresentation p = quiver_presentation(a);
    CAPTURE(n);
    CHECK(p.all_pass());
    CHECK(static_cast<int>(p.vertices.size()) == n - 1);
    CHECK(static_cast<int>(p.beta.size()) == n - 2);
    CHECK(static_cast<int>(p.gamma.size()) == n - 2);
    CHECK(p.composition_convention.rfind("left to right", 0) == 0);
    CHECK(!p.junction_report.empty());

    /* the loop is the dotted idempotent at the first representative */
    ResidueSeq rep1 = p.representatives[0];
    AlgebraElement want(n, Word{Generator::dot(n, n), Generator::idem(rep1)});
    CHECK(p.loop == a.rewrite(want));

    /* loop squared vanishes, arrows compose to zero along the line */
    AlgebraElement sq = a.multiply(p.loop, p.loop);
    CHECK(sq.is_zero());
    for (int t = 0; t + 1 < n - 2; ++t) {
      CHECK(a.multiply(p.beta[t], p.beta[t + 1]).is_zero());
      CHECK(a.multiply(p.gamma[t + 1], p.gamma[t]).is_zero());
      CHECK(a.multiply(p.gamma[t], p.beta[t]) ==
            a.multiply(p.beta[t + 1], p.gamma[t + 1]));
    }
    /* gamma_t beta_t is the dotted idempotent at vertex t+1 up to (-1)^t */
    for (int t = 1; t <= n - 2; ++t) {
      AlgebraElement lhs = a.multiply(p.gamma[t - 1], p.beta[t - 1]);
      ResidueSeq rep_next = p.representatives[t];
      AlgebraElement dotted =
          a.rewrite(AlgebraElement(n, Word{Generator::dot(n, n), Generator::idem(rep_next)}));
      CHECK(lhs == ((t % 2) ? dotted.scaled(Rational(-1)) : dotted));
    }
  }
}

TEST_CASE("rank two presentation is the dotted point") {
  Algebra a(2);
  QuiverPresentation p = quiver_presentation(a);
  CHECK(p.all_pass());
  CHECK(p.vertices == std::vector<int>{1});
  CHECK(p.beta.empty());
  CHECK(p.gamma.empty());
  CHECK(!p.loop.is_zero());
  CHECK(a.multiply(p.loop, p.loop).is_zero());
}

TEST_CASE("truncation reports verify for consecutive ranks") {
  for (int m = 2; m <= 4; ++m) {
    Algebra small(m);
    Algebra big(m + 1);
    TruncationReport rep = verify_truncation_iso(small, big);
    CAPTURE(m);
    CHECK(rep.pass());
    CHECK(rep.n == m + 1);
    CHECK(rep.dim_truncated == rep.dim_target);
    CHECK(rep.dim_target == oracles::binom(2 * (m - 1), m - 1));
    CHECK(rep.basis_bijection_verified);
    CHECK(rep.structure_constants_match);
    CHECK(rep.failures.empty());
    for (const auto& r : rep.relation_checks) {
      CAPTURE(r.name);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("the corner embedding is a ring homomorphism on basis products") {
  Algebra small(3);
  Algebra big(4);
  const auto& basis = small.basis();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const NormalWord& x = basis[rng() % basis.size()];
    const NormalWord& y = basis[rng() % basis.size()];
    AlgebraElement ex(3, x.to_word());
    AlgebraElement ey(3, y.to_word());
    AlgebraElement lhs = truncation_map(small, big, small.multiply(ex, ey));
    AlgebraElement rhs = big.multiply(truncation_map(small, big, ex),
                                      truncation_map(small, big, ey));
    CHECK(lhs == rhs);
  }
  /* images are injective across the basis */
  std::set<std::string> images;
  for (const NormalWord& b : basis)
    images.insert(truncation_map(small, big, AlgebraElement(3, b.to_word())).to_string());
  CHECK(images.size() == basis.size());
}

TEST_CASE("truncation rejects rank mismatches") {
  Algebra a3(3);
  Algebra a5(5);
  CHECK_THROWS_AS(truncation_map(a3, a5, AlgebraElement::unit(3)), invalid_parameter);
  CHECK_THROWS_AS(verify_truncation_iso(a3, a5), invalid_parameter);
}

}
