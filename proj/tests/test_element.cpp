#include "doctest.h"
#include "klr/element.hpp"
#include "klr/error.hpp"

using namespace klr;

namespace {

ResidueSeq seq012() { return ResidueSeq({0, 1, 2}); }

}  // namespace

TEST_SUITE("element") {

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(2, 4), b(1, 3);
  CHECK(a == Rational(1, 2));
  CHECK((a + b) == Rational(5, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a - a).is_zero());
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational::parse("-7/3") == Rational(-7, 3));
  CHECK_THROWS_AS(Rational(1, 0), invalid_input);
}

TEST_CASE("generator factories validate their indices") {
  CHECK_NOTHROW(Generator::dot(3, 1));
  CHECK_NOTHROW(Generator::dot(3, 3));
  CHECK_THROWS_AS(Generator::dot(3, 0), invalid_parameter);
  CHECK_THROWS_AS(Generator::dot(3, 4), invalid_parameter);
  CHECK_NOTHROW(Generator::cross(3, 2));
  CHECK_THROWS_AS(Generator::cross(3, 0), invalid_parameter);
  CHECK_THROWS_AS(Generator::cross(3, 3), invalid_parameter);
}

TEST_CASE("printing of generators and words") {
  CHECK(Generator::idem(seq012()).to_string() == "e(0,1,2)");
  CHECK(Generator::dot(3, 2).to_string() == "y2");
  CHECK(Generator::cross(3, 1).to_string() == "p1");
  AlgebraElement one = AlgebraElement::unit(3);
  CHECK(one.to_string() == "1");
  CHECK(AlgebraElement::zero(3).to_string() == "0");
  AlgebraElement x(3, Word{Generator::dot(3, 3), Generator::idem(seq012())});
  CHECK(x.to_string() == "y3*e(0,1,2)");
}

TEST_CASE("formal sums collect like terms") {
  Word w{Generator::idem(seq012())};
  AlgebraElement x(3, w);
  AlgebraElement two = x + x;
  CHECK(two.coefficient(w) == Rational(2));
  CHECK((two - x) == x);
  CHECK((x - x).is_zero());
  CHECK(x.scaled(Rational(0)).is_zero());
  AlgebraElement y = x.scaled(Rational(2, 3));
  CHECK(y.coefficient(w) == Rational(2, 3));
}

TEST_CASE("products concatenate words") {
  AlgebraElement e(3, Word{Generator::idem(seq012())});
  AlgebraElement y3(3, Word{Generator::dot(3, 3)});
  AlgebraElement p = y3 * e;
  REQUIRE(p.terms().size() == 1);
  Word expect{Generator::dot(3, 3), Generator::idem(seq012())};
  CHECK(p.coefficient(expect) == Rational(1));
  CHECK((e * AlgebraElement::zero(3)).is_zero());
  CHECK((AlgebraElement::unit(3) * e) == e);
}

TEST_CASE("mixed ranks are rejected") {
  AlgebraElement a2 = AlgebraElement::unit(2);
  AlgebraElement a3 = AlgebraElement::unit(3);
  CHECK_THROWS_AS(a2 + a3, invalid_input);
  CHECK_THROWS_AS(a2 * a3, invalid_input);
  CHECK_THROWS_AS(AlgebraElement(2, Word{Generator::dot(3, 1)}), invalid_input);
  CHECK_THROWS_AS(AlgebraElement(1, Word{}), invalid_parameter);
  CHECK_THROWS_AS(AlgebraElement(17, Word{}), invalid_parameter);
}

}
