#include "doctest.h"
#include "klr/engine.hpp"
#include "klr/error.hpp"
#include "klr/expr.hpp"

using namespace klr;

TEST_SUITE("expr") {

TEST_CASE("atoms parse to the expected trees") {
  ElementExpr e = parse_element("e(0,1,2)", 3);
  CHECK(e.kind == ElementExpr::Kind::generator);
  REQUIRE(e.gen.has_value());
  CHECK(e.gen->to_string() == "e(0,1,2)");

  ElementExpr y = parse_element("y2", 3);
  REQUIRE(y.gen.has_value());
  CHECK(y.gen->to_string() == "y2");

  ElementExpr q = parse_element("-3/4", 3);
  CHECK(q.kind == ElementExpr::Kind::rational);
  CHECK(q.value == Rational(-3, 4));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse_element(" y1 * e( 0 , 1 ) ", 2) == parse_element("y1*e(0,1)", 2));
  CHECK(parse_element("1/2*p1 + y2", 2) == parse_element("1/2 * p1+y2", 2));
}

TEST_CASE("parse and print round trip") {
  for (const char* text : {"e(0,1,2)", "y1*y2*y3", "p1*p2 - p2*p1",
                           "1/2*e(0,1,2) + -1/2*e(0,2,1)",
                           "(p2*p2 - y3)*e(0,1,2)", "2 - 3/4"}) {
    ElementExpr first = parse_element(text, 3);
    ElementExpr second = parse_element(first.to_string(), 3);
    CAPTURE(text);
    CHECK(first == second);
  }
}

TEST_CASE("reported offsets are one-based character positions") {
  auto offset_of = [](const char* text, int n) -> std::size_t {
    try {
      parse_element(text, n);
    } catch (const parse_error& e) {
      return e.offset;
    }
    return 0;
  };
  CHECK(offset_of("e(0,1", 2) == 6);
  CHECK(offset_of("", 2) == 1);
  CHECK(offset_of("y", 2) == 2);
  CHECK(offset_of("y0", 2) == 1);
  CHECK(offset_of("y3", 2) == 1);
  CHECK(offset_of("e(0,1,1)", 3) == 1);
  CHECK(offset_of("e(0,2)", 2) == 5);
  CHECK(offset_of("e(7,1)", 3) == 3);
  CHECK(offset_of("1/0", 2) == 3);
  CHECK(offset_of("y1 + ", 2) == 6);
  CHECK(offset_of("y1 y2", 2) == 4);
  CHECK(offset_of("* y1", 2) == 1);
  CHECK(offset_of("(y1", 2) == 4);
}

TEST_CASE("rank validation") {
  CHECK_THROWS_AS(parse_element("y1", 1), invalid_parameter);
  CHECK_THROWS_AS(parse_element("y1", 17), invalid_parameter);
}

TEST_CASE("evaluation agrees with direct construction") {
  Algebra a(3);
  ResidueSeq i({0, 1, 2});
  AlgebraElement direct(3, Word{Generator::cross(3, 2), Generator::cross(3, 2),
                                Generator::idem(i)});
  CHECK(parse_element("p2*p2*e(0,1,2)", 3).evaluate() == direct);

  AlgebraElement half = AlgebraElement::unit(3).scaled(Rational(1, 2));
  CHECK(parse_element("1/2", 3).evaluate() == half);

  /* the commutator of the squared crossing with its dotted value */
  AlgebraElement comm =
      parse_element("p2*p2*e(0,1,2) - y3*e(0,1,2)", 3).evaluate();
  CHECK(a.rewrite(comm).is_zero());
  CHECK(!comm.is_zero());
}

TEST_CASE("evaluation is formal until rewritten") {
  ElementExpr e = parse_element("e(0,1,2)*e(0,2,1)", 3);
  AlgebraElement x = e.evaluate();
  CHECK(!x.is_zero());
  Algebra a(3);
  CHECK(a.rewrite(x).is_zero());
}

}
