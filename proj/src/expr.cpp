#include "klr/expr.hpp"

#include <cctype>

namespace klr {

namespace {

struct Parser {
  const std::string& s;
  int n;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw parse_error(what, at + 1);
  }

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  long long digits(const char* what) {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail(std::string("expected ") + what, start);
    try {
      return std::stoll(s.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      fail("number out of range", start);
    }
  }

  ElementExpr leaf_rational(Rational v) const {
    ElementExpr e;
    e.kind = ElementExpr::Kind::rational;
    e.n = n;
    e.value = std::move(v);
    return e;
  }

  ElementExpr leaf_generator(Generator g) const {
    ElementExpr e;
    e.kind = ElementExpr::Kind::generator;
    e.n = n;
    e.gen = std::move(g);
    return e;
  }

  ElementExpr atom() {
    skip();
    if (pos == s.size())
      fail("expected a rational, a generator, or a parenthesized expression", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      ElementExpr e = expr();
      skip();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (c == 'e') {
      std::size_t at = pos;
      ++pos;
      if (!eat('(')) fail("expected '(' after 'e'", pos);
      std::vector<int> entries;
      for (;;) {
        skip();
        std::size_t dat = pos;
        long long v = digits("a residue");
        if (v > n - 1)
          fail("residue " + std::to_string(v) + " out of range for rank " + std::to_string(n),
               dat);
        entries.push_back(static_cast<int>(v));
        if (!eat(',')) break;
      }
      skip();
      if (pos == s.size() || s[pos] != ')') fail("expected ',' or ')'", pos);
      ++pos;
      std::vector<bool> seen(n, false);
      bool perm = static_cast<int>(entries.size()) == n;
      for (int v : entries) {
        if (perm && seen[v]) perm = false;
        if (perm) seen[v] = true;
      }
      if (!perm)
        fail("idempotent argument is not a permutation of 0.." + std::to_string(n - 1), at);
      return leaf_generator(Generator::idem(ResidueSeq(std::move(entries))));
    }
    if (c == 'y' || c == 'p') {
      std::size_t at = pos;
      ++pos;
      long long v = digits("a strand position");
      int top = c == 'y' ? n : n - 1;
      if (v < 1 || v > top)
        fail(std::string(c == 'y' ? "dot" : "crossing") + " position " + std::to_string(v) +
                 " out of range for rank " + std::to_string(n),
             at);
      int k = static_cast<int>(v);
      return leaf_generator(c == 'y' ? Generator::dot(n, k) : Generator::cross(n, k));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool neg = eat('-');
      long long num = digits("digits");
      long long den = 1;
      if (eat('/')) {
        skip();
        std::size_t dat = pos;
        den = digits("a denominator");
        if (den == 0) fail("zero denominator", dat);
      }
      return leaf_rational(Rational(neg ? -num : num, den));
    }
    fail("expected a rational, a generator, or a parenthesized expression", pos);
  }

  ElementExpr term() {
    ElementExpr first = atom();
    if (!eat('*')) return first;
    ElementExpr e;
    e.kind = ElementExpr::Kind::product;
    e.n = n;
    e.children.push_back(std::move(first));
    do {
      e.children.push_back(atom());
    } while (eat('*'));
    return e;
  }

  ElementExpr expr() {
    ElementExpr first = term();
    skip();
    if (pos == s.size() || (s[pos] != '+' && s[pos] != '-')) return first;
    ElementExpr e;
    e.kind = ElementExpr::Kind::sum;
    e.n = n;
    e.children.push_back(std::move(first));
    e.signs.push_back(1);
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      e.signs.push_back(s[pos] == '+' ? 1 : -1);
      ++pos;
      e.children.push_back(term());
      skip();
    }
    return e;
  }
};

}  // namespace

ElementExpr parse_element(const std::string& text, int n) {
  if (n < 2 || n > 16) throw invalid_parameter("rank must be between 2 and 16");
  Parser p{text, n};
  ElementExpr e = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input", p.pos);
  return e;
}

std::string ElementExpr::to_string() const {
  auto wrap = [](const ElementExpr& child, bool in_product) {
    bool parens = child.kind == Kind::sum || (in_product && child.kind == Kind::product);
    return parens ? "(" + child.to_string() + ")" : child.to_string();
  };
  switch (kind) {
    case Kind::rational:
      return value.to_string();
    case Kind::generator:
      return gen->to_string();
    case Kind::product: {
      std::string out;
      for (std::size_t t = 0; t < children.size(); ++t) {
        if (t) out += "*";
        out += wrap(children[t], true);
      }
      return out;
    }
    case Kind::sum: {
      std::string out = wrap(children[0], false);
      for (std::size_t t = 1; t < children.size(); ++t) {
        out += signs[t] > 0 ? " + " : " - ";
        out += wrap(children[t], false);
      }
      return out;
    }
  }
  throw internal_error("unhandled expression node kind");
}

AlgebraElement ElementExpr::evaluate() const {
  switch (kind) {
    case Kind::rational:
      return AlgebraElement(n, Word{}, value);
    case Kind::generator:
      return AlgebraElement(n, Word{*gen});
    case Kind::product: {
      AlgebraElement acc = children[0].evaluate();
      for (std::size_t t = 1; t < children.size(); ++t) acc = acc * children[t].evaluate();
      return acc;
    }
    case Kind::sum: {
      AlgebraElement acc = children[0].evaluate();
      for (std::size_t t = 1; t < children.size(); ++t) {
        if (signs[t] > 0)
          acc += children[t].evaluate();
        else
          acc -= children[t].evaluate();
      }
      return acc;
    }
  }
  throw internal_error("unhandled expression node kind");
}

}  // namespace klr
