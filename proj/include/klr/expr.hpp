/* expr.hpp: text form of algebra elements.
 *
 * Grammar, whitespace insignificant:
 *   expr      := term (('+' | '-') term)*
 *   term      := atom ('*' atom)*
 *   atom      := rational | generator | '(' expr ')'
 *   rational  := ['-'] digits ['/' digits]
 *   generator := 'e' '(' digits (',' digits)* ')' | 'y' digits | 'p' digits
 *
 * 'p' denotes a crossing; residues are 0-based, strand positions 1-based.
 * Parse failures throw parse_error carrying the 1-based byte offset of the
 * first character that could not be consumed. */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klr/element.hpp"

namespace klr {

/* Parse tree of sums and products of rationals and generators over a
 * declared rank.  to_string() prints a form that parses back to an
 * identical tree. */
struct ElementExpr {
  enum class Kind { rational, generator, sum, product };

  Kind kind = Kind::rational;
  int n = 0;
  Rational value;                     // rational leaves
  std::optional<Generator> gen;       // generator leaves
  std::vector<ElementExpr> children;  // sum and product nodes
  std::vector<int> signs;             // sum only: +1/-1 per child, first +1

  std::string to_string() const;

  /* The formal element the tree denotes; no relations are applied. */
  AlgebraElement evaluate() const;

  bool operator==(const ElementExpr&) const = default;
};

/* Parses `text` as an element of rank n.  Generator indices are bounds
 * checked and idempotent arguments must be permutations of 0..n-1. */
ElementExpr parse_element(const std::string& text, int n);

}  // namespace klr
