#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "klr/error.hpp"
#include "klr/rational.hpp"
#include "klr/residue.hpp"

namespace klr {

// One letter of a monomial in the defining generators: an idempotent e(i),
// a dot y_l, or a crossing psi_k.
struct Generator {
  enum class Kind { idem, dot, cross };

  static Generator idem(ResidueSeq i);
  static Generator dot(int n, int l);
  static Generator cross(int n, int k);

  Kind kind;
  int n;
  int index;            // 1..n for dots, 1..n-1 for crossings, unused for idems
  ResidueSeq sequence;  // meaningful for idems only

  std::string to_string() const;

  auto operator<=>(const Generator&) const = default;
};

using Word = std::vector<Generator>;

std::string word_to_string(const Word& w);

// Formal linear combination of generator words with rational coefficients.
// Purely syntactic: no relations are applied here.  The empty word is the
// multiplicative unit.
class AlgebraElement {
 public:
  explicit AlgebraElement(int n);
  AlgebraElement(int n, Word w);
  AlgebraElement(int n, Word w, Rational c);

  static AlgebraElement zero(int n);
  static AlgebraElement unit(int n);

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Word, Rational>& terms() const { return terms_; }

  Rational coefficient(const Word& w) const;
  void add_term(const Word& w, const Rational& c);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;  // concatenation
  AlgebraElement scaled(const Rational& c) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);

  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_rank(const AlgebraElement& o) const;
  void check_word(const Word& w) const;

  int n_;
  std::map<Word, Rational> terms_;
};

}  // namespace klr
