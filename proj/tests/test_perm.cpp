#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "klr/error.hpp"
#include "klr/perm.hpp"
#include "klr/residue.hpp"
#include "support/oracles.hpp"

using namespace klr;

namespace {

std::vector<Permutation> symmetric_group(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do out.push_back(Permutation(img));
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

long long inversions(const Permutation& w) {
  long long inv = 0;
  for (int a = 1; a <= w.n(); ++a)
    for (int b = a + 1; b <= w.n(); ++b)
      if (w(a) > w(b)) ++inv;
  return inv;
}

}  // namespace

TEST_SUITE("perm") {

TEST_CASE("products compose left factor after right factor") {
  Permutation u = Permutation::transposition(3, 1);
  Permutation v = Permutation::transposition(3, 2);
  Permutation w = u * v;
  /* (u*v)(t) = u(v(t)) */
  CHECK(w(1) == 2);
  CHECK(w(2) == 3);
  CHECK(w(3) == 1);
  CHECK(Permutation::from_word(3, {1, 2}) == w);
}

TEST_CASE("word letters multiply on the right") {
  for (const auto& w : symmetric_group(4)) {
    auto word = w.lex_min_reduced_word();
    Permutation acc = Permutation::identity(4);
    for (int k : word) acc = acc.times_transposition(k);
    CHECK(acc == w);
    CHECK(Permutation::from_word(4, word) == w);
  }
}

TEST_CASE("braid and commutation identities") {
  Permutation s1 = Permutation::transposition(4, 1);
  Permutation s2 = Permutation::transposition(4, 2);
  Permutation s3 = Permutation::transposition(4, 3);
  CHECK(s1 * s2 * s1 == s2 * s1 * s2);
  CHECK(s2 * s3 * s2 == s3 * s2 * s3);
  CHECK(s1 * s3 == s3 * s1);
  CHECK(s1 * s1 == Permutation::identity(4));
}

TEST_CASE("length counts inversions") {
  for (const auto& w : symmetric_group(4)) {
    CHECK(w.length() == inversions(w));
    CHECK(static_cast<long long>(w.lex_min_reduced_word().size()) == w.length());
  }
}

TEST_CASE("reduced word is the lexicographically smallest one") {
  for (const auto& w : symmetric_group(4)) {
    std::vector<int> img;
    for (int t = 1; t <= 4; ++t) img.push_back(w(t));
    CHECK(w.lex_min_reduced_word() == oracles::lex_min_word_by_search(img));
  }
}

TEST_CASE("descents match image comparisons") {
  for (const auto& w : symmetric_group(4))
    for (int k = 1; k <= 3; ++k) CHECK(w.right_descent(k) == (w(k) > w(k + 1)));
}

TEST_CASE("inverse and identity") {
  for (const auto& w : symmetric_group(4)) {
    CHECK(w * w.inverse() == Permutation::identity(4));
    CHECK(w.inverse() * w == Permutation::identity(4));
    CHECK(w.is_identity() == (w.length() == 0));
  }
}

TEST_CASE("action on residue sequences inverts correctly") {
  ResidueSeq i({0, 1, 3, 2});
  for (const auto& w : symmetric_group(4)) {
    ResidueSeq moved = w.act(i);
    CHECK(w.act_inverse(moved) == i);
    /* act places entry t at position w(t) */
    for (int t = 1; t <= 4; ++t) CHECK(moved.entry(w(t)) == i.entry(t));
  }
}

TEST_CASE("constructor and range validation") {
  CHECK_THROWS_AS(Permutation({1, 1, 2}), invalid_input);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), invalid_input);
  CHECK_THROWS_AS(Permutation::transposition(3, 0), invalid_parameter);
  CHECK_THROWS_AS(Permutation::transposition(3, 3), invalid_parameter);
  CHECK_THROWS_AS(Permutation::from_word(3, {1, 5}), invalid_parameter);
  CHECK(Permutation::identity(3).to_string() == "[1,2,3]");
}

}
