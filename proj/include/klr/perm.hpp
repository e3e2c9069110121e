/* perm.hpp: permutations of the strands 1..n.
 *
 * Products compose as functions, (w*v)(t) = w(v(t)).  A word k_1..k_m
 * denotes s_{k_1}..s_{k_m}; appending a letter multiplies on the right.
 * The canonical reduced word of w is the lexicographically smallest one,
 * obtained by repeatedly splitting off the smallest left descent.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "klr/error.hpp"
#include "klr/residue.hpp"

namespace klr {

class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  static Permutation transposition(int n, int k);  // s_k
  static Permutation from_word(int n, const std::vector<int>& word);

  /* one-line notation: img[t-1] = w(t), values 1..n */
  explicit Permutation(std::vector<int> img);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int t) const { return img_[t - 1]; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation operator*(const Permutation& v) const;

  /* w * s_k: exchanges the images of positions k and k+1. */
  Permutation times_transposition(int k) const;

  int length() const;  // inversion count

  /* l(w s_k) < l(w), i.e. w(k) > w(k+1). */
  bool right_descent(int k) const { return img_[k - 1] > img_[k]; }

  std::vector<int> lex_min_reduced_word() const;

  /* Left action on residue sequences: (w.i) places i_t at position w(t). */
  ResidueSeq act(const ResidueSeq& i) const;

  /* w^{-1}.i, the target labels of a crossing diagram with top labels i:
     entry t of the result is i_{w(t)}. */
  ResidueSeq act_inverse(const ResidueSeq& i) const;

  std::uint64_t pack() const;

  std::string to_string() const;  // "[2,1,3]"

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> img_;
};

}  // namespace klr
