/* residue.hpp: residue sequences and their combinatorics.
 *
 * A residue sequence for rank n is a permutation of the residues
 * 0..n-1, read as the labels of the strands 1..n from left to right.
 * Positions are 1-based throughout the API.
 *
 * A sequence is admissible when the corresponding idempotent survives in
 * the cyclotomic quotient: the first entry is 0 and every prefix is a
 * contiguous arc of the n-cycle, each new entry extending the arc at one
 * of its two ends.  The last entry is then forced, so there are exactly
 * 2^(n-2) admissible sequences.
 *
 * The last entry indexes the Morita class of the idempotent; class k
 * (1 <= k <= n-1) has C(n-2, k-1) members.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "klr/error.hpp"
#include "klr/quiver.hpp"

namespace klr {

class ResidueSeq {
 public:
  ResidueSeq() = default;

  /* Validates that `entries` is a permutation of 0..n-1 with n <= 16. */
  explicit ResidueSeq(std::vector<int> entries);

  int n() const { return static_cast<int>(v_.size()); }

  /* 1-based access. */
  int entry(int k) const;
  int last() const { return v_.back(); }

  const std::vector<int>& entries() const { return v_; }

  /* New sequence with entries k and k+1 exchanged (1 <= k <= n-1). */
  ResidueSeq swapped(int k) const;

  /* Nibble packing; distinct sequences of the same n pack differently. */
  std::uint64_t pack() const;

  std::string to_string() const;  // "(0,1,2)"

  auto operator<=>(const ResidueSeq&) const = default;

 private:
  std::vector<int> v_;
};

bool is_admissible(const ResidueSeq& i);

/* All admissible sequences for rank n in lexicographic order. */
std::vector<ResidueSeq> enumerate_admissible(int n);

enum class ShiftDirection { up, down };

/* The level-shift bijection between admissible sequences of rank n-1 and
 * admissible sequences of rank n with second entry 1:
 *   up:   (0, i_2, .., i_{n-1})      -> (0, 1, i_2+1, .., i_{n-1}+1)
 *   down: (0, 1, i_3, .., i_n)       -> (0, i_3-1, .., i_n-1)
 * Preconditions are checked and reported with the failing position. */
ResidueSeq level_shift(const ResidueSeq& i, ShiftDirection dir);

/* Morita class of an admissible sequence: its last entry. */
int morita_class(const ResidueSeq& i);

/* Canonical member of class k: (0, 1, .., k-1, n-1, n-2, .., k+1, k). */
ResidueSeq class_representative(int n, int k);

/* Positions t in [2, n-2] whose residues i_t, i_{t+1} are non-adjacent on
 * the cycle; swapping such a pair stays admissible in the same class. */
std::vector<int> admissible_swaps(const ResidueSeq& i);

/* class id -> members (lexicographic), covering all admissible sequences. */
std::map<int, std::vector<ResidueSeq>> morita_partition(int n);

}  // namespace klr
