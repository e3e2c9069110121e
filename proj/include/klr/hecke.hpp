/* hecke.hpp: partition combinatorics for the block of the Hecke algebra
 * matched by the algebra R_n, and the dimension identities tying the two
 * sides together.  The simple modules of the block are indexed by the
 * n-regular hook partitions (n-k, 1^k); everything here is exact integer
 * arithmetic. */

#pragma once

#include <string>
#include <vector>

#include "klr/error.hpp"

namespace klr {

class Algebra;

/* Integer partition: weakly decreasing positive parts. */
class Partition {
 public:
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;  // sum of parts
  std::string to_string() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
};

/* The hook partition (n-k, 1^k); k ranges over 0..n-1. */
Partition hook_partition(int n, int k);

/* Number of standard Young tableaux of shape la, by the hook length
 * formula.  Exact for |la| <= 20. */
long long hook_dim(const Partition& la);

/* True iff no part value repeats n or more times. */
bool is_n_regular(const Partition& la, int n);

/* Dimensions of the simple modules indexed by the n-regular hooks
 * (n-k, 1^k), k = 0..n-2, from the recursion
 *   dim D_0 = 1,  dim D_k = C(n-1, k) - dim D_{k-1}. */
std::vector<long long> simple_dims_hooks(int n);

struct DimIdentity {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool pass = false;
};

struct BlockDimReport {
  int n = 0;
  std::vector<long long> specht_dims;      // k = 0..n-1: dim of shape (n-k, 1^k)
  std::vector<long long> simple_dims;      // k = 0..n-2
  std::vector<long long> projective_dims;  // k = 0..n-2
  std::vector<DimIdentity> identities;
  bool engine_checked = false;

  bool pass() const;
};

/* Checks every dimension identity of the block:
 *   - Specht dimensions of hooks are C(n-1, k);
 *   - the simple-dimension recursion matches the closed form C(n-2, k);
 *   - exactly n-1 hooks of size n are n-regular, matching the number of
 *     Morita classes of admissible sequences;
 *   - the simple dimensions sum to 2^(n-2), also reached by the parity
 *     split of the binomials C(n-1, *) that the recursion telescopes to;
 *   - projective dimensions C(n-1,k) + C(n-1,k+1) = C(n, k+1);
 *   - sum of dim(simple) * dim(projective) = C(2(n-1), n-1);
 * and, when an engine of matching rank is supplied, cross-checks it:
 * Morita class sizes equal the simple dimensions and the counted basis
 * words ending at each class representative equal C(n, k). */
BlockDimReport verify_identities(int n, const Algebra* engine = nullptr);

}  // namespace klr
