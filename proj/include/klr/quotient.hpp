/* quotient.hpp: structure on top of the rewriting engine.
 *
 * Morita classes of idempotents (verified as projective-isomorphism
 * classes), the quiver presentation of the basic algebra carried by one
 * idempotent per class, and the corner embedding of the rank n-1
 * algebra into rank n.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "klr/engine.hpp"

namespace klr {

/* The matched elements between same-class i and j compose to e(i) and
 * e(j), so the projectives they generate are isomorphic. */
bool projective_isomorphism_check(const Algebra& a, const ResidueSeq& i, const ResidueSeq& j);

struct MoritaReport {
  int n = 0;
  std::map<int, std::vector<ResidueSeq>> classes;
  bool sizes_ok = false;        // class k has C(n-2, k-1) members
  bool swap_connected = false;  // classes connected by non-adjacent swaps
  bool inverses_ok = false;     // same-class matched pairs compose to e(i)
  bool cross_class_zero = false;  // pairs two or more classes apart vanish
  bool engine_checked = false;
  std::vector<std::string> failures;

  bool pass() const {
    return sizes_ok && swap_connected && (!engine_checked || (inverses_ok && cross_class_zero));
  }
};

/* Combinatorial checks always run; the engine-backed product checks run
 * when an engine is supplied. */
MoritaReport verify_morita_classes(int n, const Algebra* engine);

struct QuiverRelationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/* The line quiver on vertices 1..n-1: arrows beta_t: t -> t+1 and
 * gamma_t: t+1 -> t realized as matched elements between class
 * representatives, plus the dotted loop at vertex 1.  Paths compose left
 * to right: in x*y the path x is traversed first. */
struct QuiverPresentation {
  int n = 0;
  std::vector<int> vertices;
  std::vector<ResidueSeq> representatives;  // representatives[t-1] is vertex t
  AlgebraElement loop = AlgebraElement::zero(2);  // assigned by quiver_presentation
  std::vector<AlgebraElement> beta;   // beta[t-1] = beta_t
  std::vector<AlgebraElement> gamma;  // gamma[t-1] = (-1)^t * matched element
  std::string composition_convention;
  std::vector<QuiverRelationCheck> relations;
  std::vector<std::string> junction_report;  // computed loop-end products

  bool all_pass() const {
    for (const QuiverRelationCheck& r : relations)
      if (!r.pass) return false;
    return true;
  }
};

QuiverPresentation quiver_presentation(const Algebra& a);

/* Image of x under the corner isomorphism onto the subalgebra of `to`
 * cut by the idempotents whose second entry is 1: x is reduced to
 * canonical form and every normal word maps to its shift, with
 * e(i) -> e(0, i+1), y_k -> y_{k+1}, psi_k -> psi_{k+1}.  Requires
 * to.n() == from.n() + 1. */
AlgebraElement truncation_map(const Algebra& from, const Algebra& to, const AlgebraElement& x);

struct TruncationReport {
  int n = 0;                    // rank of the big algebra
  long long dim_truncated = 0;  // corner dimension inside rank n
  long long dim_target = 0;     // dimension of the rank n-1 algebra
  std::vector<QuiverRelationCheck> relation_checks;
  bool basis_bijection_verified = false;
  bool structure_constants_match = false;
  std::vector<std::string> failures;

  bool pass() const {
    if (dim_truncated != dim_target || !basis_bijection_verified || !structure_constants_match)
      return false;
    for (const QuiverRelationCheck& r : relation_checks)
      if (!r.pass) return false;
    return true;
  }
};

TruncationReport verify_truncation_iso(const Algebra& small, const Algebra& big);

}  // namespace klr
