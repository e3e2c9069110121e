/* trace.hpp: machine-checkable derivations of vanishing identities.
 *
 * A DerivationTrace proves that a generator word equals an element (for
 * the facts we derive, zero) by a chain of local rewrite steps.  Each
 * step names a relation schema, the exact term it acts on, and the
 * 1-based position where the schema's pattern sits inside that term.
 * Replaying a trace recomputes every step from scratch and compares the
 * running element against the recorded results, so a trace cannot smuggle
 * in an unjustified equality.
 *
 * Derived facts (a vanishing idempotent, a dot annihilating an
 * idempotent, the squared top dot) become usable as rules only after
 * register_trace has replayed a proof of them, keeping dependencies
 * well-founded.
 */

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "klr/element.hpp"
#include "klr/quiver.hpp"

namespace klr {

/* Relation schemas.  k is the primary strand index, l the secondary one
 * (dot_comm, psi_dot_far, psi_psi_far), context the idempotent the
 * pattern ends with.  Reversible schemas (both sides a single word with
 * coefficient 1) accept backward = true.
 *
 *   idem_mult                 [e(a), e(b)]            -> delta * [e(a)]
 *   dot_idem_comm (k, i)      [y_k, e(i)]            <-> [e(i), y_k]
 *   psi_idem_slide (k, i)     [p_k, e(i)]            <-> [e(s_k i), p_k]
 *   dot_comm (k, l)           [y_k, y_l]             <-> [y_l, y_k]
 *   psi_dot_far (k, l)        [p_k, y_l]             <-> [y_l, p_k]     l not in {k, k+1}
 *   psi_psi_far (k, l)        [p_k, p_l]             <-> [p_l, p_k]     |k - l| > 1
 *   psi_dot_slide_a (k, i)    [p_k, y_{k+1}, e(i)]   <-> [y_k, p_k, e(i)]
 *   psi_dot_slide_b (k, i)    [y_{k+1}, p_k, e(i)]   <-> [p_k, y_k, e(i)]
 *   quad_nonadj (k, i)        [p_k, p_k, e(i)]       <-> [e(i)]         i_k, i_{k+1} non-adjacent
 *   quad_arrow (k, i)         [p_k, p_k, e(i)]        -> [y_{k+1}, e(i)] - [y_k, e(i)]   i_k -> i_{k+1}
 *                                                     -> [y_k, e(i)] - [y_{k+1}, e(i)]   i_{k+1} -> i_k
 *   quad_double (k, i)        [p_k, p_k, e(i)]        -> literal expansion of
 *                                                       (y_{k+1}-y_k)(y_k-y_{k+1})e(i)   n = 2
 *   braid (k, i)              [p_k, p_{k+1}, p_k, e(i)] <-> [p_{k+1}, p_k, p_{k+1}, e(i)]
 *   quad_dot_exchange (k, i)  [y_{k+1}, e(i)]         -> [y_k, e(i)] +/- [p_k, p_k, e(i)]
 *                             (the quadratic relation solved for y_{k+1}e(i); sign + for
 *                              i_k -> i_{k+1}, - for i_{k+1} -> i_k)
 *   quad_double_dot_exchange  [y_2, y_2, e(i)]        -> -[p_1,p_1,e(i)] + [y_2,y_1,e(i)]
 *       (k = 1, i; n = 2)                                + [y_1,y_2,e(i)] - [y_1,y_1,e(i)]
 *   cyclo_dot (i)             [y_1, e(i)]             -> 0              i_1 = 0
 *   cyclo_idem (i)            [e(i)]                  -> 0              i_1 != 0
 *
 * Derived schemas, usable once registered:
 *   idem_vanishes (i)         [e(i)]                  -> 0
 *   dot_annihilates (k, i)    [y_k, e(i)]             -> 0              k < n
 *   top_dot_square (i)        [y_n, y_n, e(i)]        -> 0
 */
struct RuleApplication {
  std::string rule;
  int k = 0;
  int l = 0;
  ResidueSeq context;
  bool backward = false;

  std::string to_string() const;
};

struct TraceStep {
  RuleApplication rule;
  Word term;              // the term of the current element being rewritten
  int pos = 1;            // 1-based position of the pattern inside term
  AlgebraElement result;  // full element after the step

  TraceStep(RuleApplication r, Word t, int p, AlgebraElement res)
      : rule(std::move(r)), term(std::move(t)), pos(p), result(std::move(res)) {}
};

struct DerivationTrace {
  std::string name;
  int n = 0;
  Word start;
  std::vector<TraceStep> steps;
  AlgebraElement end;

  DerivationTrace(std::string name_, int n_, Word start_)
      : name(std::move(name_)), n(n_), start(std::move(start_)), end(AlgebraElement::zero(n_)) {}
};

class RuleRegistry {
 public:
  explicit RuleRegistry(int n);

  int n() const { return n_; }
  const Quiver& quiver() const { return quiver_; }

  /* Rewrites `term` by the rule instance matched at pos: returns
   * sum_m c_m * (prefix . rhs_m . suffix).  Throws verification_error
   * when the pattern does not match, the schema's side conditions fail,
   * or a derived rule is not registered. */
  AlgebraElement apply(const RuleApplication& r, const Word& term, int pos) const;

  /* Replays t from start, checking every recorded step; throws
   * verification_error on the first mismatch. */
  void replay(const DerivationTrace& t) const;

  /* Replays t, then admits the vanishing fact it proves. */
  void register_trace(const DerivationTrace& t);

  bool knows_idem_vanishes(const ResidueSeq& i) const;
  bool knows_dot_annihilates(int k, const ResidueSeq& i) const;
  bool knows_top_dot_square(const ResidueSeq& i) const;

  std::size_t registered_count() const { return derived_.size(); }

 private:
  enum class Fact { idem_vanishes, dot_annihilates, top_dot_square };
  using FactKey = std::tuple<Fact, int, std::uint64_t>;

  int n_;
  Quiver quiver_;
  std::set<FactKey> derived_;
};

}  // namespace klr
