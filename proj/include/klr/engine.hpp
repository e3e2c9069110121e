/* engine.hpp: the rank-n algebra, its rewriting engine and basis.
 *
 * Elements are reduced to linear combinations of normal words
 * e(i) y_n^a psi_w, where i is admissible, a <= 1, w carries its
 * lexicographically minimal reduced word, the target j = w^{-1}.i is
 * admissible, |i_n - j_n| <= 1, and a = 1 forces w(n) = n.
 *
 * Rewriting folds a generator word left to right through the normal
 * form: appending an idempotent filters by target, appending a dot
 * slides it to the source side (where it survives only as y_n), and
 * appending a crossing either extends the permutation or fires the
 * quadratic relation.  Every discarded term is backed by a registered
 * derivation: vanishing idempotents and dot annihilation carry replayed
 * traces, and cross-class kills carry weak-order certificates whose
 * traces are replayed on first use.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "klr/element.hpp"
#include "klr/perm.hpp"
#include "klr/quiver.hpp"
#include "klr/rational.hpp"
#include "klr/residue.hpp"
#include "klr/trace.hpp"

namespace klr {

struct NormalWord {
  ResidueSeq source;
  bool dot = false;
  Permutation w;

  ResidueSeq target() const { return w.act_inverse(source); }
  Word to_word() const;
  std::string to_string() const;

  bool operator==(const NormalWord&) const = default;
};

/* Decodes a word of shape [e(i)] [y_n]? [p_{k_1} ...] back into a normal
 * word; nullopt when the shape or the reduced word does not match. */
std::optional<NormalWord> parse_normal_word(const Word& w);

struct StructureConstantTable {
  int n = 0;
  /* (row, col) -> sparse product row; pairs with zero product are absent. */
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> products;
};

struct RingAxiomReport {
  int n = 0;
  bool unit_ok = false;
  bool assoc_ok = false;
  bool integral_ok = false;
  bool degree_ok = false;
  bool exhaustive = false;        // associativity over all basis triples
  std::uint64_t assoc_checked = 0;
  std::vector<std::string> failures;

  bool pass() const { return unit_ok && assoc_ok && integral_ok && degree_ok; }
};

/* Reduced word of the matching permutation for a vanishing pair (i, j),
 * with the prefix length after which the intermediate target leaves the
 * admissible set. */
struct VanishingCertificate {
  std::vector<int> word;
  int bad_prefix_len = 0;
  ResidueSeq bad_target;
};

class Algebra {
 public:
  explicit Algebra(int n);

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  int n() const { return n_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<ResidueSeq>& idempotents() const { return adm_; }
  const RuleRegistry& rules() const { return registry_; }

  /* Index of i in idempotents(), or -1 when i is not admissible. */
  int idempotent_index(const ResidueSeq& i) const;

  AlgebraElement unit() const { return AlgebraElement::unit(n_); }

  /* Canonical form of x; the identity map on already-canonical input. */
  AlgebraElement rewrite(const AlgebraElement& x) const;

  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;

  /* The matched element e(i) psi_w e(j) for admissible i, j: the unique
   * crossing diagram joining equal residues.  Zero when the classes of i
   * and j are two or more apart. */
  AlgebraElement one_ij(const ResidueSeq& i, const ResidueSeq& j) const;

  /* The basis of normal words, ordered by (source, target, dot).  On
   * first build, every excluded cross-class pair is certified to vanish
   * and the count is checked against C(2(n-1), n-1). */
  const std::vector<NormalWord>& basis() const;

  long long dimension() const { return static_cast<long long>(basis().size()); }

  /* Basis index of a normal word; -1 when absent. */
  int basis_index(const NormalWord& b) const;

  const StructureConstantTable& structure_constants() const;

  /* Degree from the grading deg e(i) = 0, deg y = 2, deg psi at local
   * residues (r, s) = -cartan(r, s); the word must contain an idempotent
   * to anchor the residue context. */
  int degree(const Word& w) const;
  int degree(const NormalWord& b) const;

  RingAxiomReport verify_ring_axioms(std::uint64_t samples, std::uint64_t seed) const;

  /* Derivation of e(i) = 0 for inadmissible i: the first arc violation
   * commutes to the left end, where the cyclotomic relation applies. */
  DerivationTrace derive_idempotent_vanishing(const ResidueSeq& i) const;

  /* Derivations of y_k e(i) = 0 (k < n) and y_n^2 e(i) = 0 for every
   * admissible i, in registration order. */
  const std::vector<DerivationTrace>& derive_dot_rules() const { return dot_traces_; }

  /* Weak-order search for a reduced word of the matching permutation of
   * (i, j) passing through an inadmissible intermediate target. */
  std::optional<VanishingCertificate> cross_class_certificate(const ResidueSeq& i,
                                                              const ResidueSeq& j) const;

  DerivationTrace certificate_trace(const ResidueSeq& i, const VanishingCertificate& c) const;

  /* The unique w with j = w^{-1}.i: w(t) = position of j_t in i. */
  static Permutation matching_perm(const ResidueSeq& i, const ResidueSeq& j);

 private:
  struct TermKey {
    int src = 0;
    int dot = 0;
    Permutation w;
    auto operator<=>(const TermKey&) const = default;
  };
  using Canon = std::map<TermKey, Rational>;

  struct Budget {
    std::uint64_t used = 0;
    std::uint64_t limit = 0;
    explicit Budget(std::size_t word_len);
    void tick();
  };

  ResidueSeq term_target(const TermKey& t) const;
  int class_gap(int src_idx, const ResidueSeq& target) const;

  void add_canon(Canon& c, TermKey k, const Rational& r) const;
  void dot_onto(Canon& out, const TermKey& t, const Rational& c, int l, Budget& b) const;
  void cross_onto(Canon& out, const TermKey& t, const Rational& c, int k, Budget& b) const;
  Canon fold_word(const Word& word, Budget& b) const;
  Canon basis_canon(int idx) const;
  AlgebraElement canon_to_element(const Canon& c) const;

  const Canon& unit_canon() const;

  void ensure_idem_vanish_registered(const ResidueSeq& i) const;
  void certify_gap_kill(int src_idx, int tgt_idx) const;

  DerivationTrace derive_dot_rule(int k, const ResidueSeq& i) const;
  DerivationTrace derive_top_dot_square(const ResidueSeq& i) const;

  int n_;
  Quiver quiver_;
  std::vector<ResidueSeq> adm_;
  std::unordered_map<std::uint64_t, int> adm_index_;
  std::vector<DerivationTrace> dot_traces_;

  mutable RuleRegistry registry_;
  mutable std::optional<Canon> unit_canon_;
  mutable std::set<std::pair<int, int>> gap_certified_;
  mutable std::optional<std::vector<NormalWord>> basis_;
  mutable std::map<std::tuple<int, int, std::uint64_t>, int> basis_lookup_;
  mutable std::optional<StructureConstantTable> table_;
};

}  // namespace klr
