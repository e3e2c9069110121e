#include "klr/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <random>
#include <utility>

#include "klr/error.hpp"

namespace klr {

namespace {

Generator ge(const ResidueSeq& s) { return Generator::idem(s); }

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

/* Builds a derivation step by step, validating each application through
 * the registry as it is recorded. */
class TraceBuilder {
 public:
  TraceBuilder(const RuleRegistry& reg, std::string name, int n, Word start)
      : reg_(reg), trace_(std::move(name), n, start), cur_(n, start) {}

  void step(RuleApplication ra, const Word& term, int pos) {
    Rational c = cur_.coefficient(term);
    if (c.is_zero())
      throw internal_error("derivation " + trace_.name + " lost the term " + word_to_string(term));
    AlgebraElement rewritten = reg_.apply(ra, term, pos);
    cur_.add_term(term, -c);
    cur_ += rewritten.scaled(c);
    trace_.steps.emplace_back(std::move(ra), term, pos, cur_);
  }

  DerivationTrace finish() {
    trace_.end = cur_;
    return std::move(trace_);
  }

 private:
  const RuleRegistry& reg_;
  DerivationTrace trace_;
  AlgebraElement cur_;
};

/* Position of the first prefix entry that extends the arc at neither
 * end; 0 when every prefix extends (first entry is not examined). */
int first_arc_violation(const ResidueSeq& i) {
  int n = i.n(), lo = 0, hi = 0;
  for (int k = 2; k <= n; ++k) {
    int r = i.entry(k);
    if (r == (lo + n - 1) % n)
      lo = r;
    else if (r == (hi + 1) % n)
      hi = r;
    else
      return k;
  }
  return 0;
}

}  // namespace

Word NormalWord::to_word() const {
  Word out;
  int n = source.n();
  out.push_back(Generator::idem(source));
  if (dot) out.push_back(Generator::dot(n, n));
  for (int k : w.lex_min_reduced_word()) out.push_back(Generator::cross(n, k));
  return out;
}

std::string NormalWord::to_string() const { return word_to_string(to_word()); }

std::optional<NormalWord> parse_normal_word(const Word& w) {
  if (w.empty() || w[0].kind != Generator::Kind::idem) return std::nullopt;
  NormalWord b;
  b.source = w[0].sequence;
  int n = b.source.n();
  std::size_t t = 1;
  if (t < w.size() && w[t].kind == Generator::Kind::dot) {
    if (w[t].n != n || w[t].index != n) return std::nullopt;
    b.dot = true;
    ++t;
  }
  std::vector<int> letters;
  for (; t < w.size(); ++t) {
    if (w[t].kind != Generator::Kind::cross || w[t].n != n) return std::nullopt;
    letters.push_back(w[t].index);
  }
  Permutation p = Permutation::from_word(n, letters);
  if (p.lex_min_reduced_word() != letters) return std::nullopt;
  b.w = p;
  return b;
}

Algebra::Algebra(int n) : n_(n), quiver_(n), registry_(n) {
  adm_ = enumerate_admissible(n);
  for (int idx = 0; idx < static_cast<int>(adm_.size()); ++idx)
    adm_index_.emplace(adm_[idx].pack(), idx);
  for (int k = 1; k < n_; ++k)
    for (const ResidueSeq& i : adm_) {
      dot_traces_.push_back(derive_dot_rule(k, i));
      registry_.register_trace(dot_traces_.back());
    }
  for (const ResidueSeq& i : adm_) {
    dot_traces_.push_back(derive_top_dot_square(i));
    registry_.register_trace(dot_traces_.back());
  }
}

int Algebra::idempotent_index(const ResidueSeq& i) const {
  if (i.n() != n_) throw invalid_input("rank mismatch: expected " + std::to_string(n_));
  auto it = adm_index_.find(i.pack());
  return it == adm_index_.end() ? -1 : it->second;
}

Permutation Algebra::matching_perm(const ResidueSeq& i, const ResidueSeq& j) {
  int n = i.n();
  if (j.n() != n) throw invalid_input("rank mismatch between residue sequences");
  std::vector<int> pos(n, 0);
  for (int t = 1; t <= n; ++t) pos[i.entry(t)] = t;
  std::vector<int> img(n);
  for (int t = 1; t <= n; ++t) img[t - 1] = pos[j.entry(t)];
  return Permutation(std::move(img));
}

/* --- canonical terms --------------------------------------------------- */

ResidueSeq Algebra::term_target(const TermKey& t) const {
  return t.w.act_inverse(adm_[t.src]);
}

int Algebra::class_gap(int src_idx, const ResidueSeq& target) const {
  return std::abs(adm_[src_idx].last() - target.last());
}

void Algebra::add_canon(Canon& c, TermKey k, const Rational& r) const {
  if (r.is_zero()) return;
  auto [it, fresh] = c.try_emplace(std::move(k), r);
  if (!fresh) {
    it->second += r;
    if (it->second.is_zero()) c.erase(it);
  }
}

Algebra::Budget::Budget(std::size_t word_len) {
  limit = 4096 + (word_len < 16 ? (std::uint64_t{1} << (2 * word_len))
                                : (std::uint64_t{1} << 32));
}

void Algebra::Budget::tick() {
  if (++used > limit)
    throw internal_error("rewrite step budget exceeded (" + std::to_string(used) + " steps)");
}

/* Appends y_l to the canonical term t.  The dot slides through the
 * permutation to position w(l); it survives only as the top dot on the
 * source side, and a second top dot vanishes.  Each kill is asserted
 * against the registered derivation that backs it. */
void Algebra::dot_onto(Canon& out, const TermKey& t, const Rational& c, int l, Budget& b) const {
  b.tick();
  int m = t.w(l);
  if (m < n_) {
    if (!registry_.knows_dot_annihilates(m, adm_[t.src]))
      throw internal_error("unregistered dot kill at " + adm_[t.src].to_string());
    return;
  }
  if (t.w(n_) != n_) {
    ResidueSeq j = term_target(t);
    if (!registry_.knows_dot_annihilates(t.w.inverse()(n_), j))
      throw internal_error("unregistered dot kill at " + j.to_string());
    return;
  }
  if (t.dot == 1) {
    if (!registry_.knows_top_dot_square(adm_[t.src]))
      throw internal_error("unregistered squared top dot at " + adm_[t.src].to_string());
    return;
  }
  add_canon(out, TermKey{t.src, 1, t.w}, c);
}

/* Appends psi_k to the canonical term t.  When the permutation grows the
 * word stays reduced and only the new target needs checking; when it
 * shrinks the crossing doubles up and the quadratic relation fires at
 * the intermediate target. */
void Algebra::cross_onto(Canon& out, const TermKey& t, const Rational& c, int k, Budget& b) const {
  b.tick();
  const ResidueSeq& src = adm_[t.src];
  Permutation u = t.w.times_transposition(k);
  if (t.w(k) < t.w(k + 1)) {
    ResidueSeq j = u.act_inverse(src);
    int jidx = idempotent_index(j);
    if (jidx < 0) {
      ensure_idem_vanish_registered(j);
      return;
    }
    if (t.dot == 1 && k == n_ - 1) {
      if (!registry_.knows_dot_annihilates(n_ - 1, j))
        throw internal_error("unregistered dot kill at " + j.to_string());
      return;
    }
    if (class_gap(t.src, j) >= 2) {
      certify_gap_kill(t.src, jidx);
      return;
    }
    add_canon(out, TermKey{t.src, t.dot, u}, c);
    return;
  }
  ResidueSeq jv = u.act_inverse(src);
  int jvidx = idempotent_index(jv);
  if (jvidx < 0) {
    ensure_idem_vanish_registered(jv);
    return;
  }
  if (class_gap(t.src, jv) >= 2) {
    certify_gap_kill(t.src, jvidx);
    return;
  }
  TermKey base{t.src, t.dot, u};
  int a = jv.entry(k), b2 = jv.entry(k + 1);
  if (!quiver_.adjacent(a, b2)) {
    add_canon(out, base, c);
    return;
  }
  if (quiver_.doubly_connected(a, b2)) {
    auto two = [&](int first, int second, const Rational& coeff) {
      Canon mid;
      dot_onto(mid, base, coeff, first, b);
      for (const auto& [tk, tc] : mid) dot_onto(out, tk, tc, second, b);
    };
    two(k + 1, k, c);
    two(k + 1, k + 1, -c);
    two(k, k, -c);
    two(k, k + 1, c);
    return;
  }
  if (quiver_.arrow(a, b2)) {
    dot_onto(out, base, c, k + 1, b);
    dot_onto(out, base, -c, k, b);
  } else {
    dot_onto(out, base, c, k, b);
    dot_onto(out, base, -c, k + 1, b);
  }
}

const Algebra::Canon& Algebra::unit_canon() const {
  if (unit_canon_) return *unit_canon_;
  /* The unit expands over idempotents for every residue sequence.  The
   * ones with first entry != 0 die by the cyclotomic relation outright;
   * the inadmissible ones with first entry 0 each need a registered
   * vanishing derivation before they may be dropped. */
  std::vector<int> rest(n_ - 1);
  for (int r = 1; r < n_; ++r) rest[r - 1] = r;
  do {
    std::vector<int> v;
    v.reserve(n_);
    v.push_back(0);
    v.insert(v.end(), rest.begin(), rest.end());
    ResidueSeq s(std::move(v));
    if (adm_index_.find(s.pack()) == adm_index_.end()) ensure_idem_vanish_registered(s);
  } while (std::next_permutation(rest.begin(), rest.end()));
  Canon u;
  for (int idx = 0; idx < static_cast<int>(adm_.size()); ++idx)
    u.emplace(TermKey{idx, 0, Permutation::identity(n_)}, Rational(1));
  unit_canon_ = std::move(u);
  return *unit_canon_;
}

Algebra::Canon Algebra::fold_word(const Word& word, Budget& b) const {
  Canon acc;
  std::size_t begin = 0;
  if (!word.empty() && word[0].kind == Generator::Kind::idem) {
    int idx = idempotent_index(word[0].sequence);
    if (idx < 0) {
      ensure_idem_vanish_registered(word[0].sequence);
      return acc;
    }
    acc.emplace(TermKey{idx, 0, Permutation::identity(n_)}, Rational(1));
    begin = 1;
  } else {
    acc = unit_canon();
  }
  for (std::size_t g = begin; g < word.size(); ++g) {
    if (acc.empty()) break;
    Canon next;
    switch (word[g].kind) {
      case Generator::Kind::idem:
        for (const auto& [t, c] : acc) {
          b.tick();
          if (term_target(t) == word[g].sequence) next.emplace(t, c);
        }
        break;
      case Generator::Kind::dot:
        for (const auto& [t, c] : acc) dot_onto(next, t, c, word[g].index, b);
        break;
      case Generator::Kind::cross:
        for (const auto& [t, c] : acc) cross_onto(next, t, c, word[g].index, b);
        break;
    }
    acc = std::move(next);
  }
  return acc;
}

AlgebraElement Algebra::canon_to_element(const Canon& c) const {
  AlgebraElement out(n_);
  for (const auto& [t, r] : c) {
    NormalWord b{adm_[t.src], t.dot == 1, t.w};
    out.add_term(b.to_word(), r);
  }
  return out;
}

AlgebraElement Algebra::rewrite(const AlgebraElement& x) const {
  if (x.n() != n_) throw invalid_input("rank mismatch: expected " + std::to_string(n_));
  Canon total;
  for (const auto& [word, c] : x.terms()) {
    Budget b(word.size());
    Canon folded = fold_word(word, b);
    for (const auto& [t, tc] : folded) add_canon(total, t, tc * c);
  }
  return canon_to_element(total);
}

AlgebraElement Algebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
  if (x.n() != n_ || y.n() != n_)
    throw invalid_input("rank mismatch: expected " + std::to_string(n_));
  return rewrite(x * y);
}

AlgebraElement Algebra::one_ij(const ResidueSeq& i, const ResidueSeq& j) const {
  if (idempotent_index(i) < 0) throw invalid_input("not admissible: " + i.to_string());
  if (idempotent_index(j) < 0) throw invalid_input("not admissible: " + j.to_string());
  Word word;
  word.push_back(ge(i));
  for (int k : matching_perm(i, j).lex_min_reduced_word())
    word.push_back(Generator::cross(n_, k));
  return rewrite(AlgebraElement(n_, word));
}

/* --- basis and structure constants ------------------------------------- */

const std::vector<NormalWord>& Algebra::basis() const {
  if (basis_) return *basis_;
  std::vector<NormalWord> out;
  for (int si = 0; si < static_cast<int>(adm_.size()); ++si) {
    const ResidueSeq& i = adm_[si];
    for (int ti = 0; ti < static_cast<int>(adm_.size()); ++ti) {
      const ResidueSeq& j = adm_[ti];
      Permutation w = matching_perm(i, j);
      int gap = std::abs(i.last() - j.last());
      if (gap >= 2) {
        if (!gap_certified_.count({si, ti})) {
          auto cert = cross_class_certificate(i, j);
          if (!cert)
            throw verification_error("no vanishing certificate for the pair " + i.to_string() +
                                     " -> " + j.to_string());
          registry_.replay(certificate_trace(i, *cert));
          gap_certified_.insert({si, ti});
        }
        Word cand;
        cand.push_back(ge(i));
        for (int k : w.lex_min_reduced_word()) cand.push_back(Generator::cross(n_, k));
        if (!rewrite(AlgebraElement(n_, cand)).is_zero())
          throw verification_error("excluded cross-class word survives rewriting: " +
                                   word_to_string(cand));
        continue;
      }
      out.push_back(NormalWord{i, false, w});
      if (gap == 0) {
        out.push_back(NormalWord{i, true, w});
      } else {
        Word cand;
        cand.push_back(ge(i));
        cand.push_back(Generator::dot(n_, n_));
        for (int k : w.lex_min_reduced_word()) cand.push_back(Generator::cross(n_, k));
        if (!rewrite(AlgebraElement(n_, cand)).is_zero())
          throw verification_error("excluded dotted word survives rewriting: " +
                                   word_to_string(cand));
      }
    }
  }
  long long expect = binom(2 * (n_ - 1), n_ - 1);
  if (static_cast<long long>(out.size()) != expect)
    throw verification_error("basis count " + std::to_string(out.size()) +
                             " differs from the central binomial " + std::to_string(expect));
  basis_ = std::move(out);
  for (int idx = 0; idx < static_cast<int>(basis_->size()); ++idx) {
    const NormalWord& b = (*basis_)[idx];
    basis_lookup_.emplace(std::make_tuple(idempotent_index(b.source), b.dot ? 1 : 0, b.w.pack()),
                          idx);
  }
  return *basis_;
}

int Algebra::basis_index(const NormalWord& b) const {
  if (b.source.n() != n_) throw invalid_input("rank mismatch: expected " + std::to_string(n_));
  basis();
  int si = idempotent_index(b.source);
  if (si < 0) return -1;
  auto it = basis_lookup_.find(std::make_tuple(si, b.dot ? 1 : 0, b.w.pack()));
  return it == basis_lookup_.end() ? -1 : it->second;
}

Algebra::Canon Algebra::basis_canon(int idx) const {
  const NormalWord& b = basis()[idx];
  Canon c;
  c.emplace(TermKey{idempotent_index(b.source), b.dot ? 1 : 0, b.w}, Rational(1));
  return c;
}

const StructureConstantTable& Algebra::structure_constants() const {
  if (table_) return *table_;
  const std::vector<NormalWord>& B = basis();
  int dim = static_cast<int>(B.size());
  std::vector<int> src_of(dim), tgt_of(dim);
  std::vector<std::vector<int>> letters(dim);
  for (int idx = 0; idx < dim; ++idx) {
    src_of[idx] = idempotent_index(B[idx].source);
    tgt_of[idx] = idempotent_index(B[idx].target());
    letters[idx] = B[idx].w.lex_min_reduced_word();
  }
  StructureConstantTable T;
  T.n = n_;
  for (int a = 0; a < dim; ++a) {
    for (int c = 0; c < dim; ++c) {
      if (tgt_of[a] != src_of[c]) continue;
      Budget budget(letters[c].size() + 2);
      Canon acc = basis_canon(a);
      if (B[c].dot) {
        Canon next;
        for (const auto& [t, tc] : acc) dot_onto(next, t, tc, n_, budget);
        acc = std::move(next);
      }
      for (int k : letters[c]) {
        if (acc.empty()) break;
        Canon next;
        for (const auto& [t, tc] : acc) cross_onto(next, t, tc, k, budget);
        acc = std::move(next);
      }
      if (acc.empty()) continue;
      std::vector<std::pair<int, Rational>> row;
      row.reserve(acc.size());
      for (const auto& [t, tc] : acc) {
        auto it = basis_lookup_.find(std::make_tuple(t.src, t.dot, t.w.pack()));
        if (it == basis_lookup_.end())
          throw verification_error("product of basis elements " + std::to_string(a) + ", " +
                                   std::to_string(c) + " leaves the basis span");
        row.emplace_back(it->second, tc);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      T.products.emplace(std::make_pair(a, c), std::move(row));
    }
  }
  table_ = std::move(T);
  return *table_;
}

/* --- grading ------------------------------------------------------------ */

int Algebra::degree(const Word& w) const {
  int anchor = -1;
  for (std::size_t t = 0; t < w.size(); ++t)
    if (w[t].kind == Generator::Kind::idem) {
      anchor = static_cast<int>(t);
      break;
    }
  if (anchor < 0) throw invalid_input("degree needs an idempotent to anchor residues");
  int total = 0;
  ResidueSeq ctx = w[anchor].sequence;
  for (std::size_t t = anchor; t < w.size(); ++t) {
    const Generator& g = w[t];
    if (g.kind == Generator::Kind::idem) {
      ctx = g.sequence;
    } else if (g.kind == Generator::Kind::dot) {
      total += 2;
    } else {
      total -= quiver_.cartan(ctx.entry(g.index), ctx.entry(g.index + 1));
      ctx = ctx.swapped(g.index);
    }
  }
  ctx = w[anchor].sequence;
  for (int t = anchor - 1; t >= 0; --t) {
    const Generator& g = w[t];
    if (g.kind == Generator::Kind::idem) {
      ctx = g.sequence;
    } else if (g.kind == Generator::Kind::dot) {
      total += 2;
    } else {
      total -= quiver_.cartan(ctx.entry(g.index), ctx.entry(g.index + 1));
      ctx = ctx.swapped(g.index);
    }
  }
  return total;
}

int Algebra::degree(const NormalWord& b) const { return degree(b.to_word()); }

/* --- ring axioms --------------------------------------------------------- */

RingAxiomReport Algebra::verify_ring_axioms(std::uint64_t samples, std::uint64_t seed) const {
  RingAxiomReport rep;
  rep.n = n_;
  const std::vector<NormalWord>& B = basis();
  const StructureConstantTable& T = structure_constants();
  int dim = static_cast<int>(B.size());
  auto fail = [&](std::string s) {
    if (rep.failures.size() < 16) rep.failures.push_back(std::move(s));
  };

  rep.unit_ok = true;
  AlgebraElement one = rewrite(unit());
  for (int idx = 0; idx < dim; ++idx) {
    AlgebraElement eb(n_, B[idx].to_word());
    if (multiply(one, eb) != eb || multiply(eb, one) != eb) {
      rep.unit_ok = false;
      fail("unit law fails at basis element " + B[idx].to_string());
    }
  }

  rep.integral_ok = true;
  rep.degree_ok = true;
  std::vector<int> deg(dim);
  for (int idx = 0; idx < dim; ++idx) deg[idx] = degree(B[idx]);
  for (const auto& [key, row] : T.products) {
    int want = deg[key.first] + deg[key.second];
    for (const auto& [ci, coef] : row) {
      if (!coef.is_integer()) {
        rep.integral_ok = false;
        fail("non-integer structure constant " + coef.to_string() + " in " +
             B[key.first].to_string() + " * " + B[key.second].to_string());
      }
      if (deg[ci] != want) {
        rep.degree_ok = false;
        fail("degree drops from " + std::to_string(want) + " to " + std::to_string(deg[ci]) +
             " in " + B[key.first].to_string() + " * " + B[key.second].to_string());
      }
    }
  }

  using Row = std::map<int, Rational>;
  auto row_of = [&](int a, int c) {
    Row r;
    auto it = T.products.find({a, c});
    if (it != T.products.end())
      for (const auto& [ci, coef] : it->second) r.emplace(ci, coef);
    return r;
  };
  auto assoc_one = [&](int a, int c, int d) {
    Row lhs, rhs;
    for (const auto& [bi, xc] : row_of(a, c)) {
      auto it = T.products.find({bi, d});
      if (it == T.products.end()) continue;
      for (const auto& [ci, coef] : it->second) {
        auto [pos, fresh] = lhs.try_emplace(ci, xc * coef);
        if (!fresh) pos->second += xc * coef;
      }
    }
    for (const auto& [bi, xc] : row_of(c, d)) {
      auto it = T.products.find({a, bi});
      if (it == T.products.end()) continue;
      for (const auto& [ci, coef] : it->second) {
        auto [pos, fresh] = rhs.try_emplace(ci, xc * coef);
        if (!fresh) pos->second += xc * coef;
      }
    }
    std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
    return lhs == rhs;
  };

  rep.assoc_ok = true;
  rep.exhaustive = n_ <= 4;
  if (rep.exhaustive) {
    for (int a = 0; a < dim && rep.assoc_ok; ++a)
      for (int c = 0; c < dim && rep.assoc_ok; ++c)
        for (int d = 0; d < dim; ++d) {
          ++rep.assoc_checked;
          if (!assoc_one(a, c, d)) {
            rep.assoc_ok = false;
            fail("associativity fails at (" + B[a].to_string() + ", " + B[c].to_string() + ", " +
                 B[d].to_string() + ")");
            break;
          }
        }
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      int a = static_cast<int>(rng() % dim);
      int c = static_cast<int>(rng() % dim);
      int d = static_cast<int>(rng() % dim);
      ++rep.assoc_checked;
      if (!assoc_one(a, c, d)) {
        rep.assoc_ok = false;
        fail("associativity fails at sampled triple (" + std::to_string(a) + ", " +
             std::to_string(c) + ", " + std::to_string(d) + ")");
        break;
      }
    }
  }
  return rep;
}

/* --- vanishing derivations ---------------------------------------------- */

void Algebra::ensure_idem_vanish_registered(const ResidueSeq& i) const {
  if (registry_.knows_idem_vanishes(i)) return;
  registry_.register_trace(derive_idempotent_vanishing(i));
}

DerivationTrace Algebra::derive_idempotent_vanishing(const ResidueSeq& i) const {
  if (i.n() != n_) throw invalid_input("rank mismatch: expected " + std::to_string(n_));
  if (is_admissible(i)) throw invalid_input("sequence is admissible: " + i.to_string());
  auto pk = [&](int k) { return Generator::cross(n_, k); };
  TraceBuilder tb(registry_, "idempotent_vanishing " + i.to_string(), n_, Word{ge(i)});
  if (i.entry(1) != 0) {
    tb.step({"cyclo_idem", 0, 0, i, false}, Word{ge(i)}, 1);
    return tb.finish();
  }
  int q = first_arc_violation(i);
  if (q == 0) throw internal_error("no arc violation in " + i.to_string());
  /* Walk the violating strand to the left end.  It is non-adjacent to
   * every prefix entry, so each level is an inverse quadratic relation
   * followed by an idempotent slide. */
  ResidueSeq cur = i;
  std::vector<int> left;
  auto make_word = [&](const ResidueSeq& mid) {
    Word w;
    for (int k : left) w.push_back(pk(k));
    w.push_back(ge(mid));
    for (auto it = left.rbegin(); it != left.rend(); ++it) w.push_back(pk(*it));
    return w;
  };
  for (int pos = q; pos >= 2; --pos) {
    int k = pos - 1;
    int L = static_cast<int>(left.size());
    tb.step({"quad_nonadj", k, 0, cur, true}, make_word(cur), L + 1);
    Word t2;
    for (int kk : left) t2.push_back(pk(kk));
    t2.push_back(pk(k));
    t2.push_back(pk(k));
    t2.push_back(ge(cur));
    for (auto it = left.rbegin(); it != left.rend(); ++it) t2.push_back(pk(*it));
    tb.step({"psi_idem_slide", k, 0, cur, false}, t2, L + 2);
    left.push_back(k);
    cur = cur.swapped(k);
  }
  tb.step({"cyclo_idem", 0, 0, cur, false}, make_word(cur), static_cast<int>(left.size()) + 1);
  return tb.finish();
}

DerivationTrace Algebra::derive_dot_rule(int k, const ResidueSeq& i) const {
  if (k < 1 || k >= n_) throw invalid_parameter("dot index out of range: " + std::to_string(k));
  if (idempotent_index(i) < 0) throw invalid_input("not admissible: " + i.to_string());
  auto pk = [&](int kk) { return Generator::cross(n_, kk); };
  auto yk = [&](int l) { return Generator::dot(n_, l); };
  Word start{yk(k), ge(i)};
  TraceBuilder tb(registry_, "dot_annihilation y" + std::to_string(k) + " " + i.to_string(), n_,
                  start);
  if (k == 1) {
    tb.step({"cyclo_dot", 0, 0, i, false}, start, 1);
    return tb.finish();
  }
  int l = 0;
  for (int t = 1; t < k; ++t)
    if (quiver_.adjacent(i.entry(t), i.entry(k))) {
      if (l) throw internal_error("two earlier neighbours below position " + std::to_string(k));
      l = t;
    }
  if (!l) throw internal_error("no earlier neighbour below position " + std::to_string(k));
  /* Carry the dotted strand left until it sits beside its unique earlier
   * neighbour, then trade the dot across the crossing. */
  ResidueSeq cur = i;
  std::vector<int> left;
  auto make_word = [&](int dot_at, const ResidueSeq& mid) {
    Word w;
    for (int kk : left) w.push_back(pk(kk));
    w.push_back(yk(dot_at));
    w.push_back(ge(mid));
    for (auto it = left.rbegin(); it != left.rend(); ++it) w.push_back(pk(*it));
    return w;
  };
  auto splice = [&](std::initializer_list<Generator> mid) {
    Word w;
    for (int kk : left) w.push_back(pk(kk));
    w.insert(w.end(), mid.begin(), mid.end());
    for (auto it = left.rbegin(); it != left.rend(); ++it) w.push_back(pk(*it));
    return w;
  };
  for (int pos = k; pos >= l + 2; --pos) {
    int kk = pos - 1;
    int L = static_cast<int>(left.size());
    tb.step({"quad_nonadj", kk, 0, cur, true}, make_word(pos, cur), L + 2);
    tb.step({"psi_idem_slide", kk, 0, cur, false}, splice({yk(pos), pk(kk), pk(kk), ge(cur)}),
            L + 3);
    ResidueSeq nxt = cur.swapped(kk);
    tb.step({"psi_dot_slide_b", kk, 0, nxt, false}, splice({yk(pos), pk(kk), ge(nxt), pk(kk)}),
            L + 1);
    left.push_back(kk);
    cur = nxt;
  }
  int L = static_cast<int>(left.size());
  tb.step({"quad_dot_exchange", l, 0, cur, false}, make_word(l + 1, cur), L + 1);
  if (l == 1)
    tb.step({"cyclo_dot", 0, 0, cur, false}, splice({yk(1), ge(cur)}), L + 1);
  else
    tb.step({"dot_annihilates", l, 0, cur, false}, splice({yk(l), ge(cur)}), L + 1);
  tb.step({"psi_idem_slide", l, 0, cur, false}, splice({pk(l), pk(l), ge(cur)}), L + 2);
  ResidueSeq bad = cur.swapped(l);
  ensure_idem_vanish_registered(bad);
  tb.step({"idem_vanishes", 0, 0, bad, false}, splice({pk(l), ge(bad), pk(l)}), L + 2);
  return tb.finish();
}

DerivationTrace Algebra::derive_top_dot_square(const ResidueSeq& i) const {
  if (idempotent_index(i) < 0) throw invalid_input("not admissible: " + i.to_string());
  auto pk = [&](int kk) { return Generator::cross(n_, kk); };
  auto yk = [&](int l) { return Generator::dot(n_, l); };
  Word start{yk(n_), yk(n_), ge(i)};
  TraceBuilder tb(registry_, "top_dot_square " + i.to_string(), n_, start);
  if (n_ == 2) {
    tb.step({"quad_double_dot_exchange", 1, 0, i, false}, start, 1);
    tb.step({"psi_idem_slide", 1, 0, i, false}, Word{pk(1), pk(1), ge(i)}, 2);
    ResidueSeq flip = i.swapped(1);
    tb.step({"cyclo_idem", 0, 0, flip, false}, Word{pk(1), ge(flip), pk(1)}, 2);
    tb.step({"cyclo_dot", 0, 0, i, false}, Word{yk(2), yk(1), ge(i)}, 2);
    tb.step({"dot_comm", 1, 2, ResidueSeq(), false}, Word{yk(1), yk(2), ge(i)}, 1);
    tb.step({"cyclo_dot", 0, 0, i, false}, Word{yk(2), yk(1), ge(i)}, 2);
    tb.step({"cyclo_dot", 0, 0, i, false}, Word{yk(1), yk(1), ge(i)}, 2);
    return tb.finish();
  }
  int l = 0, m = 0;
  for (int t = 1; t < n_; ++t)
    if (quiver_.adjacent(i.entry(t), i.entry(n_))) {
      if (!l)
        l = t;
      else if (!m)
        m = t;
      else
        throw internal_error("three neighbours of the last entry of " + i.to_string());
    }
  if (!m) throw internal_error("fewer than two neighbours of the last entry of " + i.to_string());
  ResidueSeq cur = i;
  std::vector<int> left;
  auto splice = [&](std::initializer_list<Generator> mid) {
    Word w;
    for (int kk : left) w.push_back(pk(kk));
    w.insert(w.end(), mid.begin(), mid.end());
    for (auto it = left.rbegin(); it != left.rend(); ++it) w.push_back(pk(*it));
    return w;
  };
  for (int pos = n_; pos >= m + 2; --pos) {
    int kk = pos - 1;
    int L = static_cast<int>(left.size());
    tb.step({"quad_nonadj", kk, 0, cur, true}, splice({yk(pos), yk(pos), ge(cur)}), L + 3);
    tb.step({"psi_idem_slide", kk, 0, cur, false},
            splice({yk(pos), yk(pos), pk(kk), pk(kk), ge(cur)}), L + 4);
    ResidueSeq nxt = cur.swapped(kk);
    tb.step({"psi_dot_slide_b", kk, 0, nxt, false},
            splice({yk(pos), yk(pos), pk(kk), ge(nxt), pk(kk)}), L + 2);
    tb.step({"dot_idem_comm", kk, 0, nxt, false},
            splice({yk(pos), pk(kk), yk(kk), ge(nxt), pk(kk)}), L + 3);
    tb.step({"psi_dot_slide_b", kk, 0, nxt, false},
            splice({yk(pos), pk(kk), ge(nxt), yk(kk), pk(kk)}), L + 1);
    tb.step({"dot_idem_comm", kk, 0, nxt, true}, splice({pk(kk), yk(kk), ge(nxt), yk(kk), pk(kk)}),
            L + 3);
    left.push_back(kk);
    cur = nxt;
  }
  int L = static_cast<int>(left.size());
  tb.step({"quad_dot_exchange", m, 0, cur, false}, splice({yk(m + 1), yk(m + 1), ge(cur)}), L + 2);
  tb.step({"dot_annihilates", m, 0, cur, false}, splice({yk(m + 1), yk(m), ge(cur)}), L + 2);
  tb.step({"psi_idem_slide", m, 0, cur, false}, splice({yk(m + 1), pk(m), pk(m), ge(cur)}), L + 3);
  ResidueSeq nxt = cur.swapped(m);
  tb.step({"psi_dot_slide_b", m, 0, nxt, false}, splice({yk(m + 1), pk(m), ge(nxt), pk(m)}), L + 1);
  tb.step({"dot_annihilates", m, 0, nxt, false}, splice({pk(m), yk(m), ge(nxt), pk(m)}), L + 2);
  return tb.finish();
}

/* --- cross-class certificates ------------------------------------------- */

std::optional<VanishingCertificate> Algebra::cross_class_certificate(const ResidueSeq& i,
                                                                     const ResidueSeq& j) const {
  if (idempotent_index(i) < 0) throw invalid_input("not admissible: " + i.to_string());
  if (idempotent_index(j) < 0) throw invalid_input("not admissible: " + j.to_string());
  Permutation w = matching_perm(i, j);
  int lw = w.length();
  struct Node {
    Permutation u;
    std::vector<int> word;
  };
  std::set<std::uint64_t> seen;
  std::deque<Node> queue;
  queue.push_back(Node{Permutation::identity(n_), {}});
  seen.insert(Permutation::identity(n_).pack());
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    for (int k = 1; k < n_; ++k) {
      if (node.u(k) > node.u(k + 1)) continue;
      Permutation u2 = node.u.times_transposition(k);
      if (u2.length() + (u2.inverse() * w).length() != lw) continue;
      if (!seen.insert(u2.pack()).second) continue;
      std::vector<int> word2 = node.word;
      word2.push_back(k);
      ResidueSeq t2 = u2.act_inverse(i);
      if (idempotent_index(t2) < 0) {
        std::vector<int> rest = (u2.inverse() * w).lex_min_reduced_word();
        VanishingCertificate cert;
        cert.bad_prefix_len = static_cast<int>(word2.size());
        cert.bad_target = t2;
        cert.word = std::move(word2);
        cert.word.insert(cert.word.end(), rest.begin(), rest.end());
        return cert;
      }
      queue.push_back(Node{std::move(u2), std::move(word2)});
    }
  }
  return std::nullopt;
}

DerivationTrace Algebra::certificate_trace(const ResidueSeq& i,
                                           const VanishingCertificate& c) const {
  auto pk = [&](int k) { return Generator::cross(n_, k); };
  Word start;
  start.push_back(ge(i));
  for (int k : c.word) start.push_back(pk(k));
  TraceBuilder tb(registry_, "cross_class_vanishing " + i.to_string(), n_, start);
  ResidueSeq cur = i;
  auto make_word = [&](int r, const ResidueSeq& mid) {
    Word w;
    for (int t = 0; t < r; ++t) w.push_back(pk(c.word[t]));
    w.push_back(ge(mid));
    for (std::size_t t = r; t < c.word.size(); ++t) w.push_back(pk(c.word[t]));
    return w;
  };
  for (int r = 0; r < c.bad_prefix_len; ++r) {
    int k = c.word[r];
    ResidueSeq nxt = cur.swapped(k);
    tb.step({"psi_idem_slide", k, 0, nxt, true}, make_word(r, cur), r + 1);
    cur = nxt;
  }
  if (cur != c.bad_target)
    throw verification_error("certificate target mismatch: reached " + cur.to_string() +
                             ", expected " + c.bad_target.to_string());
  ensure_idem_vanish_registered(cur);
  tb.step({"idem_vanishes", 0, 0, cur, false}, make_word(c.bad_prefix_len, cur),
          c.bad_prefix_len + 1);
  return tb.finish();
}

void Algebra::certify_gap_kill(int src_idx, int tgt_idx) const {
  if (gap_certified_.count({src_idx, tgt_idx})) return;
  auto cert = cross_class_certificate(adm_[src_idx], adm_[tgt_idx]);
  if (!cert)
    throw internal_error("no vanishing certificate for the pair " + adm_[src_idx].to_string() +
                         " -> " + adm_[tgt_idx].to_string());
  registry_.replay(certificate_trace(adm_[src_idx], *cert));
  gap_certified_.insert({src_idx, tgt_idx});
}

}  // namespace klr
