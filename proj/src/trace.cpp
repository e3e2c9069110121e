#include "klr/trace.hpp"

#include <utility>

namespace klr {

namespace {

bool gen_is_idem(const Word& w, int t) {
  return t >= 0 && t < static_cast<int>(w.size()) && w[t].kind == Generator::Kind::idem;
}

bool gen_is_dot(const Word& w, int t, int l) {
  return t >= 0 && t < static_cast<int>(w.size()) && w[t].kind == Generator::Kind::dot &&
         w[t].index == l;
}

bool gen_is_cross(const Word& w, int t, int k) {
  return t >= 0 && t < static_cast<int>(w.size()) && w[t].kind == Generator::Kind::cross &&
         w[t].index == k;
}

/* Replacement for the matched span: length of the span and the words
 * (with coefficients) that take its place. */
struct Expansion {
  int len = 0;
  std::vector<std::pair<Word, Rational>> repl;
};

[[noreturn]] void fail(const RuleApplication& r, const std::string& why) {
  throw verification_error("rule " + r.to_string() + ": " + why);
}

}  // namespace

std::string RuleApplication::to_string() const {
  std::string s = rule;
  s += "(";
  bool first = true;
  if (k != 0) {
    s += "k=" + std::to_string(k);
    first = false;
  }
  if (l != 0) {
    if (!first) s += ",";
    s += "l=" + std::to_string(l);
    first = false;
  }
  if (context.n() > 0) {
    if (!first) s += ",";
    s += context.to_string();
  }
  s += ")";
  if (backward) s += "^-1";
  return s;
}

RuleRegistry::RuleRegistry(int n) : n_(n), quiver_(n) {
  if (n < 2 || n > 16) throw invalid_parameter("rank out of range");
}

AlgebraElement RuleRegistry::apply(const RuleApplication& r, const Word& term, int pos) const {
  for (const Generator& g : term)
    if (g.n != n_) fail(r, "term rank mismatch");
  if (pos < 1 || pos > static_cast<int>(term.size())) fail(r, "position out of range");
  const int at = pos - 1;
  const int k = r.k;
  const int l = r.l;
  const ResidueSeq& ctx = r.context;

  auto need_ctx = [&](int t) -> const ResidueSeq& {
    if (!gen_is_idem(term, t)) fail(r, "expected idempotent in pattern");
    if (ctx.n() != n_ || term[t].sequence != ctx) fail(r, "context does not match idempotent");
    return term[t].sequence;
  };
  auto e = [&](const ResidueSeq& i) { return Generator::idem(i); };
  auto y = [&](int a) { return Generator::dot(n_, a); };
  auto p = [&](int a) { return Generator::cross(n_, a); };

  Expansion x;

  if (r.rule == "idem_mult") {
    if (r.backward) fail(r, "not reversible");
    if (!gen_is_idem(term, at) || !gen_is_idem(term, at + 1)) fail(r, "pattern mismatch");
    x.len = 2;
    if (term[at].sequence == term[at + 1].sequence)
      x.repl.push_back({Word{term[at]}, Rational(1)});
  } else if (r.rule == "dot_idem_comm") {
    x.len = 2;
    if (!r.backward) {
      if (!gen_is_dot(term, at, k)) fail(r, "pattern mismatch");
      need_ctx(at + 1);
      x.repl.push_back({Word{e(ctx), y(k)}, Rational(1)});
    } else {
      need_ctx(at);
      if (!gen_is_dot(term, at + 1, k)) fail(r, "pattern mismatch");
      x.repl.push_back({Word{y(k), e(ctx)}, Rational(1)});
    }
  } else if (r.rule == "psi_idem_slide") {
    if (k < 1 || k >= n_) fail(r, "index out of range");
    if (ctx.n() != n_) fail(r, "missing context");
    x.len = 2;
    if (!r.backward) {
      if (!gen_is_cross(term, at, k)) fail(r, "pattern mismatch");
      need_ctx(at + 1);
      x.repl.push_back({Word{e(ctx.swapped(k)), p(k)}, Rational(1)});
    } else {
      if (!gen_is_idem(term, at) || term[at].sequence != ctx.swapped(k))
        fail(r, "pattern mismatch");
      if (!gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
      x.repl.push_back({Word{p(k), e(ctx)}, Rational(1)});
    }
  } else if (r.rule == "dot_comm") {
    if (k == l) fail(r, "indices must differ");
    x.len = 2;
    int a = r.backward ? l : k, b = r.backward ? k : l;
    if (!gen_is_dot(term, at, a) || !gen_is_dot(term, at + 1, b)) fail(r, "pattern mismatch");
    x.repl.push_back({Word{y(b), y(a)}, Rational(1)});
  } else if (r.rule == "psi_dot_far") {
    if (l == k || l == k + 1) fail(r, "dot index not far from crossing");
    x.len = 2;
    if (!r.backward) {
      if (!gen_is_cross(term, at, k) || !gen_is_dot(term, at + 1, l)) fail(r, "pattern mismatch");
      x.repl.push_back({Word{y(l), p(k)}, Rational(1)});
    } else {
      if (!gen_is_dot(term, at, l) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
      x.repl.push_back({Word{p(k), y(l)}, Rational(1)});
    }
  } else if (r.rule == "psi_psi_far") {
    if (k == l || k == l + 1 || l == k + 1) fail(r, "crossings not far apart");
    x.len = 2;
    int a = r.backward ? l : k, b = r.backward ? k : l;
    if (!gen_is_cross(term, at, a) || !gen_is_cross(term, at + 1, b)) fail(r, "pattern mismatch");
    x.repl.push_back({Word{p(b), p(a)}, Rational(1)});
  } else if (r.rule == "psi_dot_slide_a") {
    x.len = 3;
    if (!r.backward) {
      if (!gen_is_cross(term, at, k) || !gen_is_dot(term, at + 1, k + 1)) fail(r, "pattern mismatch");
      need_ctx(at + 2);
      x.repl.push_back({Word{y(k), p(k), e(ctx)}, Rational(1)});
    } else {
      if (!gen_is_dot(term, at, k) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
      need_ctx(at + 2);
      x.repl.push_back({Word{p(k), y(k + 1), e(ctx)}, Rational(1)});
    }
  } else if (r.rule == "psi_dot_slide_b") {
    x.len = 3;
    if (!r.backward) {
      if (!gen_is_dot(term, at, k + 1) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
      need_ctx(at + 2);
      x.repl.push_back({Word{p(k), y(k), e(ctx)}, Rational(1)});
    } else {
      if (!gen_is_cross(term, at, k) || !gen_is_dot(term, at + 1, k)) fail(r, "pattern mismatch");
      need_ctx(at + 2);
      x.repl.push_back({Word{y(k + 1), p(k), e(ctx)}, Rational(1)});
    }
  } else if (r.rule == "quad_nonadj") {
    if (k < 1 || k >= n_ || ctx.n() != n_) fail(r, "bad parameters");
    if (quiver_.adjacent(ctx.entry(k), ctx.entry(k + 1))) fail(r, "residues are adjacent");
    if (!r.backward) {
      if (!gen_is_cross(term, at, k) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
      need_ctx(at + 2);
      x.len = 3;
      x.repl.push_back({Word{e(ctx)}, Rational(1)});
    } else {
      need_ctx(at);
      x.len = 1;
      x.repl.push_back({Word{p(k), p(k), e(ctx)}, Rational(1)});
    }
  } else if (r.rule == "quad_arrow") {
    if (r.backward) fail(r, "not reversible");
    if (k < 1 || k >= n_ || ctx.n() != n_) fail(r, "bad parameters");
    int a = ctx.entry(k), b = ctx.entry(k + 1);
    if (!quiver_.adjacent(a, b) || quiver_.doubly_connected(a, b))
      fail(r, "residues not joined by a single arrow");
    if (!gen_is_cross(term, at, k) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
    need_ctx(at + 2);
    x.len = 3;
    int hi = quiver_.arrow(a, b) ? k + 1 : k;
    int lo = quiver_.arrow(a, b) ? k : k + 1;
    x.repl.push_back({Word{y(hi), e(ctx)}, Rational(1)});
    x.repl.push_back({Word{y(lo), e(ctx)}, Rational(-1)});
  } else if (r.rule == "quad_double") {
    if (r.backward) fail(r, "not reversible");
    if (ctx.n() != n_ || k < 1 || k >= n_) fail(r, "bad parameters");
    if (!quiver_.doubly_connected(ctx.entry(k), ctx.entry(k + 1)))
      fail(r, "residues not doubly connected");
    if (!gen_is_cross(term, at, k) || !gen_is_cross(term, at + 1, k)) fail(r, "pattern mismatch");
    need_ctx(at + 2);
    x.len = 3;
    x.repl.push_back({Word{y(k + 1), y(k), e(ctx)}, Rational(1)});
    x.repl.push_back({Word{y(k + 1), y(k + 1), e(ctx)}, Rational(-1)});
    x.repl.push_back({Word{y(k), y(k), e(ctx)}, Rational(-1)});
    x.repl.push_back({Word{y(k), y(k + 1), e(ctx)}, Rational(1)});
  } else if (r.rule == "braid") {
    if (k < 1 || k + 1 >= n_ || ctx.n() != n_) fail(r, "bad parameters");
    x.len = 4;
    int a = r.backward ? k + 1 : k, b = r.backward ? k : k + 1;
    if (!gen_is_cross(term, at, a) || !gen_is_cross(term, at + 1, b) ||
        !gen_is_cross(term, at + 2, a))
      fail(r, "pattern mismatch");
    need_ctx(at + 3);
    x.repl.push_back({Word{p(b), p(a), p(b), e(ctx)}, Rational(1)});
  } else if (r.rule == "quad_dot_exchange") {
    if (r.backward) fail(r, "not reversible");
    if (k < 1 || k >= n_ || ctx.n() != n_) fail(r, "bad parameters");
    int a = ctx.entry(k), b = ctx.entry(k + 1);
    if (!quiver_.adjacent(a, b) || quiver_.doubly_connected(a, b))
      fail(r, "residues not joined by a single arrow");
    if (!gen_is_dot(term, at, k + 1)) fail(r, "pattern mismatch");
    need_ctx(at + 1);
    x.len = 2;
    x.repl.push_back({Word{y(k), e(ctx)}, Rational(1)});
    x.repl.push_back({Word{p(k), p(k), e(ctx)}, Rational(quiver_.arrow(a, b) ? 1 : -1)});
  } else if (r.rule == "quad_double_dot_exchange") {
    if (r.backward) fail(r, "not reversible");
    if (n_ != 2 || k != 1 || ctx.n() != n_) fail(r, "bad parameters");
    if (!quiver_.doubly_connected(ctx.entry(1), ctx.entry(2))) fail(r, "not doubly connected");
    if (!gen_is_dot(term, at, 2) || !gen_is_dot(term, at + 1, 2)) fail(r, "pattern mismatch");
    need_ctx(at + 2);
    x.len = 3;
    x.repl.push_back({Word{p(1), p(1), e(ctx)}, Rational(-1)});
    x.repl.push_back({Word{y(2), y(1), e(ctx)}, Rational(1)});
    x.repl.push_back({Word{y(1), y(2), e(ctx)}, Rational(1)});
    x.repl.push_back({Word{y(1), y(1), e(ctx)}, Rational(-1)});
  } else if (r.rule == "cyclo_dot") {
    if (r.backward) fail(r, "not reversible");
    if (ctx.n() != n_ || ctx.entry(1) != 0) fail(r, "first residue must be 0");
    if (!gen_is_dot(term, at, 1)) fail(r, "pattern mismatch");
    need_ctx(at + 1);
    x.len = 2;
  } else if (r.rule == "cyclo_idem") {
    if (r.backward) fail(r, "not reversible");
    if (ctx.n() != n_ || ctx.entry(1) == 0) fail(r, "first residue must be nonzero");
    need_ctx(at);
    x.len = 1;
  } else if (r.rule == "idem_vanishes") {
    if (r.backward) fail(r, "not reversible");
    need_ctx(at);
    if (!knows_idem_vanishes(ctx)) fail(r, "fact not registered");
    x.len = 1;
  } else if (r.rule == "dot_annihilates") {
    if (r.backward) fail(r, "not reversible");
    if (k < 1 || k >= n_) fail(r, "index out of range");
    if (!gen_is_dot(term, at, k)) fail(r, "pattern mismatch");
    need_ctx(at + 1);
    if (!knows_dot_annihilates(k, ctx)) fail(r, "fact not registered");
    x.len = 2;
  } else if (r.rule == "top_dot_square") {
    if (r.backward) fail(r, "not reversible");
    if (!gen_is_dot(term, at, n_) || !gen_is_dot(term, at + 1, n_)) fail(r, "pattern mismatch");
    need_ctx(at + 2);
    if (!knows_top_dot_square(ctx)) fail(r, "fact not registered");
    x.len = 3;
  } else {
    fail(r, "unknown rule");
  }

  if (at + x.len > static_cast<int>(term.size())) fail(r, "pattern overruns term");

  AlgebraElement out(n_);
  for (const auto& [mid, c] : x.repl) {
    Word w(term.begin(), term.begin() + at);
    w.insert(w.end(), mid.begin(), mid.end());
    w.insert(w.end(), term.begin() + at + x.len, term.end());
    out.add_term(w, c);
  }
  return out;
}

void RuleRegistry::replay(const DerivationTrace& t) const {
  if (t.n != n_) throw invalid_input("trace rank mismatch");
  AlgebraElement current(n_, t.start);
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    const TraceStep& st = t.steps[s];
    Rational c = current.coefficient(st.term);
    if (c.is_zero())
      throw verification_error(t.name + ": step " + std::to_string(s + 1) +
                               " targets absent term " + word_to_string(st.term));
    AlgebraElement rewritten = apply(st.rule, st.term, st.pos);
    current.add_term(st.term, -c);
    current += rewritten.scaled(c);
    if (current != st.result)
      throw verification_error(t.name + ": step " + std::to_string(s + 1) + " (" +
                               st.rule.to_string() + ") deviates from recorded result");
  }
  if (current != t.end)
    throw verification_error(t.name + ": replay does not reach the recorded end");
}

void RuleRegistry::register_trace(const DerivationTrace& t) {
  replay(t);
  if (!t.end.is_zero())
    throw invalid_input("only vanishing facts can be registered");
  const Word& w = t.start;
  if (w.size() == 1 && w[0].kind == Generator::Kind::idem) {
    derived_.insert({Fact::idem_vanishes, 0, w[0].sequence.pack()});
  } else if (w.size() == 2 && w[0].kind == Generator::Kind::dot && w[0].index < n_ &&
             w[1].kind == Generator::Kind::idem) {
    derived_.insert({Fact::dot_annihilates, w[0].index, w[1].sequence.pack()});
  } else if (w.size() == 3 && w[0].kind == Generator::Kind::dot && w[0].index == n_ &&
             w[1].kind == Generator::Kind::dot && w[1].index == n_ &&
             w[2].kind == Generator::Kind::idem) {
    derived_.insert({Fact::top_dot_square, 0, w[2].sequence.pack()});
  } else {
    throw invalid_input("trace does not prove a registrable fact: " + word_to_string(w));
  }
}

bool RuleRegistry::knows_idem_vanishes(const ResidueSeq& i) const {
  return derived_.count({Fact::idem_vanishes, 0, i.pack()}) > 0;
}

bool RuleRegistry::knows_dot_annihilates(int k, const ResidueSeq& i) const {
  return derived_.count({Fact::dot_annihilates, k, i.pack()}) > 0;
}

bool RuleRegistry::knows_top_dot_square(const ResidueSeq& i) const {
  return derived_.count({Fact::top_dot_square, 0, i.pack()}) > 0;
}

}  // namespace klr
