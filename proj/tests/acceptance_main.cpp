/* Acceptance checks: one line per criterion, exit 0 only if all pass.
 *
 * Each check is self-contained and timed; failures print enough detail
 * to locate the first offending case. */

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "klr/cli.hpp"
#include "klr/engine.hpp"
#include "klr/hecke.hpp"
#include "klr/json_io.hpp"
#include "klr/quotient.hpp"
#include "support/oracles.hpp"

using namespace klr;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

AlgebraElement word_el(int n, const Word& w) { return AlgebraElement(n, w); }

void idempotent_counts(Outcome& r) {
  for (int n = 2; n <= 10; ++n) {
    long long count = static_cast<long long>(enumerate_admissible(n).size());
    r.require(count == (1LL << (n - 2)),
              "rank " + std::to_string(n) + " has " + std::to_string(count) +
                  " admissible sequences");
  }
  for (int n = 2; n <= 5; ++n) {
    Algebra a(n);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    do {
      ResidueSeq i(v);
      bool nonzero = !a.rewrite(word_el(n, Word{Generator::idem(i)})).is_zero();
      r.require(nonzero == is_admissible(i),
                "predicate and rewriting disagree at " + i.to_string());
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

void dimensions(Outcome& r) {
  const long long want[] = {2, 6, 20, 70, 252};
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    long long dim = a.dimension();
    r.require(dim == want[n - 2], "rank " + std::to_string(n) + " has dimension " +
                                      std::to_string(dim) + ", expected " +
                                      std::to_string(want[n - 2]));
    r.require(dim == oracles::binom(2 * (n - 1), n - 1), "central binomial mismatch");
  }
}

void dot_vanishing(Outcome& r) {
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    for (const ResidueSeq& i : a.idempotents()) {
      Word e{Generator::idem(i)};
      for (int k = 1; k <= n - 1; ++k) {
        Word w{Generator::dot(n, k), Generator::idem(i)};
        r.require(a.rewrite(word_el(n, w)).is_zero(),
                  "y" + std::to_string(k) + " e" + i.to_string() + " is nonzero");
      }
      Word sq{Generator::dot(n, n), Generator::dot(n, n), Generator::idem(i)};
      r.require(a.rewrite(word_el(n, sq)).is_zero(),
                "y" + std::to_string(n) + "^2 e" + i.to_string() + " is nonzero");
    }
    /* replay everything in a fresh registry: vanishing idempotents
     * first, because the dot derivations cite those facts */
    RuleRegistry fresh(n);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    try {
      do {
        ResidueSeq i(v);
        if (!is_admissible(i)) fresh.register_trace(a.derive_idempotent_vanishing(i));
      } while (std::next_permutation(v.begin(), v.end()));
      for (const DerivationTrace& t : a.derive_dot_rules()) fresh.register_trace(t);
    } catch (const std::exception& e) {
      r.fail(std::string("derivation fails to replay: ") + e.what());
      return;
    }
  }
}

void loop_basis(Outcome& r) {
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    for (const ResidueSeq& i : a.idempotents()) {
      NormalWord loop{i, true, Permutation::identity(n)};
      r.require(a.basis_index(loop) >= 0,
                "y" + std::to_string(n) + " e" + i.to_string() + " is not a basis word");
      int corner = 0;
      for (const NormalWord& b : a.basis())
        if (b.source == i && b.target() == i) ++corner;
      r.require(corner == 2, "dim e(i) R e(i) = " + std::to_string(corner) + " at " +
                                 i.to_string());
    }
  }
}

void ring_axioms(Outcome& r) {
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    RingAxiomReport rep = a.verify_ring_axioms(100000, 2026);
    r.require(rep.unit_ok, "unit law fails at rank " + std::to_string(n));
    r.require(rep.integral_ok, "non-integral structure constant at rank " + std::to_string(n));
    r.require(rep.degree_ok, "degree additivity fails at rank " + std::to_string(n));
    r.require(rep.assoc_ok, "associativity fails at rank " + std::to_string(n));
    if (n <= 4)
      r.require(rep.exhaustive, "expected exhaustive associativity at rank " + std::to_string(n));
    else
      r.require(rep.assoc_checked >= 100000,
                "only " + std::to_string(rep.assoc_checked) + " triples sampled");
    if (!rep.failures.empty()) r.fail(rep.failures.front());
  }
}

void morita_structure(Outcome& r) {
  for (int n = 2; n <= 8; ++n) {
    MoritaReport rep = verify_morita_classes(n, nullptr);
    r.require(rep.sizes_ok, "class sizes wrong at rank " + std::to_string(n));
    r.require(rep.swap_connected, "classes not swap-connected at rank " + std::to_string(n));
  }
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    MoritaReport rep = verify_morita_classes(n, &a);
    r.require(rep.pass() && rep.inverses_ok && rep.cross_class_zero,
              rep.failures.empty() ? "engine checks fail at rank " + std::to_string(n)
                                   : rep.failures.front());
  }
}

void quiver_relations(Outcome& r) {
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    QuiverPresentation p = quiver_presentation(a);
    for (const QuiverRelationCheck& c : p.relations)
      r.require(c.pass, "rank " + std::to_string(n) + ": " + c.name + " (" + c.detail + ")");
    /* recorded signs: gamma_t beta_t = (-1)^t y_n e(i_{t+1}) */
    for (int t = 1; t <= n - 2; ++t) {
      AlgebraElement got = a.multiply(p.gamma[t - 1], p.beta[t - 1]);
      AlgebraElement dotted = a.rewrite(word_el(
          n, Word{Generator::idem(p.representatives[t]), Generator::dot(n, n)}));
      AlgebraElement want = (t % 2) ? dotted.scaled(Rational(-1)) : dotted;
      r.require(got == want, "sign of gamma_" + std::to_string(t) + " beta_" +
                                 std::to_string(t) + " at rank " + std::to_string(n));
    }
  }
}

void truncation(Outcome& r) {
  for (int n = 3; n <= 6; ++n) {
    Algebra small(n - 1);
    Algebra big(n);
    TruncationReport rep = verify_truncation_iso(small, big);
    r.require(rep.pass(), rep.failures.empty()
                              ? "truncation fails at rank " + std::to_string(n)
                              : rep.failures.front());
    r.require(rep.dim_truncated == oracles::binom(2 * (n - 2), n - 2),
              "corner dimension is " + std::to_string(rep.dim_truncated) + " at rank " +
                  std::to_string(n));
  }
}

void rep_theory(Outcome& r) {
  for (int rk = 1; rk <= 8; ++rk)
    for (const auto& parts : oracles::partitions_of(rk)) {
      Partition la(parts);
      r.require(hook_dim(la) == oracles::count_standard_tableaux(parts),
                "hook length formula fails at " + la.to_string());
    }
  bool saw_even = false, saw_odd = false;
  for (int n = 2; n <= 16; ++n) {
    BlockDimReport rep = verify_identities(n);
    r.require(rep.pass(), "identities fail at rank " + std::to_string(n));
    (n % 2 ? saw_odd : saw_even) = true;
    long long total = 0;
    for (long long d : rep.simple_dims) total += d;
    r.require(total == (1LL << (n - 2)),
              "simple dimensions sum to " + std::to_string(total) + " at rank " +
                  std::to_string(n));
    for (int k = 0; k <= n - 2; ++k)
      r.require(rep.simple_dims[k] == oracles::binom(n - 2, k),
                "simple dimension k=" + std::to_string(k) + " wrong at rank " +
                    std::to_string(n));
  }
  r.require(saw_even && saw_odd, "both parity branches must be exercised");
  for (int n = 2; n <= 6; ++n) {
    Algebra a(n);
    BlockDimReport rep = verify_identities(n, &a);
    r.require(rep.engine_checked && rep.pass(),
              "engine cross-checks fail at rank " + std::to_string(n));
  }
}

void cli_verify(Outcome& r) {
  for (int n = 2; n <= 6; ++n) {
    std::ostringstream out, err;
    int code = run_command({"verify", std::to_string(n), "--suite", "all"}, out, err);
    r.require(code == 0, "verify " + std::to_string(n) + " exited " + std::to_string(code) +
                             ": " + err.str());
  }

  /* a failing validation must exit 1 and name the failing check */
  std::string path = "acceptance_tampered_cache.json";
  {
    std::ostringstream out, err;
    int code = run_command({"cache", "3", "--write", path}, out, err);
    r.require(code == 0, "cache write exited " + std::to_string(code));
  }
  {
    std::ifstream in(path);
    auto j = nlohmann::ordered_json::parse(in);
    in.close();
    std::swap(j["basis"][1]["source"][1], j["basis"][1]["source"][2]);
    std::ofstream(path) << j.dump();
  }
  std::ostringstream out, err;
  int code = run_command({"cache", "3", "--read", path}, out, err);
  std::remove(path.c_str());
  r.require(code == 1, "tampered cache read exited " + std::to_string(code) + ", expected 1");
  r.require(err.str().find("basis disagrees") != std::string::npos,
            "failure message does not name the check: " + err.str());
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"idempotent count 2^(n-2), predicate vs rewriting (n <= 5)", 10, idempotent_counts},
      {"dimensions 2, 6, 20, 70, 252 = C(2(n-1), n-1)", 60, dimensions},
      {"dot vanishing and replayable derivations (n <= 6)", 60, dot_vanishing},
      {"loop y_n e(i) in basis, dim e(i)Re(i) = 2 (n <= 6)", 60, loop_basis},
      {"ring axioms: unit, associativity, integrality, degrees", 180, ring_axioms},
      {"Morita classes: sizes, connectivity, inverse pairs (n <= 8)", 60, morita_structure},
      {"quiver presentation relations with recorded signs (n <= 6)", 60, quiver_relations},
      {"corner isomorphism onto the lower rank (n = 3..6)", 60, truncation},
      {"dimension identities and hook formula oracle (n <= 16)", 5, rep_theory},
      {"verify CLI exits 0 for n = 2..6; failures exit 1 named", 300, cli_verify},
  };

  bool all = true;
  double total = 0;
  for (std::size_t t = 0; t < criteria.size(); ++t) {
    Outcome r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[t].run(r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    if (secs > criteria[t].budget_s)
      r.fail("exceeded time budget of " + std::to_string(criteria[t].budget_s) + "s");
    all = all && r.ok;
    std::printf("%s [%2zu] %s (%.2fs)%s%s\n", r.ok ? "PASS" : "FAIL", t + 1,
                criteria[t].label, secs, r.detail.empty() ? "" : " -- ",
                r.detail.c_str());
  }
  std::printf("%s: 10 criteria in %.2fs\n", all ? "ALL PASS" : "FAILURES", total);
  return all ? 0 : 1;
}
