#include "klr/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "klr/expr.hpp"
#include "klr/json_io.hpp"

namespace klr {

namespace {

long long binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

/* Relative cache paths resolve against KLR_CACHE_DIR when it is set. */
std::string resolve_cache_path(const std::string& path) {
  if (path.empty() || path[0] == '/') return path;
  const char* dir = std::getenv("KLR_CACHE_DIR");
  if (dir && *dir) return std::string(dir) + "/" + path;
  return path;
}

void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

struct CheckTable {
  std::ostream& out;
  bool json;
  bool all = true;
  ordered_json rows = ordered_json::array();

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    all = all && ok;
    if (json) {
      rows.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    } else {
      out << (ok ? "ok   " : "FAIL ") << name;
      if (!detail.empty()) out << " (" << detail << ")";
      out << "\n";
    }
  }
};

std::string first_failure(const std::vector<QuiverRelationCheck>& cs, std::size_t count_all) {
  for (const QuiverRelationCheck& c : cs)
    if (!c.pass) return c.name + ": " + c.detail;
  return std::to_string(count_all) + " relation families";
}

int run_verify(int n, const std::string& suite, bool json, std::uint64_t seed,
               std::ostream& out) {
  CheckTable t{out, json};
  bool want_engine = suite == "engine" || suite == "all";
  bool want_quiver = suite == "quiver" || suite == "all";
  bool want_rep = suite == "reptheory" || suite == "all";

  std::unique_ptr<Algebra> a;
  if (want_engine || want_quiver || (want_rep && n <= 6)) a = std::make_unique<Algebra>(n);

  if (want_engine) {
    t.add("engine: idempotent count is 2^(n-2)",
          static_cast<long long>(a->idempotents().size()) == (1LL << (n - 2)),
          std::to_string(a->idempotents().size()) + " idempotents");
    t.add("engine: basis count is C(2(n-1),n-1)", a->dimension() == binom(2 * (n - 1), n - 1),
          std::to_string(a->dimension()) + " normal words");
    {
      std::size_t replayed = 0;
      bool ok = true;
      std::string detail;
      try {
        for (const DerivationTrace& tr : a->derive_dot_rules()) {
          a->rules().replay(tr);
          ++replayed;
        }
        detail = std::to_string(replayed) + " derivations";
      } catch (const verification_error& e) {
        ok = false;
        detail = e.what();
      }
      t.add("engine: dot relation derivations replay", ok, detail);
    }
    {
      RingAxiomReport rep = a->verify_ring_axioms(100000, seed);
      std::string detail = rep.exhaustive
                               ? std::to_string(rep.assoc_checked) + " triples, exhaustive"
                               : std::to_string(rep.assoc_checked) + " sampled triples";
      if (!rep.pass() && !rep.failures.empty()) detail = rep.failures.front();
      t.add("engine: ring axioms (unit, associativity, integrality, degree)", rep.pass(),
            detail);
    }
  }

  if (want_quiver) {
    {
      MoritaReport rep = verify_morita_classes(n, a.get());
      std::string detail = std::to_string(rep.classes.size()) + " classes";
      if (!rep.pass() && !rep.failures.empty()) detail = rep.failures.front();
      t.add("quiver: morita classes (sizes, connectivity, inverse pairs)", rep.pass(), detail);
    }
    {
      QuiverPresentation p = quiver_presentation(*a);
      t.add("quiver: arrow and loop relations with signs", p.all_pass(),
            first_failure(p.relations, p.relations.size()));
    }
    if (n >= 3) {
      Algebra small(n - 1);
      TruncationReport rep = verify_truncation_iso(small, *a);
      std::string detail = "corner dimension " + std::to_string(rep.dim_truncated);
      if (!rep.pass() && !rep.failures.empty()) detail = rep.failures.front();
      t.add("quiver: corner truncation isomorphism from rank " + std::to_string(n - 1),
            rep.pass(), detail);
    }
  }

  if (want_rep) {
    BlockDimReport rep = verify_identities(n, a.get());
    std::string detail = std::to_string(rep.identities.size()) + " identities";
    if (!rep.pass())
      for (const DimIdentity& i : rep.identities)
        if (!i.pass) {
          detail = i.name + ": " + std::to_string(i.lhs) + " != " + std::to_string(i.rhs);
          break;
        }
    t.add(std::string("reptheory: dimension identities") +
              (rep.engine_checked ? " with engine cross-checks" : ""),
          rep.pass(), detail);
  }

  if (json)
    emit_json(out, ordered_json{
                       {"n", n}, {"suite", suite}, {"pass", t.all}, {"checks", t.rows}});
  else
    out << (t.all ? "all checks passed" : "CHECKS FAILED") << "\n";
  return t.all ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for the level-1 cyclotomic quiver Hecke algebras R_n"};
  app.name("klr");
  bool json = false;
  std::uint64_t seed = 12345;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--seed", seed, "seed for sampled checks and cache probes")
      ->capture_default_str();
  app.require_subcommand(1);

  int n = 0;
  auto add_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    s->add_option("n", n, "rank (number of strands)")->required()->check(CLI::Range(2, 16));
    return s;
  };

  CLI::App* s_idem = add_sub("idempotents", "list the admissible residue sequences");
  CLI::App* s_basis = add_sub("basis", "list the normal word basis");
  CLI::App* s_dim = add_sub("dim", "print the dimension");
  CLI::App* s_rewrite = add_sub("rewrite", "reduce an element expression to canonical form");
  std::string expr_text;
  s_rewrite->add_option("expr", expr_text, "element expression")->required();
  CLI::App* s_mult = add_sub("mult", "multiply two element expressions");
  std::string lhs_text, rhs_text;
  s_mult->add_option("lhs", lhs_text, "left factor")->required();
  s_mult->add_option("rhs", rhs_text, "right factor")->required();
  CLI::App* s_morita = add_sub("morita", "partition the idempotents into Morita classes");
  CLI::App* s_quiver = add_sub("quiver", "extract the arrow/loop presentation of the basic algebra");
  CLI::App* s_trunc = add_sub("truncation", "verify the corner isomorphism from rank n-1");
  CLI::App* s_rep = add_sub("reptheory", "check the block dimension identities");
  CLI::App* s_verify = add_sub("verify", "run a verification suite");
  std::string suite = "all";
  s_verify->add_option("--suite", suite, "engine, quiver, reptheory, or all")
      ->check(CLI::IsMember({"engine", "quiver", "reptheory", "all"}))
      ->capture_default_str();
  CLI::App* s_cache = add_sub("cache", "write or validate a structure constant cache");
  std::string write_path, read_path;
  CLI::Option* w_opt = s_cache->add_option("--write", write_path, "write the cache to this path");
  CLI::Option* r_opt = s_cache->add_option("--read", read_path, "read and validate this cache");
  w_opt->excludes(r_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_idem->parsed()) {
      std::vector<ResidueSeq> adm = enumerate_admissible(n);
      if (json) {
        ordered_json rows = ordered_json::array();
        for (const ResidueSeq& i : adm) rows.push_back(ordered_json(i.entries()));
        emit_json(out, rows);
      } else {
        for (const ResidueSeq& i : adm) out << i.to_string() << "\n";
      }
      return 0;
    }
    if (s_basis->parsed()) {
      Algebra a(n);
      if (json) {
        emit_json(out, basis_to_json(a));
      } else {
        for (const NormalWord& b : a.basis()) out << b.to_string() << "\n";
      }
      return 0;
    }
    if (s_dim->parsed()) {
      Algebra a(n);
      if (json)
        emit_json(out, ordered_json{{"n", n}, {"dimension", a.dimension()}});
      else
        out << a.dimension() << "\n";
      return 0;
    }
    if (s_rewrite->parsed()) {
      Algebra a(n);
      AlgebraElement x = a.rewrite(parse_element(expr_text, n).evaluate());
      if (json)
        emit_json(out, element_to_json(a, x));
      else
        out << x.to_string() << "\n";
      return 0;
    }
    if (s_mult->parsed()) {
      Algebra a(n);
      AlgebraElement x = a.multiply(parse_element(lhs_text, n).evaluate(),
                                    parse_element(rhs_text, n).evaluate());
      if (json)
        emit_json(out, element_to_json(a, x));
      else
        out << x.to_string() << "\n";
      return 0;
    }
    if (s_morita->parsed()) {
      std::unique_ptr<Algebra> a;
      if (n <= 6) a = std::make_unique<Algebra>(n);
      MoritaReport rep = verify_morita_classes(n, a.get());
      if (json) {
        emit_json(out, morita_to_json(rep));
      } else {
        for (const auto& [k, members] : rep.classes) {
          out << "class " << k << " (" << members.size() << "):";
          for (const ResidueSeq& i : members) out << " " << i.to_string();
          out << "\n";
        }
        out << (rep.pass() ? "ok" : "FAIL") << " sizes=" << rep.sizes_ok
            << " connected=" << rep.swap_connected << " inverses=" << rep.inverses_ok
            << " cross_class_zero=" << rep.cross_class_zero
            << " engine=" << rep.engine_checked << "\n";
        for (const std::string& f : rep.failures) out << "  " << f << "\n";
      }
      return rep.pass() ? 0 : 1;
    }
    if (s_quiver->parsed()) {
      Algebra a(n);
      QuiverPresentation p = quiver_presentation(a);
      if (json) {
        emit_json(out, quiver_to_json(a, p));
      } else {
        out << "vertices:";
        for (int v : p.vertices) out << " " << v;
        out << "\ncomposition: " << p.composition_convention << "\n";
        for (std::size_t t = 0; t < p.representatives.size(); ++t)
          out << "vertex " << t + 1 << ": " << p.representatives[t].to_string() << "\n";
        for (const QuiverRelationCheck& c : p.relations)
          out << (c.pass ? "ok   " : "FAIL ") << c.name << " | " << c.detail << "\n";
        for (const std::string& l : p.junction_report) out << "junction: " << l << "\n";
      }
      return p.all_pass() ? 0 : 1;
    }
    if (s_trunc->parsed()) {
      if (n < 3) throw invalid_parameter("truncation needs n >= 3");
      Algebra small(n - 1);
      Algebra big(n);
      TruncationReport rep = verify_truncation_iso(small, big);
      if (json) {
        emit_json(out, truncation_to_json(rep));
      } else {
        out << "corner dimension " << rep.dim_truncated << " of rank " << n
            << ", target dimension " << rep.dim_target << " of rank " << n - 1 << "\n";
        out << (rep.basis_bijection_verified ? "ok   " : "FAIL ") << "basis bijection\n";
        out << (rep.structure_constants_match ? "ok   " : "FAIL ") << "structure constants\n";
        for (const QuiverRelationCheck& c : rep.relation_checks)
          out << (c.pass ? "ok   " : "FAIL ") << c.name << " | " << c.detail << "\n";
        for (const std::string& f : rep.failures) out << "  " << f << "\n";
      }
      return rep.pass() ? 0 : 1;
    }
    if (s_rep->parsed()) {
      std::unique_ptr<Algebra> a;
      if (n <= 6) a = std::make_unique<Algebra>(n);
      BlockDimReport rep = verify_identities(n, a.get());
      if (json) {
        emit_json(out, block_dims_to_json(rep));
      } else {
        auto dims = [&](const char* name, const std::vector<long long>& v) {
          out << name << ":";
          for (long long d : v) out << " " << d;
          out << "\n";
        };
        dims("specht dims", rep.specht_dims);
        dims("simple dims", rep.simple_dims);
        dims("projective dims", rep.projective_dims);
        for (const DimIdentity& i : rep.identities)
          out << (i.pass ? "ok   " : "FAIL ") << i.name << " | " << i.lhs << " = " << i.rhs
              << "\n";
      }
      return rep.pass() ? 0 : 1;
    }
    if (s_verify->parsed()) return run_verify(n, suite, json, seed, out);
    if (s_cache->parsed()) {
      if ((write_path.empty()) == (read_path.empty()))
        throw invalid_parameter("cache needs exactly one of --write or --read");
      Algebra a(n);
      if (!write_path.empty()) {
        std::string path = resolve_cache_path(write_path);
        write_cache(a, path);
        std::size_t rows = a.structure_constants().products.size();
        if (json)
          emit_json(out, ordered_json{{"n", n},
                                      {"path", path},
                                      {"dimension", a.dimension()},
                                      {"product_rows", rows}});
        else
          out << "wrote " << path << " (" << a.dimension() << " basis words, " << rows
              << " product rows)\n";
      } else {
        std::string path = resolve_cache_path(read_path);
        StructureConstantTable table = read_cache(a, path, seed);
        if (json)
          emit_json(out, ordered_json{{"n", n},
                                      {"path", path},
                                      {"dimension", a.dimension()},
                                      {"product_rows", table.products.size()},
                                      {"valid", true}});
        else
          out << "cache ok: " << path << " (" << a.dimension() << " basis words, "
              << table.products.size() << " product rows)\n";
      }
      return 0;
    }
    throw internal_error("no subcommand dispatched");
  } catch (const parse_error& e) {
    err << "parse error at offset " << e.offset << ": " << e.what() << "\n";
    return 2;
  } catch (const invalid_parameter& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const verification_error& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace klr
