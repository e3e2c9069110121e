#include "klr/json_io.hpp"

#include <algorithm>

#include "klr/expr.hpp"
#include <fstream>
#include <random>
#include <tuple>
#include <vector>

namespace klr {

namespace {

long long binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

ordered_json seq_json(const ResidueSeq& i) { return ordered_json(i.entries()); }

ordered_json word_json(const Word& w) {
  ordered_json out = ordered_json::array();
  for (const Generator& g : w) out.push_back(g.to_string());
  return out;
}

/* Canonical terms of x as (basis index, word, coefficient), basis order. */
std::vector<std::tuple<int, Word, Rational>> canonical_rows(const Algebra& a,
                                                            const AlgebraElement& x) {
  AlgebraElement canon = a.rewrite(x);
  std::vector<std::tuple<int, Word, Rational>> rows;
  for (const auto& [w, c] : canon.terms()) {
    std::optional<NormalWord> nw = parse_normal_word(w);
    int idx = nw ? a.basis_index(*nw) : -1;
    if (idx < 0) throw internal_error("canonical element contains a non-basis word");
    rows.emplace_back(idx, w, c);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& l, const auto& r) { return std::get<0>(l) < std::get<0>(r); });
  return rows;
}

ordered_json relation_checks_json(const std::vector<QuiverRelationCheck>& cs) {
  ordered_json out = ordered_json::array();
  for (const QuiverRelationCheck& c : cs)
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

}  // namespace

ordered_json element_to_json(const Algebra& a, const AlgebraElement& x) {
  ordered_json terms = ordered_json::array();
  for (const auto& [idx, w, c] : canonical_rows(a, x))
    terms.push_back({{"coeff", c.to_string()}, {"word", word_json(w)}});
  return {{"n", a.n()}, {"terms", terms}};
}

AlgebraElement element_from_json(const Algebra& a, const ordered_json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") ||
      !j["n"].is_number_integer() || !j["terms"].is_array())
    throw invalid_input("element JSON needs an object with \"n\" and \"terms\"");
  if (j["n"].get<int>() != a.n())
    throw invalid_input("element JSON is for rank " + j["n"].dump() + ", expected " +
                        std::to_string(a.n()));
  AlgebraElement out(a.n());
  for (const ordered_json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("word") ||
        !t["coeff"].is_string() || !t["word"].is_array())
      throw invalid_input("element JSON term needs a \"coeff\" string and a \"word\" array");
    Rational c;
    try {
      c = Rational::parse(t["coeff"].get<std::string>());
    } catch (const std::exception& e) {
      throw invalid_input(std::string("bad coefficient in element JSON: ") + e.what());
    }
    Word w;
    for (const ordered_json& tok : t["word"]) {
      if (!tok.is_string()) throw invalid_input("element JSON word letters must be strings");
      ElementExpr leaf;
      try {
        leaf = parse_element(tok.get<std::string>(), a.n());
      } catch (const parse_error& e) {
        throw invalid_input("bad generator '" + tok.get<std::string>() +
                            "' in element JSON: " + e.what());
      }
      if (leaf.kind != ElementExpr::Kind::generator)
        throw invalid_input("element JSON word letter '" + tok.get<std::string>() +
                            "' is not a single generator");
      w.push_back(*leaf.gen);
    }
    out.add_term(w, c);
  }
  return out;
}

ordered_json basis_to_json(const Algebra& a) {
  ordered_json rows = ordered_json::array();
  const std::vector<NormalWord>& basis = a.basis();
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const NormalWord& b = basis[t];
    rows.push_back({{"index", t},
                    {"source", seq_json(b.source)},
                    {"target", seq_json(b.target())},
                    {"dot", b.dot ? 1 : 0},
                    {"word", ordered_json(b.w.lex_min_reduced_word())},
                    {"text", b.to_string()}});
  }
  return {{"n", a.n()}, {"dimension", a.dimension()}, {"basis", rows}};
}

ordered_json morita_to_json(const MoritaReport& r) {
  ordered_json classes = ordered_json::array();
  for (const auto& [k, members] : r.classes) {
    ordered_json ms = ordered_json::array();
    for (const ResidueSeq& i : members) ms.push_back(seq_json(i));
    classes.push_back({{"class", k}, {"size", members.size()}, {"members", ms}});
  }
  return {{"n", r.n},
          {"pass", r.pass()},
          {"sizes_ok", r.sizes_ok},
          {"swap_connected", r.swap_connected},
          {"inverses_ok", r.inverses_ok},
          {"cross_class_zero", r.cross_class_zero},
          {"engine_checked", r.engine_checked},
          {"classes", classes},
          {"failures", ordered_json(r.failures)}};
}

ordered_json quiver_to_json(const Algebra& a, const QuiverPresentation& p) {
  ordered_json reps = ordered_json::array();
  for (const ResidueSeq& i : p.representatives) reps.push_back(seq_json(i));
  ordered_json beta = ordered_json::array();
  for (const AlgebraElement& b : p.beta) beta.push_back(element_to_json(a, b));
  ordered_json gamma = ordered_json::array();
  for (const AlgebraElement& g : p.gamma) gamma.push_back(element_to_json(a, g));
  return {{"n", p.n},
          {"pass", p.all_pass()},
          {"vertices", ordered_json(p.vertices)},
          {"representatives", reps},
          {"composition", p.composition_convention},
          {"loop", element_to_json(a, p.loop)},
          {"beta", beta},
          {"gamma", gamma},
          {"relations", relation_checks_json(p.relations)},
          {"junction", ordered_json(p.junction_report)}};
}

ordered_json truncation_to_json(const TruncationReport& r) {
  return {{"n", r.n},
          {"pass", r.pass()},
          {"corner_dimension", r.dim_truncated},
          {"target_dimension", r.dim_target},
          {"basis_bijection", r.basis_bijection_verified},
          {"structure_constants", r.structure_constants_match},
          {"relations", relation_checks_json(r.relation_checks)},
          {"failures", ordered_json(r.failures)}};
}

ordered_json block_dims_to_json(const BlockDimReport& r) {
  ordered_json ids = ordered_json::array();
  for (const DimIdentity& i : r.identities)
    ids.push_back({{"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"pass", i.pass}});
  return {{"n", r.n},
          {"pass", r.pass()},
          {"specht_dims", ordered_json(r.specht_dims)},
          {"simple_dims", ordered_json(r.simple_dims)},
          {"projective_dims", ordered_json(r.projective_dims)},
          {"engine_checked", r.engine_checked},
          {"identities", ids}};
}

ordered_json ring_axioms_to_json(const RingAxiomReport& r) {
  return {{"n", r.n},
          {"pass", r.pass()},
          {"unit_ok", r.unit_ok},
          {"assoc_ok", r.assoc_ok},
          {"integral_ok", r.integral_ok},
          {"degree_ok", r.degree_ok},
          {"exhaustive", r.exhaustive},
          {"assoc_checked", r.assoc_checked},
          {"failures", ordered_json(r.failures)}};
}

void write_cache(const Algebra& a, const std::string& path) {
  const std::vector<NormalWord>& basis = a.basis();
  const StructureConstantTable& table = a.structure_constants();
  ordered_json rows = ordered_json::array();
  for (const NormalWord& b : basis)
    rows.push_back({{"source", seq_json(b.source)},
                    {"target", seq_json(b.target())},
                    {"dot", b.dot ? 1 : 0},
                    {"word", ordered_json(b.w.lex_min_reduced_word())}});
  ordered_json products = ordered_json::array();
  for (const auto& [key, row] : table.products) {
    ordered_json entries = ordered_json::array();
    for (const auto& [idx, c] : row) {
      if (!c.is_integer())
        throw verification_error("non-integral structure constant at (" +
                                 std::to_string(key.first) + "," + std::to_string(key.second) +
                                 ")");
      entries.push_back({idx, c.numerator()});
    }
    products.push_back({key.first, key.second, entries});
  }
  ordered_json j{{"format", 1}, {"n", a.n()}, {"basis", rows}, {"products", products}};
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open cache file for writing: " + path);
  out << j.dump() << "\n";
  if (!out) throw invalid_input("failed writing cache file: " + path);
}

StructureConstantTable read_cache(const Algebra& a, const std::string& path,
                                  std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open cache file: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw invalid_input(std::string("not a cache file: ") + e.what());
  }
  if (!j.is_object() || j.value("format", 0) != 1)
    throw invalid_input("unsupported cache format");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() != a.n())
    throw invalid_input("cache file is not for rank " + std::to_string(a.n()));
  if (!j.contains("basis") || !j["basis"].is_array() || !j.contains("products") ||
      !j["products"].is_array())
    throw invalid_input("cache file lacks basis or products");

  const std::vector<NormalWord>& basis = a.basis();
  long long want = binom(2 * (a.n() - 1), a.n() - 1);
  if (static_cast<long long>(j["basis"].size()) != want)
    throw verification_error("cache basis count " + std::to_string(j["basis"].size()) +
                             " differs from C(2(n-1),n-1) = " + std::to_string(want));
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const ordered_json& row = j["basis"][t];
    bool ok = row.is_object() && row.contains("source") && row.contains("target") &&
              row.contains("dot") && row.contains("word");
    if (ok) {
      const NormalWord& b = basis[t];
      ok = row["source"] == ordered_json(b.source.entries()) &&
           row["target"] == ordered_json(b.target().entries()) &&
           row["dot"] == ordered_json(b.dot ? 1 : 0) &&
           row["word"] == ordered_json(b.w.lex_min_reduced_word());
    }
    if (!ok)
      throw verification_error("cache basis disagrees at index " + std::to_string(t));
  }

  StructureConstantTable table;
  table.n = a.n();
  int dim = static_cast<int>(basis.size());
  for (const ordered_json& row : j["products"]) {
    bool ok = row.is_array() && row.size() == 3 && row[0].is_number_integer() &&
              row[1].is_number_integer() && row[2].is_array();
    int r = ok ? row[0].get<int>() : -1;
    int c = ok ? row[1].get<int>() : -1;
    if (!ok || r < 0 || r >= dim || c < 0 || c >= dim)
      throw verification_error("cache product row is malformed");
    std::vector<std::pair<int, Rational>> entries;
    for (const ordered_json& e : row[2]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw verification_error("cache product entry is malformed");
      int idx = e[0].get<int>();
      if (idx < 0 || idx >= dim) throw verification_error("cache product entry is malformed");
      entries.emplace_back(idx, Rational(e[1].get<long long>()));
    }
    if (entries.empty()) throw verification_error("cache product row is empty");
    if (!table.products.emplace(std::make_pair(r, c), std::move(entries)).second)
      throw verification_error("cache product row repeats (" + std::to_string(r) + "," +
                               std::to_string(c) + ")");
  }

  std::mt19937_64 rng(seed);
  for (int probe = 0; probe < 32; ++probe) {
    int r = static_cast<int>(rng() % dim);
    int c = static_cast<int>(rng() % dim);
    AlgebraElement prod = a.multiply(AlgebraElement(a.n(), basis[r].to_word()),
                                     AlgebraElement(a.n(), basis[c].to_word()));
    std::vector<std::pair<int, Rational>> got;
    for (const auto& [idx, w, coef] : canonical_rows(a, prod)) {
      (void)w;
      got.emplace_back(idx, coef);
    }
    auto it = table.products.find({r, c});
    std::vector<std::pair<int, Rational>> cached;
    if (it != table.products.end()) cached = it->second;
    if (got != cached)
      throw verification_error("cache product probe failed at (" + std::to_string(r) + "," +
                               std::to_string(c) + ")");
  }
  return table;
}

}  // namespace klr
