#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "klr/error.hpp"
#include "klr/json_io.hpp"

using namespace klr;

namespace {

std::string temp_path(const char* stem) {
  return std::string("io_test_") + stem + ".json";
}

ordered_json slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return ordered_json::parse(in);
}

void spit(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("elements serialize in basis order with exact coefficients") {
  Algebra a(3);
  ResidueSeq i({0, 1, 2});
  ResidueSeq j({0, 2, 1});
  AlgebraElement x =
      AlgebraElement(3, Word{Generator::idem(j)}).scaled(Rational(-1, 2)) +
      AlgebraElement(3, Word{Generator::idem(i), Generator::dot(3, 3)});
  ordered_json out = element_to_json(a, a.rewrite(x));
  CHECK(out["n"] == 3);
  REQUIRE(out["terms"].size() == 2);
  /* basis order sorts by source, so the dotted e(0,1,2) word comes first */
  CHECK(out["terms"][0]["coeff"] == "1");
  CHECK(out["terms"][0]["word"] == ordered_json::array({"e(0,1,2)", "y3"}));
  CHECK(out["terms"][1]["coeff"] == "-1/2");
  CHECK(out["terms"][1]["word"] == ordered_json::array({"e(0,2,1)"}));
  CHECK(element_to_json(a, AlgebraElement::zero(3))["terms"].empty());
}

TEST_CASE("serialization is byte deterministic") {
  Algebra a(4);
  AlgebraElement x(4, Word{Generator::cross(4, 3), Generator::cross(4, 3),
                           Generator::idem(ResidueSeq({0, 1, 2, 3}))});
  std::string once = element_to_json(a, a.rewrite(x)).dump();
  std::string twice = element_to_json(a, a.rewrite(x)).dump();
  CHECK(once == twice);
  CHECK(basis_to_json(a).dump() == basis_to_json(a).dump());
}

TEST_CASE("element round trip through json") {
  Algebra a(3);
  for (const NormalWord& b : a.basis()) {
    AlgebraElement x = a.rewrite(AlgebraElement(3, b.to_word()).scaled(Rational(7, 3)));
    CHECK(element_from_json(a, element_to_json(a, x)) == x);
  }
}

TEST_CASE("malformed element json is rejected") {
  Algebra a(3);
  CHECK_THROWS_AS(element_from_json(a, ordered_json::array()), invalid_input);
  CHECK_THROWS_AS(element_from_json(a, {{"n", 4}, {"terms", ordered_json::array()}}),
                  invalid_input);
  ordered_json bad_coeff = {{"n", 3},
                            {"terms", {{{"coeff", "x"}, {"word", {"y3"}}}}}};
  CHECK_THROWS_AS(element_from_json(a, bad_coeff), invalid_input);
  ordered_json bad_word = {{"n", 3},
                           {"terms", {{{"coeff", "1"}, {"word", {"y3*y2"}}}}}};
  CHECK_THROWS_AS(element_from_json(a, bad_word), invalid_input);
  ordered_json sum_word = {{"n", 3},
                           {"terms", {{{"coeff", "1"}, {"word", {"y3 + y2"}}}}}};
  CHECK_THROWS_AS(element_from_json(a, sum_word), invalid_input);
}

TEST_CASE("basis json lists every normal word") {
  Algebra a(3);
  ordered_json b = basis_to_json(a);
  CHECK(b["n"] == 3);
  CHECK(b["dimension"] == 6);
  REQUIRE(b["basis"].size() == 6);
  for (const auto& row : b["basis"]) {
    CHECK(row.contains("index"));
    CHECK(row.contains("source"));
    CHECK(row.contains("target"));
    CHECK(row.contains("dot"));
    CHECK(row.contains("word"));
    CHECK(row.contains("text"));
  }
}

TEST_CASE("report serializers carry the verdicts") {
  Algebra a(3);
  MoritaReport m = verify_morita_classes(3, &a);
  ordered_json mj = morita_to_json(m);
  CHECK(mj["pass"] == true);
  CHECK(mj["engine_checked"] == true);

  QuiverPresentation p = quiver_presentation(a);
  ordered_json qj = quiver_to_json(a, p);
  CHECK(qj["pass"] == true);
  CHECK(qj["composition"].get<std::string>().rfind("left to right", 0) == 0);
  CHECK(qj["relations"].size() == p.relations.size());

  Algebra big(4);
  TruncationReport t = verify_truncation_iso(a, big);
  ordered_json tj = truncation_to_json(t);
  CHECK(tj["pass"] == true);

  BlockDimReport dims = verify_identities(3, &a);
  ordered_json dj = block_dims_to_json(dims);
  CHECK(dj["pass"] == true);

  RingAxiomReport rr = a.verify_ring_axioms(0, 1);
  ordered_json rj = ring_axioms_to_json(rr);
  CHECK(rj["pass"] == true);
  CHECK(rj["exhaustive"] == true);
}

TEST_CASE("cache round trip reproduces the table") {
  Algebra a(3);
  FileGuard fg{temp_path("cache_roundtrip")};
  write_cache(a, fg.path);
  StructureConstantTable t = read_cache(a, fg.path, 42);
  CHECK(t.n == 3);
  CHECK(t.products == a.structure_constants().products);
}

TEST_CASE("cache rejects wrong ranks and junk files") {
  Algebra a3(3);
  Algebra a4(4);
  FileGuard fg{temp_path("cache_rank")};
  write_cache(a3, fg.path);
  CHECK_THROWS_AS(read_cache(a4, fg.path, 1), invalid_input);

  FileGuard junk{temp_path("cache_junk")};
  std::ofstream(junk.path) << "not json at all\n";
  CHECK_THROWS_AS(read_cache(a3, junk.path, 1), invalid_input);
  CHECK_THROWS_AS(read_cache(a3, "does_not_exist.json", 1), invalid_input);
}

TEST_CASE("tampered cache entries are detected") {
  Algebra a(3);
  std::uint64_t seed = 12345;

  SUBCASE("edited basis row") {
    FileGuard fg{temp_path("cache_tamper_basis")};
    write_cache(a, fg.path);
    ordered_json j = slurp(fg.path);
    auto& row = j["basis"][2];
    std::swap(row["source"][1], row["source"][2]);
    spit(fg.path, j);
    CHECK_THROWS_AS(read_cache(a, fg.path, seed), verification_error);
  }

  SUBCASE("edited product row that a probe visits") {
    FileGuard fg{temp_path("cache_tamper_product")};
    write_cache(a, fg.path);
    ordered_json j = slurp(fg.path);
    int dim = 6;
    std::mt19937_64 rng(seed);
    bool tampered = false;
    for (int probe = 0; probe < 32 && !tampered; ++probe) {
      int r = static_cast<int>(rng() % dim);
      int c = static_cast<int>(rng() % dim);
      for (auto& row : j["products"]) {
        if (row[0] == r && row[1] == c) {
          row[2][0][1] = row[2][0][1].get<long long>() + 1;
          tampered = true;
          break;
        }
      }
    }
    REQUIRE(tampered);
    spit(fg.path, j);
    CHECK_THROWS_AS(read_cache(a, fg.path, seed), verification_error);
  }

  SUBCASE("dropped basis row changes the count") {
    FileGuard fg{temp_path("cache_tamper_count")};
    write_cache(a, fg.path);
    ordered_json j = slurp(fg.path);
    j["basis"].erase(0);
    spit(fg.path, j);
    CHECK_THROWS_AS(read_cache(a, fg.path, seed), verification_error);
  }
}

}
