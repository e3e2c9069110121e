/* json_io.hpp: machine-readable output and the structure-constant cache.
 *
 * Elements serialize as
 *   {"n": 3, "terms": [{"coeff": "p/q", "word": ["e(0,1,2)", "y3"]}]}
 * with terms in basis order and coefficients as exact "p/q" strings.
 * Report serializers mirror the corresponding report structs field by
 * field so --json output is stable for golden tests.
 *
 * The cache file stores the basis and the sparse multiplication table for
 * one rank, and is self-validating on load: the basis must match the
 * algebra's own, the count must equal C(2(n-1), n-1), and 32 seeded
 * random products are recomputed and compared. */

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "klr/engine.hpp"
#include "klr/hecke.hpp"
#include "klr/quotient.hpp"

namespace klr {

using ordered_json = nlohmann::ordered_json;

ordered_json element_to_json(const Algebra& a, const AlgebraElement& x);
AlgebraElement element_from_json(const Algebra& a, const ordered_json& j);

ordered_json basis_to_json(const Algebra& a);
ordered_json morita_to_json(const MoritaReport& r);
ordered_json quiver_to_json(const Algebra& a, const QuiverPresentation& p);
ordered_json truncation_to_json(const TruncationReport& r);
ordered_json block_dims_to_json(const BlockDimReport& r);
ordered_json ring_axioms_to_json(const RingAxiomReport& r);

void write_cache(const Algebra& a, const std::string& path);

/* Loads, validates, and returns the cached table.  Throws
 * verification_error when the file fails any self-validation probe and
 * invalid_input when it is not a cache file for a.n(). */
StructureConstantTable read_cache(const Algebra& a, const std::string& path, std::uint64_t seed);

}  // namespace klr
