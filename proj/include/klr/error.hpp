/* error.hpp: exception taxonomy shared by all modules. */

#pragma once

#include <stdexcept>
#include <string>

namespace klr {

/* A caller handed us data that does not denote anything in the algebra:
   malformed residue sequences, mixed-n elements, unparsable expressions. */
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* A numeric argument is outside the supported range (n < 2, class index
   out of bounds, and so on). */
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* A mathematical consistency check failed: a derivation trace does not
   replay, a basis count disagrees with the closed form, a structure
   constant is non-integral. These indicate a real defect, never bad user
   input. */
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Tripwires that must never fire: rewriting step budget exhausted,
   arithmetic overflow in coefficient arithmetic. */
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/* Expression parser failure; `offset` is the 1-based byte position of the
   first character that could not be consumed. */
struct parse_error : invalid_input {
  parse_error(const std::string& what, std::size_t offset_)
      : invalid_input(what), offset(offset_) {}
  std::size_t offset;
};

}  // namespace klr
