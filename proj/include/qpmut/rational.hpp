#pragma once

#include <gmpxx.h>

#include <string>

#include "qpmut/error.hpp"

namespace qpmut {

// Exact rational scalar.  mpq_class keeps values canonicalized (lowest
// terms, positive denominator), which is exactly the serialized form the
// interchange format requires.
using Rat = mpq_class;

// Canonical string form: "p/q" in lowest terms with q > 0, or "p" when the
// value is an integer.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// Parse the canonical form (also accepts non-canonical "p/q" input such as
// "2/4" or "1/-3" and normalizes it).  Rejects anything else.
Rat parse_rational(const std::string& text);

}  // namespace qpmut
