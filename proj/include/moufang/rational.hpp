#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace moufang {

// Exact coefficient field for every jet and tensor.
using Rational = mpq_class;

// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& q);

// Accepts "p", "p/q" and plain decimals such as "-0.125" or "3e-2".
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace moufang
