// ============================================================================
// rational.hpp — Exact rational arithmetic for model constants
// ============================================================================
//
// All timing constants in models are exact rationals. Before a game is
// solved, constants are scaled by the LCM of their denominators so the
// zone layer only ever sees integers.
//
// ============================================================================

#ifndef ROBUSTA_RATIONAL_HPP
#define ROBUSTA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace robusta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ── Parsing / printing ──────────────────────────────────────────────────────

/// Parse "3", "-7/2" or "0.25" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Render without loss: integers as "n", other values as "p/q".
std::string rational_to_string(const Rational& r);

// ── Scaling helpers ─────────────────────────────────────────────────────────

/// Least common multiple of the denominators of all given values (>= 1).
BigInt lcm_denominators(const std::vector<Rational>& values);

/// True iff r has denominator 1.
bool is_integer(const Rational& r);

/// Convert an integer-valued rational to int64. Throws std::overflow_error
/// if it does not fit, std::invalid_argument if it is not integral.
std::int64_t to_int64(const Rational& r);

}  // namespace robusta

#endif  // ROBUSTA_RATIONAL_HPP
