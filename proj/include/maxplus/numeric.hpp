#pragma once

// Numeric backings for max-plus scalars.
//
// Two backings are supported: exact rationals (GMP mpq_class) and IEEE
// doubles.  Every algorithm is a template over the backing, so mixing the two
// inside one computation does not compile.

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>

namespace maxplus {

using Rational = mpq_class;

template <class T>
concept Backing = std::same_as<T, Rational> || std::same_as<T, double>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// "exact" or "float"; used in reports and error messages.
template <Backing T>
constexpr std::string_view backing_name() {
  if constexpr (is_exact_v<T>) return "exact";
  else return "float";
}

/// Tolerance used by float-backed algorithms when they must test equality.
/// Exact backing always compares exactly and ignores tolerances.
template <Backing T>
constexpr double default_tolerance() {
  if constexpr (is_exact_v<T>) return 0.0;
  else return 1e-9;
}

template <Backing T>
T from_int(long value);

/// Parses "p/q", integers and decimal literals ("0.25", "-1e-3").  Decimal
/// literals are read exactly into rationals: "0.1" is 1/10.
template <Backing T>
T parse_number(std::string_view text);

/// Exact for rationals (every finite double is a dyadic rational).
template <Backing T>
T from_double(double value);

/// "p/q" (or "p" when the denominator is 1) for rationals; shortest
/// round-trip decimal for doubles.
template <Backing T>
std::string to_string(const T& value);

double to_double(const Rational& value);
inline double to_double(double value) { return value; }

/// Equality with a tolerance; exact backing ignores `tol`.
template <Backing T>
bool nearly_equal(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return a == b;
  } else {
    const double diff = a - b;
    return diff <= tol && -diff <= tol;
  }
}

}  // namespace maxplus
