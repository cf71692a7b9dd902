#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace evo {

/// Exact rational scalar. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal integers). Returns nullopt on anything
/// else, including a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Exact real n-th root of q (n = 1, 2 or 3) when q is a perfect n-th power
/// in Q. Square roots of negative numbers are never exact.
std::optional<Rational> exact_root(const Rational& q, int n);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

std::string to_string(const Rational& q);

}  // namespace evo
