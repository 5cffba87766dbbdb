#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hembed {

using Int = boost::multiprecision::cpp_int;

// Exact rational arithmetic everywhere a host coordinate or a distortion ratio
// appears. cpp_rational keeps values normalized (gcd 1, positive denominator),
// which the serialization below relies on.
using Rat = boost::multiprecision::cpp_rational;

// Canonical text form "p/q" with q > 0 and gcd(|p|, q) = 1. Integers are
// written "p/1" so the grammar stays uniform.
std::string rat_to_string(const Rat& r);

// Accepts "p/q" or a bare integer "p". Throws ParseError otherwise.
Rat rat_from_string(const std::string& s);

Rat rat_of(long long num, long long den = 1);

// Integer power with the result materialized, safe to mix into Rat
// expressions afterwards.
Int ipow(Int base, unsigned exp);

}  // namespace hembed
