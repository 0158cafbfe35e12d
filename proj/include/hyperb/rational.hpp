#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hyperb {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// "num/den" (or just "num" when den == 1)
std::string fraction_string(const Rat& q);
Rat parse_fraction(const std::string& s);

// floor(q) as integer part E(.) used by the step-function machinery
inline BigInt rat_floor(const Rat& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    BigInt r = n / d;
    if (n < 0 && r * d != n) --r;
    return r;
}

inline long rat_floor_long(const Rat& q) { return rat_floor(q).convert_to<long>(); }

}  // namespace hyperb
