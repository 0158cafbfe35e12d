#include "hyperb/rational.hpp"

#include <stdexcept>

namespace hyperb {

std::string fraction_string(const Rat& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rat parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rat(n, d);
}

}  // namespace hyperb
