#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace loopline {

// All coefficients in the library are exact arbitrary-precision rationals.
using Rat = mpq_class;

inline Rat ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

// Parses "p" or "p/q" in base 10.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline int rat_sign(const Rat& q) { return sgn(q); }

} // namespace loopline
