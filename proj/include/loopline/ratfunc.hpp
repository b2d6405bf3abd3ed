#pragma once

#include <string>

#include "loopline/laurent.hpp"

namespace loopline {

/// Quotient of Laurent polynomials, restricted to functions non-singular at
/// t = 1.  Canonical form: the denominator is an ordinary polynomial with
/// nonzero constant term, monic (so its leading rational is positive), and
/// coprime to the numerator over Q[t]; any unit t^k lives in the numerator.
class RatFunc {
public:
    RatFunc() = default;                       // zero
    RatFunc(const LaurentPoly& num);           // NOLINT polynomial inclusion
    RatFunc(long value) : RatFunc(LaurentPoly(value)) {}
    RatFunc(const LaurentPoly& num, const LaurentPoly& den);

    static RatFunc one() { return RatFunc(LaurentPoly(1)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == LaurentPoly(1) && den_ == LaurentPoly(1); }
    bool is_polynomial() const { return den_ == LaurentPoly(1); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    /// Exact equality; decided by cross-multiplication.
    bool operator==(const RatFunc& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// t -> t^{-1}.
    RatFunc bar() const { return RatFunc(num_.bar(), den_.bar()); }
    bool is_bar_symmetric() const { return *this == bar(); }

    Rat eval_at_one() const { return num_.eval_at_one() / den_.eval_at_one(); }

    std::string to_string() const;

private:
    void canonicalize();

    LaurentPoly num_;               // zero => the zero function
    LaurentPoly den_ = LaurentPoly(1);
};

inline RatFunc operator*(const Rat& s, const RatFunc& f) {
    return RatFunc(f.num() * s, f.den());
}

} // namespace loopline
