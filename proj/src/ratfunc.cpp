#include "loopline/ratfunc.hpp"

#include "loopline/errors.hpp"

namespace loopline {

RatFunc::RatFunc(const LaurentPoly& num) : num_(num) { canonicalize(); }

RatFunc::RatFunc(const LaurentPoly& num, const LaurentPoly& den)
    : num_(num), den_(den) {
    if (den_.is_zero()) throw Error("RatFunc: zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    // Strip the unit t^k out of the denominator.
    long dshift = den_.min_exp();
    LaurentPoly den = den_.shifted(-dshift);
    LaurentPoly num = num_.shifted(-dshift);

    long ns, ds;
    std::vector<Rat> nv = dense_from_laurent(num, ns);
    std::vector<Rat> dv = dense_from_laurent(den, ds); // ds == 0 by construction
    std::vector<Rat> g = dense_gcd(nv, dv);
    if (g.size() > 1) {
        std::vector<Rat> q, r;
        dense_divmod(nv, g, q, r);
        nv = q;
        dense_divmod(dv, g, q, r);
        dv = q;
    }
    // den(0) != 0 after the shift, and the gcd quotient keeps that property.
    // Monic denominator.
    Rat lead = dv.back();
    for (auto& c : dv) c /= lead;
    for (auto& c : nv) c /= lead;
    num_ = laurent_from_dense(nv, ns);
    den_ = laurent_from_dense(dv, 0);
    if (den_.eval_at_one() == 0)
        throw Error("RatFunc: denominator vanishes at t = 1");
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}
RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw Error("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}
RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

std::string RatFunc::to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

} // namespace loopline
