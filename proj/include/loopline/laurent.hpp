#pragma once

#include <map>
#include <string>
#include <vector>

#include "loopline/rational.hpp"

namespace loopline {

/// Laurent polynomial in one variable t with exact rational coefficients.
/// The zero polynomial is the empty map; no zero coefficient is ever stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& constant) {
        if (constant != 0) coeffs_[0] = constant;
    }
    LaurentPoly(long value) { // NOLINT(google-explicit-constructor)
        if (value != 0) coeffs_[0] = Rat(value);
    }

    static LaurentPoly monomial(const Rat& coeff, long exponent) {
        LaurentPoly p;
        if (coeff != 0) p.coeffs_[exponent] = coeff;
        return p;
    }
    static LaurentPoly t(long exponent = 1) { return monomial(Rat(1), exponent); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const {
        return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
    }
    Rat constant_value() const {
        auto it = coeffs_.find(0);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    Rat coeff(long exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }
    void set_coeff(long exponent, const Rat& value) {
        if (value == 0) coeffs_.erase(exponent);
        else coeffs_[exponent] = value;
    }

    long min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    long max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    const std::map<long, Rat>& terms() const { return coeffs_; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }
    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.coeffs_) {
            Rat v = r.coeff(e) + c;
            r.set_coeff(e, v);
        }
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_) {
                Rat v = r.coeff(e1 + e2) + c1 * c2;
                r.set_coeff(e1 + e2, v);
            }
        return r;
    }
    LaurentPoly operator*(const Rat& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = c * s;
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    /// t -> t^{-1}.  Involutive.
    LaurentPoly bar() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
        return r;
    }
    bool is_bar_symmetric() const { return *this == bar(); }

    /// Multiply by t^k.
    LaurentPoly shifted(long k) const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
        return r;
    }

    Rat eval(const Rat& x) const;   // requires x != 0 when negative exponents present
    Rat eval_at_one() const {
        Rat s(0);
        for (const auto& [e, c] : coeffs_) s += c;
        return s;
    }

    /// Exact division; throws Error if the division leaves a remainder.
    LaurentPoly exact_div(const LaurentPoly& d) const;

    std::string to_string() const;
    static LaurentPoly parse(const std::string& text);

private:
    std::map<long, Rat> coeffs_;
};

inline LaurentPoly operator*(const Rat& s, const LaurentPoly& p) { return p * s; }

// Dense polynomial helpers over Q[u], used by gcd / division routines.
// Vectors store coefficients by ascending degree with no trailing zeros.
std::vector<Rat> dense_from_laurent(const LaurentPoly& p, long& shift);
LaurentPoly laurent_from_dense(const std::vector<Rat>& v, long shift);
void dense_trim(std::vector<Rat>& v);
std::vector<Rat> dense_mul(const std::vector<Rat>& a, const std::vector<Rat>& b);
// a = q*b + r with deg r < deg b
void dense_divmod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                  std::vector<Rat>& q, std::vector<Rat>& r);
// Monic gcd over Q[u]; gcd(0,0) = 0.
std::vector<Rat> dense_gcd(std::vector<Rat> a, std::vector<Rat> b);

} // namespace loopline
