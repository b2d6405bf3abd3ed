#pragma once

#include <string>
#include <vector>

#include "loopline/laurent.hpp"
#include "loopline/ratfunc.hpp"

namespace loopline {

/// Formal power series truncated at a fixed order, with exact rational
/// coefficients.  All arithmetic is exact modulo k^{N+1}.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(int order, char var = 'k')
        : order_(order), var_(var), c_(static_cast<size_t>(order) + 1, Rat(0)) {}

    static PowerSeries constant(const Rat& value, int order, char var = 'k') {
        PowerSeries s(order, var);
        s.c_[0] = value;
        return s;
    }
    /// exp(a * k) truncated.
    static PowerSeries exp_linear(const Rat& a, int order, char var = 'k');

    int order() const { return order_; }
    char var() const { return var_; }
    const Rat& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    Rat& coeff(int i) { return c_[static_cast<size_t>(i)]; }
    bool is_zero() const;

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator*(const Rat& s) const;
    bool operator==(const PowerSeries& o) const { return order_ == o.order_ && c_ == o.c_; }

    /// Multiplicative inverse; requires a nonzero constant term.
    PowerSeries inverse() const;
    /// log of a series with constant term 1.
    PowerSeries log() const;
    /// exp of a series with constant term 0.
    PowerSeries exp() const;
    /// k -> -k.
    PowerSeries negate_variable() const;

    std::string to_string() const;

private:
    int order_ = 0;
    char var_ = 'k';
    std::vector<Rat> c_{Rat(0)};
};

/// p(e^h) as a power series: each monomial c * t^e contributes c * exp(e h).
PowerSeries laurent_at_exp(const LaurentPoly& p, int order, char var = 'h');

/// f(e^k) for a rational function non-singular at 1.
PowerSeries expand_label(const RatFunc& f, int order);

/// Coefficients b_2, b_4, ..., b_{2n} of (1/2) log(sinh(x/2)/(x/2)).
/// Odd coefficients of the log vanish; only the even ones are returned.
std::vector<Rat> b2n(int n);

/// Same coefficients through the Bernoulli-number closed form
/// b_{2m} = B_{2m} / (2 * 2m * (2m)!); an independent route used as an oracle.
std::vector<Rat> b2n_bernoulli(int n);

/// Coefficients c_2, c_4, ..., c_{2n} of the wheel-generator exponent of
/// Wh'(P):  c_{2m} = b_{2m} - (1/2) [h^{2m}] log(P(e^h)/P(1)).
/// Requires P(1) = +-1 and P(t) = P(1/t); throws NotInZ1 otherwise.
std::vector<Rat> wh_prime_coeffs(const LaurentPoly& p, int n);

} // namespace loopline
