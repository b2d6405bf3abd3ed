#include "loopline/power_series.hpp"

#include <sstream>

#include "loopline/errors.hpp"

namespace loopline {

PowerSeries PowerSeries::exp_linear(const Rat& a, int order, char var) {
    PowerSeries s(order, var);
    Rat term(1);
    s.c_[0] = term;
    for (int i = 1; i <= order; ++i) {
        term = term * a / i;
        s.c_[static_cast<size_t>(i)] = term;
    }
    return s;
}

bool PowerSeries::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    PowerSeries r(std::min(order_, o.order_), var_);
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = coeff(i) + o.coeff(i);
    return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    PowerSeries r(std::min(order_, o.order_), var_);
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = coeff(i) - o.coeff(i);
    return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    PowerSeries r(std::min(order_, o.order_), var_);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; i + j <= r.order_ && j <= o.order_; ++j)
            if (i <= order_) r.c_[static_cast<size_t>(i + j)] += c_[i] * o.c_[j];
    return r;
}

PowerSeries PowerSeries::operator*(const Rat& s) const {
    PowerSeries r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

PowerSeries PowerSeries::inverse() const {
    if (c_[0] == 0) throw Error("PowerSeries::inverse: constant term is zero");
    PowerSeries r(order_, var_);
    r.c_[0] = 1 / c_[0];
    for (int i = 1; i <= order_; ++i) {
        Rat s(0);
        for (int j = 1; j <= i; ++j) s += c_[static_cast<size_t>(j)] * r.c_[static_cast<size_t>(i - j)];
        r.c_[static_cast<size_t>(i)] = -s / c_[0];
    }
    return r;
}

PowerSeries PowerSeries::log() const {
    if (c_[0] != 1) throw NotUnital("PowerSeries::log: constant term must be 1");
    // log(1+u) = sum (-1)^{m+1} u^m / m with u = series - 1.
    PowerSeries u = *this;
    u.c_[0] = 0;
    PowerSeries acc(order_, var_), upow = u;
    int sign = 1;
    for (int m = 1; m <= order_; ++m) {
        for (int i = 0; i <= order_; ++i)
            acc.c_[static_cast<size_t>(i)] += Rat(sign) * upow.c_[static_cast<size_t>(i)] / m;
        upow = upow * u;
        sign = -sign;
    }
    return acc;
}

PowerSeries PowerSeries::exp() const {
    if (c_[0] != 0) throw Error("PowerSeries::exp: constant term must be 0");
    PowerSeries acc = PowerSeries::constant(Rat(1), order_, var_);
    PowerSeries pow = PowerSeries::constant(Rat(1), order_, var_);
    Rat fact(1);
    for (int m = 1; m <= order_; ++m) {
        pow = pow * *this;
        fact *= m;
        for (int i = 0; i <= order_; ++i)
            acc.c_[static_cast<size_t>(i)] += pow.coeff(i) / fact;
    }
    return acc;
}

PowerSeries PowerSeries::negate_variable() const {
    PowerSeries r = *this;
    for (int i = 1; i <= order_; i += 2) r.c_[static_cast<size_t>(i)] = -r.c_[static_cast<size_t>(i)];
    return r;
}

std::string PowerSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order_; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c_[static_cast<size_t>(i)]) << "*" << var_ << "^" << i;
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << order_ + 1 << ")";
    return os.str();
}

PowerSeries laurent_at_exp(const LaurentPoly& p, int order, char var) {
    PowerSeries s(order, var);
    for (const auto& [e, c] : p.terms()) {
        PowerSeries term = PowerSeries::exp_linear(Rat(e), order, var);
        s = s + term * c;
    }
    return s;
}

PowerSeries expand_label(const RatFunc& f, int order) {
    PowerSeries num = laurent_at_exp(f.num(), order, 'k');
    PowerSeries den = laurent_at_exp(f.den(), order, 'k');
    return num * den.inverse();
}

std::vector<Rat> b2n(int n) {
    const int order = 2 * n;
    // sinh(x/2)/(x/2) = sum_m x^{2m} / (4^m (2m+1)!)
    PowerSeries s(order, 'x');
    Rat pow4(1), fact(1);
    for (int m = 0; 2 * m <= order; ++m) {
        if (m > 0) {
            pow4 *= 4;
            fact *= (2 * m) * (2 * m + 1);
        }
        s.coeff(2 * m) = 1 / (pow4 * fact);
    }
    PowerSeries half_log = s.log() * ratio(1, 2);
    std::vector<Rat> out;
    for (int m = 1; m <= n; ++m) out.push_back(half_log.coeff(2 * m));
    return out;
}

std::vector<Rat> b2n_bernoulli(int n) {
    // Bernoulli numbers via sum_{j<m} C(m+1, j) B_j = 0, B_0 = 1.
    const int top = 2 * n;
    std::vector<Rat> bern(static_cast<size_t>(top) + 1, Rat(0));
    bern[0] = 1;
    std::vector<std::vector<Rat>> choose(static_cast<size_t>(top) + 2);
    for (size_t i = 0; i < choose.size(); ++i) {
        choose[i].assign(i + 1, Rat(1));
        for (size_t j = 1; j < i; ++j)
            choose[i][j] = choose[i - 1][j - 1] + choose[i - 1][j];
    }
    for (int m = 1; m <= top; ++m) {
        Rat s(0);
        for (int j = 0; j < m; ++j)
            s += choose[static_cast<size_t>(m) + 1][static_cast<size_t>(j)] * bern[static_cast<size_t>(j)];
        bern[static_cast<size_t>(m)] = -s / (m + 1);
    }
    std::vector<Rat> out;
    Rat fact(2); // (2m)! running
    for (int m = 1; m <= n; ++m) {
        if (m > 1) fact *= (2 * m - 1) * (2 * m);
        out.push_back(bern[static_cast<size_t>(2 * m)] / (Rat(2) * (2 * m) * fact));
    }
    return out;
}

std::vector<Rat> wh_prime_coeffs(const LaurentPoly& p, int n) {
    Rat p1 = p.eval_at_one();
    if (p1 != 1 && p1 != -1)
        throw NotInZ1("wh_prime_coeffs: P(1) = " + rat_to_string(p1));
    if (p != p.bar())
        throw NotInZ1("wh_prime_coeffs: P(t) != P(1/t)");
    const int order = 2 * n;
    PowerSeries s = laurent_at_exp(p, order, 'h') * (1 / p1);
    PowerSeries lg = s.log();
    for (int i = 1; i <= order; i += 2)
        if (lg.coeff(i) != 0)
            throw Error("wh_prime_coeffs: odd coefficient survived for symmetric P");
    std::vector<Rat> b = b2n(n);
    std::vector<Rat> out;
    for (int m = 1; m <= n; ++m)
        out.push_back(b[static_cast<size_t>(m - 1)] - lg.coeff(2 * m) / 2);
    return out;
}

} // namespace loopline
