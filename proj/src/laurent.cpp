#include "loopline/laurent.hpp"

#include <cctype>
#include <sstream>

#include "loopline/errors.hpp"

namespace loopline {

Rat LaurentPoly::eval(const Rat& x) const {
    if (x == 0 && min_exp() < 0)
        throw Error("LaurentPoly::eval: pole at 0");
    Rat s(0);
    for (const auto& [e, c] : coeffs_) {
        Rat p(1);
        long n = e >= 0 ? e : -e;
        for (long i = 0; i < n; ++i) p *= x;
        if (e < 0) p = 1 / p;
        s += c * p;
    }
    return s;
}

void dense_trim(std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<Rat> dense_from_laurent(const LaurentPoly& p, long& shift) {
    std::vector<Rat> v;
    if (p.is_zero()) { shift = 0; return v; }
    shift = p.min_exp();
    v.assign(static_cast<size_t>(p.max_exp() - shift) + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) v[static_cast<size_t>(e - shift)] = c;
    return v;
}

LaurentPoly laurent_from_dense(const std::vector<Rat>& v, long shift) {
    LaurentPoly p;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p.set_coeff(shift + static_cast<long>(i), v[i]);
    return p;
}

std::vector<Rat> dense_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    dense_trim(r);
    return r;
}

void dense_divmod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                  std::vector<Rat>& q, std::vector<Rat>& r) {
    if (b.empty()) throw Error("dense_divmod: division by zero polynomial");
    r = a;
    dense_trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, Rat(0));
    const Rat lead = b.back();
    while (r.size() >= b.size()) {
        Rat f = r.back() / lead;
        size_t off = r.size() - b.size();
        q[off] = f;
        for (size_t j = 0; j < b.size(); ++j) r[off + j] -= f * b[j];
        dense_trim(r); // leading term cancels exactly, so r shrinks
    }
    dense_trim(q);
}

std::vector<Rat> dense_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    dense_trim(a);
    dense_trim(b);
    while (!b.empty()) {
        std::vector<Rat> q, r;
        dense_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& d) const {
    if (d.is_zero()) throw Error("LaurentPoly::exact_div: division by zero");
    if (is_zero()) return {};
    long sa, sb;
    std::vector<Rat> a = dense_from_laurent(*this, sa);
    std::vector<Rat> b = dense_from_laurent(d, sb);
    std::vector<Rat> q, r;
    dense_divmod(a, b, q, r);
    if (!r.empty()) throw Error("LaurentPoly::exact_div: inexact division");
    return laurent_from_dense(q, sa - sb);
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c) << "*t^" << e;
    }
    return os.str();
}

// Accepts the to_string format plus light variations: terms "c*t^e", "t^e",
// "c", separated by '+' or '-'.
LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentPoly p;
    size_t i = 0;
    const size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    bool any = false;
    int pending_sign = 1;
    while (i < n) {
        skip_ws();
        if (i >= n) break;
        if (text[i] == '+') { ++i; continue; }
        if (text[i] == '-') { pending_sign = -pending_sign; ++i; continue; }
        // coefficient (optional) then optional *t^e or t^e
        size_t start = i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        Rat coeff(1);
        bool have_coeff = i > start;
        if (have_coeff) coeff = rat_from_string(text.substr(start, i - start));
        skip_ws();
        long exp = 0;
        if (i < n && (text[i] == '*' || text[i] == 't')) {
            if (text[i] == '*') { ++i; skip_ws(); }
            if (i >= n || text[i] != 't')
                throw Error("LaurentPoly::parse: expected 't' in '" + text + "'");
            ++i;
            if (i < n && text[i] == '^') {
                ++i;
                size_t es = i;
                if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == es) throw Error("LaurentPoly::parse: missing exponent");
                exp = std::stol(text.substr(es, i - es));
            } else {
                exp = 1;
            }
        } else if (!have_coeff) {
            throw Error("LaurentPoly::parse: bad term in '" + text + "'");
        }
        p.set_coeff(exp, p.coeff(exp) + Rat(pending_sign) * coeff);
        pending_sign = 1;
        any = true;
        skip_ws();
    }
    if (!any && !text.empty()) {
        // plain "0" handled above by having no stored term
    }
    return p;
}

} // namespace loopline
