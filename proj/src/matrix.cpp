#include "loopline/matrix.hpp"

#include "loopline/errors.hpp"

namespace loopline {

bool LaurentMatrix::is_hermitian() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            if (at(i, j) != at(j, i).bar()) return false;
    return true;
}

std::vector<std::vector<Rat>> LaurentMatrix::eval_at_one() const {
    std::vector<std::vector<Rat>> s(n_, std::vector<Rat>(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) s[i][j] = at(i, j).eval_at_one();
    return s;
}

bool RatFuncMatrix::is_hermitian() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            if (at(i, j) != at(j, i).bar()) return false;
    return true;
}

RatFuncMatrix RatFuncMatrix::operator*(const RatFuncMatrix& o) const {
    RatFuncMatrix r(n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            RatFunc s;
            for (size_t k = 0; k < n_; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

bool RatFuncMatrix::is_identity() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            if (at(i, j) != (i == j ? RatFunc::one() : RatFunc())) return false;
    return true;
}

namespace {

LaurentPoly det_cofactor_rec(const LaurentMatrix& m, std::vector<size_t>& cols, size_t row) {
    const size_t k = cols.size();
    if (k == 0) return LaurentPoly(1);
    if (k == 1) return m.at(row, cols[0]);
    LaurentPoly acc;
    for (size_t c = 0; c < k; ++c) {
        if (m.at(row, cols[c]).is_zero()) continue;
        std::vector<size_t> sub;
        sub.reserve(k - 1);
        for (size_t j = 0; j < k; ++j)
            if (j != c) sub.push_back(cols[j]);
        LaurentPoly minor = det_cofactor_rec(m, sub, row + 1);
        LaurentPoly term = m.at(row, cols[c]) * minor;
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

LaurentPoly det_cofactor(const LaurentMatrix& m) {
    std::vector<size_t> cols(m.size());
    for (size_t j = 0; j < m.size(); ++j) cols[j] = j;
    return det_cofactor_rec(m, cols, 0);
}

LaurentPoly det_bareiss(const LaurentMatrix& m) {
    const size_t n = m.size();
    if (n == 0) return LaurentPoly(1);
    // Work over Q[u]: shift every entry by t^s so exponents are nonnegative,
    // track the power of t pulled out of each row.
    long shift = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_zero()) shift = std::min(shift, m.at(i, j).min_exp());
    std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).shifted(-shift);

    int sign = 1;
    LaurentPoly prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return {}; // singular
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                LaurentPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num.exact_div(prev);
            }
        prev = a[k][k];
    }
    LaurentPoly d = a[n - 1][n - 1];
    if (sign < 0) d = -d;
    return d.shifted(shift * static_cast<long>(n));
}

LaurentPoly det_laurent(const LaurentMatrix& m) {
    return m.size() <= 6 ? det_cofactor(m) : det_bareiss(m);
}

LaurentPoly normalize_alexander(const LaurentPoly& p) {
    Rat at_one = p.eval_at_one();
    if (at_one != 1 && at_one != -1)
        throw NotUnimodular("normalize_alexander: p(1) = " + rat_to_string(at_one));
    if (p.is_zero()) throw NotUnimodular("normalize_alexander: zero polynomial");
    long lo = p.min_exp(), hi = p.max_exp();
    if ((lo + hi) % 2 != 0)
        throw NotSymmetrizable("normalize_alexander: odd exponent span");
    long mid = -(lo + hi) / 2;
    LaurentPoly centered = p.shifted(mid);
    if (centered != centered.bar())
        throw NotSymmetrizable("normalize_alexander: no unit multiple is symmetric");
    LaurentPoly a = centered * at_one; // at_one = +-1 fixes A(1) = 1
    return a;
}

RatFuncMatrix invert_ratfunc_matrix(const LaurentMatrix& m) {
    const size_t n = m.size();
    LaurentPoly det = det_laurent(m);
    Rat d1 = det.eval_at_one();
    if (d1 != 1 && d1 != -1)
        throw NotIntegrable("invert_ratfunc_matrix: det(1) = " + rat_to_string(d1) +
                            ", not a unit");
    RatFuncMatrix inv(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // Cofactor C_{ji} / det.
            LaurentMatrix minor(n - 1);
            for (size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            LaurentPoly cof = det_laurent(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = RatFunc(cof, det);
        }
    return inv;
}

std::pair<int, int> signature_of_symmetric(std::vector<std::vector<Rat>> s) {
    const size_t n = s.size();
    std::vector<bool> done(n, false);
    int pos = 0, neg = 0;
    size_t handled = 0;
    while (handled < n) {
        // Prefer a nonzero diagonal pivot.
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && s[i][i] != 0) { p = i; break; }
        if (p < n) {
            if (s[p][p] > 0) ++pos; else ++neg;
            done[p] = true;
            ++handled;
            Rat piv = s[p][p];
            for (size_t i = 0; i < n; ++i) {
                if (done[i] || s[i][p] == 0) continue;
                Rat f = s[i][p] / piv;
                for (size_t j = 0; j < n; ++j)
                    if (!done[j]) s[i][j] -= f * s[p][j];
                s[i][p] = 0;
            }
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) s[p][j] = 0;
            continue;
        }
        // All remaining diagonal entries vanish: take a 2x2 block
        // [[0, a], [a, 0]], which contributes one +1 and one -1.
        size_t u = n, v = n;
        for (size_t i = 0; i < n && u == n; ++i) {
            if (done[i]) continue;
            for (size_t j = i + 1; j < n; ++j)
                if (!done[j] && s[i][j] != 0) { u = i; v = j; break; }
        }
        if (u == n) throw SingularAtOne("signature: matrix is singular");
        ++pos;
        ++neg;
        done[u] = done[v] = true;
        handled += 2;
        Rat a = s[u][v];
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            // Clear column u and v simultaneously using the block inverse.
            Rat cu = s[i][u], cv = s[i][v];
            if (cu == 0 && cv == 0) continue;
            // row_i -= (cv/a) * row_u + (cu/a) * row_v
            Rat fu = cv / a, fv = cu / a;
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) s[i][j] -= fu * s[u][j] + fv * s[v][j];
        }
        for (size_t j = 0; j < n; ++j)
            if (!done[j]) { s[u][j] = 0; s[v][j] = 0; }
    }
    return {pos, neg};
}

std::pair<int, int> signature_at_1(const LaurentMatrix& m) {
    auto s = m.eval_at_one();
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (s[i][j] != s[j][i])
                throw Error("signature_at_1: matrix is not symmetric at t = 1");
    return signature_of_symmetric(std::move(s));
}

} // namespace loopline
