#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopline/errors.hpp"
#include "loopline/matrix.hpp"
#include "loopline/random_gen.hpp"

using namespace loopline;

namespace {

// Independent determinant oracle: plain Leibniz sum over permutations.
LaurentPoly det_leibniz(const LaurentMatrix& m) {
    const size_t n = m.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    LaurentPoly acc;
    do {
        int sign = 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        LaurentPoly term(static_cast<long>(sign));
        for (size_t i = 0; i < n; ++i) term = term * m.at(i, perm[i]);
        acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

std::vector<Rat> dense_derivative(const std::vector<Rat>& p) {
    std::vector<Rat> d(p.size() > 1 ? p.size() - 1 : 0);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return d;
}

// Distinct positive real roots via the Sturm chain (terminating at the gcd).
int distinct_positive_roots(const std::vector<Rat>& p0) {
    std::vector<std::vector<Rat>> chain = {p0, dense_derivative(p0)};
    while (chain.back().size() > 1) {
        std::vector<Rat> q, r;
        dense_divmod(chain[chain.size() - 2], chain.back(), q, r);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    auto sign_changes = [&](auto eval) {
        int changes = 0, prev = 0;
        for (const auto& p : chain) {
            int s = eval(p);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    int at_zero = sign_changes([](const std::vector<Rat>& p) {
        return p.empty() ? 0 : rat_sign(p[0]);
    });
    int at_inf = sign_changes([](const std::vector<Rat>& p) {
        return p.empty() ? 0 : rat_sign(p.back());
    });
    return at_zero - at_inf;
}

// Sturm-sequence count of positive real roots of the characteristic
// polynomial, with multiplicity: the k-fold roots of p are the simple roots
// of the chain p, gcd(p, p'), gcd(gcd, gcd'), ...  An independent route to
// the signature for nonsingular symmetric matrices (all eigenvalues real).
int positive_roots_sturm(const LaurentMatrix& m) {
    const size_t n = m.size();
    LaurentMatrix shifted(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            shifted.at(i, j) = -m.at(i, j);
            if (i == j) shifted.at(i, j) += LaurentPoly::t(1);
        }
    LaurentPoly chi = det_laurent(shifted); // char. poly in t
    long sh;
    std::vector<Rat> d = dense_from_laurent(chi, sh);
    REQUIRE(sh == 0);
    int total = 0;
    while (d.size() > 1) {
        total += distinct_positive_roots(d);
        d = dense_gcd(d, dense_derivative(d));
    }
    return total;
}

LaurentMatrix random_laurent_matrix(Rng& rng, size_t n, long max_exp, long cb) {
    LaurentMatrix m(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = random_laurent(rng, max_exp, cb, 3);
    return m;
}

} // namespace

TEST_CASE("bar involution and fixed points") {
    LaurentPoly p = LaurentPoly::t(2) + LaurentPoly(3);
    CHECK(p.bar() == LaurentPoly::t(-2) + LaurentPoly(3));
    CHECK(LaurentPoly().bar() == LaurentPoly());
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly q = random_laurent(rng, 5, 9, 6);
        CHECK(q.bar().bar() == q);
    }
    RatFunc f(LaurentPoly::t(1) + LaurentPoly(2), LaurentPoly::t(2) + LaurentPoly(3));
    CHECK(f.bar().bar() == f);
}

TEST_CASE("laurent arithmetic basics") {
    LaurentPoly a = LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1);
    CHECK(a.eval_at_one() == Rat(-1));
    CHECK((a * a).coeff(2) == Rat(1));
    CHECK((a * a).coeff(0) == Rat(11)); // (-3)^2 + 1 + 1
    CHECK(a.to_string() == "1*t^-1 + -3*t^0 + 1*t^1");
    CHECK(LaurentPoly::parse(a.to_string()) == a);
    CHECK(LaurentPoly::parse("t^2 + 3") == LaurentPoly::t(2) + LaurentPoly(3));
    CHECK((a * a).exact_div(a) == a);
    CHECK_THROWS_AS((a + LaurentPoly(1)).exact_div(a * a), Error);
}

TEST_CASE("ratfunc canonical form") {
    // (t^2 - 1) / (t - 1) reduces to t + 1
    RatFunc f(LaurentPoly::t(2) - LaurentPoly(1), LaurentPoly::t(1) - LaurentPoly(1));
    CHECK(f == RatFunc(LaurentPoly::t(1) + LaurentPoly(1)));
    CHECK(f.is_polynomial());
    // denominator units of t migrate into the numerator
    RatFunc g(LaurentPoly(1), LaurentPoly::t(3));
    CHECK(g == RatFunc(LaurentPoly::t(-3)));
    // den(1) = 0 rejected
    CHECK_THROWS_AS(RatFunc(LaurentPoly(1), LaurentPoly::t(1) - LaurentPoly(1)), Error);
    // cross-multiplication equality
    RatFunc h1(LaurentPoly(2), LaurentPoly::t(1) + LaurentPoly(1));
    RatFunc h2(LaurentPoly(4), LaurentPoly::t(1) * Rat(2) + LaurentPoly(2));
    CHECK(h1 == h2);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        RatFunc a(random_laurent(rng, 3, 4, 3));
        RatFunc b(random_laurent(rng, 3, 4, 3));
        CHECK((a + b) * (a - b) == a * a - b * b);
    }
}

TEST_CASE("determinant: pinned cases and the Leibniz oracle") {
    LaurentMatrix m1(1);
    m1.at(0, 0) = LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1);
    CHECK(det_laurent(m1) == m1.at(0, 0));
    CHECK(det_laurent(LaurentMatrix::identity(4)) == LaurentPoly(1));

    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentMatrix m = random_laurent_matrix(rng, 4, 2, 3);
        LaurentPoly expect = det_leibniz(m);
        CHECK(det_cofactor(m) == expect);
        CHECK(det_bareiss(m) == expect);
        CHECK(det_laurent(m) == expect);
    }
    for (int trial = 0; trial < 4; ++trial) {
        LaurentMatrix m = random_laurent_matrix(rng, 7, 1, 2); // Bareiss path
        CHECK(det_laurent(m) == det_leibniz(m));
    }
}

TEST_CASE("determinant is block multiplicative") {
    Rng rng(7);
    LaurentMatrix a = random_laurent_matrix(rng, 2, 2, 3);
    LaurentMatrix b = random_laurent_matrix(rng, 3, 2, 3);
    LaurentMatrix block(5);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) block.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) block.at(i + 2, j + 2) = b.at(i, j);
    CHECK(det_laurent(block) == det_laurent(a) * det_laurent(b));
}

TEST_CASE("hermitian determinant is bar symmetric") {
    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        LaurentMatrix w = random_hermitian_unimodular(rng, 3, 2, 2);
        REQUIRE(w.is_hermitian());
        LaurentPoly d = det_laurent(w);
        CHECK(d == d.bar());
    }
}

TEST_CASE("normalize_alexander") {
    LaurentPoly p = LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1);
    LaurentPoly a = normalize_alexander(p);
    CHECK(a == -p);
    CHECK(a.eval_at_one() == Rat(1));
    CHECK(a == a.bar());

    CHECK(normalize_alexander(LaurentPoly(1)) == LaurentPoly(1));

    LaurentPoly q = LaurentPoly::t(2) - LaurentPoly::t(1) + LaurentPoly(1);
    LaurentPoly an = normalize_alexander(q);
    CHECK(an == LaurentPoly::t(1) - LaurentPoly(1) + LaurentPoly::t(-1));

    CHECK_THROWS_AS(normalize_alexander(LaurentPoly::t(1) + LaurentPoly(1)), NotUnimodular);
    CHECK_THROWS_AS(normalize_alexander(LaurentPoly::t(1) - LaurentPoly(2)), NotSymmetrizable);
    // unimodular at 1 but no unit multiple is symmetric
    CHECK_THROWS_AS(normalize_alexander(LaurentPoly::t(2) + LaurentPoly::t(1) - LaurentPoly(1)),
                    NotSymmetrizable);
}

TEST_CASE("inverse matrix contract") {
    LaurentMatrix m1(1);
    m1.at(0, 0) = LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1);
    RatFuncMatrix inv = invert_ratfunc_matrix(m1);
    CHECK(inv.at(0, 0) == RatFunc(LaurentPoly(1), m1.at(0, 0)));

    RatFuncMatrix id_inv = invert_ratfunc_matrix(LaurentMatrix::identity(3));
    CHECK(id_inv.is_identity());

    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        LaurentMatrix w = random_hermitian_unimodular(rng, 3, 2, 2);
        RatFuncMatrix winv = invert_ratfunc_matrix(w);
        CHECK(winv.is_hermitian());
        RatFuncMatrix prod(3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                RatFunc s;
                for (size_t k = 0; k < 3; ++k) s += RatFunc(w.at(i, k)) * winv.at(k, j);
                prod.at(i, j) = s;
            }
        CHECK(prod.is_identity());
        // every entry's denominator divides det W
        LaurentPoly det = det_laurent(w);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                LaurentPoly num = winv.at(i, j).num() * det;
                CHECK_NOTHROW(num.exact_div(winv.at(i, j).den()));
            }
    }
    LaurentMatrix bad(1);
    bad.at(0, 0) = LaurentPoly(2);
    CHECK_THROWS_AS(invert_ratfunc_matrix(bad), NotIntegrable);
}

TEST_CASE("signature: pinned and Sturm oracle") {
    LaurentMatrix m1(1);
    m1.at(0, 0) = LaurentPoly(-1);
    CHECK(signature_at_1(m1) == std::pair<int, int>(0, 1));

    LaurentMatrix d3(3);
    d3.at(0, 0) = LaurentPoly(1);
    d3.at(1, 1) = LaurentPoly(1);
    d3.at(2, 2) = LaurentPoly(-1);
    CHECK(signature_at_1(d3) == std::pair<int, int>(2, 1));

    // zero diagonal forces the 2x2 block pivot
    LaurentMatrix hyp(2);
    hyp.at(0, 1) = LaurentPoly(1);
    hyp.at(1, 0) = LaurentPoly(1);
    CHECK(signature_at_1(hyp) == std::pair<int, int>(1, 1));

    LaurentMatrix zero(2);
    CHECK_THROWS_AS(signature_at_1(zero), SingularAtOne);

    Rng rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = random_symmetric_unimodular(rng, 5, 2);
        LaurentMatrix m(5);
        for (size_t i = 0; i < 5; ++i)
            for (size_t j = 0; j < 5; ++j) m.at(i, j) = LaurentPoly(s[i][j]);
        auto [sp, sm] = signature_at_1(m);
        CHECK(sp + sm == 5);
        CHECK(sp == positive_roots_sturm(m));
    }
}

TEST_CASE("signature congruence invariance") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        auto s = random_symmetric_unimodular(rng, 4, 2);
        auto u = random_unimodular(rng, 4, 1);
        std::vector<std::vector<Rat>> s2(4, std::vector<Rat>(4, Rat(0)));
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                Rat acc(0);
                for (size_t a = 0; a < 4; ++a)
                    for (size_t b = 0; b < 4; ++b) acc += u[a][i] * s[a][b] * u[b][j];
                s2[i][j] = acc;
            }
        CHECK(signature_of_symmetric(s) == signature_of_symmetric(s2));
    }
}
