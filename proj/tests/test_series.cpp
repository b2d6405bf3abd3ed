#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopline/dseries.hpp"
#include "loopline/errors.hpp"
#include "loopline/random_gen.hpp"

using namespace loopline;

namespace {

// Minimal independent series arithmetic for oracle values: dense
// coefficient vectors, log computed through the derivative relation
// (log u)' = u'/u rather than the power-sum route the library uses.
using Vec = std::vector<Rat>;

Vec vmul(const Vec& a, const Vec& b, size_t n) {
    Vec r(n + 1, Rat(0));
    for (size_t i = 0; i <= n && i < a.size(); ++i)
        for (size_t j = 0; i + j <= n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Vec vinv(const Vec& a, size_t n) {
    Vec r(n + 1, Rat(0));
    r[0] = 1 / a[0];
    for (size_t i = 1; i <= n; ++i) {
        Rat s(0);
        for (size_t j = 1; j <= i; ++j) s += (j < a.size() ? a[j] : Rat(0)) * r[i - j];
        r[i] = -s / a[0];
    }
    return r;
}

Vec vlog(const Vec& a, size_t n) { // a[0] = 1; (log a)' = a'/a, integrate
    Vec da(n + 1, Rat(0));
    for (size_t i = 1; i <= n && i < a.size(); ++i) da[i - 1] = a[i] * static_cast<long>(i);
    Vec q = vmul(da, vinv(a, n), n);
    Vec r(n + 1, Rat(0));
    for (size_t i = 1; i <= n; ++i) r[i] = q[i - 1] / static_cast<long>(i);
    return r;
}

Vec vexp_at(const Rat& a, size_t n) { // e^{a x}
    Vec r(n + 1, Rat(0));
    Rat term(1);
    r[0] = 1;
    for (size_t i = 1; i <= n; ++i) {
        term = term * a / static_cast<long>(i);
        r[i] = term;
    }
    return r;
}

Vec laurent_exp_oracle(const LaurentPoly& p, size_t n) {
    Vec r(n + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) {
        Vec t = vexp_at(Rat(e), n);
        for (size_t i = 0; i <= n; ++i) r[i] += c * t[i];
    }
    return r;
}

LaurentPoly fig8_det() { return LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1); }

} // namespace

TEST_CASE("power series arithmetic against the dense oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        LaurentPoly p = random_laurent(rng, 3, 4, 3);
        PowerSeries s = laurent_at_exp(p, 6);
        Vec o = laurent_exp_oracle(p, 6);
        for (int i = 0; i <= 6; ++i) CHECK(s.coeff(i) == o[static_cast<size_t>(i)]);
        if (p.eval_at_one() != 0) {
            PowerSeries inv = s.inverse();
            Vec oi = vinv(o, 6);
            for (int i = 0; i <= 6; ++i) CHECK(inv.coeff(i) == oi[static_cast<size_t>(i)]);
        }
    }
    PowerSeries z(4);
    CHECK_THROWS_AS(z.inverse(), Error);
    CHECK_THROWS_AS(z.log(), NotUnital);
}

TEST_CASE("b2n: two independent routes and pinned values") {
    auto b = b2n(4);
    CHECK(b[0] == ratio(1, 48));
    CHECK(b[1] == ratio(-1, 5760));
    auto bb = b2n_bernoulli(4);
    REQUIRE(b.size() == bb.size());
    for (size_t i = 0; i < b.size(); ++i) CHECK(b[i] == bb[i]);
}

TEST_CASE("wh_prime_coeffs: oracle-frozen values for the figure-eight polynomial") {
    // oracle route: expand P(e^h)/P(1) densely, log via the derivative rule
    LaurentPoly p = fig8_det();
    Vec s = laurent_exp_oracle(p, 8);
    CHECK(s[0] == Rat(-1));
    CHECK(s[2] == Rat(1));
    CHECK(s[4] == ratio(1, 12));
    Rat p1 = p.eval_at_one();
    for (auto& c : s) c /= p1;
    Vec lg = vlog(s, 8);
    CHECK(lg[2] == Rat(-1));
    CHECK(lg[4] == ratio(-7, 12));

    auto b = b2n(4);
    std::vector<Rat> expect;
    for (int m = 1; m <= 4; ++m)
        expect.push_back(b[static_cast<size_t>(m - 1)] - lg[static_cast<size_t>(2 * m)] / 2);
    // frozen from the oracle above
    CHECK(expect[0] == ratio(25, 48));
    CHECK(expect[1] == ratio(1679, 5760));

    auto c = wh_prime_coeffs(p, 4);
    REQUIRE(c.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(c[i] == expect[i]);

    // the global sign of P is invisible: P(1) normalization
    auto cneg = wh_prime_coeffs(-p, 4);
    for (size_t i = 0; i < 4; ++i) CHECK(cneg[i] == c[i]);

    // P = 1: pure unknot wheels
    auto cunit = wh_prime_coeffs(LaurentPoly(1), 3);
    for (size_t i = 0; i < 3; ++i) CHECK(cunit[i] == b[i]);

    CHECK_THROWS_AS(wh_prime_coeffs(LaurentPoly::t(1) + LaurentPoly(1), 2), NotInZ1);
    CHECK_THROWS_AS(wh_prime_coeffs(LaurentPoly::t(1), 2), NotInZ1); // asymmetric
}

TEST_CASE("expand_label: homomorphism and pinned values") {
    RatFunc f(LaurentPoly::t(1));
    PowerSeries s = expand_label(f, 4);
    CHECK(s.coeff(0) == Rat(1));
    CHECK(s.coeff(1) == Rat(1));
    CHECK(s.coeff(2) == ratio(1, 2));

    // 1/(t - 3 + 1/t): oracle inversion of (-1 + k^2 + k^4/12)
    RatFunc g(LaurentPoly(1), fig8_det());
    PowerSeries si = expand_label(g, 4);
    Vec oi = vinv(laurent_exp_oracle(fig8_det(), 4), 4);
    CHECK(oi[0] == Rat(-1));
    CHECK(oi[2] == Rat(-1));
    CHECK(oi[4] == ratio(-13, 12));
    for (int i = 0; i <= 4; ++i) CHECK(si.coeff(i) == oi[static_cast<size_t>(i)]);

    // t * t^{-1} = 1 stays the constant series
    RatFunc one = RatFunc(LaurentPoly::t(1)) * RatFunc(LaurentPoly::t(-1));
    PowerSeries so = expand_label(one, 4);
    CHECK(so.coeff(0) == Rat(1));
    for (int i = 1; i <= 4; ++i) CHECK(so.coeff(i) == Rat(0));

    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        RatFunc a(random_laurent(rng, 2, 3, 2));
        RatFunc bb(random_laurent(rng, 2, 3, 2));
        CHECK(expand_label(a + bb, 5) == expand_label(a, 5) + expand_label(bb, 5));
        CHECK(expand_label(a * bb, 5) == expand_label(a, 5) * expand_label(bb, 5));
        CHECK(expand_label(a.bar(), 5) == expand_label(a, 5).negate_variable());
    }
}

TEST_CASE("diagram series: exp and log") {
    Trunc t = Trunc::by_grade(2);
    DiagramSeries c;
    c.add(make_wheel(2), ratio(1, 3));
    DiagramSeries e = exp_truncated(c, t);
    CHECK(e.constant_term() == Rat(1));
    CHECK(e.coeff_of(make_wheel(2)) == ratio(1, 3));
    CHECK(e.coeff_of(disjoint_union(make_wheel(2), make_wheel(2))) == ratio(1, 18));
    CHECK(e.size() == 3);

    DiagramSeries lg = log_truncated(e, t);
    CHECK(lg == c);

    DiagramSeries zero;
    CHECK(exp_truncated(zero, t).constant_term() == Rat(1));
    CHECK(exp_truncated(zero, t).size() == 1);

    DiagramSeries bad;
    bad.add(make_wheel(2), Rat(1));
    CHECK_THROWS_AS(log_truncated(bad, t), NotUnital);

    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        DiagramSeries s;
        s.add(make_wheel(2), ratio(rng.range(-5, 5), rng.range(1, 4)));
        s.add(make_wheel(4), ratio(rng.range(-5, 5), rng.range(1, 4)));
        Trunc t4 = Trunc::by_grade(4);
        CHECK(log_truncated(exp_truncated(s, t4), t4) == s);
    }
}

TEST_CASE("thr_d: pinned expansions") {
    Trunc t;
    t.max_grade2 = 8;
    t.max_k_legs = 2;

    // unlabeled edges are untouched
    DiagramSeries plain;
    plain.add(make_chord(x_label(1), x_label(2)), Rat(1));
    CHECK(thr_d(plain, t) == plain);

    // circle labelled t at order 2: loop + (1/2) omega_2; the one-leg wheel
    // dies under AS
    Diagram circle;
    circle.circles.push_back(RatFunc(LaurentPoly::t(1)));
    DiagramSeries s;
    s.add(circle, Rat(1));
    DiagramSeries th = thr_d(s, t);
    Diagram loop;
    loop.loops = 1;
    CHECK(th.coeff_of(loop) == Rat(1));
    CHECK(th.coeff_of(make_wheel(2)) == ratio(1, 2));
    CHECK(th.size() == 2);

    // threading a chord labelled f*g matches the coefficient product rule
    Rng rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        RatFunc f(random_laurent(rng, 1, 2, 2));
        RatFunc g(random_laurent(rng, 1, 2, 2));
        DiagramSeries chord;
        chord.add(make_chord(x_label(1), x_label(2), f * g), Rat(1));
        DiagramSeries exp1 = thr_d(chord, t);
        PowerSeries prod = expand_label(f, 2) * expand_label(g, 2);
        for (int m = 0; m <= 2; ++m)
            CHECK(exp1.coeff_of(make_chord_with_k_legs(x_label(1), x_label(2), m)) ==
                  prod.coeff(m));
    }
}

TEST_CASE("thr_d commutes with the union product") {
    Rng rng(29);
    Trunc t;
    t.max_grade2 = 8;
    t.max_k_legs = 2;
    for (int trial = 0; trial < 8; ++trial) {
        DiagramSeries a, b;
        a.add(make_chord(x_label(1), x_label(1), RatFunc(random_laurent(rng, 1, 2, 2))), Rat(1));
        Diagram circle;
        circle.circles.push_back(RatFunc(random_laurent(rng, 1, 2, 2)));
        b.add(circle, ratio(rng.range(-2, 2), rng.range(1, 2)));
        if (a.empty() || b.empty()) continue;
        DiagramSeries lhs = thr_d(union_product(a, b, t), t);
        DiagramSeries rhs = union_product(thr_d(a, t), thr_d(b, t), t);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("translate: identity cases and term counting") {
    Trunc t;
    t.max_grade2 = 6;
    t.max_k_legs = 3;

    DiagramSeries f;
    f.add(make_chord(x_label(1), x_label(1)), Rat(1));

    std::vector<std::vector<PowerSeries>> zero(1, std::vector<PowerSeries>(1, PowerSeries(3)));
    CHECK(translate(f, zero, t) == f);

    std::vector<std::vector<PowerSeries>> id(
        1, std::vector<PowerSeries>(1, PowerSeries::constant(Rat(1), 3)));
    DiagramSeries tr = translate(f, id, t);
    CHECK(tr.coeff_of(make_chord(x_label(1), x_label(1))) == Rat(1));
    CHECK(tr.coeff_of(make_chord(x_label(1), xprime_label(1))) == Rat(2));
    CHECK(tr.coeff_of(make_chord(xprime_label(1), xprime_label(1))) == Rat(1));

    // a diagram with L distinctly-labelled x-legs expands into exactly 2^L
    // terms (no two reroutings can merge)
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        int legs = static_cast<int>(rng.range(1, 4));
        std::vector<LegLabel> ll;
        for (int i = 1; i <= legs; ++i) ll.push_back(x_label(i));
        Diagram d = random_diagram(rng, 2, ll, false);
        DiagramSeries g;
        g.add(d, Rat(1));
        if (g.empty()) continue; // AS-zero sample
        std::vector<std::vector<PowerSeries>> mid(
            static_cast<size_t>(legs),
            std::vector<PowerSeries>(static_cast<size_t>(legs), PowerSeries(0)));
        for (int i = 0; i < legs; ++i)
            mid[static_cast<size_t>(i)][static_cast<size_t>(i)] =
                PowerSeries::constant(Rat(1), 0);
        DiagramSeries trg = translate(g, mid, Trunc{});
        CHECK(trg.size() == static_cast<size_t>(1) << legs);
    }
}
