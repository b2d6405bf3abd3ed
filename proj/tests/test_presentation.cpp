#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopline/errors.hpp"
#include "loopline/random_gen.hpp"

using namespace loopline;

namespace {

SolidTorusPresentation fig8() {
    return parse_presentation_file(std::string(DATA_DIR) + "/fig8.sl");
}

LaurentPoly fig8_w() {
    return LaurentPoly::t(1) - LaurentPoly(3) + LaurentPoly::t(-1);
}

// Applies a random winding-invariant move; returns the new presentation.
SolidTorusPresentation random_move(Rng& rng, const SolidTorusPresentation& p, int& applied) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        long kind = rng.range(0, 2);
        try {
            if (kind == 0) {
                MoveCancelPair m;
                m.insert = rng.flip();
                m.strand = static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1));
                const auto& ev = p.strands[m.strand];
                if (m.insert) {
                    m.position = static_cast<size_t>(rng.range(0, static_cast<long>(ev.size())));
                    m.plus_first = rng.flip();
                } else {
                    if (ev.size() < 2) continue;
                    m.position = static_cast<size_t>(rng.range(0, static_cast<long>(ev.size()) - 2));
                }
                auto q = apply_move(p, m);
                ++applied;
                return q;
            }
            if (kind == 1) {
                MoveR2 m;
                m.insert = true;
                m.strand_over = static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1));
                m.strand_under = static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1));
                m.pos_over = static_cast<size_t>(
                    rng.range(0, static_cast<long>(p.strands[m.strand_over].size())));
                m.pos_under = static_cast<size_t>(
                    rng.range(0, static_cast<long>(p.strands[m.strand_under].size())));
                m.sign_first = rng.sign();
                auto q = apply_move(p, m);
                ++applied;
                return q;
            }
            // R2 delete: scan for a deletable pair
            for (const auto& [id1, s1] : p.crossing_sign)
                for (const auto& [id2, s2] : p.crossing_sign) {
                    if (id1 >= id2 || s1 + s2 != 0) continue;
                    MoveR2 m;
                    m.insert = false;
                    m.id_a = id1;
                    m.id_b = id2;
                    try {
                        auto q = apply_move(p, m);
                        ++applied;
                        return q;
                    } catch (const IllegalMove&) {
                    }
                }
            continue;
        } catch (const IllegalMove&) {
            continue;
        }
    }
    return p;
}

} // namespace

TEST_CASE("parser: trivial, errors, fig8") {
    auto triv = parse_presentation("strands 1\nstrand 1:\n");
    CHECK(triv.mu == 1);
    CHECK(triv.strands[0].empty());

    CHECK_THROWS_AS(parse_presentation("strands 1\ncrossing 1 sign=+1\nstrand 1: O:1\n"),
                    DanglingCrossing);
    CHECK_THROWS_AS(parse_presentation("strands 1\nstrand 1: Q:7\n"), SyntaxError);
    CHECK_THROWS_AS(parse_presentation("strand 1: D+\n"), SyntaxError);

    auto p = fig8();
    CHECK(p.mu == 1);
    CHECK(p.crossing_sign.size() == 5);
    auto q = parse_presentation(presentation_to_string(p));
    CHECK(q.crossing_sign == p.crossing_sign);
    CHECK(q.strands == p.strands);
}

TEST_CASE("winding exponent: pinned hand traces") {
    // single strand: [D+, over c, under c, D-]  ->  eps = 0
    auto p = parse_presentation("strands 1\ncrossing 1 sign=+1\nstrand 1: D+ O:1 U:1 D-\n");
    CHECK(winding_exponent(p, 1) == 0);
    CHECK_THROWS_AS(winding_exponent(p, 99), UnknownCrossing);

    // crossing with no disc passes anywhere -> 0
    auto q = parse_presentation("strands 2\ncrossing 4 sign=-1\nstrand 1: O:4\nstrand 2: U:4\n");
    CHECK(winding_exponent(q, 4) == 0);

    // passes before the first end and after the second end both count
    auto r = parse_presentation(
        "strands 2\ncrossing 1 sign=+1\nstrand 1: D+ D+ O:1\nstrand 2: U:1 D-\n");
    CHECK(winding_exponent(r, 1, true) == 1);   // prefix +2 on strand 1, suffix -1 on 2
    CHECK(winding_exponent(r, 1, false) == 0);  // prefix 0 on strand 2, suffix 0 on 1
}

TEST_CASE("fig8: winding matrix, linking, specialness, alexander") {
    auto p = fig8();
    LaurentMatrix w = winding_matrix(p);
    REQUIRE(w.size() == 1);
    CHECK(w.at(0, 0) == fig8_w());
    CHECK(w.is_hermitian());

    auto lk = linking_matrix(p);
    CHECK(lk[0][0] == Rat(-1));

    auto rep = validate_special(p);
    CHECK(rep.is_special);
    CHECK(rep.det_lk == Rat(-1));
    CHECK(rep.net_disc_passage[0] == 0);

    CHECK(cover_linking_oracle(p).at(0, 0) == fig8_w());

    CHECK(normalize_alexander(det_laurent(w)) == -fig8_w());
    auto [sp, sm] = signature_at_1(w);
    CHECK(sp == 0);
    CHECK(sm == 1);
}

TEST_CASE("specialness flags") {
    auto bad = parse_presentation("strands 1\nstrand 1: D+\n");
    CHECK_FALSE(validate_special(bad).is_special);
    CHECK_THROWS_AS(cover_linking_oracle(bad), NotSpecial);

    auto ok = parse_presentation("strands 1\nstrand 1: D+ D-\n");
    CHECK(validate_special(ok).net_disc_passage[0] == 0);
    // crossing-free: zero winding matrix, det lk = 0, not special
    CHECK_FALSE(validate_special(ok).is_special);
    CHECK(winding_matrix(ok).at(0, 0).is_zero());
    CHECK(cover_linking_oracle(ok).at(0, 0).is_zero());
}

TEST_CASE("winding matrix equals the cover oracle on random special presentations") {
    Rng rng(2024);
    int done = 0;
    while (done < 220) {
        size_t mu = static_cast<size_t>(rng.range(1, 4));
        bool uni = rng.flip();
        auto p = random_net_zero_presentation(rng, mu, 20, uni);
        LaurentMatrix w = winding_matrix(p);
        CHECK(w == cover_linking_oracle(p));
        CHECK(w.is_hermitian());
        auto lk = linking_matrix(p);
        auto w1 = w.eval_at_one();
        CHECK(lk == w1);
        if (uni) CHECK(validate_special(p).is_special);
        ++done;
    }
}

TEST_CASE("epsilon antisymmetry on special presentations") {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        auto p = random_net_zero_presentation(rng, static_cast<size_t>(rng.range(2, 4)), 18,
                                              rng.flip());
        for (const auto& [id, sign] : p.crossing_sign) {
            auto [a, b] = locate_crossing(p, id);
            if (a.strand == b.strand) continue;
            CHECK(winding_exponent(p, id, true) == -winding_exponent(p, id, false));
        }
    }
}

TEST_CASE("self-crossing strand-switch choice washes out after symmetrization") {
    Rng rng(177);
    for (int trial = 0; trial < 60; ++trial) {
        auto p = random_net_zero_presentation(rng, static_cast<size_t>(rng.range(1, 3)), 18,
                                              rng.flip());
        for (const auto& [id, sign] : p.crossing_sign) {
            auto [a, b] = locate_crossing(p, id);
            if (a.strand != b.strand) continue;
            long e1 = winding_exponent(p, id, true);
            long e2 = winding_exponent(p, id, false);
            LaurentPoly s1 = LaurentPoly::t(e1) + LaurentPoly::t(-e1);
            LaurentPoly s2 = LaurentPoly::t(e2) + LaurentPoly::t(-e2);
            CHECK(s1 == s2);
        }
    }
}

TEST_CASE("moves: inverses and pinned invariance") {
    auto p = fig8();
    MoveCancelPair ins{true, 0, 3, true};
    auto q = apply_move(p, ins);
    CHECK(q.strands[0].size() == p.strands[0].size() + 2);
    MoveCancelPair del{false, 0, 3, true};
    auto back = apply_move(q, del);
    CHECK(back.strands == p.strands);

    // R2 insert on fig8 leaves W unchanged
    MoveR2 r2{true, 0, 2, 0, 7, +1, -1, -1};
    auto r = apply_move(p, r2);
    CHECK(winding_matrix(r) == winding_matrix(p));
    CHECK(r.crossing_sign.size() == 7);

    MoveCancelPair badpos{false, 0, 0, true};
    CHECK_THROWS_AS(apply_move(p, badpos), IllegalMove);
}

TEST_CASE("R3 on a prepared three-strand presentation") {
    auto p = parse_presentation(
        "strands 3\n"
        "crossing 1 sign=+1\ncrossing 2 sign=+1\ncrossing 3 sign=-1\n"
        "strand 1: D+ O:1 O:2 D-\n"
        "strand 2: U:1 U:3 D+ D-\n"
        "strand 3: D- U:2 O:3 D+\n");
    MoveR3 m{1, 2, 3};
    auto q = apply_move(p, m);
    CHECK(winding_matrix(q) == winding_matrix(p));
    CHECK(q.strands != p.strands);
    auto back = apply_move(q, m);
    CHECK(back.strands == p.strands);

    MoveR3 bad{1, 2, 3};
    auto far = parse_presentation(
        "strands 3\n"
        "crossing 1 sign=+1\ncrossing 2 sign=+1\ncrossing 3 sign=-1\n"
        "strand 1: O:1 D+ O:2\n"
        "strand 2: U:1 U:3\n"
        "strand 3: U:2 O:3\n");
    CHECK_THROWS_AS(apply_move(far, bad), IllegalMove);
}

TEST_CASE("winding matrix invariant under 500+ random moves") {
    Rng rng(4242);
    int applied = 0;
    while (applied < 520) {
        size_t mu = static_cast<size_t>(rng.range(1, 3));
        auto p = random_net_zero_presentation(rng, mu, 14, rng.flip());
        LaurentMatrix w = winding_matrix(p);
        auto q = p;
        for (int burst = 0; burst < 6; ++burst) q = random_move(rng, q, applied);
        CHECK(winding_matrix(q) == w);
    }
}
