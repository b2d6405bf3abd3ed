#include "loopline/integrate.hpp"

#include <algorithm>
#include <deque>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "loopline/errors.hpp"

namespace loopline {

namespace {

// (1/2) sum_ij W_ij c_ij as a diagram series: the labels carry the matrix
// entries, the scalar prefactors sit in the coefficients.
DiagramSeries gaussian_chord_argument(const LaurentMatrix& w, int canon_bound) {
    const size_t mu = w.size();
    DiagramSeries c(canon_bound);
    for (size_t i = 0; i < mu; ++i) {
        if (!w.at(i, i).is_zero())
            c.add(make_chord(x_label(static_cast<int>(i) + 1), x_label(static_cast<int>(i) + 1),
                             RatFunc(w.at(i, i))),
                  ratio(1, 2));
        for (size_t j = i + 1; j < mu; ++j)
            if (!w.at(i, j).is_zero())
                c.add(make_chord(x_label(static_cast<int>(i) + 1), x_label(static_cast<int>(j) + 1),
                                 RatFunc(w.at(i, j))),
                      Rat(1));
    }
    return c;
}

} // namespace

DiagramSeries gaussian_chord_exp(const LaurentMatrix& w, const Trunc& t, int canon_bound) {
    return exp_truncated(gaussian_chord_argument(w, canon_bound), t);
}

IntegrableElement decompose_integrable(const DiagramSeries& s, size_t mu, const Trunc& t) {
    if (s.constant_term() != 1)
        throw NotIntegrable("decompose_integrable: constant term is not 1");
    LaurentMatrix w(mu);
    for (const auto& [key, e] : s.terms()) {
        const Diagram& d = e.rep;
        if (d.vertices.size() != 2 || d.edges.size() != 1 || d.loops != 0 || !d.circles.empty())
            continue;
        const auto& va = d.vertices[0];
        const auto& vb = d.vertices[1];
        if (va.internal || vb.internal || va.leg.kind != LegKind::X || vb.leg.kind != LegKind::X)
            continue;
        int i = d.edges[0].v[0] == 0 ? va.leg.index : vb.leg.index; // tail label
        int j = d.edges[0].v[0] == 0 ? vb.leg.index : va.leg.index;
        RatFunc f = d.edges[0].label ? *d.edges[0].label : RatFunc::one();
        RatFunc scaled = e.coeff * f;
        if (!scaled.is_polynomial())
            throw NotIntegrable("decompose_integrable: chord label is not polynomial");
        if (i == j) {
            w.at(static_cast<size_t>(i - 1), static_cast<size_t>(i - 1)) += (Rat(2) * scaled).num();
        } else {
            w.at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1)) += scaled.num();
            w.at(static_cast<size_t>(j - 1), static_cast<size_t>(i - 1)) += scaled.num().bar();
        }
    }
    if (!w.is_hermitian()) throw NotHermitian("decompose_integrable: Gaussian matrix");
    Rat d1 = det_laurent(w).eval_at_one();
    if (d1 != 1 && d1 != -1)
        throw NotIntegrable("decompose_integrable: det W(1) = " + rat_to_string(d1));
    // divide out the Gaussian part: same chord labels, negated coefficients,
    // so the cancellation happens diagram by diagram
    DiagramSeries inv_exp =
        exp_truncated(gaussian_chord_argument(w, s.canon_bound()) * Rat(-1), t);
    DiagramSeries r = union_product(s, inv_exp, t);
    for (const auto& [key, e] : r.terms())
        if (e.rep.has_bare_x_chord())
            throw NotIntegrable("decompose_integrable: remainder is not X-substantial");
    return {std::move(w), std::move(r)};
}

namespace {

std::set<LegLabel> all_x_labels(size_t mu) {
    std::set<LegLabel> s;
    for (size_t i = 1; i <= mu; ++i) s.insert(x_label(static_cast<int>(i)));
    return s;
}

RatFuncMatrix negated_inverse(const LaurentMatrix& w) {
    RatFuncMatrix inv = invert_ratfunc_matrix(w);
    RatFuncMatrix out(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) out.at(i, j) = -inv.at(i, j);
    return out;
}

} // namespace

DiagramSeries fg_integrate(const IntegrableElement& elem, const Trunc& t, bool parallel) {
    RatFuncMatrix weights = negated_inverse(elem.w);
    auto labels = all_x_labels(elem.w.size());
    return parallel ? pair_glue_parallel(weights, elem.r, labels, t)
                    : pair_glue(weights, elem.r, labels, t);
}

DiagramSeries fg_integrate(const DiagramSeries& s, size_t mu, const Trunc& t, bool parallel) {
    return fg_integrate(decompose_integrable(s, mu, t), t, parallel);
}

DiagramSeries fg_integrate_threaded(const IntegrableElement& elem, int order, const Trunc& t,
                                    bool parallel) {
    const size_t mu = elem.w.size();
    RatFuncMatrix weights = negated_inverse(elem.w);
    std::vector<std::vector<PowerSeries>> series(mu, std::vector<PowerSeries>(mu));
    for (size_t i = 0; i < mu; ++i)
        for (size_t j = 0; j < mu; ++j) series[i][j] = expand_label(weights.at(i, j), order);
    DiagramSeries threaded = thr_d(elem.r, t);
    auto labels = all_x_labels(mu);
    return parallel ? pair_glue_series_parallel(series, threaded, labels, t)
                    : pair_glue_series(series, threaded, labels, t);
}

// ---------------------------------------------------------------------------
// Wheels line, chord-exponential fast path

namespace {

// One chord instance of the expanded exponential: strands (i, j) and the
// k-expansion of its Laurent label, read from the i end towards the j end.
struct ChordInst {
    int i, j;          // 1-based, i <= j
    int series_id;     // index into the series pool
};

struct MultisetEnum {
    // symmetric count matrix: counts[i][j], i <= j; degree constraint
    // 2*counts[i][i] + sum_{j != i} counts[i][j] = 2n for every i
    size_t mu;
    int two_n;
    std::vector<std::vector<int>> counts;
    std::vector<std::pair<std::vector<std::vector<int>>, Rat>> result; // (counts, multiset coeff)

    void run() {
        std::vector<std::vector<int>> c(mu, std::vector<int>(mu, 0));
        rec(0, 0, c);
    }
    void rec(size_t i, size_t j, std::vector<std::vector<int>>& c) {
        if (i == mu) {
            Rat coeff(1);
            for (size_t a = 0; a < mu; ++a) {
                // diagonal instances carry 1/2 each from the exponential sum
                for (int q = 0; q < c[a][a]; ++q) coeff *= ratio(1, 2) / (q + 1);
                for (size_t b = a + 1; b < mu; ++b)
                    for (int q = 0; q < c[a][b]; ++q) coeff /= (q + 1);
            }
            result.push_back({c, coeff});
            return;
        }
        if (j == mu) {
            // check degree of row i is complete
            int deg = 2 * c[i][i];
            for (size_t b = 0; b < mu; ++b)
                if (b != i) deg += c[std::min(i, b)][std::max(i, b)];
            if (deg == two_n) rec(i + 1, i + 1, c);
            return;
        }
        // remaining degree budget for row i
        int used = 2 * c[i][i];
        for (size_t b = 0; b < i; ++b) used += c[b][i];
        for (size_t b = i; b < j; ++b)
            if (b != i) used += c[i][b];
        int room = two_n - used;
        if (room < 0) return;
        if (i == j) {
            for (int v = 0; 2 * v <= room; ++v) {
                c[i][i] = v;
                rec(i, j + 1, c);
            }
            c[i][i] = 0;
        } else {
            for (int v = 0; v <= room; ++v) {
                c[i][j] = v;
                rec(i, j + 1, c);
            }
            c[i][j] = 0;
        }
    }
};

struct CycleAccum {
    // running product over cycles of (a + sum_m b_m w_m), truncated to at
    // most one wheel factor
    Rat scalar = Rat(1);
    std::map<int, Rat> wheels;

    void mul(const Rat& a, const std::map<int, Rat>& b) {
        std::map<int, Rat> nw;
        for (const auto& [m, c] : wheels) {
            Rat v = c * a;
            if (v != 0) nw[m] = v;
        }
        for (const auto& [m, c] : b) {
            Rat v = c * scalar;
            if (v != 0) nw[m] += v;
        }
        wheels = std::move(nw);
        scalar *= a;
    }
};

} // namespace

WheelsLine lmo_chord_exponential(const LaurentMatrix& w, int n, int order, bool parallel) {
    const size_t mu = w.size();
    const int two_n = 2 * n;
    // k-expansions of the entries, upper triangle including diagonal,
    // read i -> j; the reverse traversal uses k -> -k.
    std::vector<std::vector<PowerSeries>> sexp(mu, std::vector<PowerSeries>(mu, PowerSeries(order)));
    for (size_t i = 0; i < mu; ++i)
        for (size_t j = i; j < mu; ++j) sexp[i][j] = laurent_at_exp(w.at(i, j), order, 'k');

    MultisetEnum me{mu, two_n, {}, {}};
    me.run();

    WheelsLine total;
    total.scalar = Rat(0);

    struct Combo {
        size_t multiset;
        std::vector<size_t> matching_idx;
    };

    std::vector<WheelsLine> partials;

    for (size_t msi = 0; msi < me.result.size(); ++msi) {
        const auto& [counts, base] = me.result[msi];
        // instances
        std::vector<ChordInst> inst;
        for (size_t i = 0; i < mu; ++i)
            for (size_t j = i; j < mu; ++j)
                for (int q = 0; q < counts[i][j]; ++q)
                    inst.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, 0});
        // legs per variable: (instance, end) encoded as 2*inst + end
        std::vector<std::vector<int>> legs(mu);
        for (size_t t2 = 0; t2 < inst.size(); ++t2) {
            legs[static_cast<size_t>(inst[t2].i - 1)].push_back(static_cast<int>(2 * t2));
            legs[static_cast<size_t>(inst[t2].j - 1)].push_back(static_cast<int>(2 * t2 + 1));
        }
        bool feasible = true;
        for (size_t i = 0; i < mu; ++i)
            if (static_cast<int>(legs[i].size()) != two_n) feasible = false;
        if (!feasible) continue; // degree constraint guarantees this; belt and braces

        std::vector<std::vector<std::vector<std::pair<int, int>>>> var_matchings;
        for (size_t i = 0; i < mu; ++i) var_matchings.push_back(perfect_matchings(legs[i]));

        // cartesian product of matchings
        std::vector<size_t> idx(mu, 0);
        long combo_count = 1;
        for (const auto& vm : var_matchings) combo_count *= static_cast<long>(vm.size());

        auto eval_combo = [&](long flat, WheelsLine& sink) {
            std::vector<size_t> ix(mu);
            long rem = flat;
            for (size_t i = 0; i < mu; ++i) {
                ix[i] = static_cast<size_t>(rem % static_cast<long>(var_matchings[i].size()));
                rem /= static_cast<long>(var_matchings[i].size());
            }
            // pairing partner of each slot
            std::vector<int> partner(2 * inst.size(), -1);
            for (size_t i = 0; i < mu; ++i)
                for (const auto& [a, b] : var_matchings[i][ix[i]]) {
                    partner[static_cast<size_t>(a)] = b;
                    partner[static_cast<size_t>(b)] = a;
                }
            // cycles
            std::vector<bool> seen(inst.size(), false);
            CycleAccum acc;
            for (size_t start = 0; start < inst.size(); ++start) {
                if (seen[start]) continue;
                PowerSeries cyc = PowerSeries::constant(Rat(1), order, 'k');
                size_t cur = start;
                int enter_end = 0;
                while (true) {
                    seen[cur] = true;
                    const auto& ci = inst[cur];
                    const PowerSeries& s =
                        sexp[static_cast<size_t>(std::min(ci.i, ci.j)) - 1]
                            [static_cast<size_t>(std::max(ci.i, ci.j)) - 1];
                    cyc = cyc * (enter_end == 0 ? s : s.negate_variable());
                    int exit_slot = static_cast<int>(2 * cur) + (1 - enter_end);
                    int next_slot = partner[static_cast<size_t>(exit_slot)];
                    cur = static_cast<size_t>(next_slot / 2);
                    enter_end = next_slot % 2;
                    if (cur == start && enter_end == 0) break;
                }
                Rat a = cyc.coeff(0) * Rat(-two_n);
                std::map<int, Rat> wheels;
                for (int m = 2; m <= order; m += 2)
                    if (cyc.coeff(m) != 0) wheels[m] = cyc.coeff(m);
                acc.mul(a, wheels);
            }
            sink.scalar += base * acc.scalar;
            for (const auto& [m, c] : acc.wheels) sink.wheels[m] += base * c;
        };

        WheelsLine local;
        local.scalar = Rat(0);
        if (!parallel) {
            for (long f = 0; f < combo_count; ++f) eval_combo(f, local);
        } else {
#ifdef _OPENMP
            std::vector<WheelsLine> tl;
#pragma omp parallel
            {
#pragma omp single
                tl.assign(static_cast<size_t>(omp_get_num_threads()), WheelsLine{Rat(0), {}});
#pragma omp barrier
                WheelsLine& mine = tl[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic)
                for (long f = 0; f < combo_count; ++f) eval_combo(f, mine);
            }
            for (const auto& p : tl) {
                local.scalar += p.scalar;
                for (const auto& [m, c] : p.wheels) local.wheels[m] += c;
            }
#else
            for (long f = 0; f < combo_count; ++f) eval_combo(f, local);
#endif
        }
        total.scalar += local.scalar;
        for (const auto& [m, c] : local.wheels) total.wheels[m] += c;
    }
    for (auto it = total.wheels.begin(); it != total.wheels.end();)
        it = it->second == 0 ? total.wheels.erase(it) : std::next(it);
    return total;
}

WheelsLineCheck wheels_line_check(const LaurentMatrix& w, int n, int order, bool parallel) {
    if (!w.is_hermitian()) throw NotHermitian("wheels_line_check");
    LaurentPoly det = det_laurent(w);
    Rat d1 = det.eval_at_one();
    if (d1 != 1 && d1 != -1)
        throw NotIntegrable("wheels_line_check: det W(1) = " + rat_to_string(d1));
    order = std::min(order, 2 * n);

    WheelsLine lhs = lmo_chord_exponential(w, n, order, parallel);
    WheelsLineCheck out;
    out.scalar_lhs = lhs.scalar;
    auto [sp, sm] = signature_at_1(w);
    out.scalar_rhs = (static_cast<long>(n) * sp) % 2 == 0 ? Rat(1) : Rat(-1);

    const int mmax = std::min(n, order / 2);
    std::vector<Rat> b = b2n(std::max(mmax, 1));
    std::vector<Rat> c = wh_prime_coeffs(det, std::max(mmax, 1));
    out.exp_lhs.clear();
    out.exp_rhs.clear();
    bool eq = out.scalar_lhs == out.scalar_rhs && out.scalar_lhs != 0;
    for (int m = 1; m <= mmax && lhs.scalar != 0; ++m) {
        Rat wheel = lhs.wheels.count(2 * m) ? lhs.wheels[2 * m] : Rat(0);
        Rat a_lhs = b[static_cast<size_t>(m - 1)] + wheel / lhs.scalar;
        Rat a_rhs = c[static_cast<size_t>(m - 1)];
        out.exp_lhs.push_back(a_lhs);
        out.exp_rhs.push_back(a_rhs);
        if (a_lhs != a_rhs) eq = false;
    }
    out.equal = eq;
    return out;
}

// ---------------------------------------------------------------------------
// Surgery assembly

LoopExpansion surgery_assemble(const SolidTorusPresentation& p,
                               const std::optional<DiagramSeries>& r_input, int order,
                               int loop_bound, bool parallel) {
    SpecialnessReport rep = validate_special(p);
    if (!rep.is_special) {
        std::string msg = "surgery_assemble: presentation is not special (";
        bool net = std::all_of(rep.net_disc_passage.begin(), rep.net_disc_passage.end(),
                               [](long v) { return v == 0; });
        msg += net ? "linking determinant is not a unit" : "nonzero net disc passage";
        msg += ")";
        throw NotSpecial(msg);
    }
    LoopExpansion out;
    LaurentMatrix w = winding_matrix(p);
    out.raw_det = det_laurent(w);
    out.alexander = normalize_alexander(out.raw_det);
    out.wheel_coeffs = wh_prime_coeffs(out.alexander, order);
    auto [sp, sm] = signature_at_1(w);
    out.sigma_plus = sp;
    out.sigma_minus = sm;
    out.normalization_leading = Rat(1); // ((-1)^n (-1)^n)^{sigma+} * (1)^{sigma-}
    if (!r_input) return out;

    DiagramSeries r = *r_input;
    for (const auto& [key, e] : r.terms()) {
        if (e.rep.has_bare_x_chord())
            throw MalformedR("R input must be X-substantial");
        if (e.rep.loops > 0 || !e.rep.circles.empty())
            throw MalformedR("R input may not contain closed dashed loops");
        for (const auto& v : e.rep.vertices)
            if (!v.internal && v.leg.kind == LegKind::X &&
                (v.leg.index < 1 || static_cast<size_t>(v.leg.index) > p.mu))
                throw MalformedR("R input uses a strand label beyond the presentation");
    }
    if (r.constant_term() == 0) r.add(Diagram{}, Rat(1));

    Trunc t = Trunc::by_grade(loop_bound);
    DiagramSeries glued = fg_integrate(IntegrableElement{w, r}, t, parallel);
    DiagramSeries logged = log_truncated(glued, t);
    for (const auto& [key, e] : logged.terms()) {
        int chi = euler_characteristic(e.rep);
        out.loop_terms[-chi].add(e.rep, e.coeff);
    }
    return out;
}

bool denominator_divides_power(const RatFunc& f, const LaurentPoly& alexander, int max_power) {
    long shift;
    std::vector<Rat> a = dense_from_laurent(alexander, shift);
    std::vector<Rat> d = dense_from_laurent(f.den(), shift);
    for (int iter = 0; iter <= max_power; ++iter) {
        if (d.size() <= 1) return true;
        std::vector<Rat> g = dense_gcd(d, a);
        if (g.size() <= 1) return false;
        std::vector<Rat> q, rem;
        dense_divmod(d, g, q, rem);
        d = q;
    }
    return d.size() <= 1;
}

} // namespace loopline
