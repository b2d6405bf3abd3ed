#include "loopline/random_gen.hpp"

#include <algorithm>

namespace loopline {

namespace {

void insert_event(Rng& rng, std::vector<Event>& events, Event ev) {
    size_t pos = static_cast<size_t>(rng.range(0, static_cast<long>(events.size())));
    events.insert(events.begin() + static_cast<long>(pos), std::move(ev));
}

} // namespace

SolidTorusPresentation random_net_zero_presentation(Rng& rng, size_t mu, size_t max_events,
                                                    bool unimodular) {
    SolidTorusPresentation p;
    p.mu = mu;
    p.strands.assign(mu, {});
    int next_id = 1;
    auto events_left = [&](size_t s) {
        return p.strands[s].size() < max_events ? max_events - p.strands[s].size() : 0;
    };

    if (unimodular) {
        // one framing self-crossing per strand: linking diagonal +-1
        for (size_t s = 0; s < mu; ++s) {
            int id = next_id++;
            p.crossing_sign[id] = rng.sign();
            bool over_first = rng.flip();
            insert_event(rng, p.strands[s], CrossingEnd{id, over_first});
            insert_event(rng, p.strands[s], CrossingEnd{id, !over_first});
        }
    }
    // disc passes in cancelling pairs
    for (size_t s = 0; s < mu; ++s) {
        long pairs = rng.range(0, 3);
        for (long q = 0; q < pairs && events_left(s) >= 2; ++q) {
            int dir = rng.sign();
            insert_event(rng, p.strands[s], DiscPass{dir});
            insert_event(rng, p.strands[s], DiscPass{-dir});
        }
    }
    // extra self-crossing pairs with cancelling signs when unimodular,
    // arbitrary signs otherwise
    for (size_t s = 0; s < mu; ++s) {
        long extra = rng.range(0, 2);
        for (long q = 0; q < extra && events_left(s) >= 4; ++q) {
            int id1 = next_id++, id2 = next_id++;
            int sg = rng.sign();
            p.crossing_sign[id1] = sg;
            p.crossing_sign[id2] = unimodular ? -sg : rng.sign();
            for (int id : {id1, id2}) {
                bool over_first = rng.flip();
                insert_event(rng, p.strands[s], CrossingEnd{id, over_first});
                insert_event(rng, p.strands[s], CrossingEnd{id, !over_first});
            }
        }
    }
    // mixed crossings, pairwise per strand pair so linking stays integral
    if (mu >= 2) {
        long pairs = rng.range(0, static_cast<long>(2 * mu));
        for (long q = 0; q < pairs; ++q) {
            size_t a = static_cast<size_t>(rng.range(0, static_cast<long>(mu) - 1));
            size_t b = static_cast<size_t>(rng.range(0, static_cast<long>(mu) - 1));
            if (a == b) continue;
            if (events_left(a) < 2 || events_left(b) < 2) continue;
            int id1 = next_id++, id2 = next_id++;
            int sg = rng.sign();
            p.crossing_sign[id1] = sg;
            p.crossing_sign[id2] = unimodular ? -sg : rng.sign();
            for (int id : {id1, id2}) {
                bool a_over = rng.flip();
                insert_event(rng, p.strands[a], CrossingEnd{id, a_over});
                insert_event(rng, p.strands[b], CrossingEnd{id, !a_over});
            }
        }
    }
    p.validate();
    return p;
}

std::vector<std::vector<Rat>> random_unimodular(Rng& rng, size_t mu, long coeff_bound) {
    std::vector<std::vector<Rat>> u(mu, std::vector<Rat>(mu, Rat(0)));
    for (size_t i = 0; i < mu; ++i) u[i][i] = Rat(rng.sign());
    long ops = rng.range(static_cast<long>(mu), static_cast<long>(3 * mu));
    for (long q = 0; q < ops; ++q) {
        size_t i = static_cast<size_t>(rng.range(0, static_cast<long>(mu) - 1));
        size_t j = static_cast<size_t>(rng.range(0, static_cast<long>(mu) - 1));
        if (i == j) continue;
        Rat f(rng.range(-coeff_bound, coeff_bound));
        for (size_t c = 0; c < mu; ++c) u[i][c] += f * u[j][c];
    }
    return u;
}

std::vector<std::vector<Rat>> random_symmetric_unimodular(Rng& rng, size_t mu, long coeff_bound) {
    auto u = random_unimodular(rng, mu, coeff_bound);
    std::vector<int> d(mu);
    for (auto& v : d) v = rng.sign();
    std::vector<std::vector<Rat>> s(mu, std::vector<Rat>(mu, Rat(0)));
    for (size_t i = 0; i < mu; ++i)
        for (size_t j = 0; j < mu; ++j) {
            Rat acc(0);
            for (size_t k = 0; k < mu; ++k) acc += u[k][i] * Rat(d[k]) * u[k][j];
            s[i][j] = acc;
        }
    return s;
}

LaurentPoly random_laurent(Rng& rng, long max_exp, long coeff_bound, int terms) {
    LaurentPoly p;
    for (int q = 0; q < terms; ++q) {
        long c = rng.range(-coeff_bound, coeff_bound);
        if (c == 0) c = 1;
        long e = rng.range(-max_exp, max_exp);
        p.set_coeff(e, p.coeff(e) + Rat(c));
    }
    if (p.is_zero()) p = LaurentPoly(1);
    return p;
}

LaurentMatrix random_hermitian_unimodular(Rng& rng, size_t mu, long max_exp, long coeff_bound) {
    auto s = random_symmetric_unimodular(rng, mu, coeff_bound);
    LaurentMatrix w(mu);
    for (size_t i = 0; i < mu; ++i) {
        LaurentPoly q = random_laurent(rng, max_exp, coeff_bound, 2);
        LaurentPoly h = q + q.bar();
        w.at(i, i) = LaurentPoly(s[i][i]) + h - LaurentPoly(h.eval_at_one());
        for (size_t j = i + 1; j < mu; ++j) {
            LaurentPoly hij = random_laurent(rng, max_exp, coeff_bound, 2);
            w.at(i, j) = LaurentPoly(s[i][j]) + hij - LaurentPoly(hij.eval_at_one());
            w.at(j, i) = w.at(i, j).bar();
        }
    }
    return w;
}

Diagram random_diagram(Rng& rng, int n_internal, const std::vector<LegLabel>& legs,
                       bool with_labels) {
    Diagram d;
    std::vector<int> stubs; // vertex ids, one entry per free half-edge
    for (int i = 0; i < n_internal; ++i) {
        int v = d.add_internal();
        stubs.insert(stubs.end(), 3, v);
    }
    for (const auto& l : legs) stubs.push_back(d.add_leg(l));
    if (stubs.size() % 2 != 0) {
        // drop one internal stub pairing by adding a K-leg to even out
        stubs.push_back(d.add_leg(k_label()));
    }
    // random matching of stubs
    while (!stubs.empty()) {
        size_t a = 0;
        size_t b = static_cast<size_t>(rng.range(1, static_cast<long>(stubs.size()) - 1));
        int u = stubs[a], v = stubs[b];
        stubs.erase(stubs.begin() + static_cast<long>(b));
        stubs.erase(stubs.begin());
        std::optional<RatFunc> label;
        if (with_labels && rng.range(0, 3) == 0)
            label = RatFunc(random_laurent(rng, 1, 2, 2));
        d.add_edge(u, v, std::move(label));
    }
    // random cyclic orders
    for (auto& v : d.vertices)
        if (v.internal && v.inc.size() == 3 && rng.flip())
            std::rotate(v.inc.begin(), v.inc.begin() + 1, v.inc.end());
    return d;
}

std::pair<Diagram, int> shuffled_copy(Rng& rng, const Diagram& d) {
    const size_t n = d.vertices.size();
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<size_t>(rng.range(0, static_cast<long>(i) - 1))]);
    Diagram out;
    out.loops = d.loops;
    out.circles = d.circles;
    out.vertices.resize(n);
    for (size_t v = 0; v < n; ++v) {
        out.vertices[static_cast<size_t>(perm[v])].internal = d.vertices[v].internal;
        out.vertices[static_cast<size_t>(perm[v])].leg = d.vertices[v].leg;
    }
    // edges in a random order
    std::vector<int> eperm(d.edges.size());
    for (size_t e = 0; e < d.edges.size(); ++e) eperm[e] = static_cast<int>(e);
    for (size_t i = eperm.size(); i > 1; --i)
        std::swap(eperm[i - 1], eperm[static_cast<size_t>(rng.range(0, static_cast<long>(i) - 1))]);
    std::vector<int> einv(d.edges.size());
    for (size_t e = 0; e < d.edges.size(); ++e) einv[static_cast<size_t>(eperm[e])] = static_cast<int>(e);
    out.edges.resize(d.edges.size());
    std::vector<bool> flipped(d.edges.size(), false);
    for (size_t e = 0; e < d.edges.size(); ++e) {
        Diagram::Edge ne;
        ne.v[0] = perm[static_cast<size_t>(d.edges[e].v[0])];
        ne.v[1] = perm[static_cast<size_t>(d.edges[e].v[1])];
        ne.label = d.edges[e].label;
        if (rng.flip()) { // reverse storage, barring the label (OR relation)
            std::swap(ne.v[0], ne.v[1]);
            if (ne.label) ne.label = ne.label->bar();
            flipped[e] = true;
        }
        out.edges[static_cast<size_t>(eperm[e])] = ne;
    }
    int sign = 1;
    for (size_t v = 0; v < n; ++v) {
        const auto& inc = d.vertices[v].inc;
        std::vector<std::pair<int, int>> ninc;
        for (const auto& [e, end] : inc)
            ninc.push_back({eperm[static_cast<size_t>(e)], flipped[static_cast<size_t>(e)] ? 1 - end : end});
        if (d.vertices[v].internal && ninc.size() == 3) {
            long r = rng.range(0, 2);
            std::rotate(ninc.begin(), ninc.begin() + r, ninc.end());
            if (rng.flip()) { // orientation flip: AS sign
                std::swap(ninc[1], ninc[2]);
                sign = -sign;
            }
        }
        out.vertices[static_cast<size_t>(perm[v])].inc = std::move(ninc);
    }
    return {out, sign};
}

} // namespace loopline
