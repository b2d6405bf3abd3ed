#include "loopline/dseries.hpp"

#include <algorithm>

#include "loopline/errors.hpp"

namespace loopline {

void DiagramSeries::add(const Diagram& d, const Rat& coeff) {
    if (coeff == 0) return;
    for (const auto& e : d.edges)
        if (e.label && e.label->is_zero()) return; // zero label: the zero diagram
    for (const auto& f : d.circles)
        if (f.is_zero()) return;
    CanonicalForm cf = canonical_form(d, canon_bound_);
    if (cf.zero) return;
    auto it = terms_.find(cf.key);
    if (it == terms_.end()) {
        terms_.emplace(cf.key, Entry{d, cf.sign, coeff});
        return;
    }
    // coeff * d = coeff * cf.sign * canon = (coeff * cf.sign * rep_sign) * rep
    it->second.coeff += coeff * cf.sign * it->second.rep_sign;
    if (it->second.coeff == 0) terms_.erase(it);
}

void DiagramSeries::add_scaled(const DiagramSeries& other, const Rat& scale) {
    for (const auto& [key, e] : other.terms_) add(e.rep, e.coeff * scale);
}

Rat DiagramSeries::coeff_of(const Diagram& d) const {
    CanonicalForm cf = canonical_form(d, canon_bound_);
    if (cf.zero) return Rat(0);
    auto it = terms_.find(cf.key);
    if (it == terms_.end()) return Rat(0);
    // stored: coeff * rep = coeff * rep_sign * canon; want c with series = c * d
    return it->second.coeff * it->second.rep_sign * cf.sign;
}

Rat DiagramSeries::constant_term() const { return coeff_of(Diagram{}); }

std::map<std::string, Rat> DiagramSeries::canonical_coeffs() const {
    std::map<std::string, Rat> out;
    for (const auto& [key, e] : terms_) out[key] = e.coeff * e.rep_sign;
    return out;
}

DiagramSeries DiagramSeries::truncated(const Trunc& t) const {
    DiagramSeries out(canon_bound_);
    for (const auto& [key, e] : terms_)
        if (t.admits(e.rep)) out.add(e.rep, e.coeff);
    return out;
}

DiagramSeries DiagramSeries::operator+(const DiagramSeries& o) const {
    DiagramSeries out = *this;
    out.add_scaled(o, Rat(1));
    return out;
}

DiagramSeries DiagramSeries::operator*(const Rat& s) const {
    DiagramSeries out(canon_bound_);
    if (s == 0) return out;
    out.terms_ = terms_;
    for (auto& [key, e] : out.terms_) e.coeff *= s;
    return out;
}

DiagramSeries DiagramSeries::map_terms(
    const std::function<void(const Diagram&, const Rat&, DiagramSeries&)>& fn) const {
    DiagramSeries out(canon_bound_);
    for (const auto& [key, e] : terms_) fn(e.rep, e.coeff, out);
    return out;
}

DiagramSeries union_product(const DiagramSeries& a, const DiagramSeries& b, const Trunc& t) {
    DiagramSeries out(a.canon_bound());
    for (const auto& [ka, ea] : a.terms())
        for (const auto& [kb, eb] : b.terms()) {
            Diagram d = disjoint_union(ea.rep, eb.rep);
            if (!t.admits(d)) continue;
            out.add(d, ea.coeff * eb.coeff);
        }
    return out;
}

namespace {

void require_expandable(const DiagramSeries& c, const Trunc& t) {
    for (const auto& [key, e] : c.terms()) {
        const Diagram& d = e.rep;
        bool grows = (d.grade2() > 0 && t.max_grade2 != INT_MAX) ||
                     (d.max_x_leg_count() > 0 && t.max_x_legs_per_var != INT_MAX) ||
                     (d.count_k_legs() > 0 && t.max_k_legs != INT_MAX);
        if (!grows)
            throw Error("exp/log: series contains a term no truncation cap bounds");
    }
}

} // namespace

DiagramSeries exp_truncated(const DiagramSeries& c, const Trunc& t) {
    require_expandable(c, t);
    DiagramSeries acc = DiagramSeries::unit(c.canon_bound());
    DiagramSeries term = DiagramSeries::unit(c.canon_bound());
    for (long m = 1;; ++m) {
        term = union_product(term, c, t);
        term = term * ratio(1, m);
        if (term.empty()) break;
        acc.add_scaled(term, Rat(1));
    }
    return acc;
}

DiagramSeries log_truncated(const DiagramSeries& s, const Trunc& t) {
    if (s.constant_term() != 1)
        throw NotUnital("log_truncated: constant term is " + rat_to_string(s.constant_term()));
    DiagramSeries u = s;
    u.add(Diagram{}, Rat(-1)); // u = s - 1
    require_expandable(u, t);
    DiagramSeries acc(s.canon_bound());
    DiagramSeries pow = u;
    int sign = 1;
    for (long m = 1; !pow.empty(); ++m) {
        acc.add_scaled(pow, Rat(sign) / Rat(m));
        pow = union_product(pow, u, t);
        sign = -sign;
    }
    return acc;
}

namespace {

// Recursion over the labelled edges of one diagram, distributing K-legs.
void thread_edges(const Diagram& d, const std::vector<int>& labelled, size_t idx,
                  const Rat& coeff, int legs_left, const Trunc& t, DiagramSeries& out) {
    if (idx == labelled.size()) {
        if (t.admits(d)) out.add(d, coeff);
        return;
    }
    int e = labelled[idx];
    RatFunc f = *d.edges[static_cast<size_t>(e)].label;
    PowerSeries s = expand_label(f, legs_left);
    for (int m = 0; m <= legs_left; ++m) {
        if (s.coeff(m) == 0) continue;
        Diagram nd = replace_edge_with_k_chain(d, e, m);
        thread_edges(nd, labelled, idx + 1, coeff * s.coeff(m), legs_left - m, t, out);
    }
}

} // namespace

DiagramSeries thr_d(const DiagramSeries& s, const Trunc& t) {
    int budget = t.max_k_legs == INT_MAX ? t.max_grade2 : t.max_k_legs;
    if (budget == INT_MAX)
        throw Error("thr_d: unbounded truncation");
    DiagramSeries out(s.canon_bound());
    for (const auto& [key, e] : s.terms()) {
        Diagram base = e.rep;
        // expand labelled circles into wheels first
        std::vector<RatFunc> circles = base.circles;
        base.circles.clear();
        DiagramSeries partial(s.canon_bound());
        partial.add(base, e.coeff);
        for (const auto& f : circles) {
            PowerSeries ps = expand_label(f, budget);
            DiagramSeries next(s.canon_bound());
            for (const auto& [k2, e2] : partial.terms()) {
                for (int m = 0; m <= budget; ++m) {
                    if (ps.coeff(m) == 0) continue;
                    Diagram nd = disjoint_union(e2.rep, make_wheel(m));
                    if (!t.admits(nd)) continue;
                    next.add(nd, e2.coeff * ps.coeff(m));
                }
            }
            partial = next;
        }
        for (const auto& [k2, e2] : partial.terms()) {
            std::vector<int> labelled;
            for (size_t ei = 0; ei < e2.rep.edges.size(); ++ei)
                if (e2.rep.edges[ei].label) labelled.push_back(static_cast<int>(ei));
            int legs_room = budget - e2.rep.count_k_legs();
            if (legs_room < 0) continue;
            thread_edges(e2.rep, labelled, 0, e2.coeff, legs_room, t, out);
        }
    }
    return out;
}

namespace {

void translate_legs(const Diagram& d, const std::vector<int>& xlegs, size_t idx,
                    const Rat& coeff,
                    const std::vector<std::vector<PowerSeries>>& m, int legs_left,
                    const Trunc& t, DiagramSeries& out) {
    if (idx == xlegs.size()) {
        if (t.admits(d)) out.add(d, coeff);
        return;
    }
    int leg = xlegs[idx];
    // keep the leg
    translate_legs(d, xlegs, idx + 1, coeff, m, legs_left, t, out);
    int i = d.vertices[static_cast<size_t>(leg)].leg.index;
    if (i < 1 || static_cast<size_t>(i) > m.size()) return;
    const auto& row = m[static_cast<size_t>(i - 1)];
    for (size_t j = 0; j < row.size(); ++j) {
        const PowerSeries& series = row[j];
        for (int deg = 0; deg <= std::min(legs_left, series.order()); ++deg) {
            if (series.coeff(deg) == 0) continue;
            // reroute: leg becomes x'_{j+1}; the coupon contributes `deg`
            // K-legs on the stem, adjacent to the relabelled leg.
            Diagram nd = d;
            nd.vertices[static_cast<size_t>(leg)].leg = xprime_label(static_cast<int>(j) + 1);
            if (deg > 0) {
                auto [stem, end] = nd.vertices[static_cast<size_t>(leg)].inc[0];
                // orient the chain towards the leg: rebuild the stem so the
                // K-legs sit between the diagram and the leg.
                if (end == 0) {
                    // stem points leg -> rest; flip so the chain insertion
                    // runs rest -> leg, barring any label.
                    auto& es = nd.edges[static_cast<size_t>(stem)];
                    std::swap(es.v[0], es.v[1]);
                    if (es.label) es.label = es.label->bar();
                    for (int side = 0; side < 2; ++side)
                        for (auto& [eid, e2] : nd.vertices[static_cast<size_t>(es.v[side])].inc)
                            if (eid == stem) e2 = 1 - e2;
                }
                nd = replace_edge_with_k_chain(nd, stem, deg);
                // replace_edge_with_k_chain drops the stem label; keep it by
                // reattaching on the first segment.
                if (d.edges[static_cast<size_t>(stem)].label) {
                    RatFunc f = *d.edges[static_cast<size_t>(stem)].label;
                    auto [olds, olde] = d.vertices[static_cast<size_t>(leg)].inc[0];
                    (void)olds;
                    nd.edges[static_cast<size_t>(stem)].label =
                        olde == 0 ? f.bar() : f;
                }
            }
            translate_legs(nd, xlegs, idx + 1, coeff * series.coeff(deg), m,
                           legs_left - deg, t, out);
        }
    }
}

} // namespace

DiagramSeries translate(const DiagramSeries& f,
                        const std::vector<std::vector<PowerSeries>>& m, const Trunc& t) {
    int budget = t.max_k_legs != INT_MAX ? t.max_k_legs
                 : t.max_grade2 != INT_MAX ? t.max_grade2
                                           : 1 << 20; // series orders bound the depth
    DiagramSeries out(f.canon_bound());
    for (const auto& [key, e] : f.terms()) {
        std::vector<int> xlegs;
        for (size_t v = 0; v < e.rep.vertices.size(); ++v)
            if (!e.rep.vertices[v].internal && e.rep.vertices[v].leg.kind == LegKind::X)
                xlegs.push_back(static_cast<int>(v));
        int room = std::max(budget - e.rep.count_k_legs(), 0);
        translate_legs(e.rep, xlegs, 0, e.coeff, m, room, t, out);
    }
    return out;
}

} // namespace loopline
