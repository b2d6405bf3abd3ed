#include "loopline/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "loopline/errors.hpp"

namespace loopline {

std::string LegLabel::to_string() const {
    switch (kind) {
        case LegKind::X: return "x" + std::to_string(index);
        case LegKind::XPrime: return "x'" + std::to_string(index);
        case LegKind::K: return "k";
    }
    return "?";
}

int Diagram::max_x_leg_count() const {
    std::map<int, int> counts;
    for (const auto& v : vertices)
        if (!v.internal && v.leg.kind == LegKind::X) counts[v.leg.index]++;
    int m = 0;
    for (const auto& [i, c] : counts) m = std::max(m, c);
    return m;
}

std::vector<int> Diagram::legs_with_label(LegLabel l) const {
    std::vector<int> out;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (!vertices[i].internal && vertices[i].leg == l) out.push_back(static_cast<int>(i));
    return out;
}

bool Diagram::has_rational_labels() const {
    if (!circles.empty()) return true;
    for (const auto& e : edges)
        if (e.label) return true;
    return false;
}

bool Diagram::has_bare_x_chord() const {
    for (const auto& e : edges) {
        const auto& u = vertices[static_cast<size_t>(e.v[0])];
        const auto& v = vertices[static_cast<size_t>(e.v[1])];
        if (!u.internal && !v.internal && u.leg.kind == LegKind::X &&
            v.leg.kind == LegKind::X)
            return true;
    }
    return false;
}

Diagram make_chord(LegLabel a, LegLabel b, std::optional<RatFunc> label) {
    Diagram d;
    int la = d.add_leg(a), lb = d.add_leg(b);
    d.add_edge(la, lb, std::move(label));
    return d;
}

Diagram make_chord_with_k_legs(LegLabel a, LegLabel b, int m) {
    Diagram d;
    int la = d.add_leg(a), lb = d.add_leg(b);
    if (m == 0) {
        d.add_edge(la, lb);
        return d;
    }
    std::vector<int> mid(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) mid[static_cast<size_t>(i)] = d.add_internal();
    std::vector<int> klegs(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) klegs[static_cast<size_t>(i)] = d.add_leg(k_label());
    std::vector<int> seg(static_cast<size_t>(m) + 1);
    seg[0] = d.add_edge(la, mid[0]);
    for (int i = 1; i < m; ++i)
        seg[static_cast<size_t>(i)] = d.add_edge(mid[static_cast<size_t>(i - 1)], mid[static_cast<size_t>(i)]);
    seg[static_cast<size_t>(m)] = d.add_edge(mid[static_cast<size_t>(m - 1)], lb);
    std::vector<int> legedge(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        legedge[static_cast<size_t>(i)] = d.add_edge(mid[static_cast<size_t>(i)], klegs[static_cast<size_t>(i)]);
    // cyclic order at each attachment point: (incoming segment, leg, outgoing segment)
    for (int i = 0; i < m; ++i)
        d.vertices[static_cast<size_t>(mid[static_cast<size_t>(i)])].inc = {
            {seg[static_cast<size_t>(i)], 1},
            {legedge[static_cast<size_t>(i)], 0},
            {seg[static_cast<size_t>(i) + 1], 0}};
    return d;
}

Diagram make_wheel(int m) {
    Diagram d;
    if (m == 0) {
        d.loops = 1;
        return d;
    }
    std::vector<int> hub(static_cast<size_t>(m)), legs(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) hub[static_cast<size_t>(i)] = d.add_internal();
    for (int i = 0; i < m; ++i) legs[static_cast<size_t>(i)] = d.add_leg(k_label());
    std::vector<int> cyc(static_cast<size_t>(m)), spoke(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        cyc[static_cast<size_t>(i)] = d.add_edge(hub[static_cast<size_t>(i)], hub[static_cast<size_t>((i + 1) % m)]);
    for (int i = 0; i < m; ++i)
        spoke[static_cast<size_t>(i)] = d.add_edge(hub[static_cast<size_t>(i)], legs[static_cast<size_t>(i)]);
    for (int i = 0; i < m; ++i) {
        int prev = cyc[static_cast<size_t>((i + m - 1) % m)];
        d.vertices[static_cast<size_t>(hub[static_cast<size_t>(i)])].inc = {
            {prev, 1}, {spoke[static_cast<size_t>(i)], 0}, {cyc[static_cast<size_t>(i)], 0}};
    }
    return d;
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    Diagram d = a;
    int voff = static_cast<int>(a.vertices.size());
    int eoff = static_cast<int>(a.edges.size());
    for (const auto& v : b.vertices) {
        Diagram::Vertex nv = v;
        for (auto& [e, end] : nv.inc) e += eoff;
        d.vertices.push_back(std::move(nv));
    }
    for (const auto& e : b.edges) {
        Diagram::Edge ne = e;
        ne.v[0] += voff;
        ne.v[1] += voff;
        d.edges.push_back(std::move(ne));
    }
    d.loops += b.loops;
    d.circles.insert(d.circles.end(), b.circles.begin(), b.circles.end());
    return d;
}

std::vector<Diagram> split_components(const Diagram& d) {
    const size_t n = d.vertices.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<size_t> stack = {s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (const auto& [e, end] : d.vertices[v].inc) {
                size_t u = static_cast<size_t>(d.edges[static_cast<size_t>(e)].v[1 - end]);
                if (comp[u] < 0) {
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
            }
        }
        ++ncomp;
    }
    std::vector<Diagram> out(static_cast<size_t>(ncomp));
    std::vector<std::map<int, int>> vmap(static_cast<size_t>(ncomp));
    for (size_t v = 0; v < n; ++v) {
        auto& g = out[static_cast<size_t>(comp[v])];
        vmap[static_cast<size_t>(comp[v])][static_cast<int>(v)] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(d.vertices[v]); // inc fixed below
    }
    std::vector<std::map<int, int>> emap(static_cast<size_t>(ncomp));
    for (size_t e = 0; e < d.edges.size(); ++e) {
        int c = comp[static_cast<size_t>(d.edges[e].v[0])];
        auto& g = out[static_cast<size_t>(c)];
        emap[static_cast<size_t>(c)][static_cast<int>(e)] = static_cast<int>(g.edges.size());
        Diagram::Edge ne = d.edges[e];
        ne.v[0] = vmap[static_cast<size_t>(c)][ne.v[0]];
        ne.v[1] = vmap[static_cast<size_t>(c)][ne.v[1]];
        g.edges.push_back(ne);
    }
    for (size_t v = 0; v < n; ++v) {
        int c = comp[v];
        auto& nv = out[static_cast<size_t>(c)].vertices[static_cast<size_t>(vmap[static_cast<size_t>(c)][static_cast<int>(v)])];
        for (auto& [e, end] : nv.inc) e = emap[static_cast<size_t>(c)][e];
    }
    for (int i = 0; i < d.loops; ++i) {
        Diagram g;
        g.loops = 1;
        out.push_back(g);
    }
    for (const auto& f : d.circles) {
        Diagram g;
        g.circles.push_back(f);
        out.push_back(g);
    }
    return out;
}

int euler_characteristic(const Diagram& d) {
    return static_cast<int>(d.vertices.size()) - static_cast<int>(d.edges.size());
}

bool is_connected(const Diagram& d) {
    auto parts = split_components(d);
    return parts.size() == 1;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

struct Segment {
    int v[2];
    std::optional<RatFunc> label; // read v[0] -> v[1]
};

} // namespace

Diagram glue_legs(const Diagram& d, const std::vector<GluePair>& pairs) {
    // Soup nodes: original vertices, then connector chain vertices and their
    // K-legs.  Glued leg vertices become two-valent pass-throughs.
    struct Node {
        bool internal = false;
        LegLabel leg;
        bool passthrough = false;
        bool from_original = false;
        int original_id = -1;
        std::vector<std::pair<int, int>> inc; // (segment, end), cyclic for internal
    };
    std::vector<Node> nodes;
    std::vector<Segment> segs;
    nodes.reserve(d.vertices.size());
    for (size_t v = 0; v < d.vertices.size(); ++v) {
        Node n;
        n.internal = d.vertices[v].internal;
        n.leg = d.vertices[v].leg;
        n.from_original = true;
        n.original_id = static_cast<int>(v);
        n.inc = d.vertices[v].inc;
        nodes.push_back(std::move(n));
    }
    for (const auto& e : d.edges) segs.push_back({{e.v[0], e.v[1]}, e.label});

    auto add_seg = [&](int u, int v, std::optional<RatFunc> label) {
        int s = static_cast<int>(segs.size());
        segs.push_back({{u, v}, std::move(label)});
        nodes[static_cast<size_t>(u)].inc.push_back({s, 0});
        nodes[static_cast<size_t>(v)].inc.push_back({s, 1});
        return s;
    };

    std::vector<bool> glued(nodes.size(), false);
    for (const auto& p : pairs) {
        auto check_leg = [&](int l) {
            if (l < 0 || static_cast<size_t>(l) >= d.vertices.size() ||
                d.vertices[static_cast<size_t>(l)].internal || glued[static_cast<size_t>(l)])
                throw Error("glue_legs: bad or reused leg vertex");
        };
        check_leg(p.leg_from);
        check_leg(p.leg_to);
        if (p.leg_from == p.leg_to) throw Error("glue_legs: cannot glue a leg to itself");
        if (p.label && p.k_legs > 0)
            throw Error("glue_legs: connector carries either a label or K-legs");
        glued[static_cast<size_t>(p.leg_from)] = glued[static_cast<size_t>(p.leg_to)] = true;
        if (p.k_legs == 0) {
            std::optional<RatFunc> lab = p.label;
            if (lab && lab->is_one()) lab.reset();
            add_seg(p.leg_from, p.leg_to, std::move(lab));
        } else {
            int prev = p.leg_from;
            std::vector<int> mids, legsegs, chain;
            for (int i = 0; i < p.k_legs; ++i) {
                Node mid;
                mid.internal = true;
                int mid_id = static_cast<int>(nodes.size());
                nodes.push_back(mid);
                glued.push_back(false);
                Node kn;
                kn.internal = false;
                kn.leg = k_label();
                int k_id = static_cast<int>(nodes.size());
                nodes.push_back(kn);
                glued.push_back(false);
                int s_in = add_seg(prev, mid_id, std::nullopt);
                int s_leg = add_seg(mid_id, k_id, std::nullopt);
                chain.push_back(s_in);
                mids.push_back(mid_id);
                legsegs.push_back(s_leg);
                prev = mid_id;
            }
            int s_out = add_seg(prev, p.leg_to, std::nullopt);
            chain.push_back(s_out);
            for (int i = 0; i < p.k_legs; ++i)
                nodes[static_cast<size_t>(mids[static_cast<size_t>(i)])].inc = {
                    {chain[static_cast<size_t>(i)], 1},
                    {legsegs[static_cast<size_t>(i)], 0},
                    {chain[static_cast<size_t>(i) + 1], 0}};
        }
    }
    for (size_t v = 0; v < nodes.size(); ++v) {
        nodes[v].passthrough = glued[v];
        if (glued[v] && nodes[v].inc.size() != 2)
            throw Error("glue_legs: glued leg is not two-valent");
    }

    // Rebuild: walk maximal chains between real (non-pass-through) nodes.
    Diagram out;
    std::vector<int> new_id(nodes.size(), -1);
    for (size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].passthrough) continue;
        new_id[v] = static_cast<int>(out.vertices.size());
        Diagram::Vertex nv;
        nv.internal = nodes[v].internal;
        nv.leg = nodes[v].leg;
        nv.inc.assign(nodes[v].inc.size(), {-1, -1});
        out.vertices.push_back(std::move(nv));
    }
    out.loops = d.loops;
    out.circles = d.circles;

    std::vector<bool> seg_done(segs.size(), false);
    auto walk = [&](int seg0, int end0) {
        // Walks from the (seg0, end0) side through pass-throughs.  Returns
        // the terminal (node, seg, end-at-node) and the accumulated label;
        // node -1 flags a chain that closes on itself.
        int s = seg0, arrive_end = 1 - end0;
        RatFunc acc = RatFunc::one();
        bool any = false;
        bool first = true;
        while (true) {
            if (!first && s == seg0 && 1 - arrive_end == end0)
                return std::tuple<int, int, int, RatFunc, bool>(-1, s, arrive_end, acc, any);
            first = false;
            seg_done[static_cast<size_t>(s)] = true;
            if (segs[static_cast<size_t>(s)].label) {
                any = true;
                // traversed from end (1-arrive_end) towards arrive_end
                acc = (arrive_end == 1) ? acc * *segs[static_cast<size_t>(s)].label
                                        : acc * segs[static_cast<size_t>(s)].label->bar();
            }
            int node = segs[static_cast<size_t>(s)].v[arrive_end];
            if (!nodes[static_cast<size_t>(node)].passthrough)
                return std::tuple<int, int, int, RatFunc, bool>(node, s, arrive_end, acc, any);
            // hop to the other segment at the pass-through
            const auto& inc = nodes[static_cast<size_t>(node)].inc;
            std::pair<int, int> next = inc[0];
            if (next.first == s && next.second == arrive_end) next = inc[1];
            s = next.first;
            arrive_end = 1 - next.second;
        }
    };

    for (size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].passthrough) continue;
        for (size_t slot = 0; slot < nodes[v].inc.size(); ++slot) {
            auto [s0, e0] = nodes[v].inc[slot];
            if (seg_done[static_cast<size_t>(s0)]) continue;
            auto [far_node, far_seg, far_end, acc, any] = walk(s0, e0);
            std::optional<RatFunc> label;
            if (any && !acc.is_one()) label = acc;
            int eid = static_cast<int>(out.edges.size());
            out.edges.push_back({{new_id[v], new_id[static_cast<size_t>(far_node)]}, label});
            out.vertices[static_cast<size_t>(new_id[v])].inc[slot] = {eid, 0};
            // locate the far slot
            const auto& finc = nodes[static_cast<size_t>(far_node)].inc;
            for (size_t fslot = 0; fslot < finc.size(); ++fslot)
                if (finc[fslot].first == far_seg && finc[fslot].second == far_end &&
                    out.vertices[static_cast<size_t>(new_id[static_cast<size_t>(far_node)])].inc[fslot].first < 0) {
                    out.vertices[static_cast<size_t>(new_id[static_cast<size_t>(far_node)])].inc[fslot] = {eid, 1};
                    break;
                }
        }
    }
    // Closed chains through pass-throughs only.
    for (size_t s = 0; s < segs.size(); ++s) {
        if (seg_done[s]) continue;
        auto [far_node, far_seg, far_end, acc, any] = walk(static_cast<int>(s), 0);
        (void)far_node;
        (void)far_seg;
        (void)far_end;
        if (!any || acc.is_one()) out.loops += 1;
        else out.circles.push_back(acc);
    }
    return out;
}

Diagram replace_edge_with_k_chain(const Diagram& d, int edge, int m) {
    Diagram out = d;
    auto& e = out.edges[static_cast<size_t>(edge)];
    e.label.reset();
    if (m == 0) return out;
    int u = e.v[0], v = e.v[1];
    std::vector<int> mid(static_cast<size_t>(m)), kl(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) mid[static_cast<size_t>(i)] = out.add_internal();
    for (int i = 0; i < m; ++i) kl[static_cast<size_t>(i)] = out.add_leg(k_label());
    // reuse edge id `edge` for the first segment u -> mid[0]
    out.edges[static_cast<size_t>(edge)].v[0] = u;
    out.edges[static_cast<size_t>(edge)].v[1] = mid[0];
    std::vector<int> seg(static_cast<size_t>(m) + 1);
    seg[0] = edge;
    for (int i = 1; i < m; ++i)
        seg[static_cast<size_t>(i)] = static_cast<int>(out.edges.size()),
        out.edges.push_back({{mid[static_cast<size_t>(i - 1)], mid[static_cast<size_t>(i)]}, std::nullopt});
    seg[static_cast<size_t>(m)] = static_cast<int>(out.edges.size());
    out.edges.push_back({{mid[static_cast<size_t>(m - 1)], v}, std::nullopt});
    std::vector<int> legedge(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        legedge[static_cast<size_t>(i)] = static_cast<int>(out.edges.size());
        out.edges.push_back({{mid[static_cast<size_t>(i)], kl[static_cast<size_t>(i)]}, std::nullopt});
        out.vertices[static_cast<size_t>(kl[static_cast<size_t>(i)])].inc = {{legedge[static_cast<size_t>(i)], 1}};
    }
    for (int i = 0; i < m; ++i)
        out.vertices[static_cast<size_t>(mid[static_cast<size_t>(i)])].inc = {
            {seg[static_cast<size_t>(i)], 1},
            {legedge[static_cast<size_t>(i)], 0},
            {seg[static_cast<size_t>(i) + 1], 0}};
    // u keeps its slot pointing at (edge, 0); v's slot must now point at the
    // final segment's end 1.
    for (auto& [eid, end] : out.vertices[static_cast<size_t>(v)].inc)
        if (eid == edge && end == 1) {
            eid = seg[static_cast<size_t>(m)];
            end = 1;
            break;
        }
    return out;
}

} // namespace loopline
