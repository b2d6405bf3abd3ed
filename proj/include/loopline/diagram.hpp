#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopline/ratfunc.hpp"

namespace loopline {

enum class LegKind : uint8_t { X = 0, XPrime = 1, K = 2 };

struct LegLabel {
    LegKind kind = LegKind::K;
    int index = 0; // 1-based strand index for X / XPrime, 0 for K
    bool operator==(const LegLabel&) const = default;
    auto operator<=>(const LegLabel&) const = default;
    std::string to_string() const;
};

inline LegLabel x_label(int i) { return {LegKind::X, i}; }
inline LegLabel xprime_label(int i) { return {LegKind::XPrime, i}; }
inline LegLabel k_label() { return {LegKind::K, 0}; }

/// A Jacobi diagram: a multigraph with oriented trivalent vertices and
/// labelled univalent legs.  Edges may carry a rational-function label, read
/// along the stored direction ends[0] -> ends[1]; reversing an edge bars its
/// label.  Closed circles with no vertex are tracked separately: `loops`
/// counts unlabelled ones, `circles` stores labelled ones.
struct Diagram {
    struct Vertex {
        bool internal = true;
        LegLabel leg;                             // meaningful when !internal
        std::vector<std::pair<int, int>> inc;     // (edge id, end) in cyclic order
    };
    struct Edge {
        int v[2] = {-1, -1};
        std::optional<RatFunc> label;             // directed v[0] -> v[1]
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    int loops = 0;
    std::vector<RatFunc> circles;

    int add_leg(LegLabel l) {
        vertices.push_back({false, l, {}});
        return static_cast<int>(vertices.size()) - 1;
    }
    int add_internal() {
        vertices.push_back({true, {}, {}});
        return static_cast<int>(vertices.size()) - 1;
    }
    /// Appends the new edge's half-edges to both endpoint incidence lists;
    /// callers building oriented vertices fix the cyclic order afterwards
    /// when the append order is not already the intended one.
    int add_edge(int u, int v, std::optional<RatFunc> label = std::nullopt) {
        int e = static_cast<int>(edges.size());
        edges.push_back({{u, v}, std::move(label)});
        vertices[static_cast<size_t>(u)].inc.push_back({e, 0});
        vertices[static_cast<size_t>(v)].inc.push_back({e, 1});
        return e;
    }

    bool empty() const {
        return vertices.empty() && loops == 0 && circles.empty();
    }
    int grade2() const { // twice the grade: the number of trivalent vertices
        int g = 0;
        for (const auto& v : vertices) g += v.internal ? 1 : 0;
        return g;
    }
    int count_legs(LegLabel l) const {
        int c = 0;
        for (const auto& v : vertices) c += (!v.internal && v.leg == l) ? 1 : 0;
        return c;
    }
    int max_x_leg_count() const;
    int count_k_legs() const { return count_legs(k_label()); }
    std::vector<int> legs_with_label(LegLabel l) const;
    bool has_rational_labels() const;

    /// A component that is a single labelled or unlabelled edge joining two
    /// X-legs (a bare chord) disqualifies a series from being X-substantial.
    bool has_bare_x_chord() const;
};

/// chord: leg(a) --label--> leg(b)
Diagram make_chord(LegLabel a, LegLabel b, std::optional<RatFunc> label = std::nullopt);
/// chord whose edge carries m K-legs, in order along the edge direction
Diagram make_chord_with_k_legs(LegLabel a, LegLabel b, int m);
/// wheel with m spokes: a cycle of m oriented trivalent vertices, each
/// carrying one K-leg; m = 0 gives the isolated loop
Diagram make_wheel(int m);

Diagram disjoint_union(const Diagram& a, const Diagram& b);

/// Connected components (loops and labelled circles become their own
/// components).
std::vector<Diagram> split_components(const Diagram& d);
/// Euler characteristic (vertices minus edges; circles and loops give 0).
int euler_characteristic(const Diagram& d);
bool is_connected(const Diagram& d);

/// One glued pair: two leg vertex ids plus the connector joining them.  The
/// connector runs from `leg_from` to `leg_to`; it may carry a rational label
/// or a chain of K-legs (not both).
struct GluePair {
    int leg_from = -1;
    int leg_to = -1;
    std::optional<RatFunc> label;
    int k_legs = 0;
};

/// Removes the matched legs, joins their stems through the connectors, and
/// merges label chains multiplicatively across the resulting two-valent
/// junctions.  Closed chains become loops / labelled circles.
Diagram glue_legs(const Diagram& d, const std::vector<GluePair>& pairs);

/// For every labelled edge, the replacement of the label by a chain of
/// K-legs happens in thr_d (series module); this helper builds one such
/// replacement: edge `e` rebuilt with m K-legs along its direction, label
/// dropped.
Diagram replace_edge_with_k_chain(const Diagram& d, int edge, int m);

// ---------------------------------------------------------------------------
// Canonical form

struct CanonicalForm {
    std::string key;
    int sign = 1;     // diagram = sign * canonical representative
    bool zero = false; // identified with its own negative via AS
};

/// Canonical form under graph isomorphism respecting leg labels, edge labels
/// up to OR (reversal + bar), and vertex orientations up to AS sign flips.
/// Throws TooLarge past max_vertices.
CanonicalForm canonical_form(const Diagram& d, int max_vertices = 24);

/// Brute-force isomorphism search used as the test oracle: returns +1/-1 if
/// b = sign * a (respecting all structure), 0 if they are not isomorphic and
/// 2 if isomorphic with both signs (the AS-zero case).
int brute_force_iso(const Diagram& a, const Diagram& b);

} // namespace loopline
