#include "loopline/glue.hpp"

#include <algorithm>
#include <deque>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "loopline/errors.hpp"

namespace loopline {

std::vector<std::vector<std::pair<int, int>>> perfect_matchings(const std::vector<int>& items) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (items.size() % 2 != 0) return out;
    if (items.empty()) {
        out.push_back({});
        return out;
    }
    std::vector<int> rest(items.begin() + 1, items.end());
    for (size_t i = 0; i < rest.size(); ++i) {
        std::vector<int> remaining;
        for (size_t j = 0; j < rest.size(); ++j)
            if (j != i) remaining.push_back(rest[j]);
        for (auto& sub : perfect_matchings(remaining)) {
            sub.insert(sub.begin(), {items[0], rest[i]});
            out.push_back(std::move(sub));
        }
    }
    return out;
}

namespace {

std::vector<int> designated_legs(const Diagram& d, const std::set<LegLabel>& designated) {
    std::vector<int> legs;
    for (size_t v = 0; v < d.vertices.size(); ++v)
        if (!d.vertices[v].internal && designated.count(d.vertices[v].leg))
            legs.push_back(static_cast<int>(v));
    return legs;
}

GluePair oriented_pair(const Diagram& d, int va, int vb, const RatFuncMatrix& weights) {
    int i = d.vertices[static_cast<size_t>(va)].leg.index;
    int j = d.vertices[static_cast<size_t>(vb)].leg.index;
    if (i > j) {
        std::swap(va, vb);
        std::swap(i, j);
    }
    GluePair p;
    p.leg_from = va;
    p.leg_to = vb;
    RatFunc w = weights.at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1));
    if (!w.is_one()) p.label = w;
    return p;
}

// Shared driver: enumerate matchings of the designated legs of each term and
// hand every matching to `emit`.
template <typename Emit>
void glue_driver_serial(const DiagramSeries& r, const std::set<LegLabel>& designated,
                        Emit&& emit, DiagramSeries& out) {
    for (const auto& [key, e] : r.terms()) {
        std::vector<int> legs = designated_legs(e.rep, designated);
        if (legs.size() % 2 != 0) continue;
        auto matchings = perfect_matchings(legs);
        for (const auto& m : matchings) emit(e.rep, e.coeff, m, out);
    }
}

template <typename Emit>
void glue_driver_parallel(const DiagramSeries& r, const std::set<LegLabel>& designated,
                          Emit&& emit, DiagramSeries& out) {
#ifndef _OPENMP
    glue_driver_serial(r, designated, std::forward<Emit>(emit), out);
#else
    struct Job {
        const Diagram* d;
        const Rat* coeff;
        std::vector<std::pair<int, int>> matching;
    };
    std::vector<Job> jobs;
    for (const auto& [key, e] : r.terms()) {
        std::vector<int> legs = designated_legs(e.rep, designated);
        if (legs.size() % 2 != 0) continue;
        for (auto& m : perfect_matchings(legs)) jobs.push_back({&e.rep, &e.coeff, std::move(m)});
    }
    std::vector<DiagramSeries> locals;
#pragma omp parallel
    {
#pragma omp single
        locals.assign(static_cast<size_t>(omp_get_num_threads()), DiagramSeries(out.canon_bound()));
#pragma omp barrier
        DiagramSeries& mine = locals[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic)
        for (long idx = 0; idx < static_cast<long>(jobs.size()); ++idx)
            emit(*jobs[static_cast<size_t>(idx)].d, *jobs[static_cast<size_t>(idx)].coeff,
                 jobs[static_cast<size_t>(idx)].matching, mine);
    }
    // exact rational accumulation: merge order cannot change the result
    for (const auto& l : locals) out.add_scaled(l, Rat(1));
#endif
}

struct RatFuncEmitter {
    const RatFuncMatrix& weights;
    const Trunc& trunc;
    void operator()(const Diagram& d, const Rat& coeff,
                    const std::vector<std::pair<int, int>>& matching, DiagramSeries& out) const {
        std::vector<GluePair> pairs;
        pairs.reserve(matching.size());
        for (const auto& [a, b] : matching) {
            GluePair p = oriented_pair(d, a, b, weights);
            if (p.label && p.label->is_zero()) return; // zero weight kills the matching
            pairs.push_back(std::move(p));
        }
        Diagram g = glue_legs(d, pairs);
        if (trunc.admits(g)) out.add(g, coeff);
    }
};

struct SeriesEmitter {
    const std::vector<std::vector<PowerSeries>>& weights;
    const Trunc& trunc;

    void expand(const Diagram& d, const Rat& coeff,
                const std::vector<std::pair<int, int>>& matching, size_t idx,
                std::vector<GluePair>& pairs, int legs_left, DiagramSeries& out) const {
        if (idx == matching.size()) {
            Diagram g = glue_legs(d, pairs);
            if (trunc.admits(g)) out.add(g, coeff);
            return;
        }
        auto [va, vb] = matching[idx];
        int i = d.vertices[static_cast<size_t>(va)].leg.index;
        int j = d.vertices[static_cast<size_t>(vb)].leg.index;
        if (i > j) {
            std::swap(va, vb);
            std::swap(i, j);
        }
        const PowerSeries& w = weights[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
        for (int m = 0; m <= std::min(legs_left, w.order()); ++m) {
            if (w.coeff(m) == 0) continue;
            GluePair p;
            p.leg_from = va;
            p.leg_to = vb;
            p.k_legs = m;
            pairs.push_back(p);
            expand(d, coeff * w.coeff(m), matching, idx + 1, pairs, legs_left - m, out);
            pairs.pop_back();
        }
    }

    void operator()(const Diagram& d, const Rat& coeff,
                    const std::vector<std::pair<int, int>>& matching, DiagramSeries& out) const {
        std::vector<GluePair> pairs;
        int budget = trunc.max_k_legs != INT_MAX
                         ? trunc.max_k_legs - d.count_k_legs()
                         : (trunc.max_grade2 != INT_MAX ? trunc.max_grade2 : 1 << 20);
        expand(d, coeff, matching, 0, pairs, std::max(budget, 0), out);
    }
};

} // namespace

DiagramSeries pair_glue(const RatFuncMatrix& weights, const DiagramSeries& r,
                        const std::set<LegLabel>& designated, const Trunc& t) {
    DiagramSeries out(r.canon_bound());
    glue_driver_serial(r, designated, RatFuncEmitter{weights, t}, out);
    return out;
}

DiagramSeries pair_glue_parallel(const RatFuncMatrix& weights, const DiagramSeries& r,
                                 const std::set<LegLabel>& designated, const Trunc& t) {
    DiagramSeries out(r.canon_bound());
    glue_driver_parallel(r, designated, RatFuncEmitter{weights, t}, out);
    return out;
}

DiagramSeries pair_glue_series(const std::vector<std::vector<PowerSeries>>& weights,
                               const DiagramSeries& r, const std::set<LegLabel>& designated,
                               const Trunc& t) {
    DiagramSeries out(r.canon_bound());
    glue_driver_serial(r, designated, SeriesEmitter{weights, t}, out);
    return out;
}

DiagramSeries pair_glue_series_parallel(const std::vector<std::vector<PowerSeries>>& weights,
                                        const DiagramSeries& r,
                                        const std::set<LegLabel>& designated, const Trunc& t) {
    DiagramSeries out(r.canon_bound());
    glue_driver_parallel(r, designated, SeriesEmitter{weights, t}, out);
    return out;
}

std::vector<int> x_variables_of(const DiagramSeries& f) {
    std::set<int> vars;
    for (const auto& [key, e] : f.terms())
        for (const auto& v : e.rep.vertices)
            if (!v.internal && v.leg.kind == LegKind::X) vars.insert(v.leg.index);
    return {vars.begin(), vars.end()};
}

namespace {

struct LmoJob {
    const Diagram* d;
    Rat coeff;
    std::vector<std::vector<std::pair<int, int>>> choice; // one matching per variable
};

DiagramSeries lmo_run(const DiagramSeries& f, const std::vector<int>& x_vars, int n,
                      const Trunc& t, bool parallel) {
    Trunc cap = t;
    cap.max_grade2 = std::min(cap.max_grade2, 2 * n);
    DiagramSeries out(f.canon_bound());
    const Rat loop_factor(-2 * n);

    struct Combo {
        const Diagram* d;
        const Rat* coeff;
        std::vector<const std::vector<std::pair<int, int>>*> matchings;
    };
    std::deque<std::vector<std::vector<std::pair<int, int>>>> matching_store;
    std::vector<Combo> combos;

    for (const auto& [key, e] : f.terms()) {
        bool ok = true;
        std::vector<std::vector<int>> legs_per_var;
        for (int xv : x_vars) {
            auto legs = e.rep.legs_with_label(x_label(xv));
            if (static_cast<int>(legs.size()) != 2 * n) {
                ok = false;
                break;
            }
            legs_per_var.push_back(std::move(legs));
        }
        if (!ok) continue;
        // per-variable matchings, then the cartesian product
        std::vector<size_t> firsts;
        for (auto& legs : legs_per_var) {
            matching_store.push_back(perfect_matchings(legs));
            firsts.push_back(matching_store.size() - 1);
        }
        std::vector<size_t> idx(legs_per_var.size(), 0);
        while (true) {
            Combo c;
            c.d = &e.rep;
            c.coeff = &e.coeff;
            for (size_t v = 0; v < idx.size(); ++v)
                c.matchings.push_back(&matching_store[firsts[v]][idx[v]]);
            combos.push_back(std::move(c));
            size_t pos = 0;
            while (pos < idx.size()) {
                if (++idx[pos] < matching_store[firsts[pos]].size()) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
        }
    }

    auto emit_combo = [&](const Combo& c, DiagramSeries& sink) {
        std::vector<GluePair> pairs;
        for (const auto* m : c.matchings)
            for (const auto& [a, b] : *m) pairs.push_back(GluePair{a, b, std::nullopt, 0});
        Diagram g = pairs.empty() ? *c.d : glue_legs(*c.d, pairs);
        Rat coeff = *c.coeff;
        if (g.loops > 0) {
            Rat f2(1);
            for (int i = 0; i < g.loops; ++i) f2 *= loop_factor;
            coeff *= f2;
            g.loops = 0;
        }
        if (cap.admits(g)) sink.add(g, coeff);
    };

    if (!parallel) {
        for (const auto& c : combos) emit_combo(c, out);
        return out;
    }
#ifdef _OPENMP
    std::vector<DiagramSeries> locals;
#pragma omp parallel
    {
#pragma omp single
        locals.assign(static_cast<size_t>(omp_get_num_threads()), DiagramSeries(f.canon_bound()));
#pragma omp barrier
        DiagramSeries& mine = locals[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(combos.size()); ++i)
            emit_combo(combos[static_cast<size_t>(i)], mine);
    }
    for (const auto& l : locals) out.add_scaled(l, Rat(1));
#else
    for (const auto& c : combos) emit_combo(c, out);
#endif
    return out;
}

} // namespace

DiagramSeries lmo_integrate_n(const DiagramSeries& f, const std::vector<int>& x_vars, int n,
                              const Trunc& t) {
    return lmo_run(f, x_vars, n, t, false);
}

DiagramSeries lmo_integrate_n_parallel(const DiagramSeries& f, const std::vector<int>& x_vars,
                                       int n, const Trunc& t) {
    return lmo_run(f, x_vars, n, t, true);
}

} // namespace loopline
