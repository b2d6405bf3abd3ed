#include "loopline/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "loopline/errors.hpp"

namespace loopline {

void SolidTorusPresentation::validate() const {
    std::map<int, std::pair<int, int>> seen; // id -> (over count, under count)
    for (const auto& strand : strands)
        for (const auto& ev : strand)
            if (const auto* ce = std::get_if<CrossingEnd>(&ev)) {
                if (!crossing_sign.count(ce->id))
                    throw DanglingCrossing("crossing " + std::to_string(ce->id) +
                                           " used but not declared");
                auto& [over, under] = seen[ce->id];
                (ce->over ? over : under)++;
            }
    for (const auto& [id, sign] : crossing_sign) {
        auto it = seen.find(id);
        if (it == seen.end() || it->second.first != 1 || it->second.second != 1)
            throw DanglingCrossing("crossing " + std::to_string(id) +
                                   " must occur exactly once over and once under");
    }
}

namespace {

[[noreturn]] void syntax(const std::string& msg, int line, int col) {
    throw SyntaxError(msg, line, col);
}

} // namespace

SolidTorusPresentation parse_presentation(const std::string& text) {
    SolidTorusPresentation p;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_strands = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "strands") {
            long mu = -1;
            if (!(ls >> mu) || mu < 0) syntax("expected strand count", lineno, 1);
            p.mu = static_cast<size_t>(mu);
            p.strands.assign(p.mu, {});
            have_strands = true;
        } else if (word == "crossing") {
            if (!have_strands) syntax("'strands' must come first", lineno, 1);
            int id;
            std::string signtok;
            if (!(ls >> id >> signtok)) syntax("expected 'crossing <id> sign=<+1|-1>'", lineno, 1);
            int sign = 0;
            if (signtok == "sign=+1" || signtok == "sign=1") sign = 1;
            else if (signtok == "sign=-1") sign = -1;
            else syntax("bad sign token '" + signtok + "'", lineno, 1);
            if (p.crossing_sign.count(id))
                syntax("crossing " + std::to_string(id) + " declared twice", lineno, 1);
            p.crossing_sign[id] = sign;
        } else if (word == "strand") {
            if (!have_strands) syntax("'strands' must come first", lineno, 1);
            std::string ktok;
            if (!(ls >> ktok)) syntax("expected strand index", lineno, 1);
            if (!ktok.empty() && ktok.back() == ':') ktok.pop_back();
            long k = 0;
            try { k = std::stol(ktok); } catch (...) { syntax("bad strand index", lineno, 1); }
            if (k < 1 || static_cast<size_t>(k) > p.mu)
                syntax("strand index out of range", lineno, 1);
            auto& events = p.strands[static_cast<size_t>(k - 1)];
            std::string ev;
            int col = 0;
            while (ls >> ev) {
                ++col;
                if (ev == ":") continue;
                if (ev == "D+") events.push_back(DiscPass{+1});
                else if (ev == "D-") events.push_back(DiscPass{-1});
                else if (ev.rfind("O:", 0) == 0 || ev.rfind("U:", 0) == 0) {
                    int id = 0;
                    try { id = std::stoi(ev.substr(2)); }
                    catch (...) { syntax("bad crossing id in '" + ev + "'", lineno, col); }
                    events.push_back(CrossingEnd{id, ev[0] == 'O'});
                } else {
                    syntax("unknown event '" + ev + "'", lineno, col);
                }
            }
        } else {
            syntax("unknown directive '" + word + "'", lineno, 1);
        }
    }
    if (!have_strands) syntax("missing 'strands' line", lineno == 0 ? 1 : lineno, 1);
    p.validate();
    return p;
}

SolidTorusPresentation parse_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open presentation file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string presentation_to_string(const SolidTorusPresentation& p) {
    std::ostringstream os;
    os << "strands " << p.mu << "\n";
    for (const auto& [id, sign] : p.crossing_sign)
        os << "crossing " << id << " sign=" << (sign > 0 ? "+1" : "-1") << "\n";
    for (size_t i = 0; i < p.mu; ++i) {
        os << "strand " << i + 1 << ":";
        for (const auto& ev : p.strands[i]) {
            if (const auto* d = std::get_if<DiscPass>(&ev))
                os << (d->direction > 0 ? " D+" : " D-");
            else {
                const auto& ce = std::get<CrossingEnd>(ev);
                os << (ce.over ? " O:" : " U:") << ce.id;
            }
        }
        os << "\n";
    }
    return os.str();
}

std::pair<CrossingSite, CrossingSite> locate_crossing(const SolidTorusPresentation& p, int id) {
    std::vector<CrossingSite> hits;
    for (size_t s = 0; s < p.strands.size(); ++s)
        for (size_t e = 0; e < p.strands[s].size(); ++e)
            if (const auto* ce = std::get_if<CrossingEnd>(&p.strands[s][e]))
                if (ce->id == id) hits.push_back({s, e});
    if (hits.size() != 2)
        throw UnknownCrossing("crossing " + std::to_string(id) + " not found twice");
    return {hits[0], hits[1]};
}

namespace {

long disc_sum_before(const std::vector<Event>& events, size_t index) {
    long s = 0;
    for (size_t e = 0; e < index; ++e)
        if (const auto* d = std::get_if<DiscPass>(&events[e])) s += d->direction;
    return s;
}

long disc_sum_after(const std::vector<Event>& events, size_t index) {
    long s = 0;
    for (size_t e = index + 1; e < events.size(); ++e)
        if (const auto* d = std::get_if<DiscPass>(&events[e])) s += d->direction;
    return s;
}

} // namespace

long winding_exponent(const SolidTorusPresentation& p, int crossing_id, bool from_first) {
    auto [first, second] = locate_crossing(p, crossing_id);
    CrossingSite start = first, finish = second;
    if (first.strand == second.strand) {
        // Self-crossing: switch strands at the first encounter, so the path
        // runs base -> first site, then resumes at the second site -> top.
        if (!from_first) std::swap(start, finish);
    } else if (!from_first) {
        std::swap(start, finish);
    }
    return disc_sum_before(p.strands[start.strand], start.event_index) +
           disc_sum_after(p.strands[finish.strand], finish.event_index);
}

LaurentMatrix winding_matrix(const SolidTorusPresentation& p) {
    LaurentMatrix w(p.mu);
    for (const auto& [id, sign] : p.crossing_sign) {
        auto [a, b] = locate_crossing(p, id);
        Rat half = ratio(sign, 2);
        if (a.strand == b.strand) {
            long eps = winding_exponent(p, id, true);
            LaurentPoly term = LaurentPoly::monomial(half, eps) + LaurentPoly::monomial(half, -eps);
            w.at(a.strand, a.strand) += term;
        } else {
            long eps_ij = winding_exponent(p, id, true);   // travel in along a, out along b
            long eps_ji = winding_exponent(p, id, false);  // travel in along b, out along a
            w.at(a.strand, b.strand) += LaurentPoly::monomial(half, eps_ij);
            w.at(b.strand, a.strand) += LaurentPoly::monomial(half, eps_ji);
        }
    }
    return w;
}

std::vector<std::vector<Rat>> linking_matrix(const SolidTorusPresentation& p) {
    return winding_matrix(p).eval_at_one();
}

LaurentMatrix cover_linking_oracle(const SolidTorusPresentation& p) {
    // Arc levels: walk each strand keeping the cumulative disc-pass sum;
    // record the level at each crossing end.
    std::map<int, std::vector<std::pair<size_t, long>>> ends; // id -> [(strand, level)]
    for (size_t s = 0; s < p.strands.size(); ++s) {
        long level = 0;
        for (const auto& ev : p.strands[s]) {
            if (const auto* d = std::get_if<DiscPass>(&ev)) level += d->direction;
            else ends[std::get<CrossingEnd>(ev).id].push_back({s, level});
        }
        if (level != 0)
            throw NotSpecial("strand " + std::to_string(s + 1) +
                             " has net disc passage " + std::to_string(level));
    }
    LaurentMatrix w(p.mu);
    for (const auto& [id, sites] : ends) {
        if (sites.size() != 2) throw DanglingCrossing("crossing " + std::to_string(id));
        auto [si, a] = sites[0];
        auto [sj, b] = sites[1];
        Rat half = ratio(p.crossing_sign.at(id), 2);
        w.at(si, sj) += LaurentPoly::monomial(half, a - b);
        w.at(sj, si) += LaurentPoly::monomial(half, b - a);
    }
    return w;
}

SpecialnessReport validate_special(const SolidTorusPresentation& p) {
    SpecialnessReport r;
    r.net_disc_passage.reserve(p.mu);
    for (const auto& strand : p.strands) {
        long s = 0;
        for (const auto& ev : strand)
            if (const auto* d = std::get_if<DiscPass>(&ev)) s += d->direction;
        r.net_disc_passage.push_back(s);
    }
    r.linking = linking_matrix(p);
    r.linking_integral = true;
    for (const auto& row : r.linking)
        for (const auto& v : row)
            if (v.get_den() != 1) r.linking_integral = false;
    LaurentMatrix lk(p.mu);
    for (size_t i = 0; i < p.mu; ++i)
        for (size_t j = 0; j < p.mu; ++j) lk.at(i, j) = LaurentPoly(r.linking[i][j]);
    r.det_lk = det_laurent(lk).eval_at_one();
    bool net_zero = std::all_of(r.net_disc_passage.begin(), r.net_disc_passage.end(),
                                [](long v) { return v == 0; });
    r.is_special = net_zero && r.linking_integral && (r.det_lk == 1 || r.det_lk == -1);
    return r;
}

// ---------------------------------------------------------------------------
// Moves

namespace {

int fresh_crossing_id(const SolidTorusPresentation& p) {
    int id = 0;
    if (!p.crossing_sign.empty()) id = p.crossing_sign.rbegin()->first;
    return id + 1;
}

void erase_events(std::vector<Event>& events, std::vector<size_t> idx) {
    std::sort(idx.rbegin(), idx.rend());
    for (size_t i : idx) events.erase(events.begin() + static_cast<long>(i));
}

} // namespace

SolidTorusPresentation apply_move(const SolidTorusPresentation& p, const Move& move) {
    SolidTorusPresentation q = p;
    if (const auto* m = std::get_if<MoveCancelPair>(&move)) {
        if (m->strand >= q.mu) throw IllegalMove("cancel pair: bad strand");
        auto& events = q.strands[m->strand];
        if (m->insert) {
            if (m->position > events.size()) throw IllegalMove("cancel pair: bad position");
            int first = m->plus_first ? +1 : -1;
            events.insert(events.begin() + static_cast<long>(m->position),
                          {DiscPass{first}, DiscPass{-first}});
        } else {
            if (m->position + 1 >= events.size()) throw IllegalMove("cancel pair: bad position");
            const auto* d1 = std::get_if<DiscPass>(&events[m->position]);
            const auto* d2 = std::get_if<DiscPass>(&events[m->position + 1]);
            if (!d1 || !d2 || d1->direction + d2->direction != 0)
                throw IllegalMove("cancel pair: events are not an adjacent canceling pair");
            erase_events(events, {m->position, m->position + 1});
        }
        return q;
    }
    if (const auto* m = std::get_if<MoveR2>(&move)) {
        if (m->insert) {
            if (m->strand_over >= q.mu || m->strand_under >= q.mu)
                throw IllegalMove("R2: bad strand");
            int ida = fresh_crossing_id(q);
            int idb = ida + 1;
            q.crossing_sign[ida] = m->sign_first;
            q.crossing_sign[idb] = -m->sign_first;
            auto& over = q.strands[m->strand_over];
            auto& under = q.strands[m->strand_under];
            if (m->pos_over > over.size()) throw IllegalMove("R2: bad over position");
            over.insert(over.begin() + static_cast<long>(m->pos_over),
                        {CrossingEnd{ida, true}, CrossingEnd{idb, true}});
            size_t pos_under = m->pos_under;
            if (m->strand_under == m->strand_over && pos_under >= m->pos_over) pos_under += 2;
            if (pos_under > q.strands[m->strand_under].size()) throw IllegalMove("R2: bad under position");
            under.insert(under.begin() + static_cast<long>(pos_under),
                         {CrossingEnd{ida, false}, CrossingEnd{idb, false}});
            return q;
        }
        // delete: the two crossings must be adjacent on both strands, carry
        // opposite signs, and pair an over-strand with an under-strand.
        int ida = m->id_a, idb = m->id_b;
        if (!q.crossing_sign.count(ida) || !q.crossing_sign.count(idb))
            throw IllegalMove("R2 delete: unknown crossing");
        if (q.crossing_sign[ida] + q.crossing_sign[idb] != 0)
            throw IllegalMove("R2 delete: signs do not cancel");
        auto [a1, a2] = locate_crossing(q, ida);
        auto [b1, b2] = locate_crossing(q, idb);
        auto adjacent = [&](const CrossingSite& x, const CrossingSite& y) {
            return x.strand == y.strand &&
                   (x.event_index + 1 == y.event_index || y.event_index + 1 == x.event_index);
        };
        // match each end of ida with an adjacent end of idb on the same strand
        CrossingSite pa1 = a1, pa2 = a2, pb1 = b1, pb2 = b2;
        if (!(adjacent(pa1, pb1) && adjacent(pa2, pb2))) {
            std::swap(pb1, pb2);
            if (!(adjacent(pa1, pb1) && adjacent(pa2, pb2)))
                throw IllegalMove("R2 delete: crossing ends are not adjacent pairs");
        }
        auto role = [&](const CrossingSite& s) {
            return std::get<CrossingEnd>(q.strands[s.strand][s.event_index]).over;
        };
        if (role(pa1) != role(pb1) || role(pa2) != role(pb2))
            throw IllegalMove("R2 delete: mismatched over/under pattern");
        std::map<size_t, std::vector<size_t>> to_erase;
        for (const auto& s : {pa1, pa2, pb1, pb2}) to_erase[s.strand].push_back(s.event_index);
        for (auto& [strand, idx] : to_erase) erase_events(q.strands[strand], idx);
        q.crossing_sign.erase(ida);
        q.crossing_sign.erase(idb);
        return q;
    }
    const auto& m = std::get<MoveR3>(move);
    // Each pair of the three crossings shares one strand segment where their
    // ends are adjacent; swap every adjacent pair.
    auto [p1, p2] = locate_crossing(q, m.id_ab);
    auto [p3, p4] = locate_crossing(q, m.id_ac);
    auto [p5, p6] = locate_crossing(q, m.id_bc);
    std::vector<CrossingSite> sites = {p1, p2, p3, p4, p5, p6};
    std::vector<std::pair<size_t, size_t>> swaps; // (strand, lower index)
    std::vector<bool> used(6, false);
    for (size_t i = 0; i < 6; ++i) {
        if (used[i]) continue;
        for (size_t j = i + 1; j < 6; ++j) {
            if (used[j]) continue;
            if (sites[i].strand == sites[j].strand &&
                (sites[i].event_index + 1 == sites[j].event_index ||
                 sites[j].event_index + 1 == sites[i].event_index)) {
                used[i] = used[j] = true;
                swaps.push_back({sites[i].strand,
                                 std::min(sites[i].event_index, sites[j].event_index)});
                break;
            }
        }
    }
    if (swaps.size() != 3 || !std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
        throw IllegalMove("R3: crossing ends are not pairwise adjacent on three segments");
    for (const auto& [strand, lo] : swaps)
        std::swap(q.strands[strand][lo], q.strands[strand][lo + 1]);
    return q;
}

} // namespace loopline
