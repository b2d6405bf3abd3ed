#include "loopline/json_io.hpp"

#include <fstream>

#include "loopline/errors.hpp"

namespace loopline {

Json laurent_to_json(const LaurentPoly& p) {
    Json j = Json::object();
    for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = rat_to_string(c);
    return j;
}

LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly p;
    for (auto it = j.begin(); it != j.end(); ++it)
        p.set_coeff(std::stol(it.key()), rat_from_string(it.value().get<std::string>()));
    return p;
}

Json ratfunc_to_json(const RatFunc& f) {
    return Json{{"num", laurent_to_json(f.num())}, {"den", laurent_to_json(f.den())}};
}

RatFunc ratfunc_from_json(const Json& j) {
    return RatFunc(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

Json matrix_to_json(const LaurentMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.size(); ++j) row.push_back(laurent_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json ratfunc_matrix_to_json(const RatFuncMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.size(); ++j) row.push_back(ratfunc_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string leg_to_string(const LegLabel& l) { return l.to_string(); }

LegLabel leg_from_string(const std::string& s) {
    if (s == "k") return k_label();
    if (s.size() >= 2 && s[0] == 'x' && s[1] == '\'')
        return xprime_label(std::stoi(s.substr(2)));
    if (!s.empty() && s[0] == 'x') return x_label(std::stoi(s.substr(1)));
    throw MalformedR("bad leg label '" + s + "'");
}

} // namespace

Json diagram_to_json(const Diagram& d) {
    Json verts = Json::array();
    for (const auto& v : d.vertices) {
        Json jv;
        jv["kind"] = v.internal ? "internal" : "leg";
        if (!v.internal) jv["label"] = leg_to_string(v.leg);
        Json adj = Json::array();
        for (const auto& [e, end] : v.inc) adj.push_back(Json::array({e, end}));
        jv["adj"] = adj;
        verts.push_back(jv);
    }
    Json edges = Json::array();
    for (const auto& e : d.edges) {
        Json je;
        je["ends"] = Json::array({e.v[0], e.v[1]});
        if (e.label) je["label"] = ratfunc_to_json(*e.label);
        edges.push_back(je);
    }
    Json j;
    j["vertices"] = verts;
    j["edges"] = edges;
    if (d.loops) j["loops"] = d.loops;
    if (!d.circles.empty()) {
        Json cs = Json::array();
        for (const auto& f : d.circles) cs.push_back(ratfunc_to_json(f));
        j["circles"] = cs;
    }
    return j;
}

Diagram diagram_from_json(const Json& j) {
    Diagram d;
    for (const auto& jv : j.at("vertices")) {
        if (jv.at("kind") == "internal") d.add_internal();
        else d.add_leg(leg_from_string(jv.at("label").get<std::string>()));
    }
    for (const auto& je : j.at("edges")) {
        int u = je.at("ends").at(0).get<int>();
        int v = je.at("ends").at(1).get<int>();
        if (u < 0 || v < 0 || static_cast<size_t>(u) >= d.vertices.size() ||
            static_cast<size_t>(v) >= d.vertices.size())
            throw MalformedR("edge endpoint out of range");
        std::optional<RatFunc> label;
        if (je.contains("label")) label = ratfunc_from_json(je.at("label"));
        d.add_edge(u, v, std::move(label));
    }
    // explicit cyclic orders override the insertion order when present
    const auto& verts = j.at("vertices");
    for (size_t v = 0; v < d.vertices.size(); ++v) {
        const auto& jv = verts.at(v);
        if (!jv.contains("adj") || jv.at("adj").empty()) continue;
        std::vector<std::pair<int, int>> inc;
        for (const auto& ja : jv.at("adj"))
            inc.push_back({ja.at(0).get<int>(), ja.at(1).get<int>()});
        // sanity: must be a permutation of the derived incidences
        auto sorted_copy = [](std::vector<std::pair<int, int>> x) {
            std::sort(x.begin(), x.end());
            return x;
        };
        if (sorted_copy(inc) != sorted_copy(d.vertices[v].inc))
            throw MalformedR("vertex adjacency does not match the edge list");
        d.vertices[v].inc = std::move(inc);
    }
    if (j.contains("loops")) d.loops = j.at("loops").get<int>();
    if (j.contains("circles"))
        for (const auto& jc : j.at("circles")) d.circles.push_back(ratfunc_from_json(jc));
    for (const auto& v : d.vertices) {
        if (v.internal && v.inc.size() != 3)
            throw MalformedR("internal vertex is not trivalent");
        if (!v.internal && v.inc.size() != 1)
            throw MalformedR("leg vertex is not univalent");
    }
    return d;
}

Json series_to_json(const DiagramSeries& s) {
    Json arr = Json::array();
    for (const auto& [key, e] : s.terms())
        arr.push_back(Json{{"coeff", rat_to_string(e.coeff)}, {"diagram", diagram_to_json(e.rep)}});
    return arr;
}

DiagramSeries series_from_json(const Json& j, int canon_bound) {
    DiagramSeries s(canon_bound);
    for (const auto& rec : j)
        s.add(diagram_from_json(rec.at("diagram")), rat_from_string(rec.at("coeff").get<std::string>()));
    return s;
}

DiagramSeries load_r_file(const std::string& path, int canon_bound) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open R file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw MalformedR(std::string("R file parse error: ") + ex.what());
    }
    return series_from_json(j, canon_bound);
}

Json loop_expansion_to_json(const LoopExpansion& le) {
    Json j;
    j["alexander"] = laurent_to_json(le.alexander);
    j["det"] = laurent_to_json(le.raw_det);
    Json wheels = Json::array();
    for (size_t m = 0; m < le.wheel_coeffs.size(); ++m)
        wheels.push_back(Json{{"m", static_cast<int>(m) + 1},
                              {"coeff", rat_to_string(le.wheel_coeffs[m])}});
    j["wheels"] = wheels;
    Json loops = Json::array();
    for (const auto& [i, series] : le.loop_terms)
        loops.push_back(Json{{"eulerChi", -i}, {"diagrams", series_to_json(series)}});
    j["loops"] = loops;
    j["sigmaPlus"] = le.sigma_plus;
    j["sigmaMinus"] = le.sigma_minus;
    j["normalizationLeading"] = rat_to_string(le.normalization_leading);
    if (le.lmo_degree > 0) j["lmoDegree"] = le.lmo_degree;
    j["normalizationNote"] =
        "surgery denominators carried via leading terms only; negative-Euler "
        "corrections from the unknot normalization are not included";
    return j;
}

} // namespace loopline
