#include "curvetop/pls_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace curvetop {

const char* vertex_kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Regular: return "regular";
        case VertexKind::XCritical: return "x_critical";
        case VertexKind::RealSingular: return "real_singular";
        case VertexKind::ApparentLift: return "apparent_lift";
        default: return "sweep_regular";
    }
}

std::optional<VertexKind> vertex_kind_from_name(const std::string& s) {
    for (VertexKind k : {VertexKind::Regular, VertexKind::XCritical, VertexKind::RealSingular,
                         VertexKind::ApparentLift, VertexKind::SweepRegular})
        if (s == vertex_kind_name(k)) return k;
    return std::nullopt;
}

void PLSGraph::add_edge(int a, int b) {
    if (a == b) throw std::logic_error("PLSGraph: self-loop");
    if (a > b) std::swap(a, b);
    for (auto& e : edges)
        if (e.first == a && e.second == b) return; // keep edge set duplicate-free
    edges.emplace_back(a, b);
}

const PLSVertex* PLSGraph::find_vertex(int id) const {
    for (const PLSVertex& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

ComponentStats component_stats(const PLSGraph& g) {
    ComponentStats s;
    std::map<int, int> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i].id] = static_cast<int>(i);
    std::vector<int> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::map<int, int> degree;
    for (const PLSVertex& v : g.vertices) degree[v.id] = 0;
    for (auto& [a, b] : g.edges) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end() || ib == index.end()) throw std::logic_error("edge endpoint missing");
        parent[find(ia->second)] = find(ib->second);
        ++degree[a];
        ++degree[b];
    }
    std::map<int, bool> roots;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) roots[find(static_cast<int>(i))] = true;
    s.components = static_cast<int>(roots.size());
    s.cycle_rank = static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + s.components;
    for (auto& [id, d] : degree) s.degree_histogram[d] += 1;
    return s;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

void append_coord_json(std::ostringstream& os, const RealAlgebraicNumber& c) {
    if (c.is_point()) {
        os << "{\"rational\":\"" << rational_str(c.lo) << "\"}";
        return;
    }
    os << "{\"defining\":[";
    for (std::size_t i = 0; i < c.def.c.size(); ++i) {
        if (i) os << ",";
        os << "\"" << rational_str(c.def.c[i]) << "\"";
    }
    os << "],\"interval\":[\"" << rational_str(c.lo) << "\",\"" << rational_str(c.hi) << "\"]}";
}

std::string double_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string export_json(const PLSGraph& g) {
    std::ostringstream os;
    os << "{\"dimension\":" << g.dimension << ",\"vertices\":[";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const PLSVertex& v = g.vertices[i];
        if (i) os << ",";
        os << "{\"id\":" << v.id << ",\"kind\":\"" << vertex_kind_name(v.kind) << "\",\"exact\":[";
        for (std::size_t c = 0; c < v.coords.size(); ++c) {
            if (c) os << ",";
            append_coord_json(os, v.coords[c]);
        }
        os << "],\"approx\":[";
        for (std::size_t c = 0; c < v.coords.size(); ++c) {
            if (c) os << ",";
            os << double_str(approx_double(v.coords[c], 31));
        }
        os << "]}";
    }
    os << "],\"edges\":[";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i) os << ",";
        os << "[" << g.edges[i].first << "," << g.edges[i].second << "]";
    }
    os << "],\"certificates\":{";
    auto put_opt = [&](const char* name, const std::optional<bool>& v, bool trailing_comma) {
        os << "\"" << name << "\":";
        if (v.has_value()) os << (*v ? "true" : "false");
        else os << "null";
        if (trailing_comma) os << ",";
    };
    put_opt("pseudo_generic", g.certificates.pseudo_generic, true);
    put_opt("plane_generic", g.certificates.plane_generic, true);
    put_opt("space_generic", g.certificates.space_generic, true);
    os << "\"shears\":[";
    for (std::size_t i = 0; i < g.certificates.shears.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(g.certificates.shears[i]) << "\"";
    }
    os << "],\"notes\":[";
    for (std::size_t i = 0; i < g.certificates.notes.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(g.certificates.notes[i]) << "\"";
    }
    os << "]}}";
    return os.str();
}

std::string export_obj(const PLSGraph& g) {
    std::ostringstream os;
    std::map<int, std::size_t> line_of; // vertex id -> 1-based OBJ index
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const PLSVertex& v = g.vertices[i];
        os << "v";
        for (const RealAlgebraicNumber& c : v.coords) os << " " << double_str(approx_double(c, 31));
        if (g.dimension == 2) os << " 0";
        os << "\n";
        line_of[v.id] = i + 1;
    }
    for (auto& [a, b] : g.edges) os << "l " << line_of.at(a) << " " << line_of.at(b) << "\n";
    return os.str();
}

namespace {

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad rational: " + s);
    r.canonicalize();
    return r;
}

RealAlgebraicNumber coord_from_json(const nlohmann::json& j) {
    if (j.contains("rational")) return ran_from_rational(rational_from_string(j["rational"].get<std::string>()));
    std::vector<Rational> cs;
    for (const auto& c : j["defining"]) cs.push_back(rational_from_string(c.get<std::string>()));
    RealAlgebraicNumber out;
    out.def = UPoly<Rational>(std::move(cs));
    out.lo = rational_from_string(j["interval"][0].get<std::string>());
    out.hi = rational_from_string(j["interval"][1].get<std::string>());
    return out;
}

} // namespace

PLSGraph import_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PLSGraph g;
    g.dimension = j["dimension"].get<int>();
    for (const auto& vj : j["vertices"]) {
        PLSVertex v;
        v.id = vj["id"].get<int>();
        auto kind = vertex_kind_from_name(vj["kind"].get<std::string>());
        if (!kind) throw std::runtime_error("unknown vertex kind");
        v.kind = *kind;
        for (const auto& cj : vj["exact"]) v.coords.push_back(coord_from_json(cj));
        for (const auto& aj : vj["approx"]) v.approx.push_back(aj.get<double>());
        g.vertices.push_back(std::move(v));
    }
    for (const auto& ej : j["edges"]) g.add_edge(ej[0].get<int>(), ej[1].get<int>());
    const auto& certs = j["certificates"];
    auto get_opt = [&](const char* name) -> std::optional<bool> {
        if (!certs.contains(name) || certs[name].is_null()) return std::nullopt;
        return certs[name].get<bool>();
    };
    g.certificates.pseudo_generic = get_opt("pseudo_generic");
    g.certificates.plane_generic = get_opt("plane_generic");
    g.certificates.space_generic = get_opt("space_generic");
    if (certs.contains("shears"))
        for (const auto& s : certs["shears"]) g.certificates.shears.push_back(s.get<std::string>());
    if (certs.contains("notes"))
        for (const auto& s : certs["notes"]) g.certificates.notes.push_back(s.get<std::string>());
    return g;
}

} // namespace curvetop
