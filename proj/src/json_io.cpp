#include "mg/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mg::io {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw std::invalid_argument("expected integer or \"p/q\" string, got " + j.dump());
}

json rat_to_json(const Rat& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
    return json(rat_str(q));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

MetricGraph graph_from_json(const json& j) {
    std::vector<Vertex> vs;
    for (const auto& v : j.at("vertices"))
        vs.push_back({v.at("id").get<std::string>(), v.value("genus", 0)});
    std::map<std::string, int> index;
    for (size_t i = 0; i < vs.size(); ++i) index[vs[i].id] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const auto& e : j.at("edges")) {
        Edge edge;
        edge.u = index.at(e.at("u").get<std::string>());
        edge.v = index.at(e.at("v").get<std::string>());
        edge.length = rat_from_json(e.at("length"));
        if (e.contains("id")) edge.id = e.at("id").get<std::string>();
        es.push_back(std::move(edge));
    }
    return MetricGraph(std::move(vs), std::move(es));
}

json graph_to_json(const MetricGraph& g) {
    json vs = json::array(), es = json::array();
    for (const Vertex& v : g.vertices()) vs.push_back({{"id", v.id}, {"genus", v.genus}});
    for (const Edge& e : g.edges())
        es.push_back({{"u", g.vertices()[e.u].id},
                      {"v", g.vertices()[e.v].id},
                      {"length", rat_to_json(e.length)},
                      {"id", e.id}});
    return {{"vertices", vs}, {"edges", es}};
}

Point point_from_json(const MetricGraph& g, const json& j) {
    if (j.contains("vertex"))
        return Point::vertex(g.vertex_index(j.at("vertex").get<std::string>()));
    return Point::on_edge(g, g.edge_index(j.at("edge").get<std::string>()),
                          rat_from_json(j.at("offset")));
}

json point_to_json(const MetricGraph& g, const Point& p) {
    if (p.is_vertex()) return {{"vertex", g.vertices()[p.vertex_index()].id}};
    return {{"edge", g.edges()[p.edge_index()].id}, {"offset", rat_to_json(p.offset())}};
}

Divisor divisor_from_json(const MetricGraph& g, const json& j) {
    Divisor d;
    for (const auto& entry : j.at("coeffs"))
        d.add(point_from_json(g, entry.at("point")), entry.at("c").get<long>());
    return d;
}

json divisor_to_json(const MetricGraph& g, const Divisor& d) {
    json coeffs = json::array();
    for (const auto& [p, c] : d.coeffs())
        coeffs.push_back({{"point", point_to_json(g, p)}, {"c", c}});
    return {{"coeffs", coeffs}};
}

json qdivisor_to_json(const MetricGraph& g, const QDivisor& d) {
    json coeffs = json::array();
    for (const auto& [p, c] : d.coeffs())
        coeffs.push_back({{"point", point_to_json(g, p)}, {"c", rat_to_json(c)}});
    return {{"coeffs", coeffs}};
}

Measure measure_from_json(const MetricGraph& g, const json& j) {
    Measure m;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms"))
            m.add_atom(point_from_json(g, a.at("point")), rat_from_json(a.at("mass")));
    if (j.contains("densities"))
        for (const auto& d : j.at("densities"))
            m.add_density(g, g.edge_index(d.at("edge").get<std::string>()),
                          rat_from_json(d.at("from")), rat_from_json(d.at("to")),
                          rat_from_json(d.at("density")));
    return m;
}

json measure_to_json(const MetricGraph& g, const Measure& m) {
    json atoms = json::array(), densities = json::array();
    for (const auto& [p, mass] : m.atoms())
        atoms.push_back({{"point", point_to_json(g, p)}, {"mass", rat_to_json(mass)}});
    for (const auto& [edge, pieces] : m.densities())
        for (const auto& piece : pieces)
            densities.push_back({{"edge", g.edges()[edge].id},
                                 {"from", rat_to_json(piece.from)},
                                 {"to", rat_to_json(piece.to)},
                                 {"density", rat_to_json(piece.density)}});
    return {{"atoms", atoms}, {"densities", densities}};
}

namespace {

// "x->y" -> (edge index, true iff the direction is the edge's u -> v)
std::pair<int, bool> parse_arc(const MetricGraph& g, const std::string& arc) {
    auto pos = arc.find("->");
    if (pos == std::string::npos) throw std::invalid_argument("malformed arc: " + arc);
    int x = g.vertex_index(arc.substr(0, pos));
    int y = g.vertex_index(arc.substr(pos + 2));
    for (int ei : g.incident(x))
        if (g.other_end(ei, x) == y) return {ei, g.edges()[ei].u == x};
    throw std::invalid_argument("arc " + arc + " is not an edge of the model");
}

}  // namespace

SlopeStructure slope_structure_from_json(const MetricGraph& g, const json& j) {
    SlopeStructure s;
    s.r = j.at("r").get<int>();
    s.slopes_uv.resize(g.num_edges());
    s.slopes_vu.resize(g.num_edges());
    for (const auto& a : j.at("arcs")) {
        auto [edge, from_u] = parse_arc(g, a.at("arc").get<std::string>());
        auto& dest = from_u ? s.slopes_uv[edge] : s.slopes_vu[edge];
        dest = a.at("slopes").get<std::vector<long>>();
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        s.vertex_rank.push_back(standard_rank(std::max(1, g.valence(v)), s.r));
    if (j.contains("vertices"))
        for (const auto& vj : j.at("vertices")) {
            int v = g.vertex_index(vj.at("vertex").get<std::string>());
            auto jumps_list = vj.at("jumps").get<std::vector<std::vector<int>>>();
            s.vertex_rank[v] = rank_from_jumps(g.valence(v), s.r, jumps_list);
        }
    return s;
}

json slope_structure_to_json(const MetricGraph& g, const SlopeStructure& s) {
    json arcs = json::array(), vertices = json::array();
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        const Edge& e = g.edges()[ei];
        const std::string& u = g.vertices()[e.u].id;
        const std::string& v = g.vertices()[e.v].id;
        arcs.push_back({{"arc", u + "->" + v}, {"slopes", s.slopes_uv[ei]}});
        arcs.push_back({{"arc", v + "->" + u}, {"slopes", s.slopes_vu[ei]}});
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        vertices.push_back(
            {{"vertex", g.vertices()[v].id}, {"jumps", jumps(s.vertex_rank[v])}});
    return {{"r", s.r}, {"arcs", arcs}, {"vertices", vertices}};
}

SlopeData slope_data_from_json(const json& j) {
    SlopeData d;
    d.n = j.at("n").get<long>();
    d.r = j.at("r").get<long>();
    for (const auto& vj : j.at("vertices")) {
        SlopeVertex sv;
        sv.id = vj.at("id").get<std::string>();
        sv.d_x = vj.at("d_x").get<long>();
        sv.g_x = vj.value("g_x", 0);
        for (const auto& dj : vj.at("directions")) {
            DirectionSlopes ds;
            ds.arc = dj.at("arc").get<std::string>();
            if (dj.contains("slopes")) ds.full = dj.at("slopes").get<std::vector<long>>();
            if (dj.contains("s0")) ds.s0 = dj.at("s0").get<long>();
            sv.directions.push_back(std::move(ds));
        }
        d.vertices.push_back(std::move(sv));
    }
    return d;
}

json slope_data_to_json(const SlopeData& d) {
    json vertices = json::array();
    for (const SlopeVertex& sv : d.vertices) {
        json dirs = json::array();
        for (const DirectionSlopes& ds : sv.directions) {
            json dj = {{"arc", ds.arc}};
            if (ds.full) dj["slopes"] = *ds.full;
            if (ds.s0) dj["s0"] = *ds.s0;
            dirs.push_back(std::move(dj));
        }
        vertices.push_back({{"id", sv.id},
                            {"d_x", sv.d_x},
                            {"g_x", sv.g_x},
                            {"directions", dirs}});
    }
    return {{"n", d.n}, {"r", d.r}, {"vertices", vertices}};
}

SlopeFamily slope_family_from_json(const json& j) {
    SlopeFamily f;
    f.d = j.at("d").get<long>();
    f.g = j.at("g").get<long>();
    for (const auto& [key, value] : j.at("lists").items())
        f.lists[std::stol(key)] = value.get<std::vector<long>>();
    return f;
}

json slope_family_to_json(const SlopeFamily& f) {
    json lists = json::object();
    for (const auto& [n, l] : f.lists) lists[std::to_string(n)] = l;
    return {{"d", f.d}, {"g", f.g}, {"lists", lists}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.graph_file = j.at("graph").get<std::string>();
    c.divisor_file = j.at("divisor").get<std::string>();
    c.n_min = j.value("n_min", 1L);
    c.n_max = j.at("n_max").get<long>();
    c.mode = j.value("mode", std::string("tropical-surrogate"));
    if (j.contains("slopes"))
        for (const auto& [key, value] : j.at("slopes").items())
            c.slope_files[std::stol(key)] = value.get<std::string>();
    if (j.contains("h")) c.h = rat_from_json(j.at("h"));
    c.grid_factor = j.value("grid_factor", 8L);
    c.out_csv = j.value("out_csv", std::string());
    c.out_json = j.value("out_json", std::string());
    if (j.contains("l1_threshold")) c.l1_threshold = rat_from_json(j.at("l1_threshold"));
    if (j.contains("osc_factor")) c.osc_factor = rat_from_json(j.at("osc_factor"));
    if (j.contains("pr5_slack")) c.pr5_slack = rat_from_json(j.at("pr5_slack"));
    if (j.contains("snapshots")) c.snapshots = j.at("snapshots").get<std::vector<long>>();
    return c;
}

}  // namespace mg::io
