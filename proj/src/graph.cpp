#include "mg/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mg {

MetricGraph::MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    incident_.resize(vertices_.size());
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_by_id_.emplace(vertices_[i].id, static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate vertex id: " + vertices_[i].id);
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        if (e.u < 0 || e.u >= num_vertices() || e.v < 0 || e.v >= num_vertices())
            throw std::invalid_argument("edge endpoint out of range");
        if (e.id.empty()) e.id = vertices_[e.u].id + "-" + vertices_[e.v].id;
        if (!edge_by_id_.emplace(e.id, static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate edge id: " + e.id);
        incident_[e.u].push_back(static_cast<int>(i));
        if (e.v != e.u) incident_[e.v].push_back(static_cast<int>(i));
    }
}

int MetricGraph::vertex_index(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    if (it == vertex_by_id_.end()) throw std::invalid_argument("unknown vertex id: " + id);
    return it->second;
}

int MetricGraph::edge_index(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) throw std::invalid_argument("unknown edge id: " + id);
    return it->second;
}

int MetricGraph::other_end(int edge, int v) const {
    const Edge& e = edges_[edge];
    return e.u == v ? e.v : e.u;
}

bool MetricGraph::connected() const {
    if (vertices_.empty()) return true;
    std::vector<char> seen(vertices_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int ei : incident_[x]) {
            int y = other_end(ei, x);
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

Point Point::on_edge(const MetricGraph& g, int edge, const Rat& offset) {
    const Edge& e = g.edges().at(edge);
    if (offset < 0 || offset > e.length)
        throw std::invalid_argument("point offset outside edge " + e.id);
    if (offset == 0) return vertex(e.u);
    if (offset == e.length) return vertex(e.v);
    return Point(-1, edge, offset);
}

std::string Point::describe(const MetricGraph& g) const {
    if (is_vertex()) return g.vertices()[v_].id;
    return g.edges()[edge_].id + "@" + rat_str(offset_);
}

void validate(const MetricGraph& g) {
    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges()) {
        if (e.u == e.v) throw std::invalid_argument("loop edge at vertex " + g.vertices()[e.u].id +
                                                    " (subdivide to obtain a simple model)");
        auto key = std::minmax(e.u, e.v);
        if (!pairs.insert(key).second)
            throw std::invalid_argument("parallel edges between " + g.vertices()[key.first].id +
                                        " and " + g.vertices()[key.second].id +
                                        " (subdivide to obtain a simple model)");
        if (e.length <= 0) throw std::invalid_argument("nonpositive length on edge " + e.id);
    }
    for (const Vertex& v : g.vertices())
        if (v.genus < 0) throw std::invalid_argument("negative genus at vertex " + v.id);
    if (!g.connected()) throw std::invalid_argument("graph is disconnected");
}

Genus genus(const MetricGraph& g) {
    Genus out;
    out.betti = g.num_edges() - g.num_vertices() + 1;
    out.total = out.betti;
    for (const Vertex& v : g.vertices()) out.total += v.genus;
    return out;
}

std::vector<TangentDirection> tangent_directions(const MetricGraph& g, const Point& p) {
    std::vector<TangentDirection> out;
    if (p.is_vertex()) {
        for (int ei : g.incident(p.vertex_index()))
            out.push_back({p, ei, g.edges()[ei].u == p.vertex_index()});
    } else {
        out.push_back({p, p.edge_index(), false});
        out.push_back({p, p.edge_index(), true});
    }
    return out;
}

namespace {

Refinement build_refinement(const MetricGraph& g,
                            std::vector<std::vector<Rat>> cut_offsets) {
    Refinement r;
    r.vertex_map.resize(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) r.vertex_map[i] = i;

    std::vector<Edge> es;
    r.cuts.resize(g.num_edges());
    for (const Edge& e : g.edges()) r.old_edge_ids.push_back(e.id);
    for (int i = 0; i < g.num_vertices(); ++i) r.new_vertex_origin.push_back(Point::vertex(i));
    std::vector<Vertex> vs = g.vertices();
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto& offs = cut_offsets[ei];
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        const Edge& e = g.edges()[ei];
        int prev = e.u;
        Rat prev_off(0);
        int k = 0;
        for (const Rat& off : offs) {
            int nv = static_cast<int>(vs.size());
            vs.push_back({e.id + "@" + rat_str(off), 0});
            r.cuts[ei].emplace_back(off, nv);
            r.new_vertex_origin.push_back(Point::on_edge(g, ei, off));
            es.push_back({prev, nv, off - prev_off, e.id + "#" + std::to_string(k++)});
            r.new_edge_origin.emplace_back(ei, prev_off);
            prev = nv;
            prev_off = off;
        }
        if (offs.empty()) {
            es.push_back({e.u, e.v, e.length, e.id});
            r.new_edge_origin.emplace_back(ei, Rat(0));
        } else {
            es.push_back({prev, e.v, e.length - prev_off, e.id + "#" + std::to_string(k)});
            r.new_edge_origin.emplace_back(ei, prev_off);
        }
    }
    r.graph = MetricGraph(std::move(vs), std::move(es));
    return r;
}

}  // namespace

Point Refinement::map_point(const Point& old) const {
    if (old.is_vertex()) return Point::vertex(vertex_map[old.vertex_index()]);
    const auto& cut = cuts[old.edge_index()];
    const Rat& off = old.offset();
    int k = 0;
    Rat seg_start(0);
    for (const auto& [coff, cv] : cut) {
        if (off == coff) return Point::vertex(cv);
        if (off < coff) break;
        seg_start = coff;
        ++k;
    }
    // Sub-edge k of an old edge keeps the old id when uncut, else "<id>#k".
    const std::string& base = old_edge_ids[old.edge_index()];
    std::string sub_id = cut.empty() ? base : base + "#" + std::to_string(k);
    return Point::on_edge(graph, graph.edge_index(sub_id), off - seg_start);
}

Point Refinement::unmap_point(const MetricGraph& old_graph, const Point& p) const {
    if (p.is_vertex()) return new_vertex_origin.at(p.vertex_index());
    const auto& [old_edge, start] = new_edge_origin.at(p.edge_index());
    return Point::on_edge(old_graph, old_edge, start + p.offset());
}

Refinement refine(const MetricGraph& g, const std::vector<Point>& points) {
    std::vector<std::vector<Rat>> cuts(g.num_edges());
    for (const Point& p : points)
        if (!p.is_vertex()) cuts[p.edge_index()].push_back(p.offset());
    return build_refinement(g, std::move(cuts));
}

Refinement refine_uniform(const MetricGraph& g, const Rat& delta) {
    if (delta <= 0) throw std::invalid_argument("refine_uniform: delta must be positive");
    std::vector<std::vector<Rat>> cuts(g.num_edges());
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        Int k = exact_div(g.edges()[ei].length, delta);
        for (Int i = 1; i < k; ++i) cuts[ei].push_back(Rat(i) * delta);
    }
    return build_refinement(g, std::move(cuts));
}

Rat common_length_unit(const MetricGraph& g) {
    Rat u(0);
    for (const Edge& e : g.edges()) u = rat_gcd(u, e.length);
    return u;
}

}  // namespace mg
