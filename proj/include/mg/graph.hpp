#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mg/rational.hpp"

namespace mg {

// Augmented metric graph: a simple connected graph model with positive
// rational edge lengths and a nonnegative genus attached to each vertex.
// Values are immutable after construction; every operation on them is pure.
struct Vertex {
    std::string id;
    int genus = 0;
};

struct Edge {
    int u = -1;  // tail index; offsets along the edge are measured from u
    int v = -1;
    Rat length;
    std::string id;  // defaults to "<u>-<v>"
};

class MetricGraph {
public:
    MetricGraph() = default;
    MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    // Incident edge indices at a vertex, sorted.
    const std::vector<int>& incident(int v) const { return incident_[v]; }
    int valence(int v) const { return static_cast<int>(incident_[v].size()); }
    int other_end(int edge, int v) const;

    bool connected() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
    std::map<std::string, int> vertex_by_id_;
    std::map<std::string, int> edge_by_id_;
};

// A point of the metric space: a vertex, or an interior point of an edge
// at offset from the edge's u endpoint. Canonical form: offsets 0 and
// length are folded to the corresponding Vertex.
class Point {
public:
    static Point vertex(int v) { return Point(v, -1, Rat(0)); }
    static Point on_edge(const MetricGraph& g, int edge, const Rat& offset);

    bool is_vertex() const { return edge_ < 0; }
    int vertex_index() const { return v_; }
    int edge_index() const { return edge_; }
    const Rat& offset() const { return offset_; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.v_ == b.v_ && a.edge_ == b.edge_ && a.offset_ == b.offset_;
    }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
        if (a.is_vertex()) return a.v_ < b.v_;
        if (a.edge_ != b.edge_) return a.edge_ < b.edge_;
        return a.offset_ < b.offset_;
    }

    std::string describe(const MetricGraph& g) const;

private:
    Point(int v, int edge, Rat offset) : v_(v), edge_(edge), offset_(std::move(offset)) {}
    int v_ = -1;
    int edge_ = -1;
    Rat offset_;
};

// Outgoing tangent direction at a point. For a vertex, one per incident
// edge (toward that edge); for an interior point, toward_v false means
// toward the edge's u endpoint.
struct TangentDirection {
    Point base;
    int edge;
    bool toward_v;  // true: direction of increasing offset

    friend bool operator==(const TangentDirection&, const TangentDirection&) = default;
};

// Throws std::invalid_argument naming the first violated invariant
// (loop, parallel edge, nonpositive length, disconnected, negative genus).
void validate(const MetricGraph& g);

// First Betti number g(Gamma) = |E| - |V| + 1 and total genus
// g = g(Gamma) + sum of vertex genera.
struct Genus {
    long betti;
    long total;
};
Genus genus(const MetricGraph& g);

std::vector<TangentDirection> tangent_directions(const MetricGraph& g, const Point& p);

// Result of refining a graph: the new model plus a map taking points of
// the old model to points of the new one (same underlying metric space).
struct Refinement {
    MetricGraph graph;
    // For each old edge: the new vertex indices of its subdivision points
    // in increasing offset order (excluding the endpoints), and their offsets.
    std::vector<std::vector<std::pair<Rat, int>>> cuts;
    std::vector<int> vertex_map;            // old vertex index -> new vertex index
    std::vector<std::string> old_edge_ids;  // edge ids of the model that was refined
    // Inverse transport: where each new vertex / new edge sits in the old model.
    std::vector<Point> new_vertex_origin;               // new vertex -> old Point
    std::vector<std::pair<int, Rat>> new_edge_origin;   // new edge -> (old edge, start offset)

    Point map_point(const Point& old) const;
    // Old-model location of a point of the refined model.
    Point unmap_point(const MetricGraph& old_graph, const Point& p) const;
};

// Returns a model of the same metric space whose vertex set additionally
// contains every given point. New vertices get genus 0.
Refinement refine(const MetricGraph& g, const std::vector<Point>& points);

// Uniform subdivision: every edge is cut into segments of equal length
// delta, where delta divides every edge length exactly.
Refinement refine_uniform(const MetricGraph& g, const Rat& delta);

// Largest delta dividing all edge lengths.
Rat common_length_unit(const MetricGraph& g);

}  // namespace mg
