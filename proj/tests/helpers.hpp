#pragma once

#include <string>
#include <vector>

#include "mg/graph.hpp"
#include "mg/json_io.hpp"

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

namespace mgtest {

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline mg::MetricGraph load_graph(const std::string& name) {
    return mg::io::graph_from_json(mg::io::load_json_file(fixture(name)));
}

// Unit 3-cycle p-a-b: circumference 3, genus 1.
inline mg::MetricGraph circle() {
    using namespace mg;
    return MetricGraph({{"p", 0}, {"a", 0}, {"b", 0}},
                       {{0, 1, Rat(1), "p-a"}, {1, 2, Rat(1), "a-b"}, {2, 0, Rat(1), "b-p"}});
}

// Cycle p-a-m-b with lengths 1, 1/2, 1/2, 1: same circle with the
// antipode m of p as a vertex.
inline mg::MetricGraph circle4() {
    using namespace mg;
    return MetricGraph({{"p", 0}, {"a", 0}, {"m", 0}, {"b", 0}},
                       {{0, 1, Rat(1), "p-a"},
                        {1, 2, Rat(1, 2), "a-m"},
                        {2, 3, Rat(1, 2), "m-b"},
                        {3, 0, Rat(1), "b-p"}});
}

// Two vertices x, y joined by three unit-length paths (two subdivided):
// genus 2.
inline mg::MetricGraph theta() {
    using namespace mg;
    return MetricGraph({{"x", 0}, {"y", 0}, {"m1", 0}, {"m2", 0}},
                       {{0, 1, Rat(1), "x-y"},
                        {0, 2, Rat(1), "x-m1"},
                        {2, 1, Rat(1), "m1-y"},
                        {0, 3, Rat(1), "x-m2"},
                        {3, 1, Rat(1), "m2-y"}});
}

// Two unit triangles joined by a unit bridge: genus 2 with a bridge edge.
inline mg::MetricGraph dumbbell() {
    using namespace mg;
    return MetricGraph({{"a1", 0}, {"a2", 0}, {"a3", 0}, {"b1", 0}, {"b2", 0}, {"b3", 0}},
                       {{0, 1, Rat(1), "a1-a2"},
                        {1, 2, Rat(1), "a2-a3"},
                        {2, 0, Rat(1), "a3-a1"},
                        {3, 4, Rat(1), "b1-b2"},
                        {4, 5, Rat(1), "b2-b3"},
                        {5, 3, Rat(1), "b3-b1"},
                        {0, 3, Rat(1), "bridge"}});
}

inline mg::Point vtx(const mg::MetricGraph& g, const std::string& id) {
    return mg::Point::vertex(g.vertex_index(id));
}

inline std::vector<mg::Point> vertex_grid(const mg::MetricGraph& g) {
    std::vector<mg::Point> out;
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back(mg::Point::vertex(v));
    return out;
}

inline mg::Divisor dirac_divisor(const mg::Point& p, long c = 1) {
    mg::Divisor d;
    d.add(p, c);
    return d;
}

}  // namespace mgtest
