#include "mg/divisor.hpp"

namespace mg {

Divisor canonical_divisor(const MetricGraph& g) {
    Divisor d;
    for (int v = 0; v < g.num_vertices(); ++v)
        d.add(Point::vertex(v), 2L * g.vertices()[v].genus - 2 + g.valence(v));
    return d;
}

Divisor canonical_divisor_graph(const MetricGraph& g) {
    Divisor d;
    for (int v = 0; v < g.num_vertices(); ++v) d.add(Point::vertex(v), g.valence(v) - 2L);
    return d;
}

Divisor genus_divisor(const MetricGraph& g) {
    Divisor d;
    for (int v = 0; v < g.num_vertices(); ++v) d.add(Point::vertex(v), g.vertices()[v].genus);
    return d;
}

}  // namespace mg
