#pragma once

#include <utility>
#include <vector>

#include "mg/graph.hpp"
#include "mg/rational.hpp"

namespace mg {

// Continuous piecewise affine function on a metric graph. One value per
// vertex plus, per edge, interior breakpoints (offset, value) with strictly
// increasing offsets; affine in between.
class PLFunction {
public:
    PLFunction() = default;
    // Affine on every edge, interpolating the given vertex values.
    explicit PLFunction(std::vector<Rat> vertex_values)
        : vertex_values_(std::move(vertex_values)) {}
    PLFunction(std::vector<Rat> vertex_values,
               std::vector<std::vector<std::pair<Rat, Rat>>> edge_breaks)
        : vertex_values_(std::move(vertex_values)), edge_breaks_(std::move(edge_breaks)) {}

    static PLFunction constant(const MetricGraph& g, const Rat& c) {
        return PLFunction(std::vector<Rat>(g.num_vertices(), c));
    }

    const std::vector<Rat>& vertex_values() const { return vertex_values_; }
    const std::vector<std::vector<std::pair<Rat, Rat>>>& edge_breaks() const {
        return edge_breaks_;
    }

    // Breakpoint chain of an edge including both endpoints.
    std::vector<std::pair<Rat, Rat>> edge_chain(const MetricGraph& g, int edge) const;

    Rat value_at(const MetricGraph& g, const Point& p) const;
    // Outgoing directional derivative at d.base along d.
    Rat slope(const MetricGraph& g, const TangentDirection& d) const;

    void check(const MetricGraph& g) const;  // breakpoint ordering, sizes
    bool integer_sloped(const MetricGraph& g) const;

    void shift_by(const Rat& c);  // adds a constant everywhere

    Rat max_value(const MetricGraph& g) const;
    Rat min_value(const MetricGraph& g) const;

private:
    std::vector<Rat> vertex_values_;
    // edge_breaks_[e] may be absent (shorter vector) meaning affine edge.
    std::vector<std::vector<std::pair<Rat, Rat>>> edge_breaks_;
};

// Pointwise sum f + sign * h on a common graph.
PLFunction pl_combine(const MetricGraph& g, const PLFunction& f, const PLFunction& h, int sign);
inline PLFunction pl_add(const MetricGraph& g, const PLFunction& f, const PLFunction& h) {
    return pl_combine(g, f, h, 1);
}
inline PLFunction pl_sub(const MetricGraph& g, const PLFunction& f, const PLFunction& h) {
    return pl_combine(g, f, h, -1);
}

// Exact pointwise minimum, with breakpoints inserted at crossings.
PLFunction pl_min(const MetricGraph& g, const PLFunction& f, const PLFunction& h);

}  // namespace mg
