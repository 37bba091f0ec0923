#pragma once

#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/plfunction.hpp"

namespace mg {

// Principal divisor of an integer-sloped piecewise affine function:
// coefficient -sum of outgoing slopes at every vertex and breakpoint;
// degree zero. Throws on non-integer slopes.
Divisor principal_divisor(const MetricGraph& g, const PLFunction& f);

struct ReduceResult {
    Divisor reduced;  // the v-reduced divisor, effective away from v
    PLFunction witness;  // integer-sloped f with reduced = d + div(f), f(v) = 0
};

// v-reduced representative of the class of d, via Dhar burning on a
// uniform subdivision (metric set-firings coincide with combinatorial
// ones there). Exact; deterministic.
ReduceResult reduce(const MetricGraph& g, const Divisor& d, const Point& v);

// Baker-Norine style rank restricted to effective test divisors supported
// on the given grid points. Exact when the grid contains a
// rank-determining set (the vertex set of any model qualifies); with
// fewer test divisors the result can only overshoot, so in general it is
// an upper bound on the true rank.
long rank(const MetricGraph& g, const Divisor& d, const std::vector<Point>& grid);

}  // namespace mg
