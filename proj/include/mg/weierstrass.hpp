#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"

namespace mg {

// Slope data of a linear series at the model vertices: per vertex, per
// outgoing tangent direction, either the full vanishing-slope list
// s_0 < ... < s_r or only the minimal slope s_0 (surrogate mode).
struct DirectionSlopes {
    std::string arc;  // "x->y": direction at x toward the neighbor y
    std::optional<std::vector<long>> full;
    std::optional<long> s0;
};

struct SlopeVertex {
    std::string id;
    long d_x = 0;  // coefficient of the underlying divisor D at the vertex
    int g_x = 0;
    std::vector<DirectionSlopes> directions;
};

struct SlopeData {
    long n = 0;  // series index (bookkeeping only)
    long r = 0;
    std::vector<SlopeVertex> vertices;
};

// Reduction formula for the Weierstrass divisor: coefficient at x is
// c_x = (r+1) d_x + (r(r+1)/2)(2 g_x - 2 + val(x)) - sum_nu sum_i s_i^nu.
// Requires full slope lists. For complete series the total degree is
// g (r+1)^2.
Divisor reduce_weierstrass(const MetricGraph& g, const SlopeData& data);

// Surrogate evaluation from minimal slopes only: each directional sum is
// replaced by (r+1)(s^nu_0 + s^nu_r)/2 with s^nu_r = -s0 of the partner
// arc (antisymmetry). Rational coefficients.
QDivisor midpoint_weierstrass(const MetricGraph& g, const SlopeData& data);

// sum s_i - r(r+1)/2 for a strictly increasing nonnegative list of length
// r+1; zero exactly for (0, 1, ..., r).
long local_weight(const std::vector<long>& s_list, long r);

// Exact order of vanishing at 0 of the Wronskian det(d^j/dt^j t^{s_i}),
// computed by symbolic polynomial determinant; equals local_weight in
// characteristic zero.
long wronskian_order(const std::vector<long>& s_list, long r);

// Total-weight identity: sum of weights = (g_C - 1) r (r+1).
bool total_weight_checks(long curve_genus, long r, const std::vector<long>& weights);

}  // namespace mg
