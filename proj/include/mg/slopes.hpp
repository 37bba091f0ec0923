#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/plfunction.hpp"

namespace mg {

// Function Box^d_r -> {-1, ..., r} stored as a dense table over the
// hypercube {0..r}^d in row-major multi-index order (last coordinate
// fastest).
struct RankFunction {
    int d = 0;
    int r = 0;
    std::vector<int> table;  // size (r+1)^d

    RankFunction() = default;
    RankFunction(int dim, int width);

    size_t index_of(const std::vector<int>& i) const;
    int at(const std::vector<int>& i) const { return table[index_of(i)]; }
    int& at(const std::vector<int>& i) { return table[index_of(i)]; }

    friend bool operator==(const RankFunction&, const RankFunction&) = default;
};

// Iterates all multi-indices of Box^d_r in table order.
std::vector<std::vector<int>> box_points(int d, int r);

// rho(i) = max(-1, r - sum i_m).
RankFunction standard_rank(int d, int r);

struct RankCheck {
    bool ok = true;
    std::string violation;  // first violated axiom when !ok
};

// The four axiom families: value range, decreasing, normalization
// (rho(0) = r and rho(e_m) = r - 1), supermodularity.
RankCheck is_rank_function(const RankFunction& rho);

// Points i with rho(i) >= 0 and rho(i + e_m) = rho(i) - 1 whenever in
// range; sorted lexicographically.
std::vector<std::vector<int>> jumps(const RankFunction& rho);

// Reconstructs the rank function from its jump set (monotone completion);
// inverse of jumps on valid rank functions.
RankFunction rank_from_jumps(int d, int r, const std::vector<std::vector<int>>& jump_set);

// rho(i) = dims(i) - 1 where dims(i) is the dimension of the intersection
// of filtration steps of an (r+1)-dimensional space; the axioms are
// checked, and a violation throws std::invalid_argument.
RankFunction rank_from_filtrations(int d, int r, const std::vector<int>& dims);

// Slope structure on a model graph: per oriented arc a sorted slope list
// of length r+1, per vertex a rank function on Box^{val(v)}_r whose
// coordinates follow the order of MetricGraph::incident(v). Interior
// points of edges implicitly carry the standard rank function.
struct SlopeStructure {
    int r = 0;
    std::vector<std::vector<long>> slopes_uv;  // per edge, in the u->v direction
    std::vector<std::vector<long>> slopes_vu;  // per edge, in the v->u direction
    std::vector<RankFunction> vertex_rank;     // per vertex

    const std::vector<long>& arc(int edge, bool from_u) const {
        return from_u ? slopes_uv[edge] : slopes_vu[edge];
    }
};

// Throws std::invalid_argument naming the first violation: size mismatch,
// unsorted arc list, antisymmetry s^{uv}_i + s^{vu}_{r-i} = 0 failing, or
// an invalid vertex rank function.
void validate_slope_structure(const MetricGraph& g, const SlopeStructure& s);

// True iff every outgoing slope of f lies in the corresponding arc set and
// every slope vector delta_x(f) is a jump of the rank function at x
// (standard rule i + j <= r at interior points).
bool is_compatible(const MetricGraph& g, const PLFunction& f, const SlopeStructure& s);

// Enumerates every structure-compatible PL function whose breakpoints lie
// on the given grid, normalized to zero at the first grid point. Building
// block for the searches below; throws std::runtime_error when the search
// space exceeds the hard state cap (the bound is reported).
std::vector<PLFunction> compatible_functions(const MetricGraph& g, const SlopeStructure& s,
                                             const std::vector<Point>& grid);

// Property (*): for every effective divisor E of degree r supported on
// grid points there is a compatible f with rho_x(delta_x(f)) >= E(x) and
// div(f) + D - E >= 0. Grid-restricted, hence certain for fixtures whose
// grid is fine enough; refining the grid only improves the search.
bool is_grd(const MetricGraph& g, const Divisor& d, const SlopeStructure& s,
            const std::vector<Point>& grid);

struct SlopeReduceResult {
    Divisor reduced;      // D_v = D + div(f_v)
    PLFunction witness;   // f_v, the pointwise minimum, f_v(v) = 0
};

// Reduced divisor with respect to a slope structure: pointwise minimum of
// all compatible f with div(f) + D >= 0, normalized at v. Postconditions
// checked: D_v(v) = D(v) - sum of minimal outgoing slopes at v, and
// D_v(v) >= r.
SlopeReduceResult reduced_wrt(const MetricGraph& g, const Divisor& d, const SlopeStructure& s,
                              const Point& v, const std::vector<Point>& grid);

// Structure with every arc set translated by the slopes of f (which must
// be integer-sloped and affine on each model edge); rank functions are
// unchanged. Antisymmetry of the result is asserted.
SlopeStructure shift(const MetricGraph& g, const SlopeStructure& s, const PLFunction& f);

// (D1, S1) ~ (D2, S2): exists integer-sloped f affine on model edges with
// S1 = S2 - slopes(f) and D1 = D2 + div(f).
bool is_equivalent(const MetricGraph& g, const Divisor& d1, const SlopeStructure& s1,
                   const Divisor& d2, const SlopeStructure& s2);

}  // namespace mg
