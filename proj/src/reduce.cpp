#include "mg/reduce.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "mg/linalg.hpp"
#include "mg/potential.hpp"

namespace mg {

Divisor principal_divisor(const MetricGraph& g, const PLFunction& f) {
    if (!f.integer_sloped(g))
        throw std::invalid_argument("principal_divisor: slopes must be integers");
    Divisor out;
    Measure lap = laplacian(g, f);
    for (const auto& [p, w] : lap.atoms()) {
        if (w.get_den() != 1) throw std::logic_error("integer slopes give integer atoms");
        out.add(p, to_long(w.get_num()));
    }
    return out;
}

namespace {

// Chip-firing state on a uniform model: all edges have the same length, so
// metric set-firings by one length unit are exactly combinatorial ones.
struct UniformState {
    const MetricGraph& g;
    std::vector<Int> chips;        // current divisor coefficients
    std::vector<Int> fire_counts;  // accumulated sigma; witness f = -delta * sigma
    int base;

    explicit UniformState(const MetricGraph& graph, int base_vertex)
        : g(graph), chips(graph.num_vertices(), Int(0)),
          fire_counts(graph.num_vertices(), Int(0)), base(base_vertex) {}

    // Dhar burning from the base; returns the unburnt vertex set (empty
    // means the divisor is base-reduced).
    std::vector<int> unburnt() const {
        std::vector<char> burnt(g.num_vertices(), 0);
        std::vector<long> arriving(g.num_vertices(), 0);
        std::vector<int> queue{base};
        burnt[base] = 1;
        for (size_t q = 0; q < queue.size(); ++q) {
            for (int ei : g.incident(queue[q])) {
                int w = g.other_end(ei, queue[q]);
                if (burnt[w]) continue;
                if (chips[w] < ++arriving[w]) {
                    burnt[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        std::vector<int> out;
        for (int w = 0; w < g.num_vertices(); ++w)
            if (!burnt[w]) out.push_back(w);
        return out;
    }

    // Fires the given closed set the maximal number of times that keeps
    // every boundary vertex nonnegative.
    void fire_set(const std::vector<int>& set) {
        std::vector<char> in(g.num_vertices(), 0);
        for (int w : set) in[w] = 1;
        Int k(-1);
        std::vector<Int> outdeg(g.num_vertices(), Int(0));
        for (int w : set) {
            for (int ei : g.incident(w))
                if (!in[g.other_end(ei, w)]) ++outdeg[w];
            if (outdeg[w] > 0) {
                Int cap = chips[w] / outdeg[w];
                if (k < 0 || cap < k) k = cap;
            }
        }
        if (k < 1) throw std::logic_error("fire_set: unburnt set must support one firing");
        for (int w : set) {
            fire_counts[w] += k;
            chips[w] -= k * outdeg[w];
            for (int ei : g.incident(w)) {
                int u = g.other_end(ei, w);
                if (!in[u]) chips[u] += k;
            }
        }
    }
};

// Integer vector sigma and positive integer t with (L sigma)(x) = t for
// every x != base; firing k*sigma adds k*t chips at every non-base vertex.
std::pair<std::vector<Int>, Int> donor_firing(const MetricGraph& g, int base) {
    int n = g.num_vertices();
    std::vector<int> idx(n, -1);
    int m = 0;
    for (int w = 0; w < n; ++w)
        if (w != base) idx[w] = m++;
    RatMatrix L(m, m);
    for (const Edge& e : g.edges()) {
        if (idx[e.u] >= 0) L.at(idx[e.u], idx[e.u]) += 1;
        if (idx[e.v] >= 0) L.at(idx[e.v], idx[e.v]) += 1;
        if (idx[e.u] >= 0 && idx[e.v] >= 0) {
            L.at(idx[e.u], idx[e.v]) -= 1;
            L.at(idx[e.v], idx[e.u]) -= 1;
        }
    }
    auto y = solve_exact(L, std::vector<Rat>(m, Rat(1)));
    if (!y) throw std::logic_error("grounded Laplacian must be nonsingular");
    Int t(1);
    for (const Rat& q : *y) mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> sigma(n, Int(0));
    for (int w = 0; w < n; ++w)
        if (w != base) sigma[w] = Int((*y)[idx[w]] * t);
    return {sigma, t};
}

}  // namespace

ReduceResult reduce(const MetricGraph& g, const Divisor& d, const Point& v) {
    // Model with the divisor support and the base point as vertices, then a
    // uniform subdivision so every set-firing keeps chips on vertices.
    std::vector<Point> pts{v};
    for (const auto& [p, c] : d.coeffs()) pts.push_back(p);
    Refinement r1 = refine(g, pts);
    Rat delta = common_length_unit(r1.graph);
    Refinement r2 = g.num_edges() == 0 ? refine(r1.graph, {})
                                       : refine_uniform(r1.graph, delta);
    const MetricGraph& ug = r2.graph;

    UniformState st(ug, r2.map_point(r1.map_point(v)).vertex_index());
    for (const auto& [p, c] : d.coeffs()) {
        Point q = r2.map_point(r1.map_point(p));
        st.chips[q.vertex_index()] += c;
    }

    // Phase 1: clear debt away from the base with one exact donor firing.
    Int deficit(0);
    for (int w = 0; w < ug.num_vertices(); ++w)
        if (w != st.base && st.chips[w] < 0) deficit = std::max(deficit, Int(-st.chips[w]));
    if (deficit > 0) {
        auto [sigma, t] = donor_firing(ug, st.base);
        Int k = (deficit + t - 1) / t;
        // Fire -k*sigma: chips += k * L sigma, adding k*t at every non-base
        // vertex and draining the base.
        for (int w = 0; w < ug.num_vertices(); ++w) st.fire_counts[w] -= k * sigma[w];
        for (const Edge& e : ug.edges()) {
            Int flow = k * (sigma[e.v] - sigma[e.u]);
            st.chips[e.u] -= flow;
            st.chips[e.v] += flow;
        }
    }

    // Phase 2: Dhar loop with maximal multi-firings.
    for (long guard = 0;; ++guard) {
        if (guard > 100000000L) throw std::logic_error("reduce: firing loop did not terminate");
        auto a = st.unburnt();
        if (a.empty()) break;
        st.fire_set(a);
    }

    // Transport back to the input model.
    Divisor reduced;
    std::vector<Rat> vertex_values(g.num_vertices(), Rat(0));
    std::vector<std::vector<std::pair<Rat, Rat>>> breaks(g.num_edges());
    Int base_count = st.fire_counts[st.base];
    for (int w = 0; w < ug.num_vertices(); ++w) {
        Point orig = r1.unmap_point(g, r2.unmap_point(r1.graph, Point::vertex(w)));
        if (st.chips[w] != 0) reduced.add(orig, to_long(st.chips[w]));
        Rat fval = -delta * Rat(st.fire_counts[w] - base_count);
        if (orig.is_vertex())
            vertex_values[orig.vertex_index()] = fval;
        else
            breaks[orig.edge_index()].emplace_back(orig.offset(), fval);
    }
    for (auto& eb : breaks) std::sort(eb.begin(), eb.end());
    return {std::move(reduced), PLFunction(std::move(vertex_values), std::move(breaks))};
}

long rank(const MetricGraph& g, const Divisor& d, const std::vector<Point>& grid) {
    if (grid.empty()) throw std::invalid_argument("rank: empty grid");
    long deg = d.degree();
    if (deg < 0) return -1;
    const Point& base = grid.front();

    // All effective divisors of degree k on the grid, tested recursively.
    std::function<bool(const Divisor&, size_t, long)> all_pass =
        [&](const Divisor& current, size_t i, long remaining) -> bool {
        if (remaining == 0)
            return reduce(g, current, base).reduced.coeff(base) >= 0;
        if (i + 1 == grid.size()) {
            Divisor next = current;
            next.add(grid[i], -remaining);
            return all_pass(next, i + 1, 0);
        }
        for (long take = 0; take <= remaining; ++take) {
            Divisor next = current;
            if (take > 0) next.add(grid[i], -take);
            if (!all_pass(next, i + 1, remaining - take)) return false;
        }
        return true;
    };

    long k = 0;
    while (k <= deg && all_pass(d, 0, k)) ++k;
    return k - 1;
}

}  // namespace mg
