#include "mg/slopes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mg/reduce.hpp"

namespace mg {

RankFunction::RankFunction(int dim, int width) : d(dim), r(width) {
    if (dim < 1 || width < 0) throw std::invalid_argument("RankFunction: need d >= 1, r >= 0");
    size_t n = 1;
    for (int m = 0; m < d; ++m) n *= static_cast<size_t>(r + 1);
    table.assign(n, -1);
}

size_t RankFunction::index_of(const std::vector<int>& i) const {
    if (static_cast<int>(i.size()) != d)
        throw std::invalid_argument("RankFunction: index dimension mismatch");
    size_t idx = 0;
    for (int m = 0; m < d; ++m) {
        if (i[m] < 0 || i[m] > r) throw std::invalid_argument("RankFunction: index out of box");
        idx = idx * (r + 1) + static_cast<size_t>(i[m]);
    }
    return idx;
}

std::vector<std::vector<int>> box_points(int d, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d, 0);
    for (;;) {
        out.push_back(cur);
        int m = d - 1;
        while (m >= 0 && cur[m] == r) cur[m--] = 0;
        if (m < 0) break;
        ++cur[m];
    }
    return out;
}

RankFunction standard_rank(int d, int r) {
    RankFunction rho(d, r);
    for (const auto& i : box_points(d, r)) {
        int s = std::accumulate(i.begin(), i.end(), 0);
        rho.at(i) = std::max(-1, r - s);
    }
    return rho;
}

namespace {

std::string point_str(const std::vector<int>& i) {
    std::ostringstream os;
    os << "(";
    for (size_t m = 0; m < i.size(); ++m) os << (m ? "," : "") << i[m];
    os << ")";
    return os.str();
}

}  // namespace

RankCheck is_rank_function(const RankFunction& rho) {
    const auto pts = box_points(rho.d, rho.r);
    if (rho.table.size() != pts.size()) return {false, "table size mismatch"};
    for (const auto& i : pts) {
        int v = rho.at(i);
        if (v < -1 || v > rho.r)
            return {false, "value " + std::to_string(v) + " out of [r] u {-1} at " + point_str(i)};
    }
    for (const auto& i : pts)
        for (int m = 0; m < rho.d; ++m) {
            if (i[m] == rho.r) continue;
            auto j = i;
            ++j[m];
            if (rho.at(j) > rho.at(i) || rho.at(j) < rho.at(i) - 1)
                return {false, "step from " + point_str(i) + " to " + point_str(j) +
                                   " must decrease by 0 or 1"};
        }
    if (rho.at(std::vector<int>(rho.d, 0)) != rho.r)
        return {false, "normalization: rho(0) != r"};
    for (int m = 0; m < rho.d && rho.r >= 1; ++m) {
        std::vector<int> em(rho.d, 0);
        em[m] = 1;
        if (rho.at(em) != rho.r - 1)
            return {false, "normalization: rho(e_" + std::to_string(m + 1) + ") != r-1"};
    }
    for (const auto& i : pts)
        for (const auto& j : pts) {
            std::vector<int> lo(rho.d), hi(rho.d);
            for (int m = 0; m < rho.d; ++m) {
                lo[m] = std::min(i[m], j[m]);
                hi[m] = std::max(i[m], j[m]);
            }
            if (rho.at(i) + rho.at(j) > rho.at(hi) + rho.at(lo))
                return {false,
                        "supermodularity fails at " + point_str(i) + ", " + point_str(j)};
        }
    return {true, ""};
}

std::vector<std::vector<int>> jumps(const RankFunction& rho) {
    std::vector<std::vector<int>> out;
    for (const auto& i : box_points(rho.d, rho.r)) {
        if (rho.at(i) < 0) continue;
        bool jump = true;
        for (int m = 0; m < rho.d && jump; ++m) {
            if (i[m] == rho.r) continue;
            auto j = i;
            ++j[m];
            if (rho.at(j) != rho.at(i) - 1) jump = false;
        }
        if (jump) out.push_back(i);
    }
    return out;
}

RankFunction rank_from_jumps(int d, int r, const std::vector<std::vector<int>>& jump_set) {
    auto below = [d](const std::vector<int>& a, const std::vector<int>& b) {
        // a < b coordinatewise (<= everywhere, strict somewhere)
        bool strict = false;
        for (int m = 0; m < d; ++m) {
            if (a[m] > b[m]) return false;
            if (a[m] < b[m]) strict = true;
        }
        return strict;
    };
    // Longest chain in the jump set ending at each jump; the value at a
    // jump is r minus the longest chain strictly below it.
    std::vector<std::vector<int>> js = jump_set;
    std::sort(js.begin(), js.end(), [](const auto& a, const auto& b) {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        return sa != sb ? sa < sb : a < b;
    });
    std::vector<int> chain(js.size(), 1);
    std::vector<int> value(js.size());
    for (size_t k = 0; k < js.size(); ++k) {
        int longest_below = 0;
        for (size_t l = 0; l < k; ++l)
            if (below(js[l], js[k])) longest_below = std::max(longest_below, chain[l]);
        chain[k] = longest_below + 1;
        value[k] = r - longest_below;
    }
    RankFunction rho(d, r);
    for (const auto& i : box_points(d, r)) {
        int v = -1;
        for (size_t k = 0; k < js.size(); ++k) {
            bool ge = true;
            for (int m = 0; m < d; ++m)
                if (js[k][m] < i[m]) {
                    ge = false;
                    break;
                }
            if (ge) v = std::max(v, value[k]);
        }
        rho.at(i) = v;
    }
    return rho;
}

RankFunction rank_from_filtrations(int d, int r, const std::vector<int>& dims) {
    RankFunction rho(d, r);
    if (dims.size() != rho.table.size())
        throw std::invalid_argument("rank_from_filtrations: dimension table size mismatch");
    for (size_t k = 0; k < dims.size(); ++k) rho.table[k] = dims[k] - 1;
    RankCheck c = is_rank_function(rho);
    if (!c.ok)
        throw std::invalid_argument("rank_from_filtrations: invalid dimension table: " +
                                    c.violation);
    return rho;
}

namespace {

int slope_index(const std::vector<long>& sorted, long value) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
    if (it == sorted.end() || *it != value) return -1;
    return static_cast<int>(it - sorted.begin());
}

bool is_jump_of(const RankFunction& rho, const std::vector<int>& i) {
    if (rho.at(i) < 0) return false;
    for (int m = 0; m < rho.d; ++m) {
        if (i[m] == rho.r) continue;
        auto j = i;
        ++j[m];
        if (rho.at(j) != rho.at(i) - 1) return false;
    }
    return true;
}

}  // namespace

void validate_slope_structure(const MetricGraph& g, const SlopeStructure& s) {
    if (static_cast<int>(s.slopes_uv.size()) != g.num_edges() ||
        static_cast<int>(s.slopes_vu.size()) != g.num_edges())
        throw std::invalid_argument("slope structure: arc list count != edge count");
    if (static_cast<int>(s.vertex_rank.size()) != g.num_vertices())
        throw std::invalid_argument("slope structure: rank function count != vertex count");
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        const auto& uv = s.slopes_uv[ei];
        const auto& vu = s.slopes_vu[ei];
        const std::string& id = g.edges()[ei].id;
        if (static_cast<int>(uv.size()) != s.r + 1 || static_cast<int>(vu.size()) != s.r + 1)
            throw std::invalid_argument("slope structure: arc list on edge " + id +
                                        " must have r+1 entries");
        for (int i = 0; i + 1 <= s.r; ++i)
            if (uv[i] >= uv[i + 1] || vu[i] >= vu[i + 1])
                throw std::invalid_argument("slope structure: unsorted arc list on edge " + id);
        for (int i = 0; i <= s.r; ++i)
            if (uv[i] + vu[s.r - i] != 0)
                throw std::invalid_argument("slope structure: antisymmetry fails on edge " + id +
                                            " at index " + std::to_string(i));
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        const RankFunction& rho = s.vertex_rank[v];
        if (rho.d != g.valence(v) || rho.r != s.r)
            throw std::invalid_argument("slope structure: rank function at " +
                                        g.vertices()[v].id + " has wrong dimensions");
        RankCheck c = is_rank_function(rho);
        if (!c.ok)
            throw std::invalid_argument("slope structure: rank function at " +
                                        g.vertices()[v].id + " invalid: " + c.violation);
    }
}

bool is_compatible(const MetricGraph& g, const PLFunction& f, const SlopeStructure& s) {
    if (!f.integer_sloped(g)) return false;
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto chain = f.edge_chain(g, ei);
        int prev_idx = -1;
        for (size_t k = 0; k + 1 < chain.size(); ++k) {
            Rat sl = (chain[k + 1].second - chain[k].second) /
                     (chain[k + 1].first - chain[k].first);
            int idx = slope_index(s.slopes_uv[ei], to_long(sl.get_num()));
            if (idx < 0) return false;
            // Interior breakpoint: indices (r - i_left) toward u and
            // i_right toward v must sum to at most r.
            if (k > 0 && (s.r - prev_idx) + idx > s.r) return false;
            prev_idx = idx;
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> idx;
        for (int ei : g.incident(v)) {
            bool from_u = g.edges()[ei].u == v;
            Rat sl = f.slope(g, TangentDirection{Point::vertex(v), ei, from_u});
            int i = slope_index(s.arc(ei, from_u), to_long(sl.get_num()));
            if (i < 0) return false;
            idx.push_back(i);
        }
        if (!is_jump_of(s.vertex_rank[v], idx)) return false;
    }
    return true;
}

namespace {

constexpr long kStateCap = 4000000;

// Exhaustive enumeration of integer-sloped functions on a grid refinement
// whose sub-edge slopes are drawn from the parent arc's slope set.
struct GridSearch {
    const MetricGraph& g;  // original model
    const SlopeStructure& s;
    Refinement rg;
    int root = 0;  // refined vertex index where functions are pinned to 0

    struct Step {
        int edge;   // refined edge index
        int from;   // endpoint already valued (-1 for cycle-closing steps)
        bool tree;
    };
    std::vector<Step> steps;

    GridSearch(const MetricGraph& graph, const SlopeStructure& structure,
               std::vector<Point> pts, const Point& root_point)
        : g(graph), s(structure) {
        pts.push_back(root_point);
        rg = refine(g, pts);
        Point rp = rg.map_point(root_point);
        if (!rp.is_vertex()) throw std::logic_error("refined root must be a vertex");
        root = rp.vertex_index();
        plan();
    }

    void plan() {
        const MetricGraph& h = rg.graph;
        std::vector<char> vseen(h.num_vertices(), 0), eused(h.num_edges(), 0);
        vseen[root] = 1;
        for (int count = 0; count < h.num_edges();) {
            int pick = -1, from = -1;
            bool both = false;
            for (int ei = 0; ei < h.num_edges() && !both; ++ei) {
                if (eused[ei]) continue;
                const Edge& e = h.edges()[ei];
                if (vseen[e.u] && vseen[e.v]) {
                    pick = ei;
                    both = true;  // constrained step: take it first
                } else if (pick < 0 && (vseen[e.u] || vseen[e.v])) {
                    pick = ei;
                    from = vseen[e.u] ? e.u : e.v;
                }
            }
            if (pick < 0) throw std::logic_error("grid search: disconnected refinement");
            eused[pick] = 1;
            ++count;
            if (both) {
                steps.push_back({pick, -1, false});
            } else {
                steps.push_back({pick, from, true});
                vseen[h.other_end(pick, from)] = 1;
            }
        }
    }

    // Visitor gets per-refined-vertex values (root pinned to 0) and the
    // per-refined-edge slope index; returns false to stop the search.
    void enumerate(const std::function<bool(const std::vector<Rat>&,
                                            const std::vector<int>&)>& visit) const {
        const MetricGraph& h = rg.graph;
        std::vector<Rat> values(h.num_vertices(), Rat(0));
        std::vector<int> slope_idx(h.num_edges(), -1);
        long budget = kStateCap;
        bool stop = false;
        std::function<void(size_t)> rec = [&](size_t k) {
            if (stop) return;
            if (--budget < 0)
                throw std::runtime_error(
                    "slope-structure grid search exceeds the state cap of " +
                    std::to_string(kStateCap) + " nodes; coarsen the grid or lower r");
            if (k == steps.size()) {
                if (!visit(values, slope_idx)) stop = true;
                return;
            }
            const Step& st = steps[k];
            const Edge& e = h.edges()[st.edge];
            const auto& sl = s.slopes_uv[rg.new_edge_origin[st.edge].first];
            if (st.tree) {
                int to = h.other_end(st.edge, st.from);
                for (int i = 0; i <= s.r && !stop; ++i) {
                    // slope is measured in the parent edge's u -> v direction
                    values[to] = st.from == e.u ? Rat(values[e.u] + Rat(sl[i]) * e.length)
                                                : Rat(values[e.v] - Rat(sl[i]) * e.length);
                    slope_idx[st.edge] = i;
                    rec(k + 1);
                }
            } else {
                Rat need = (values[e.v] - values[e.u]) / e.length;
                if (need.get_den() != 1) return;
                int i = slope_index(sl, to_long(need.get_num()));
                if (i < 0) return;
                slope_idx[st.edge] = i;
                rec(k + 1);
            }
        };
        rec(0);
    }

    struct VertexEval {
        bool compatible = true;  // arc membership is by construction; this is the jump rule
        int rho = -1;            // rank-function value at the slope vector
        long div_f = 0;          // coefficient of div(f)
    };

    std::vector<VertexEval> evaluate(const std::vector<int>& slope_idx) const {
        const MetricGraph& h = rg.graph;
        int n_old = g.num_vertices();
        std::vector<VertexEval> out(h.num_vertices());
        for (int x = 0; x < h.num_vertices(); ++x) {
            std::vector<int> idx;
            long slope_sum = 0;
            for (int ej : h.incident(x)) {
                int oe = rg.new_edge_origin[ej].first;
                int i = slope_idx[ej];
                bool outgoing_uv = h.edges()[ej].u == x;
                idx.push_back(outgoing_uv ? i : s.r - i);
                slope_sum += outgoing_uv ? s.slopes_uv[oe][i] : -s.slopes_uv[oe][i];
            }
            out[x].div_f = -slope_sum;
            if (x < n_old) {
                const RankFunction& rho = s.vertex_rank[x];
                out[x].compatible = is_jump_of(rho, idx);
                out[x].rho = out[x].compatible ? rho.at(idx) : -1;
            } else {
                int sum = std::accumulate(idx.begin(), idx.end(), 0);
                out[x].compatible = sum <= s.r;
                out[x].rho = s.r - sum;
            }
        }
        return out;
    }

    PLFunction to_plfunction(const std::vector<Rat>& values) const {
        std::vector<Rat> vv(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) vv[v] = values[rg.vertex_map[v]];
        std::vector<std::vector<std::pair<Rat, Rat>>> breaks(g.num_edges());
        for (int ei = 0; ei < g.num_edges(); ++ei)
            for (const auto& [off, nv] : rg.cuts[ei]) breaks[ei].emplace_back(off, values[nv]);
        return PLFunction(std::move(vv), std::move(breaks));
    }
};

}  // namespace

std::vector<PLFunction> compatible_functions(const MetricGraph& g, const SlopeStructure& s,
                                             const std::vector<Point>& grid) {
    validate_slope_structure(g, s);
    if (grid.empty()) throw std::invalid_argument("compatible_functions: empty grid");
    GridSearch gs(g, s, grid, grid.front());
    std::vector<PLFunction> out;
    gs.enumerate([&](const std::vector<Rat>& values, const std::vector<int>& idx) {
        auto ev = gs.evaluate(idx);
        if (std::all_of(ev.begin(), ev.end(), [](const auto& e) { return e.compatible; }))
            out.push_back(gs.to_plfunction(values));
        return true;
    });
    return out;
}

bool is_grd(const MetricGraph& g, const Divisor& d, const SlopeStructure& s,
            const std::vector<Point>& grid) {
    validate_slope_structure(g, s);
    if (grid.empty()) throw std::invalid_argument("is_grd: empty grid");
    GridSearch gs(g, s, grid, grid.front());
    const MetricGraph& h = gs.rg.graph;

    std::vector<long> dd(h.num_vertices(), 0);
    for (const auto& [p, c] : d.coeffs()) {
        Point q = gs.rg.map_point(p);
        if (!q.is_vertex())
            throw std::invalid_argument("is_grd: divisor support must lie on the grid");
        dd[q.vertex_index()] += c;
    }

    // Collect the compatible family once; each E below only filters it.
    std::vector<std::vector<GridSearch::VertexEval>> family;
    gs.enumerate([&](const std::vector<Rat>&, const std::vector<int>& idx) {
        auto ev = gs.evaluate(idx);
        if (std::all_of(ev.begin(), ev.end(), [](const auto& e) { return e.compatible; }))
            family.push_back(std::move(ev));
        return true;
    });

    // All effective E of degree r supported on refined vertices.
    std::vector<long> e_coeff(h.num_vertices(), 0);
    std::function<bool(int, int)> all_e = [&](int x, int remaining) -> bool {
        if (remaining == 0 || x == h.num_vertices() - 1) {
            e_coeff[h.num_vertices() - 1] += remaining;
            bool found = false;
            for (const auto& ev : family) {
                bool ok = true;
                for (int y = 0; y < h.num_vertices() && ok; ++y)
                    ok = ev[y].rho >= e_coeff[y] && ev[y].div_f + dd[y] - e_coeff[y] >= 0;
                if (ok) {
                    found = true;
                    break;
                }
            }
            e_coeff[h.num_vertices() - 1] -= remaining;
            return found;
        }
        for (int take = 0; take <= remaining; ++take) {
            e_coeff[x] = take;
            bool ok = all_e(x + 1, remaining - take);
            e_coeff[x] = 0;
            if (!ok) return false;
        }
        return true;
    };
    return all_e(0, s.r);
}

SlopeReduceResult reduced_wrt(const MetricGraph& g, const Divisor& d, const SlopeStructure& s,
                              const Point& v, const std::vector<Point>& grid) {
    validate_slope_structure(g, s);
    GridSearch gs(g, s, grid, v);
    const MetricGraph& h = gs.rg.graph;

    std::vector<long> dd(h.num_vertices(), 0);
    for (const auto& [p, c] : d.coeffs()) {
        Point q = gs.rg.map_point(p);
        if (!q.is_vertex())
            throw std::invalid_argument("reduced_wrt: divisor support must lie on the grid");
        dd[q.vertex_index()] += c;
    }

    std::optional<PLFunction> min_f;
    gs.enumerate([&](const std::vector<Rat>& values, const std::vector<int>& idx) {
        auto ev = gs.evaluate(idx);
        for (int y = 0; y < h.num_vertices(); ++y)
            if (!ev[y].compatible || ev[y].div_f + dd[y] < 0) return true;
        PLFunction f = gs.to_plfunction(values);
        min_f = min_f ? pl_min(g, *min_f, f) : f;
        return true;
    });
    if (!min_f)
        throw std::runtime_error("reduced_wrt: no compatible function with div(f) + D >= 0 "
                                 "on the grid (not a g^r_d there)");

    if (!is_compatible(g, *min_f, s))
        throw std::logic_error("reduced_wrt: pointwise minimum is not compatible "
                               "(grid too coarse?)");
    Divisor reduced = d + principal_divisor(g, *min_f);

    // Coefficient identity of the reduced divisor at the base point.
    long s0_sum = 0;
    if (v.is_vertex()) {
        for (int ei : g.incident(v.vertex_index()))
            s0_sum += s.arc(ei, g.edges()[ei].u == v.vertex_index()).front();
    } else {
        s0_sum += s.slopes_vu[v.edge_index()].front();
        s0_sum += s.slopes_uv[v.edge_index()].front();
    }
    if (reduced.coeff(v) != d.coeff(v) - s0_sum)
        throw std::logic_error("reduced_wrt: base coefficient != D(v) - sum of minimal slopes "
                               "(grid too coarse?)");
    if (reduced.coeff(v) < s.r)
        throw std::logic_error("reduced_wrt: base coefficient below r");
    return {std::move(reduced), std::move(*min_f)};
}

SlopeStructure shift(const MetricGraph& g, const SlopeStructure& s, const PLFunction& f) {
    if (!f.integer_sloped(g)) throw std::invalid_argument("shift: f must be integer-sloped");
    SlopeStructure out = s;
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto chain = f.edge_chain(g, ei);
        Rat a = (chain.back().second - chain.front().second) / g.edges()[ei].length;
        for (size_t k = 0; k + 1 < chain.size(); ++k)
            if ((chain[k + 1].second - chain[k].second) /
                    (chain[k + 1].first - chain[k].first) != a)
                throw std::invalid_argument("shift: f must be affine on model edge " +
                                            g.edges()[ei].id);
        long av = to_long(a.get_num());
        for (long& x : out.slopes_uv[ei]) x -= av;
        for (long& x : out.slopes_vu[ei]) x += av;
    }
    validate_slope_structure(g, out);  // antisymmetry is preserved by construction
    return out;
}

bool is_equivalent(const MetricGraph& g, const Divisor& d1, const SlopeStructure& s1,
                   const Divisor& d2, const SlopeStructure& s2) {
    validate_slope_structure(g, s1);
    validate_slope_structure(g, s2);
    if (s1.r != s2.r) return false;
    if (s1.vertex_rank != s2.vertex_rank) return false;

    // S1 = S2 - slope(f) forces the slope of f on each edge.
    std::vector<long> a(g.num_edges());
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        long diff = s2.slopes_uv[ei][0] - s1.slopes_uv[ei][0];
        for (int i = 0; i <= s1.r; ++i)
            if (s2.slopes_uv[ei][i] - s1.slopes_uv[ei][i] != diff) return false;
        a[ei] = diff;
    }

    // f exists iff the forced slopes integrate: assign values along a
    // spanning tree, then every remaining edge must close exactly.
    std::vector<Rat> values(g.num_vertices(), Rat(0));
    std::vector<char> seen(g.num_vertices(), 0);
    seen[0] = 1;
    std::vector<int> stack{0};
    std::vector<char> used(g.num_edges(), 0);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int ei : g.incident(x)) {
            int y = g.other_end(ei, x);
            if (seen[y]) continue;
            seen[y] = 1;
            used[ei] = 1;
            const Edge& e = g.edges()[ei];
            values[y] = x == e.u ? Rat(values[x] + Rat(a[ei]) * e.length)
                                 : Rat(values[x] - Rat(a[ei]) * e.length);
            stack.push_back(y);
        }
    }
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        const Edge& e = g.edges()[ei];
        if (!used[ei] && values[e.v] - values[e.u] != Rat(a[ei]) * e.length) return false;
    }
    PLFunction f{std::move(values)};
    return d1 == d2 + principal_divisor(g, f);
}

}  // namespace mg
