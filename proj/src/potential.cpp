#include "mg/potential.hpp"

#include <array>
#include <stdexcept>

#include "mg/linalg.hpp"

namespace mg {

Measure laplacian(const MetricGraph& g, const PLFunction& f) {
    f.check(g);
    Measure out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        Rat s(0);
        for (const auto& d : tangent_directions(g, Point::vertex(v))) s += f.slope(g, d);
        out.add_atom(Point::vertex(v), -s);
    }
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto chain = f.edge_chain(g, ei);
        for (size_t i = 1; i + 1 < chain.size(); ++i) {
            Rat left = (chain[i - 1].second - chain[i].second) /
                       (chain[i].first - chain[i - 1].first);
            Rat right = (chain[i + 1].second - chain[i].second) /
                        (chain[i + 1].first - chain[i].first);
            out.add_atom(Point::on_edge(g, ei, chain[i].first), -(left + right));
        }
    }
    return out;
}

namespace {

// Component labels; -1 unreachable from any processed seed.
std::vector<int> components(const MetricGraph& g) {
    std::vector<int> comp(g.num_vertices(), -1);
    int next = 0;
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int ei : g.incident(x)) {
                int y = g.other_end(ei, x);
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Resistance between two vertices of a (possibly disconnected) graph.
Resistance vertex_resistance(const MetricGraph& g, int a, int b) {
    if (a == b) return Resistance::finite(Rat(0));
    auto comp = components(g);
    if (comp[a] != comp[b]) return Resistance::inf();

    // Grounded weighted Laplacian on the common component, conductance
    // 1/length per edge; unit current in at a, out at b (= ground).
    std::vector<int> idx(g.num_vertices(), -1);
    int n = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (comp[v] == comp[a] && v != b) idx[v] = n++;
    RatMatrix L(n, n);
    for (const Edge& e : g.edges()) {
        if (comp[e.u] != comp[a]) continue;
        Rat w = Rat(1) / e.length;
        if (idx[e.u] >= 0) L.at(idx[e.u], idx[e.u]) += w;
        if (idx[e.v] >= 0) L.at(idx[e.v], idx[e.v]) += w;
        if (idx[e.u] >= 0 && idx[e.v] >= 0) {
            L.at(idx[e.u], idx[e.v]) -= w;
            L.at(idx[e.v], idx[e.u]) -= w;
        }
    }
    std::vector<Rat> rhs(n, Rat(0));
    rhs[idx[a]] = 1;
    auto phi = solve_exact(L, rhs);
    if (!phi) throw std::logic_error("grounded Laplacian must be nonsingular");
    return Resistance::finite((*phi)[idx[a]]);
}

}  // namespace

Resistance resistance(const MetricGraph& g, const Point& a, const Point& b) {
    if (a == b) return Resistance::finite(Rat(0));
    Refinement r = refine(g, {a, b});
    Point ra = r.map_point(a), rb = r.map_point(b);
    return vertex_resistance(r.graph, ra.vertex_index(), rb.vertex_index());
}

Resistance edge_resistance(const MetricGraph& g, int edge) {
    std::vector<Edge> es;
    for (int ei = 0; ei < g.num_edges(); ++ei)
        if (ei != edge) es.push_back(g.edges()[ei]);
    MetricGraph cut(g.vertices(), std::move(es));
    return vertex_resistance(cut, g.edges()[edge].u, g.edges()[edge].v);
}

Rat green(const MetricGraph& g, const Point& z, const Point& x, const Point& y) {
    auto r = [&](const Point& p, const Point& q) {
        Resistance res = resistance(g, p, q);
        if (res.infinite) throw std::invalid_argument("green: graph must be connected");
        return res.value;
    };
    return (r(z, x) + r(z, y) - r(x, y)) / 2;
}

namespace {

// Quadratic polynomial c0 + c1 t + c2 t^2.
struct Quad {
    Rat c0, c1, c2;
    Rat integral(const Rat& a, const Rat& b) const {
        return c0 * (b - a) + c1 * (b * b - a * a) / 2 + c2 * (b * b * b - a * a * a) / 3;
    }
};

// Exact quadratic through three samples (t_i, y_i).
Quad fit_quadratic(const std::array<std::pair<Rat, Rat>, 3>& s) {
    const auto& [t0, y0] = s[0];
    const auto& [t1, y1] = s[1];
    const auto& [t2, y2] = s[2];
    Rat d01 = (y1 - y0) / (t1 - t0);
    Rat d12 = (y2 - y1) / (t2 - t1);
    Rat c2 = (d12 - d01) / (t2 - t0);
    Rat c1 = d01 - c2 * (t0 + t1);
    Rat c0 = y0 - c1 * t0 - c2 * t0 * t0;
    return {c0, c1, c2};
}

}  // namespace

Rat green_mu(const MetricGraph& g0, const Measure& mu0, const Point& x0, const Point& y0) {
    if (mu0.mass() != 1) throw std::invalid_argument("green_mu: measure must have mass one");
    // Refine so x and y are vertices; the integrand is then a single
    // polynomial on every (sub-)edge interior.
    Refinement r = refine(g0, {x0, y0});
    const MetricGraph& g = r.graph;
    Measure mu = map_measure(g0, mu0, r);
    Point x = r.map_point(x0), y = r.map_point(y0);

    Rat total(0);
    for (const auto& [z, w] : mu.atoms()) total += w * green(g, z, x, y);

    // Density part: z -> g_z(x,y) restricted to an open edge is a quadratic
    // polynomial in the offset (linear on bridges), because the two terms
    // depending on z share the same leading coefficient source r(u,v) in
    // the edge-deleted graph. Recover it exactly from three interior
    // samples and integrate in closed form.
    for (const auto& [ei, pieces] : mu.densities()) {
        const Rat& len = g.edges()[ei].length;
        std::array<std::pair<Rat, Rat>, 3> samples;
        int k = 0;
        for (int num : {1, 2, 3}) {
            Rat t = len * num / 4;
            Point z = Point::on_edge(g, ei, t);
            samples[k++] = {t, green(g, z, x, y)};
        }
        Quad q = fit_quadratic(samples);
        for (const auto& piece : pieces)
            total += piece.density * q.integral(piece.from, piece.to);
    }
    return total;
}

Measure zhang_measure(const MetricGraph& g) {
    validate(g);
    Genus gen = genus(g);
    if (gen.total <= 0) throw std::invalid_argument("zhang_measure: total genus must be positive");
    Rat gt(gen.total);
    Measure mu;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.vertices()[v].genus != 0)
            mu.add_atom(Point::vertex(v), Rat(g.vertices()[v].genus) / gt);
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        Resistance rho = edge_resistance(g, ei);
        if (rho.infinite) continue;  // bridges carry no density
        const Rat& len = g.edges()[ei].length;
        mu.add_density(g, ei, Rat(0), len, Rat(1) / (gt * (len + rho.value)));
    }
    return mu;
}

AdmissibilityReport verify_admissibility(const MetricGraph& g, const Divisor& d,
                                         const Measure& mu,
                                         const std::vector<Point>& samples) {
    if (d.degree() == -2)
        throw std::invalid_argument("verify_admissibility: degree -2 excluded");
    AdmissibilityReport rep;
    for (const Point& x : samples) {
        Rat v(0);
        for (const auto& [p, c] : d.coeffs()) v += Rat(c) * green_mu(g, mu, p, x);
        v += green_mu(g, mu, x, x);
        rep.values.push_back(v);
    }
    rep.ok = !rep.values.empty();
    for (const Rat& v : rep.values)
        if (v != rep.values.front()) rep.ok = false;
    if (!rep.values.empty()) rep.constant = -rep.values.front();
    return rep;
}

}  // namespace mg
