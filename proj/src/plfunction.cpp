#include "mg/plfunction.hpp"

#include <algorithm>
#include <stdexcept>

namespace mg {

namespace {

Rat interpolate(const std::vector<std::pair<Rat, Rat>>& chain, const Rat& t) {
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        if (t >= chain[i].first && t <= chain[i + 1].first) {
            const Rat& t0 = chain[i].first;
            const Rat& t1 = chain[i + 1].first;
            if (t == t0) return chain[i].second;
            if (t == t1) return chain[i + 1].second;
            return chain[i].second +
                   (chain[i + 1].second - chain[i].second) * (t - t0) / (t1 - t0);
        }
    }
    throw std::invalid_argument("offset outside edge");
}

}  // namespace

std::vector<std::pair<Rat, Rat>> PLFunction::edge_chain(const MetricGraph& g, int edge) const {
    const Edge& e = g.edges()[edge];
    std::vector<std::pair<Rat, Rat>> chain;
    chain.emplace_back(Rat(0), vertex_values_.at(e.u));
    if (edge < static_cast<int>(edge_breaks_.size()))
        for (const auto& b : edge_breaks_[edge]) chain.push_back(b);
    chain.emplace_back(e.length, vertex_values_.at(e.v));
    return chain;
}

Rat PLFunction::value_at(const MetricGraph& g, const Point& p) const {
    if (p.is_vertex()) return vertex_values_.at(p.vertex_index());
    return interpolate(edge_chain(g, p.edge_index()), p.offset());
}

Rat PLFunction::slope(const MetricGraph& g, const TangentDirection& d) const {
    auto chain = edge_chain(g, d.edge);
    Rat t = d.base.is_vertex()
                ? (g.edges()[d.edge].u == d.base.vertex_index() ? Rat(0)
                                                                : g.edges()[d.edge].length)
                : d.base.offset();
    if (d.toward_v) {
        for (size_t i = 0; i + 1 < chain.size(); ++i)
            if (chain[i].first <= t && t < chain[i + 1].first)
                return (chain[i + 1].second - chain[i].second) /
                       (chain[i + 1].first - chain[i].first);
    } else {
        for (size_t i = chain.size(); i-- > 1;)
            if (chain[i - 1].first < t && t <= chain[i].first)
                return (chain[i - 1].second - chain[i].second) /
                       (chain[i].first - chain[i - 1].first);
    }
    throw std::invalid_argument("tangent direction leaves the edge");
}

void PLFunction::check(const MetricGraph& g) const {
    if (static_cast<int>(vertex_values_.size()) != g.num_vertices())
        throw std::invalid_argument("PLFunction: wrong vertex count");
    if (static_cast<int>(edge_breaks_.size()) > g.num_edges())
        throw std::invalid_argument("PLFunction: too many edge entries");
    for (size_t ei = 0; ei < edge_breaks_.size(); ++ei) {
        const Rat& len = g.edges()[ei].length;
        Rat prev(0);
        for (const auto& [t, v] : edge_breaks_[ei]) {
            if (t <= prev || t >= len)
                throw std::invalid_argument("PLFunction: breakpoints must be strictly "
                                            "increasing inside edge " + g.edges()[ei].id);
            prev = t;
        }
    }
}

bool PLFunction::integer_sloped(const MetricGraph& g) const {
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto chain = edge_chain(g, ei);
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            Rat s = (chain[i + 1].second - chain[i].second) /
                    (chain[i + 1].first - chain[i].first);
            if (s.get_den() != 1) return false;
        }
    }
    return true;
}

PLFunction pl_combine(const MetricGraph& g, const PLFunction& f, const PLFunction& h,
                      int sign) {
    std::vector<Rat> vv(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        vv[v] = f.vertex_values().at(v) + Rat(sign) * h.vertex_values().at(v);
    std::vector<std::vector<std::pair<Rat, Rat>>> breaks(g.num_edges());
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto a = f.edge_chain(g, ei);
        auto b = h.edge_chain(g, ei);
        std::vector<Rat> offs;
        for (const auto& p : a) offs.push_back(p.first);
        for (const auto& p : b) offs.push_back(p.first);
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        for (const Rat& t : offs) {
            if (t == 0 || t == g.edges()[ei].length) continue;
            breaks[ei].emplace_back(t, interpolate(a, t) + Rat(sign) * interpolate(b, t));
        }
    }
    return PLFunction(std::move(vv), std::move(breaks));
}

PLFunction pl_min(const MetricGraph& g, const PLFunction& f, const PLFunction& h) {
    std::vector<Rat> vv(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        vv[v] = std::min(f.vertex_values().at(v), h.vertex_values().at(v));
    std::vector<std::vector<std::pair<Rat, Rat>>> breaks(g.num_edges());
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        auto a = f.edge_chain(g, ei);
        auto b = h.edge_chain(g, ei);
        std::vector<Rat> offs;
        for (const auto& p : a) offs.push_back(p.first);
        for (const auto& p : b) offs.push_back(p.first);
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        // Both functions are affine between consecutive merged offsets;
        // insert the crossing offset where they swap order.
        std::vector<Rat> all = offs;
        for (size_t i = 0; i + 1 < offs.size(); ++i) {
            Rat fa = interpolate(a, offs[i]) - interpolate(b, offs[i]);
            Rat fb = interpolate(a, offs[i + 1]) - interpolate(b, offs[i + 1]);
            if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0))
                all.push_back(offs[i] + (offs[i + 1] - offs[i]) * fa / (fa - fb));
        }
        std::sort(all.begin(), all.end());
        for (const Rat& t : all) {
            if (t == 0 || t == g.edges()[ei].length) continue;
            breaks[ei].emplace_back(t, std::min(interpolate(a, t), interpolate(b, t)));
        }
    }
    return PLFunction(std::move(vv), std::move(breaks));
}

void PLFunction::shift_by(const Rat& c) {
    for (Rat& v : vertex_values_) v += c;
    for (auto& eb : edge_breaks_)
        for (auto& [t, v] : eb) v += c;
}

Rat PLFunction::max_value(const MetricGraph& g) const {
    Rat m = vertex_values_.at(0);
    for (const Rat& v : vertex_values_) m = std::max(m, v);
    for (const auto& eb : edge_breaks_)
        for (const auto& [t, v] : eb) m = std::max(m, v);
    return m;
}

Rat PLFunction::min_value(const MetricGraph& g) const {
    Rat m = vertex_values_.at(0);
    for (const Rat& v : vertex_values_) m = std::min(m, v);
    for (const auto& eb : edge_breaks_)
        for (const auto& [t, v] : eb) m = std::min(m, v);
    return m;
}

}  // namespace mg
