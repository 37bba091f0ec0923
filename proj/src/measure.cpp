#include "mg/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace mg {

void Measure::add_density(const MetricGraph& g, int edge, const Rat& from, const Rat& to,
                          const Rat& density) {
    if (from < 0 || to > g.edges().at(edge).length || from >= to)
        throw std::invalid_argument("bad density interval on edge " + g.edges()[edge].id);
    if (density == 0) return;
    auto& pieces = densities_[edge];
    if (!pieces.empty() && pieces.back().to > from)
        throw std::invalid_argument("overlapping density pieces on edge " + g.edges()[edge].id);
    pieces.push_back({from, to, density});
}

Rat Measure::density_at(int edge, const Rat& offset) const {
    auto it = densities_.find(edge);
    if (it == densities_.end()) return Rat(0);
    for (const auto& p : it->second)
        if (p.from <= offset && offset < p.to) return p.density;
    return Rat(0);
}

Rat Measure::mass() const {
    Rat m(0);
    for (const auto& [p, w] : atoms_) m += w;
    for (const auto& [e, pieces] : densities_)
        for (const auto& p : pieces) m += p.density * (p.to - p.from);
    return m;
}

bool Measure::nonnegative() const {
    for (const auto& [p, w] : atoms_)
        if (w < 0) return false;
    for (const auto& [e, pieces] : densities_)
        for (const auto& p : pieces)
            if (p.density < 0) return false;
    return true;
}

Rat Measure::segment_mass(const MetricGraph& g, int edge, const Rat& from,
                          const Rat& to) const {
    Rat m(0);
    for (const auto& [p, w] : atoms_)
        if (!p.is_vertex() && p.edge_index() == edge && from <= p.offset() && p.offset() < to)
            m += w;
    auto it = densities_.find(edge);
    if (it != densities_.end())
        for (const auto& piece : it->second) {
            Rat a = std::max(piece.from, from);
            Rat b = std::min(piece.to, to);
            if (a < b) m += piece.density * (b - a);
        }
    return m;
}

Measure operator-(const Measure& a, const Measure& b) {
    Measure out = a;
    for (const auto& [p, w] : b.atoms_) out.add_atom(p, -w);
    // Densities: merge piecewise-constant profiles per edge.
    for (const auto& [e, bps] : b.densities_) {
        auto& pieces = out.densities_[e];
        std::vector<Rat> cut;
        for (const auto& p : pieces) {
            cut.push_back(p.from);
            cut.push_back(p.to);
        }
        for (const auto& p : bps) {
            cut.push_back(p.from);
            cut.push_back(p.to);
        }
        std::sort(cut.begin(), cut.end());
        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
        auto value = [](const std::vector<Measure::DensityPiece>& ps, const Rat& t) {
            for (const auto& p : ps)
                if (p.from <= t && t < p.to) return p.density;
            return Rat(0);
        };
        std::vector<Measure::DensityPiece> merged;
        for (size_t i = 0; i + 1 < cut.size(); ++i) {
            Rat d = value(pieces, cut[i]) - value(bps, cut[i]);
            if (d != 0) merged.push_back({cut[i], cut[i + 1], d});
        }
        if (merged.empty())
            out.densities_.erase(e);
        else
            pieces = std::move(merged);
    }
    return out;
}

Measure map_measure(const MetricGraph& old_graph, const Measure& mu, const Refinement& r) {
    Measure out;
    for (const auto& [p, w] : mu.atoms()) out.add_atom(r.map_point(p), w);
    for (const auto& [ei, pieces] : mu.densities()) {
        // Segment boundaries of old edge ei in the refined model.
        std::vector<Rat> bounds{Rat(0)};
        for (const auto& [off, v] : r.cuts[ei]) bounds.push_back(off);
        bounds.push_back(old_graph.edges()[ei].length);
        for (const auto& piece : pieces) {
            for (size_t k = 0; k + 1 < bounds.size(); ++k) {
                Rat a = std::max(piece.from, bounds[k]);
                Rat b = std::min(piece.to, bounds[k + 1]);
                if (a >= b) continue;
                const std::string& base = r.old_edge_ids[ei];
                std::string sub_id =
                    r.cuts[ei].empty() ? base : base + "#" + std::to_string(k);
                int sub = r.graph.edge_index(sub_id);
                out.add_density(r.graph, sub, a - bounds[k], b - bounds[k], piece.density);
            }
        }
    }
    return out;
}

}  // namespace mg
