#pragma once

#include <map>
#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/rational.hpp"

namespace mg {

// Signed measure: finite atoms plus per-edge piecewise constant densities
// (rational mass per unit length on disjoint ordered subintervals).
class Measure {
public:
    struct DensityPiece {
        Rat from, to, density;

        friend bool operator==(const DensityPiece& a, const DensityPiece& b) {
            return a.from == b.from && a.to == b.to && a.density == b.density;
        }
    };

    Measure() = default;

    const std::map<Point, Rat>& atoms() const { return atoms_; }
    const std::map<int, std::vector<DensityPiece>>& densities() const { return densities_; }

    void add_atom(const Point& p, const Rat& mass) {
        if (mass == 0) return;
        auto [it, ins] = atoms_.emplace(p, mass);
        if (!ins) {
            it->second += mass;
            if (it->second == 0) atoms_.erase(it);
        }
    }
    // Appends a constant-density piece on [from, to] of an edge; pieces on
    // one edge must be added in increasing disjoint order.
    void add_density(const MetricGraph& g, int edge, const Rat& from, const Rat& to,
                     const Rat& density);

    Rat atom_at(const Point& p) const {
        auto it = atoms_.find(p);
        return it == atoms_.end() ? Rat(0) : it->second;
    }
    // Density value at a given interior offset (0 outside all pieces).
    Rat density_at(int edge, const Rat& offset) const;

    Rat mass() const;
    bool nonnegative() const;

    // Mass of atoms with offset in [from, to) on an edge, plus density mass
    // there. Endpoint vertices are not included (they are atoms at Points).
    Rat segment_mass(const MetricGraph& g, int edge, const Rat& from, const Rat& to) const;

    friend Measure operator-(const Measure& a, const Measure& b);
    friend bool operator==(const Measure&, const Measure&) = default;

    static Measure dirac(const Point& p) {
        Measure m;
        m.add_atom(p, Rat(1));
        return m;
    }
    static Measure from_divisor(const QDivisor& d) {
        Measure m;
        for (const auto& [p, c] : d.coeffs()) m.add_atom(p, c);
        return m;
    }

private:
    std::map<Point, Rat> atoms_;
    std::map<int, std::vector<DensityPiece>> densities_;
};

// Transports a measure to a refinement of its graph (atoms re-anchored,
// density pieces split across sub-edges).
Measure map_measure(const MetricGraph& old_graph, const Measure& mu, const Refinement& r);

}  // namespace mg
