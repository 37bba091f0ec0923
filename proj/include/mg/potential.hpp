#pragma once

#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/measure.hpp"
#include "mg/plfunction.hpp"
#include "mg/rational.hpp"

namespace mg {

// Effective resistance value; infinite exactly when the terminals lie in
// different components of the network.
struct Resistance {
    bool infinite = false;
    Rat value;  // meaningful only when finite

    static Resistance inf() { return {true, Rat(0)}; }
    static Resistance finite(Rat v) { return {false, std::move(v)}; }
    friend bool operator==(const Resistance&, const Resistance&) = default;
};

// Measure-valued Laplacian of a piecewise affine function: purely atomic,
// with atom -sum of outgoing slopes at every vertex and breakpoint.
Measure laplacian(const MetricGraph& g, const PLFunction& f);

// Effective resistance between two points, unit resistance per unit length.
Resistance resistance(const MetricGraph& g, const Point& a, const Point& b);

// Resistance between the endpoints of e in the graph with the open edge e
// removed; infinite for bridges.
Resistance edge_resistance(const MetricGraph& g, int edge);

// Green function g_z(x,y), normalized by g_z(x,z) = 0; computed as
// (r(z,x) + r(z,y) - r(x,y)) / 2.
Rat green(const MetricGraph& g, const Point& z, const Point& x, const Point& y);

// g_mu(x,y) = integral of g_z(x,y) d mu(z) for a mass-one measure in the
// atom + piecewise-constant-density class; exact.
Rat green_mu(const MetricGraph& g, const Measure& mu, const Point& x, const Point& y);

// Zhang's canonical admissible measure: (1/g) delta_{K_g} plus density
// 1/(g (l_e + rho_e)) per edge; requires total genus g > 0.
Measure zhang_measure(const MetricGraph& g);

struct AdmissibilityReport {
    bool ok = false;
    Rat constant;                // c with c + g_mu(D,x) + g_mu(x,x) = 0
    std::vector<Rat> values;     // per-sample g_mu(D,x) + g_mu(x,x)
};

// Evaluates g_mu(D,x) + g_mu(x,x) at the samples; ok iff the value is one
// and the same rational everywhere.
AdmissibilityReport verify_admissibility(const MetricGraph& g, const Divisor& d,
                                         const Measure& mu, const std::vector<Point>& samples);

}  // namespace mg
