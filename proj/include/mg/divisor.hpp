#pragma once

#include <map>
#include <string>

#include "mg/graph.hpp"
#include "mg/rational.hpp"

namespace mg {

// Finite formal sum of points with coefficients in C (long for honest
// divisors, Rat for diagnostic midpoint-mode output). Zero coefficients
// are never stored.
template <typename C>
class BasicDivisor {
public:
    using Map = std::map<Point, C>;

    BasicDivisor() = default;

    const Map& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    C coeff(const Point& p) const {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? C(0) : it->second;
    }

    void add(const Point& p, const C& c) {
        if (c == C(0)) return;
        auto [it, inserted] = coeffs_.emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == C(0)) coeffs_.erase(it);
        }
    }

    C degree() const {
        C d(0);
        for (const auto& [p, c] : coeffs_) d += c;
        return d;
    }

    bool effective() const {
        for (const auto& [p, c] : coeffs_)
            if (c < C(0)) return false;
        return true;
    }

    BasicDivisor& operator+=(const BasicDivisor& o) {
        for (const auto& [p, c] : o.coeffs_) add(p, c);
        return *this;
    }
    BasicDivisor& operator-=(const BasicDivisor& o) {
        for (const auto& [p, c] : o.coeffs_) add(p, C(0) - c);
        return *this;
    }
    friend BasicDivisor operator+(BasicDivisor a, const BasicDivisor& b) { return a += b; }
    friend BasicDivisor operator-(BasicDivisor a, const BasicDivisor& b) { return a -= b; }
    friend bool operator==(const BasicDivisor&, const BasicDivisor&) = default;

    BasicDivisor scaled(const C& k) const {
        BasicDivisor out;
        if (k == C(0)) return out;
        for (const auto& [p, c] : coeffs_) out.coeffs_.emplace(p, c * k);
        return out;
    }

private:
    Map coeffs_;
};

using Divisor = BasicDivisor<long>;
using QDivisor = BasicDivisor<Rat>;

inline QDivisor to_qdivisor(const Divisor& d) {
    QDivisor out;
    for (const auto& [p, c] : d.coeffs()) out.add(p, Rat(c));
    return out;
}

// K_X = sum over vertices of (2 g_x - 2 + val(x)) (x); degree 2g - 2.
Divisor canonical_divisor(const MetricGraph& g);
// Valence part K_Gamma = sum (val(x) - 2)(x).
Divisor canonical_divisor_graph(const MetricGraph& g);
// Genus part K_g = sum g_x (x).
Divisor genus_divisor(const MetricGraph& g);

// Transports a divisor to a refinement of its graph.
template <typename C>
BasicDivisor<C> map_divisor(const BasicDivisor<C>& d, const Refinement& r) {
    BasicDivisor<C> out;
    for (const auto& [p, c] : d.coeffs()) out.add(r.map_point(p), c);
    return out;
}

}  // namespace mg
