#include "mg/weierstrass.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace mg {

namespace {

void check_valence(const MetricGraph& g, const SlopeVertex& sv) {
    int v = g.vertex_index(sv.id);
    if (static_cast<int>(sv.directions.size()) != g.valence(v))
        throw std::invalid_argument("slope data at " + sv.id + " lists " +
                                    std::to_string(sv.directions.size()) +
                                    " directions, expected val = " +
                                    std::to_string(g.valence(v)));
}

std::string partner_arc(const std::string& arc) {
    auto pos = arc.find("->");
    if (pos == std::string::npos)
        throw std::invalid_argument("malformed arc name: " + arc);
    return arc.substr(pos + 2) + "->" + arc.substr(0, pos);
}

}  // namespace

Divisor reduce_weierstrass(const MetricGraph& g, const SlopeData& data) {
    Divisor out;
    const long r = data.r;
    for (const SlopeVertex& sv : data.vertices) {
        check_valence(g, sv);
        long val = static_cast<long>(sv.directions.size());
        long c = (r + 1) * sv.d_x + (r * (r + 1) / 2) * (2 * sv.g_x - 2 + val);
        for (const DirectionSlopes& ds : sv.directions) {
            if (!ds.full)
                throw std::invalid_argument("missing slope list on arc " + ds.arc);
            if (static_cast<long>(ds.full->size()) != r + 1)
                throw std::invalid_argument("slope list on arc " + ds.arc +
                                            " must have r+1 entries");
            c -= std::accumulate(ds.full->begin(), ds.full->end(), 0L);
        }
        out.add(Point::vertex(g.vertex_index(sv.id)), c);
    }
    return out;
}

QDivisor midpoint_weierstrass(const MetricGraph& g, const SlopeData& data) {
    // Minimal slope by arc name, across all vertices.
    std::map<std::string, long> s0_by_arc;
    for (const SlopeVertex& sv : data.vertices)
        for (const DirectionSlopes& ds : sv.directions) {
            long s0;
            if (ds.s0)
                s0 = *ds.s0;
            else if (ds.full && !ds.full->empty())
                s0 = ds.full->front();
            else
                throw std::invalid_argument("missing s0 on arc " + ds.arc);
            s0_by_arc[ds.arc] = s0;
        }

    QDivisor out;
    const long r = data.r;
    for (const SlopeVertex& sv : data.vertices) {
        check_valence(g, sv);
        long val = static_cast<long>(sv.directions.size());
        Rat c = Rat(sv.d_x) + rat(r, 2) * Rat(2 * sv.g_x - 2 + val);
        for (const DirectionSlopes& ds : sv.directions) {
            auto it = s0_by_arc.find(partner_arc(ds.arc));
            if (it == s0_by_arc.end())
                throw std::invalid_argument("missing partner arc for " + ds.arc);
            // directional sum surrogate: (r+1)(s0 + s_r)/2, s_r = -partner s0
            c -= rat(s0_by_arc.at(ds.arc) - it->second, 2);
        }
        out.add(Point::vertex(g.vertex_index(sv.id)), Rat(r + 1) * c);
    }
    return out;
}

long local_weight(const std::vector<long>& s_list, long r) {
    if (static_cast<long>(s_list.size()) != r + 1)
        throw std::invalid_argument("local_weight: list must have r+1 entries");
    if (s_list.front() < 0)
        throw std::invalid_argument("local_weight: slopes must be nonnegative");
    for (size_t i = 0; i + 1 < s_list.size(); ++i)
        if (s_list[i] >= s_list[i + 1])
            throw std::invalid_argument("local_weight: list must be strictly increasing");
    return std::accumulate(s_list.begin(), s_list.end(), 0L) - r * (r + 1) / 2;
}

namespace {

// Sparse integer polynomial, exponent -> coefficient.
using Poly = std::map<long, Int>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Int& c = out[ea + eb];
            c += ca * cb;
            if (c == 0) out.erase(ea + eb);
        }
    return out;
}

void poly_add_scaled(Poly& a, const Poly& b, int sign) {
    for (const auto& [e, c] : b) {
        Int& t = a[e];
        t += sign * c;
        if (t == 0) a.erase(e);
    }
}

// Determinant by Laplace expansion along the first remaining row over the
// column subset; entries are polynomials.
Poly poly_det(const std::vector<std::vector<Poly>>& m, std::vector<int> cols, int row) {
    if (cols.empty()) return Poly{{0, Int(1)}};
    Poly out;
    for (size_t k = 0; k < cols.size(); ++k) {
        const Poly& entry = m[row][cols[k]];
        if (entry.empty()) continue;
        std::vector<int> rest;
        for (size_t l = 0; l < cols.size(); ++l)
            if (l != k) rest.push_back(cols[l]);
        Poly minor = poly_det(m, std::move(rest), row + 1);
        poly_add_scaled(out, poly_mul(entry, minor), k % 2 == 0 ? 1 : -1);
    }
    return out;
}

}  // namespace

long wronskian_order(const std::vector<long>& s_list, long r) {
    local_weight(s_list, r);  // validates shape and strictness
    int n = static_cast<int>(r + 1);
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i) {
        // row i: t^{s_i} and its derivatives d^j/dt^j
        Int coef(1);
        for (int j = 0; j < n; ++j) {
            long e = s_list[i] - j;
            if (e >= 0 && coef != 0) m[i][j][e] = coef;
            coef *= (s_list[i] - j);
        }
    }
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    Poly det = poly_det(m, cols, 0);
    if (det.empty())
        throw std::logic_error("wronskian_order: determinant vanished identically");
    return det.begin()->first;
}

bool total_weight_checks(long curve_genus, long r, const std::vector<long>& weights) {
    return std::accumulate(weights.begin(), weights.end(), 0L) ==
           (curve_genus - 1) * r * (r + 1);
}

}  // namespace mg
