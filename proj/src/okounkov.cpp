#include "mg/okounkov.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mg {

namespace {

const std::vector<long>& list_for(const SlopeFamily& family, long n) {
    auto it = family.lists.find(n);
    if (it == family.lists.end())
        throw std::invalid_argument("slope family has no list for n = " + std::to_string(n));
    if (it->second.empty())
        throw std::invalid_argument("empty slope list at n = " + std::to_string(n));
    for (size_t i = 0; i + 1 < it->second.size(); ++i)
        if (it->second[i] >= it->second[i + 1])
            throw std::invalid_argument("slope list at n = " + std::to_string(n) +
                                        " is not strictly increasing");
    return it->second;
}

}  // namespace

FeketeReport fekete_limits(const SlopeFamily& family) {
    if (family.lists.empty()) throw std::invalid_argument("fekete_limits: empty family");
    FeketeReport rep;
    for (const auto& [n, ln] : family.lists)
        for (const auto& [m, lm] : family.lists) {
            auto it = family.lists.find(n + m);
            if (it == family.lists.end()) continue;
            const auto& lnm = it->second;
            if (lnm.front() > ln.front() + lm.front())
                rep.violations.push_back("minima not subadditive at (n,m) = (" +
                                         std::to_string(n) + "," + std::to_string(m) + ")");
            if (ln.back() + lm.back() > lnm.back())
                rep.violations.push_back("maxima not superadditive at (n,m) = (" +
                                         std::to_string(n) + "," + std::to_string(m) + ")");
        }

    long big_n = family.lists.rbegin()->first;
    const auto& big = family.lists.rbegin()->second;
    rep.smin_estimate = rat(big.front(), big_n);
    rep.smax_estimate = rat(big.back(), big_n);

    // s_min = inf s_{n,0}/n, s_max = sup s_{n,r_n}/n, s_max - s_min = d.
    bool first = true;
    Rat min_over_n, max_over_n;
    for (const auto& [n, l] : family.lists) {
        Rat lo = rat(l.front(), n), hi = rat(l.back(), n);
        if (first || lo < min_over_n) min_over_n = lo;
        if (first || hi > max_over_n) max_over_n = hi;
        first = false;
    }
    rep.smin_hi = min_over_n;
    rep.smin_lo = max_over_n - Rat(family.d);
    rep.smax_lo = max_over_n;
    rep.smax_hi = min_over_n + Rat(family.d);
    return rep;
}

std::vector<std::pair<Rat, Rat>> eta_n(const SlopeFamily& family, long n) {
    const auto& l = list_for(family, n);
    Rat mass = rat(1, static_cast<long>(l.size()));
    std::vector<std::pair<Rat, Rat>> out;
    for (long s : l) out.emplace_back(rat(s, n), mass);
    return out;
}

namespace {

// Uniform-[a,b] cdf, clamped.
Rat uniform_cdf(const Rat& a, const Rat& b, const Rat& x) {
    if (x <= a) return Rat(0);
    if (x >= b) return Rat(1);
    return (x - a) / (b - a);
}

}  // namespace

Rat ks_uniformity(const SlopeFamily& family, long n, const Rat& a, const Rat& b) {
    if (b <= a) throw std::invalid_argument("ks_uniformity: empty interval");
    auto atoms = eta_n(family, n);
    Rat best(0), cum(0);
    for (const auto& [x, m] : atoms) {
        Rat u = uniform_cdf(a, b, x);
        best = std::max(best, rat_abs(cum - u));  // left limit of the empirical cdf
        cum += m;
        best = std::max(best, rat_abs(cum - u));
    }
    return best;
}

Rat wasserstein_uniform(const SlopeFamily& family, long n, const Rat& a, const Rat& b) {
    if (b <= a) throw std::invalid_argument("wasserstein_uniform: empty interval");
    auto atoms = eta_n(family, n);
    std::vector<Rat> cuts{a, b};
    for (const auto& [x, m] : atoms) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rat total(0);
    size_t next_atom = 0;
    Rat cum(0);
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        while (next_atom < atoms.size() && atoms[next_atom].first <= cuts[k])
            cum += atoms[next_atom++].second;
        // On (cuts[k], cuts[k+1]) the empirical cdf is the constant cum and
        // the uniform cdf is affine; integrate |affine| with a sign split.
        Rat g0 = cum - uniform_cdf(a, b, cuts[k]);
        Rat g1 = cum - uniform_cdf(a, b, cuts[k + 1]);
        Rat len = cuts[k + 1] - cuts[k];
        if ((g0 >= 0) == (g1 >= 0)) {
            total += (rat_abs(g0) + rat_abs(g1)) * len / 2;
        } else {
            Rat t = rat_abs(g0) / (rat_abs(g0) + rat_abs(g1));  // zero crossing
            total += (rat_abs(g0) * t + rat_abs(g1) * (1 - t)) * len / 2;
        }
    }
    return total;
}

Rat sminmax_gap(const SlopeFamily& family, long n) {
    const auto& l = list_for(family, n);
    if (family.d <= 0) throw std::invalid_argument("sminmax_gap: need d > 0");
    long sum = std::accumulate(l.begin(), l.end(), 0L);
    return rat(l.front() + l.back(), 2 * n * family.d) -
           rat(sum, n * family.d * static_cast<long>(l.size()));
}

}  // namespace mg
