#pragma once

#include <map>
#include <string>
#include <vector>

#include "mg/rational.hpp"

namespace mg {

// Family of sorted slope lists S_n along one tangent direction; for large
// n the list length is r_n + 1 = n d - g + 1.
struct SlopeFamily {
    long d = 0;  // degree of the underlying divisor
    long g = 0;  // total genus
    std::map<long, std::vector<long>> lists;  // n -> s_{n,0} < ... < s_{n,r_n}
};

struct FeketeReport {
    Rat smin_estimate;  // s_{N,0}/N at the largest N
    Rat smax_estimate;  // s_{N,r_N}/N at the largest N
    // Bracketing intervals from sub/superadditivity: the true limits lie in
    // [smin_lo, smin_hi] and [smax_lo, smax_hi].
    Rat smin_lo, smin_hi;
    Rat smax_lo, smax_hi;
    std::vector<std::string> violations;  // offending (n, m) pairs, if any
};

// Checks s_{n+m,0} <= s_{n,0} + s_{m,0} (subadditive minima) and
// s_{n,r_n} + s_{m,r_m} <= s_{n+m,r_{n+m}} (superadditive maxima) on all
// available pairs and extracts Fekete estimates with brackets.
FeketeReport fekete_limits(const SlopeFamily& family);

// eta_n = (1/(r_n+1)) sum of Dirac masses at s/n; returned as sorted
// (point, mass) atoms with total mass exactly 1.
std::vector<std::pair<Rat, Rat>> eta_n(const SlopeFamily& family, long n);

// Exact Kolmogorov-Smirnov distance between eta_n and the uniform law on
// [a, b] (cdf comparison at atoms and their left limits).
Rat ks_uniformity(const SlopeFamily& family, long n, const Rat& a, const Rat& b);

// Exact Wasserstein-1 distance between eta_n and the uniform law on
// [a, b]: integral of |F_eta - F_uniform|.
Rat wasserstein_uniform(const SlopeFamily& family, long n, const Rat& a, const Rat& b);

// (s_{n,0} + s_{n,r_n})/(2nd) - (sum of s)/(nd(r_n+1)); tends to 0 for
// equidistributing families, exactly 0 for midpoint-symmetric lists.
Rat sminmax_gap(const SlopeFamily& family, long n);

}  // namespace mg
