#include <doctest.h>

#include "helpers.hpp"
#include "mg/okounkov.hpp"

using namespace mg;
using namespace mgtest;

namespace {

// s_{n,i} = i for n = 1..n_max: the arithmetic degree-1 genus-1 family.
SlopeFamily arithmetic_family(long n_max) {
    SlopeFamily f;
    f.d = 1;
    f.g = 1;
    for (long n = 1; n <= n_max; ++n) {
        std::vector<long> list;
        for (long s = 0; s < n; ++s) list.push_back(s);
        f.lists[n] = std::move(list);
    }
    return f;
}

}  // namespace

TEST_CASE("fekete_limits on the arithmetic family") {
    SlopeFamily fam = io::slope_family_from_json(io::load_json_file(fixture("family_circle.json")));
    CHECK(fam.d == 1);
    CHECK(fam.g == 1);
    FeketeReport rep = fekete_limits(fam);
    CHECK(rep.violations.empty());
    CHECK(rep.smin_estimate == Rat(0));
    CHECK(rep.smax_estimate == Rat(29, 30));
    // The true limits (0 and 1) lie in the brackets.
    CHECK(rep.smin_lo <= Rat(0));
    CHECK(Rat(0) <= rep.smin_hi);
    CHECK(rep.smax_lo <= Rat(1));
    CHECK(Rat(1) <= rep.smax_hi);
}

TEST_CASE("fekete_limits flags sub/superadditivity violations") {
    SlopeFamily bad;
    bad.d = 1;
    bad.g = 0;
    bad.lists[1] = {0, 1};
    bad.lists[2] = {1, 2, 3};  // s_{2,0} = 1 > s_{1,0} + s_{1,0} = 0
    FeketeReport rep = fekete_limits(bad);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("eta_n atoms and mass") {
    SlopeFamily fam;
    fam.d = 1;
    fam.g = 0;
    fam.lists[1] = {0, 1};
    auto atoms = eta_n(fam, 1);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0] == std::pair<Rat, Rat>{Rat(0), Rat(1, 2)});
    CHECK(atoms[1] == std::pair<Rat, Rat>{Rat(1), Rat(1, 2)});

    auto a10 = eta_n(arithmetic_family(10), 10);
    Rat mass(0);
    for (const auto& [x, m] : a10) mass += m;
    CHECK(mass == Rat(1));
    CHECK(a10.front().first == Rat(0));
    CHECK(a10.back().first == Rat(9, 10));
}

TEST_CASE("exact KS distance to the uniform law") {
    SlopeFamily fam = arithmetic_family(30);
    CHECK(ks_uniformity(fam, 10, Rat(0), Rat(1)) == Rat(1, 10));
    CHECK(ks_uniformity(fam, 30, Rat(0), Rat(1)) == Rat(1, 30));

    // Complete-series count r_n + 1 = n + 1 on a genus-0 family.
    SlopeFamily g0;
    g0.d = 1;
    g0.g = 0;
    g0.lists[10] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(ks_uniformity(g0, 10, Rat(0), Rat(1)) == Rat(1, 11));
}

TEST_CASE("KS distance decreases along the arithmetic family") {
    SlopeFamily fam = arithmetic_family(30);
    Rat prev(1);
    for (long n = 2; n <= 30; ++n) {
        Rat ks = ks_uniformity(fam, n, Rat(0), Rat(1));
        CHECK(ks == Rat(1, n));
        CHECK(ks < prev);
        prev = ks;
    }
}

TEST_CASE("exact Wasserstein-1 distance to the uniform law") {
    SlopeFamily fam = arithmetic_family(30);
    CHECK(wasserstein_uniform(fam, 10, Rat(0), Rat(1)) == Rat(1, 20));
    CHECK(wasserstein_uniform(fam, 30, Rat(0), Rat(1)) == Rat(1, 60));
    // Dirac at 0 vs uniform on [0,1]: W1 = 1/2.
    SlopeFamily dirac;
    dirac.d = 1;
    dirac.g = 0;
    dirac.lists[5] = {0};
    CHECK(wasserstein_uniform(dirac, 5, Rat(0), Rat(1)) == Rat(1, 2));
}

TEST_CASE("sminmax gap vanishes for midpoint-symmetric lists") {
    SlopeFamily fam = arithmetic_family(30);
    for (long n : {1L, 7L, 30L}) CHECK(sminmax_gap(fam, n) == Rat(0));

    // Skewed list: mean below the midpoint.
    SlopeFamily skew;
    skew.d = 1;
    skew.g = 0;
    skew.lists[4] = {0, 1, 2, 7};
    // (0 + 7)/8 - (10/4)/4 = 7/8 - 5/8 = 1/4.
    CHECK(sminmax_gap(skew, 4) == Rat(1, 4));
}

TEST_CASE("okounkov width bound on the arithmetic family") {
    SlopeFamily fam = arithmetic_family(30);
    for (long n = 1; n <= 30; ++n) {
        const auto& list = fam.lists[n];
        Rat width = rat(list.back() - list.front(), n);
        CHECK(rat_abs(width - Rat(fam.d)) <= rat(2 * fam.g, n));
    }
}
