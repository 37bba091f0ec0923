#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "mg/weierstrass.hpp"

using namespace mg;
using namespace mgtest;

namespace {

DirectionSlopes full_arc(const std::string& arc, std::vector<long> s) {
    DirectionSlopes d;
    d.arc = arc;
    d.full = std::move(s);
    return d;
}

DirectionSlopes s0_arc(const std::string& arc, long s0) {
    DirectionSlopes d;
    d.arc = arc;
    d.s0 = s0;
    return d;
}

}  // namespace

TEST_CASE("reduce_weierstrass: standard slopes at a plain 2-valent vertex cancel") {
    MetricGraph g({{"u", 1}, {"a", 0}, {"w", 1}},
                  {{0, 1, Rat(1), "u-a"}, {1, 2, Rat(1), "a-w"}});
    SlopeData data;
    data.n = 1;
    data.r = 1;
    data.vertices = {
        {"u", 1, 1, {full_arc("u->a", {0, 1})}},
        {"a", 0, 0, {full_arc("a->u", {-1, 0}), full_arc("a->w", {0, 1})}},
        {"w", 1, 1, {full_arc("w->a", {-1, 0})}},
    };
    Divisor w = reduce_weierstrass(g, data);
    // At a: 2*0 + 1*(0 - 2 + 2) - ((-1 + 0) + (0 + 1)) = 0.
    CHECK(w.coeff(vtx(g, "a")) == 0);
    // At u (leaf, genus 1, d_x = 1): 2*1 + 1*(2 - 2 + 1) - (0 + 1) = 2.
    CHECK(w.coeff(vtx(g, "u")) == 2);
    // At w: 2*1 + 1*(2 - 2 + 1) - (-1 + 0) = 4.
    CHECK(w.coeff(vtx(g, "w")) == 4);
    CHECK(w.degree() == 6);
}

TEST_CASE("reduce_weierstrass on the degree-2 circle fixture") {
    auto g = load_graph("circle4.json");
    SlopeData data = io::slope_data_from_json(io::load_json_file(fixture("slopedata_g12.json")));
    Divisor w = reduce_weierstrass(g, data);
    CHECK(w.coeff(vtx(g, "p")) == 2);
    CHECK(w.coeff(vtx(g, "a")) == 0);
    CHECK(w.coeff(vtx(g, "m")) == 2);
    CHECK(w.coeff(vtx(g, "b")) == 0);
    long gen = genus(g).total;
    CHECK(w.degree() == gen * (data.r + 1) * (data.r + 1));
}

TEST_CASE("reduce_weierstrass on the rank-0 circle fixture") {
    auto g = load_graph("circle.json");
    SlopeData data = io::slope_data_from_json(io::load_json_file(fixture("slopedata_r0.json")));
    Divisor w = reduce_weierstrass(g, data);
    CHECK(w.degree() == 1);
    CHECK(w.coeff(vtx(g, "p")) == 1);
}

TEST_CASE("midpoint surrogate equals the full formula on arithmetic lists") {
    auto g = load_graph("circle4.json");
    SlopeData full = io::slope_data_from_json(io::load_json_file(fixture("slopedata_g12.json")));
    // Strip the lists down to their minima.
    SlopeData mins = full;
    for (auto& sv : mins.vertices)
        for (auto& ds : sv.directions) {
            ds.s0 = ds.full->front();
            ds.full.reset();
        }
    QDivisor approx = midpoint_weierstrass(g, mins);
    CHECK(approx == to_qdivisor(reduce_weierstrass(g, full)));
}

TEST_CASE("reduce_weierstrass requires full lists") {
    auto g = load_graph("circle.json");
    SlopeData data;
    data.r = 0;
    data.vertices = {{"p", 1, 0, {s0_arc("p->a", 0), s0_arc("p->b", 0)}},
                     {"a", 0, 0, {s0_arc("a->p", 0), s0_arc("a->b", 0)}},
                     {"b", 0, 0, {s0_arc("b->a", 0), s0_arc("b->p", 0)}}};
    CHECK_THROWS_AS(reduce_weierstrass(g, data), std::invalid_argument);
    CHECK(midpoint_weierstrass(g, data).degree() == Rat(1));
}

TEST_CASE("local weight of vanishing sequences") {
    CHECK(local_weight({0, 1, 2, 3}, 3) == 0);
    CHECK(local_weight({0, 2}, 1) == 1);
    CHECK(local_weight({1, 2, 3}, 2) == 3);
    CHECK(local_weight({0, 5}, 1) == 4);
    CHECK_THROWS_AS(local_weight({0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(local_weight({2, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(local_weight({0, 1, 2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(local_weight({-1, 0}, 1), std::invalid_argument);
}

TEST_CASE("wronskian vanishing order matches the combinatorial weight") {
    CHECK(wronskian_order({0, 1, 2}, 2) == 0);
    CHECK(wronskian_order({0, 2}, 1) == 1);
    CHECK(wronskian_order({1, 3, 5}, 2) == 6);

    std::mt19937 rng(424242);
    for (int trial = 0; trial < 500; ++trial) {
        long r = std::uniform_int_distribution<long>(0, 4)(rng);
        // Strictly increasing list of r+1 values in [0, 12].
        std::vector<long> pool(13);
        for (long i = 0; i <= 12; ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<long> s(pool.begin(), pool.begin() + r + 1);
        std::sort(s.begin(), s.end());
        CHECK(wronskian_order(s, r) == local_weight(s, r));
    }
}

TEST_CASE("total weight identity") {
    CHECK(total_weight_checks(1, 1, {}));                 // elliptic, no weight
    CHECK(total_weight_checks(1, 3, {}));
    CHECK(total_weight_checks(2, 1, {1, 1}));             // genus 2, g^1_2
    CHECK(total_weight_checks(3, 1, {1, 1, 1, 1}));
    CHECK(total_weight_checks(0, 1, {-2}));               // span{1,t} in k(t)
    CHECK_FALSE(total_weight_checks(1, 1, {1}));
    CHECK_FALSE(total_weight_checks(2, 1, {1}));
}
