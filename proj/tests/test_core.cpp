#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/linalg.hpp"
#include "mg/plfunction.hpp"

using namespace mg;
using namespace mgtest;

TEST_CASE("validate accepts the fixture models") {
    for (auto g : {circle(), circle4(), theta(), dumbbell()}) CHECK_NOTHROW(validate(g));
}

TEST_CASE("validate rejects each invariant violation") {
    CHECK_THROWS_AS(validate(MetricGraph({{"a", 0}}, {{0, 0, Rat(1), "loop"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(MetricGraph({{"a", 0}, {"b", 0}},
                                         {{0, 1, Rat(1), "e1"}, {0, 1, Rat(2), "e2"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(MetricGraph({{"a", 0}, {"b", 0}}, {{0, 1, Rat(0), "e"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(MetricGraph({{"a", 0}, {"b", 0}, {"c", 0}}, {{0, 1, Rat(1), "e"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(MetricGraph({{"a", -1}, {"b", 0}}, {{0, 1, Rat(1), "e"}})),
                    std::invalid_argument);
}

TEST_CASE("genus: Betti number plus vertex genera") {
    CHECK(genus(circle()).betti == 1);
    CHECK(genus(circle()).total == 1);
    CHECK(genus(theta()).betti == 2);
    CHECK(genus(dumbbell()).total == 2);

    MetricGraph seg({{"u", 1}, {"w", 2}}, {{0, 1, Rat(3), "e"}});
    CHECK(genus(seg).betti == 0);
    CHECK(genus(seg).total == 3);
}

TEST_CASE("canonical divisor has degree 2g - 2 and the expected support") {
    auto th = theta();
    Divisor k = canonical_divisor(th);
    CHECK(k.degree() == 2);
    CHECK(k.coeff(vtx(th, "x")) == 1);
    CHECK(k.coeff(vtx(th, "y")) == 1);
    CHECK(k.coeff(vtx(th, "m1")) == 0);

    CHECK(canonical_divisor(circle()).empty());

    MetricGraph seg({{"u", 1}, {"w", 2}}, {{0, 1, Rat(3), "e"}});
    Divisor ks = canonical_divisor(seg);
    CHECK(ks.coeff(vtx(seg, "u")) == 1);   // 2*1 - 2 + 1
    CHECK(ks.coeff(vtx(seg, "w")) == 3);   // 2*2 - 2 + 1
    CHECK(ks.degree() == 2 * genus(seg).total - 2);

    CHECK(genus_divisor(seg).coeff(vtx(seg, "u")) == 1);
    CHECK(canonical_divisor_graph(seg).coeff(vtx(seg, "u")) == -1);
}

TEST_CASE("tangent directions at vertices and interior points") {
    auto g = circle();
    auto at_p = tangent_directions(g, vtx(g, "p"));
    CHECK(at_p.size() == 2);

    Point mid = Point::on_edge(g, g.edge_index("p-a"), Rat(1, 2));
    auto at_mid = tangent_directions(g, mid);
    CHECK(at_mid.size() == 2);
    CHECK(at_mid[0].toward_v != at_mid[1].toward_v);
}

TEST_CASE("Point::on_edge folds endpoint offsets to vertices") {
    auto g = circle();
    int e = g.edge_index("p-a");
    CHECK(Point::on_edge(g, e, Rat(0)) == vtx(g, "p"));
    CHECK(Point::on_edge(g, e, Rat(1)) == vtx(g, "a"));
    CHECK_FALSE(Point::on_edge(g, e, Rat(1, 3)).is_vertex());
}

TEST_CASE("refine keeps the metric space and transports points both ways") {
    auto g = circle();
    int e = g.edge_index("p-a");
    Point cut = Point::on_edge(g, e, Rat(1, 3));
    Refinement r = refine(g, {cut, vtx(g, "b")});

    CHECK(r.graph.num_vertices() == 4);
    CHECK(r.graph.num_edges() == 4);
    CHECK(genus(r.graph).total == genus(g).total);
    CHECK(r.map_point(cut).is_vertex());
    CHECK(r.unmap_point(g, r.map_point(cut)) == cut);

    // A point that stays interior maps to the right sub-edge offset.
    Point q = Point::on_edge(g, e, Rat(2, 3));
    CHECK(r.unmap_point(g, r.map_point(q)) == q);
    // Total length is preserved.
    Rat before(0), after(0);
    for (const auto& ed : g.edges()) before += ed.length;
    for (const auto& ed : r.graph.edges()) after += ed.length;
    CHECK(before == after);
}

TEST_CASE("refine_uniform and common_length_unit") {
    auto g = circle4();
    CHECK(common_length_unit(g) == Rat(1, 2));
    Refinement r = refine_uniform(g, Rat(1, 4));
    CHECK(r.graph.num_edges() == 12);
    for (const auto& ed : r.graph.edges()) CHECK(ed.length == Rat(1, 4));
    // Every old vertex survives.
    for (int v = 0; v < g.num_vertices(); ++v)
        CHECK(r.graph.vertices()[r.vertex_map[v]].id == g.vertices()[v].id);
}

TEST_CASE("divisor arithmetic") {
    auto g = circle();
    Divisor d;
    d.add(vtx(g, "p"), 2);
    d.add(vtx(g, "a"), -1);
    CHECK(d.degree() == 1);
    CHECK_FALSE(d.effective());
    d.add(vtx(g, "a"), 1);
    CHECK(d.effective());
    CHECK(d.coeffs().size() == 1);  // zero coefficients are dropped

    Divisor e = d + d;
    CHECK(e.coeff(vtx(g, "p")) == 4);
    CHECK((e - d) == d);
}

TEST_CASE("PLFunction evaluation and slopes") {
    auto g = circle();
    // Tent: 0 at p, 1 at a, 0 at b; affine edges.
    PLFunction f({Rat(0), Rat(1), Rat(0)});
    f.check(g);
    CHECK(f.value_at(g, vtx(g, "a")) == Rat(1));
    int e_pa = g.edge_index("p-a");
    CHECK(f.value_at(g, Point::on_edge(g, e_pa, Rat(1, 4))) == Rat(1, 4));
    CHECK(f.slope(g, {vtx(g, "p"), e_pa, true}) == Rat(1));
    CHECK(f.slope(g, {vtx(g, "a"), e_pa, false}) == Rat(-1));
    CHECK(f.integer_sloped(g));
    CHECK(f.max_value(g) == Rat(1));
    CHECK(f.min_value(g) == Rat(0));

    // Interior breakpoint on b-p: value 1/2 at midpoint.
    int e_bp = g.edge_index("b-p");
    std::vector<std::vector<std::pair<Rat, Rat>>> br(g.num_edges());
    br[e_bp] = {{Rat(1, 2), Rat(1, 2)}};
    PLFunction h({Rat(0), Rat(0), Rat(0)}, br);
    h.check(g);
    CHECK(h.value_at(g, Point::on_edge(g, e_bp, Rat(1, 4))) == Rat(1, 4));
    CHECK(h.value_at(g, Point::on_edge(g, e_bp, Rat(3, 4))) == Rat(1, 4));
    CHECK(h.integer_sloped(g));  // slopes are +-1

    Point mid = Point::on_edge(g, e_bp, Rat(1, 2));
    CHECK(h.slope(g, {mid, e_bp, true}) == Rat(-1));
    CHECK(h.slope(g, {mid, e_bp, false}) == Rat(-1));
}

TEST_CASE("pl_combine adds and subtracts with merged breakpoints") {
    auto g = circle();
    int e_bp = g.edge_index("b-p");
    std::vector<std::vector<std::pair<Rat, Rat>>> br(g.num_edges());
    br[e_bp] = {{Rat(1, 2), Rat(1, 2)}};
    PLFunction tent({Rat(0), Rat(0), Rat(0)}, br);
    PLFunction affine({Rat(1), Rat(2), Rat(3)});

    PLFunction sum = pl_add(g, tent, affine);
    sum.check(g);
    CHECK(sum.value_at(g, Point::on_edge(g, e_bp, Rat(1, 2))) ==
          tent.value_at(g, Point::on_edge(g, e_bp, Rat(1, 2))) +
              affine.value_at(g, Point::on_edge(g, e_bp, Rat(1, 2))));
    PLFunction diff = pl_sub(g, sum, affine);
    for (int v = 0; v < g.num_vertices(); ++v)
        CHECK(diff.value_at(g, Point::vertex(v)) == tent.value_at(g, Point::vertex(v)));
    CHECK(diff.value_at(g, Point::on_edge(g, e_bp, Rat(1, 4))) == Rat(1, 4));
}

TEST_CASE("pl_min inserts exact crossing breakpoints") {
    auto g = circle();
    PLFunction f({Rat(0), Rat(1), Rat(0)});
    PLFunction h({Rat(1), Rat(0), Rat(1)});
    PLFunction m = pl_min(g, f, h);
    m.check(g);
    int e_pa = g.edge_index("p-a");
    // f and h cross at offset 1/2 on p-a; min is 1/2 there and below both.
    CHECK(m.value_at(g, Point::on_edge(g, e_pa, Rat(1, 2))) == Rat(1, 2));
    CHECK(m.value_at(g, Point::on_edge(g, e_pa, Rat(1, 4))) == Rat(1, 4));
    CHECK(m.value_at(g, Point::on_edge(g, e_pa, Rat(3, 4))) == Rat(1, 4));
    CHECK(m.value_at(g, vtx(g, "p")) == Rat(0));
    CHECK(m.value_at(g, vtx(g, "a")) == Rat(0));
}

TEST_CASE("exact linear algebra: solve, rank, inverse") {
    RatMatrix a(3, 3);
    a.at(0, 0) = Rat(2); a.at(0, 1) = Rat(1); a.at(0, 2) = Rat(1);
    a.at(1, 0) = Rat(1); a.at(1, 1) = Rat(3); a.at(1, 2) = Rat(2);
    a.at(2, 0) = Rat(1); a.at(2, 1) = Rat(0); a.at(2, 2) = Rat(0);
    std::vector<Rat> b = {Rat(4), Rat(5), Rat(6)};
    auto x = solve_exact(a, b);
    REQUIRE(x.has_value());
    for (int i = 0; i < 3; ++i) {
        Rat acc(0);
        for (int j = 0; j < 3; ++j) acc += a.at(i, j) * (*x)[j];
        CHECK(acc == b[i]);
    }

    CHECK(matrix_rank(a) == 3);
    RatMatrix s(2, 2);
    s.at(0, 0) = Rat(1); s.at(0, 1) = Rat(2);
    s.at(1, 0) = Rat(2); s.at(1, 1) = Rat(4);
    CHECK(matrix_rank(s) == 1);
    CHECK_FALSE(solve_exact(s, {Rat(1), Rat(1)}).has_value());
    CHECK_FALSE(invert_exact(s).has_value());

    auto inv = invert_exact(a);
    REQUIRE(inv.has_value());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat acc(0);
            for (int k = 0; k < 3; ++k) acc += a.at(i, k) * inv->at(k, j);
            CHECK(acc == Rat(i == j ? 1 : 0));
        }
}
