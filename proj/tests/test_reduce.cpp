#include <doctest.h>

#include "helpers.hpp"
#include "mg/potential.hpp"
#include "mg/reduce.hpp"

using namespace mg;
using namespace mgtest;

TEST_CASE("principal divisor of the antipodal tent on the circle") {
    auto g = circle4();
    // f: 0 at p, 1 at a, 3/2 at m, 1 at b; slopes +1, +1, -1, -1 around.
    PLFunction tent({Rat(0), Rat(1), Rat(3, 2), Rat(1)});
    Divisor dv = principal_divisor(g, tent);
    CHECK(dv.degree() == 0);
    CHECK(dv.coeff(vtx(g, "p")) == -2);
    CHECK(dv.coeff(vtx(g, "m")) == 2);
    CHECK(dv.coeffs().size() == 2);
}

TEST_CASE("principal divisor rejects non-integer slopes") {
    MetricGraph path({{"x", 0}, {"y", 0}}, {{0, 1, Rat(2), "e"}});
    PLFunction f({Rat(0), Rat(1)});  // slope 1/2
    CHECK_THROWS(principal_divisor(path, f));
}

TEST_CASE("reduce: divisor at the base point is already reduced") {
    auto g = circle();
    Point a = vtx(g, "a");
    auto res = reduce(g, dirac_divisor(a, 3), a);
    CHECK(res.reduced == dirac_divisor(a, 3));
    CHECK(res.witness.value_at(g, a) == Rat(0));
    CHECK(res.witness.max_value(g) == Rat(0));
    CHECK(res.witness.min_value(g) == Rat(0));
}

TEST_CASE("reduce on the circle follows the Abel-Jacobi class") {
    auto g = circle();
    Point p = vtx(g, "p");
    Point a = vtx(g, "a");
    Point b = vtx(g, "b");

    // deg 1: the class of (p) contains exactly one effective divisor, (p).
    auto r1 = reduce(g, dirac_divisor(p), a);
    CHECK(r1.reduced == dirac_divisor(p));

    // deg 5 at p, base a: 5(p) ~ 4(a) + (b) since 5*theta(p) = 0 and the
    // unique a-reduced representative puts the residual class at distance
    // matching the circle group element.
    auto r5 = reduce(g, dirac_divisor(p, 5), a);
    Divisor expect;
    expect.add(a, 4);
    expect.add(b, 1);
    CHECK(r5.reduced == expect);

    // deg 3 at p, base a: 3(p) ~ 3(a).
    auto r3 = reduce(g, dirac_divisor(p, 3), a);
    CHECK(r3.reduced == dirac_divisor(a, 3));
}

TEST_CASE("reduce witness is consistent: reduced = d + div(witness)") {
    auto g = theta();
    Divisor d;
    d.add(vtx(g, "x"), 4);
    d.add(vtx(g, "m2"), -1);
    Point base = vtx(g, "m1");
    auto res = reduce(g, d, base);
    CHECK(res.witness.value_at(g, base) == Rat(0));
    CHECK(res.witness.integer_sloped(g));

    // Verify on a common refinement at all support and breakpoints.
    std::vector<Point> cuts;
    for (const auto& [pt, c] : res.reduced.coeffs()) cuts.push_back(pt);
    for (const auto& [pt, c] : d.coeffs()) cuts.push_back(pt);
    Refinement r = refine(g, cuts);
    std::vector<Rat> vals;
    for (int v = 0; v < r.graph.num_vertices(); ++v)
        vals.push_back(res.witness.value_at(g, r.unmap_point(g, Point::vertex(v))));
    PLFunction fw(vals);
    Divisor got = map_divisor(d, r) + principal_divisor(r.graph, fw);
    CHECK(got == map_divisor(res.reduced, r));

    // Effective away from the base point.
    for (const auto& [pt, c] : res.reduced.coeffs())
        if (!(pt == base)) CHECK(c > 0);
}

TEST_CASE("reduce is a projection: reducing the output is a fixed point") {
    auto g = dumbbell();
    Divisor d;
    d.add(vtx(g, "a2"), 3);
    d.add(vtx(g, "b3"), 2);
    Point base = vtx(g, "b1");
    auto once = reduce(g, d, base);
    auto twice = reduce(g, once.reduced, base);
    CHECK(twice.reduced == once.reduced);
    CHECK(twice.witness.max_value(g) == Rat(0));
    CHECK(twice.witness.min_value(g) == Rat(0));
}

TEST_CASE("reduce handles interior points and negative chips") {
    auto g = circle();
    Point q = Point::on_edge(g, g.edge_index("p-a"), Rat(1, 2));
    Divisor d;
    d.add(vtx(g, "b"), 2);
    d.add(q, -1);
    auto res = reduce(g, d, q);
    CHECK(res.reduced.degree() == 1);
    for (const auto& [pt, c] : res.reduced.coeffs())
        if (!(pt == q)) CHECK(c > 0);
    CHECK(res.witness.value_at(g, q) == Rat(0));
}

TEST_CASE("rank on the circle") {
    auto g = circle();
    auto grid = vertex_grid(g);
    Point p = vtx(g, "p");

    // Negative degree and ineffective classes.
    Divisor neg;
    neg.add(p, -1);
    CHECK(rank(g, neg, grid) == -1);
    // Degree 1 on a genus-1 graph: rank 0.
    CHECK(rank(g, dirac_divisor(p), grid) == 0);
    // Degree 2: rank 1; degree 3: rank 2 (Riemann-Roch range, K = 0).
    CHECK(rank(g, dirac_divisor(p, 2), grid) == 1);
    CHECK(rank(g, dirac_divisor(p, 3), grid) == 2);
    // Degree 0 nontrivial class has rank -1: (p) - (a) is not principal.
    Divisor d0;
    d0.add(p, 1);
    d0.add(vtx(g, "a"), -1);
    CHECK(rank(g, d0, grid) == -1);
    // The trivial class has rank 0.
    CHECK(rank(g, Divisor{}, grid) == 0);
}

TEST_CASE("rank on the theta graph and Riemann-Roch") {
    auto g = theta();
    auto grid = vertex_grid(g);
    Divisor k = canonical_divisor(g);
    long gen = genus(g).total;
    CHECK(rank(g, k, grid) == 1);  // canonical class of a genus-2 graph

    std::vector<Divisor> cases;
    cases.push_back(dirac_divisor(vtx(g, "x")));
    cases.push_back(dirac_divisor(vtx(g, "x"), 2));
    cases.push_back(k);
    {
        Divisor d;
        d.add(vtx(g, "m1"), 1);
        d.add(vtx(g, "m2"), 1);
        cases.push_back(d);
    }
    for (const auto& d : cases) {
        long lhs = rank(g, d, grid) - rank(g, k - d, grid);
        CHECK(lhs == d.degree() - gen + 1);
    }
}
