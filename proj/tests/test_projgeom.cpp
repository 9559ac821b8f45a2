#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pb/projgeom.hpp"

using namespace pb;

using P = P1<Rat>;
using Pt = Point<Rat>;
using Ln = Line<Rat>;

static P inf() { return P::infinity(); }

TEST_CASE("cross ratio on pinned quadruples") {
    CHECK(p1_equal(cross_ratio(P(0), inf(), P(1), P(-1)), P(-1)));
    // (0, inf, 1, z) -> 1/z under the ((a-c)(b-d))/((a-d)(b-c)) convention
    for (int z : {2, 5, -3})
        CHECK(p1_equal(cross_ratio(P(0), inf(), P(1), P(z)), P(Rat(1), Rat(z))));
    CHECK(p1_equal(cross_ratio(P(1), P(2), P(3), P(4)), P(Rat(4), Rat(3))));
    CHECK_THROWS_AS(cross_ratio(P(1), P(1), P(2), P(2)), UndefinedCrossRatio);
}

TEST_CASE("cross ratio is a Mobius invariant") {
    RatSampler rs(11);
    for (int k = 0; k < 40; ++k) {
        P z[4];
        bool distinct = true;
        for (int i = 0; i < 4; ++i) z[i] = P(rs.rat());
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p1_equal(z[i], z[j])) distinct = false;
        if (!distinct) continue;
        Mob<Rat> g;
        try {
            g = Mob<Rat>(rs.rat(), rs.rat(), rs.rat(), rs.rat());
        } catch (const SingularMap&) {
            continue;
        }
        P before = cross_ratio(z[0], z[1], z[2], z[3]);
        P after = cross_ratio(g(z[0]), g(z[1]), g(z[2]), g(z[3]));
        CHECK(p1_equal(before, after));
    }
}

TEST_CASE("harmonic conjugate") {
    for (int x : {1, 2, 7}) CHECK(p1_equal(harmonic_conjugate(P(0), inf(), P(x)), P(-x)));
    CHECK(harmonic_conjugate(P(-1), P(1), P(0)).is_infinity());
    CHECK_THROWS_AS(harmonic_conjugate(P(1), P(1), P(0)), DegenerateTriple);

    RatSampler rs(12);
    for (int k = 0; k < 40; ++k) {
        P a(rs.rat()), b(rs.rat()), c(rs.rat());
        if (p1_equal(a, b) || p1_equal(c, a) || p1_equal(c, b)) continue;
        P d = harmonic_conjugate(a, b, c);
        CHECK(is_harmonic(a, b, c, d));
        // the construction is an involution in its last argument
        CHECK(p1_equal(harmonic_conjugate(a, b, d), c));
    }
}

TEST_CASE("root-swapping involutions from coefficients") {
    auto ifp = [](const P& z0, Rat a, Rat b, Rat c) {
        return involution_fixing_point_swapping_roots(z0, Quadratic<Rat>{a, b, c});
    };
    // roots +-1, fixed point 0: z -> -z
    CHECK(ifp(P(0), 1, 0, -1).proportional_to(Mob<Rat>(-1, 0, 0, 1)));
    // roots 1, 2, fixed point 0: z -> 2z/(3z - 2)
    CHECK(ifp(P(0), 1, -3, 2).proportional_to(Mob<Rat>(2, 0, 3, -2)));
    // fixed point at infinity: z -> -z - b
    for (int b : {0, 3, -5})
        CHECK(ifp(inf(), 1, b, 7).proportional_to(Mob<Rat>(-1, -b, 0, 1)));
    // roots 0 and infinity: z -> z0^2/z
    CHECK(ifp(P(3), 0, 1, 0).proportional_to(Mob<Rat>(0, 9, 1, 0)));

    CHECK_THROWS_AS(ifp(P(1), 1, 0, -1), NoSuchInvolution);          // simple root
    CHECK_THROWS_AS(ifp(P(1), 1, -2, 1), DegenerateQuadratic);       // double root
    CHECK_THROWS_AS(ifp(P(0), 0, 0, 0), DegenerateQuadratic);

    RatSampler rs(13);
    int done = 0;
    for (int k = 0; k < 200 && done < 40; ++k) {
        Quadratic<Rat> q{rs.rat(), rs.rat(), rs.rat()};
        P z0(rs.rat());
        Mob<Rat> g;
        try {
            g = involution_fixing_point_swapping_roots(z0, q);
        } catch (const Error&) {
            continue;
        }
        ++done;
        CHECK(g.is_involution());
        CHECK(p1_equal(g(z0), z0));
        CHECK(quadratics_proportional(pullback(q, g), q));
    }
    CHECK(done >= 30);
}

TEST_CASE("orthogonal polarity swaps coordinate triples") {
    Pt p(Rat(2), Rat(-3), Rat(5));
    Ln l = orthogonal_polar_dual(p);
    CHECK(l == Ln(Rat(2), Rat(-3), Rat(5)));
    CHECK(orthogonal_polar_dual(l) == p);
}

TEST_CASE("projective maps act on points and lines compatibly") {
    Mat3<Rat> d = Mat3<Rat>::identity();
    d[0][0] = -1;
    ProjMap<Rat> g(d);
    CHECK(g(Pt::affine(Rat(1), Rat(1))) == Pt::affine(Rat(-1), Rat(1)));

    RatSampler rs(14);
    for (int k = 0; k < 30; ++k) {
        Mat3<Rat> m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = rs.rat();
        if (is_zero(m.det())) continue;
        ProjMap<Rat> f(m);
        Pt p(rs.rat(), rs.rat(), Rat(1));
        Pt q(rs.rat(), rs.rat(), Rat(1));
        if (p == q) continue;
        Ln l = join(p, q);
        CHECK(f(l).contains(f(p)));
        CHECK(f(l).contains(f(q)));
        CHECK(f.inverse()(f(p)) == p);
    }
}

TEST_CASE("angular symmetry") {
    // center at the horizontal infinite point, axis x1 = 0: (x, y) -> (-x, y)
    ProjMap<Rat> g = angular_symmetry(Pt(Rat(1), Rat(0), Rat(0)), Ln(Rat(1), Rat(0), Rat(0)));
    CHECK(g(Pt::affine(Rat(3), Rat(2))) == Pt::affine(Rat(-3), Rat(2)));
    CHECK(g.is_involution());

    CHECK_THROWS_AS(angular_symmetry(Pt::affine(Rat(0), Rat(0)), Ln(Rat(1), Rat(0), Rat(0))),
                    DegenerateTriple);

    RatSampler rs(15);
    for (int k = 0; k < 20; ++k) {
        Pt c(rs.rat(), rs.rat(), Rat(1));
        Ln ax(rs.rat(), rs.rat(), rs.nonzero_rat());
        if (ax.contains(c)) continue;
        ProjMap<Rat> s = angular_symmetry(c, ax);
        CHECK(s.is_involution());
        CHECK(s(c) == c);
        // axis points are fixed
        Vec3<Rat> q = cross(ax.xi, Vec3<Rat>{Rat(1), Rat(2), Rat(5)});
        if (!vec_zero(q)) CHECK(s(Pt(q)) == Pt(q));
    }
}

TEST_CASE("Mobius interpolation through three pairs") {
    Mob<Rat> f = mobius_to_standard(P(2), P(5), inf());
    CHECK(p1_equal(f(P(2)), P(0)));
    CHECK(p1_equal(f(P(5)), P(1)));
    CHECK(f(inf()).is_infinity());

    RatSampler rs(16);
    for (int k = 0; k < 20; ++k) {
        P z1(rs.rat()), z2(rs.rat()), z3(rs.rat());
        P w1(rs.rat()), w2(rs.rat()), w3(rs.rat());
        if (p1_equal(z1, z2) || p1_equal(z1, z3) || p1_equal(z2, z3)) continue;
        if (p1_equal(w1, w2) || p1_equal(w1, w3) || p1_equal(w2, w3)) continue;
        Mob<Rat> g = mobius_through(z1, w1, z2, w2, z3, w3);
        CHECK(p1_equal(g(z1), w1));
        CHECK(p1_equal(g(z2), w2));
        CHECK(p1_equal(g(z3), w3));
        CHECK((g.inverse() * g).is_identity());
    }
}
