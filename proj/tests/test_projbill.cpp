#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pb/projbill.hpp"

using namespace pb;

using Pt = Point<Rat>;
using Ln = Line<Rat>;
using Cn = Conic<Rat>;

static Cn circle1() {
    Mat3<Rat> m = Mat3<Rat>::identity();
    m[2][2] = -1;
    return Cn(m);
}

TEST_CASE("moment vectors") {
    Vec3<Rat> m = moment(Rat(1), Rat(2), Rat(3), Rat(4));
    CHECK(m == Vec3<Rat>{Rat(-4), Rat(3), Rat(-2)});
    RatSampler rs(41);
    for (int k = 0; k < 20; ++k) {
        Rat x = rs.rat(), y = rs.rat(), vx = rs.rat(), vy = rs.rat();
        Vec3<Rat> mm = moment(x, y, vx, vy);
        CHECK(is_zero(dot(Vec3<Rat>{x, y, Rat(1)}, mm)));
    }
}

TEST_CASE("transversal lines") {
    // circle with the Euclidean normal field: radial at (0,1)
    auto arc = BoundaryPiece<Rat>::arc(circle1(), {}, {}, FieldSpec<Rat>::normal());
    CHECK(transversal_line(arc, Pt(Rat(0), Rat(1), Rat(1))) == Ln(Rat(1), Rat(0), Rat(0)));

    // central and parallel segment fields
    auto seg = BoundaryPiece<Rat>::segment(
        Pt(Rat(-3), Rat(1), Rat(1)), Pt(Rat(3), Rat(1), Rat(1)),
        FieldSpec<Rat>::central(Pt(Rat(0), Rat(-1), Rat(1))));
    Ln t = transversal_line(seg, Pt(Rat(2), Rat(1), Rat(1)));
    CHECK(t.contains(Pt(Rat(0), Rat(-1), Rat(1))));
    CHECK(t.contains(Pt(Rat(2), Rat(1), Rat(1))));
}

TEST_CASE("exotic field directions") {
    // 2a1 with N = 1 has rho = 4/3: direction (4/3, -4/3) at x1 = 1
    auto [dx, dy] = exotic_direction<Rat>({ExoticTag::A1, 1}, Rat(1), Rat(1));
    CHECK(dx == Rat(4, 3));
    CHECK(dy == Rat(-4, 3));

    // the 2b1 admissible line x2 = 1 carries lines through (0, -1)
    auto cat = exotic_admissible_lines<Rat>({ExoticTag::B1, 1});
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].line == Ln(Rat(0), Rat(1), Rat(-1)));
    CHECK(cat[0].field.kind == FieldKind::Central);
    CHECK(cat[0].field.focus == Pt(Rat(0), Rat(-1), Rat(1)));

    auto cat2 = exotic_admissible_lines<Rat>({ExoticTag::C2, 1});
    REQUIRE(cat2.size() == 3);
    CHECK(cat2[1].line == Ln(Rat(2), Rat(0), Rat(1)));
    CHECK(cat2[2].line == Ln(Rat(2), Rat(1), Rat(0)));
}

TEST_CASE("reflection in the tangent-transversal frame") {
    // horizontal mirror: T slope 0, N vertical
    auto mirror = BoundaryPiece<Rat>::segment(Pt(Rat(0), Rat(0), Rat(1)),
                                              Pt(Rat(1), Rat(0), Rat(1)),
                                              FieldSpec<Rat>::parallel(Rat(0), Rat(1)));
    auto [mx, my] = reflect(mirror, Pt(Rat(1, 2), Rat(0), Rat(1)), Rat(1), Rat(1));
    CHECK(proportional(Vec3<Rat>{mx, my, Rat(0)}, Vec3<Rat>{Rat(1), Rat(-1), Rat(0)}));

    // T slope 0, N slope 1: vertical rays leave with slope 1/2
    auto skew = BoundaryPiece<Rat>::segment(Pt(Rat(0), Rat(0), Rat(1)),
                                            Pt(Rat(1), Rat(0), Rat(1)),
                                            FieldSpec<Rat>::parallel(Rat(1), Rat(1)));
    auto [sx, sy] = reflect(skew, Pt(Rat(1, 2), Rat(0), Rat(1)), Rat(0), Rat(1));
    CHECK(proportional(Vec3<Rat>{sx, sy, Rat(0)}, Vec3<Rat>{Rat(2), Rat(1), Rat(0)}));

    // tangent incidence is rejected
    CHECK_THROWS_AS(reflect(skew, Pt(Rat(1, 2), Rat(0), Rat(1)), Rat(1), Rat(0)),
                    TangentialIncidence);

    // double reflection restores the direction
    RatSampler rs(42);
    for (int k = 0; k < 30; ++k) {
        Rat vx = rs.rat(), vy = rs.nonzero_rat();
        auto [ox, oy] = reflect(skew, Pt(Rat(1, 3), Rat(0), Rat(1)), vx, vy);
        auto [bx, by] = reflect(skew, Pt(Rat(1, 3), Rat(0), Rat(1)), ox, oy);
        CHECK(proportional(Vec3<Rat>{bx, by, Rat(0)}, Vec3<Rat>{vx, vy, Rat(0)}));
    }

    // harmonicity: in the line-pencil chart, (T, N, in, out) is harmonic
    for (int k = 0; k < 20; ++k) {
        Rat vx = rs.rat(), vy = rs.nonzero_rat();
        if (is_zero(vx - vy)) continue;  // along N
        auto [ox, oy] = reflect(skew, Pt(Rat(1, 3), Rat(0), Rat(1)), vx, vy);
        // chart: slope of each direction
        auto slope = [](Rat dx, Rat dy) {
            return is_zero(dx) ? P1<Rat>::infinity() : P1<Rat>(dy, dx);
        };
        CHECK(is_harmonic(slope(Rat(1), Rat(0)), slope(Rat(1), Rat(1)), slope(vx, vy),
                          slope(ox, oy)));
    }
}

TEST_CASE("velocity-space integrals of the exotic fields") {
    // 2b2: (4 v1 d - v2^2)^2 / ((v2^2 + 4d^2 + 4 v1 d + 4 v1^2)(v2^2 + 4 v1^2))
    RationalIntegral<Rat> b2 = exotic_psi_normal<Rat>({ExoticTag::B2, 1});
    Vec3<Rat> y{Rat(1), Rat(2), Rat(3)};
    CHECK(p1_equal(b2.value(y), P1<Rat>(Rat(64), Rat(448))));

    // 2a1 N=1: (4 v1 d - v2^2)^3 / (v1^2 (4 v1 d + 8 v2^2)^2)
    RationalIntegral<Rat> a1 = exotic_psi_normal<Rat>({ExoticTag::A1, 1});
    CHECK(p1_equal(a1.value(y), P1<Rat>(Rat(512), Rat(1936))));

    // 0-homogeneous by construction
    RatSampler rs(43);
    for (int k = 0; k < 20; ++k) {
        Vec3<Rat> v{rs.rat(), rs.rat(), rs.rat()};
        Rat t = rs.nonzero_rat();
        Vec3<Rat> w{v[0] * t, v[1] * t, v[2] * t};
        try {
            CHECK(a1.values_equal(v, w));
        } catch (const EvaluationOnExceptionalLine&) {
        }
    }
}

TEST_CASE("chi coefficients of a quadrilateral") {
    // square a: x=-1, b: y=-1, c: x=1, d: y=1; opposite sides parallel, so
    // the closed form falls back to the projective nullspace
    Ln a(Rat(1), Rat(0), Rat(1)), b(Rat(0), Rat(1), Rat(1)), c(Rat(1), Rat(0), Rat(-1)),
        d(Rat(0), Rat(1), Rat(-1));
    CHECK_THROWS_AS(chi_coefficients(a, b, c, d), DegenerateQuadrilateral);
    auto chi = chi_nullspace_of(chi_forms_of(chi_intersections(a, b, c, d)));
    CHECK(proportional(Vec3<Rat>{chi[0], chi[1], chi[2]}, Vec3<Rat>{Rat(1), Rat(1), Rat(-1)}));

    // generic quadrilaterals: closed form and nullspace agree up to scale
    RatSampler rs(44);
    int done = 0;
    for (int k = 0; k < 60 && done < 8; ++k) {
        Ln l[4];
        for (int i = 0; i < 4; ++i) l[i] = Ln(rs.rat(), rs.rat(), rs.nonzero_rat());
        try {
            ChiCoefficients<Rat> cc = chi_coefficients(l[0], l[1], l[2], l[3]);
            auto ns = chi_by_nullspace(l[0], l[1], l[2], l[3]);
            CHECK(proportional(Vec3<Rat>{cc.chi_ab_cd, cc.chi_bc_ad, cc.chi_ac_bd},
                               Vec3<Rat>{ns[0], ns[1], ns[2]}));
            ++done;
        } catch (const DegenerateQuadrilateral&) {
            continue;
        }
    }
    CHECK(done == 8);

    // three concurrent lines are rejected
    CHECK_THROWS_AS(chi_intersections(Ln(Rat(1), Rat(0), Rat(0)), Ln(Rat(0), Rat(1), Rat(0)),
                                      Ln(Rat(1), Rat(1), Rat(0)), Ln(Rat(1), Rat(2), Rat(3))),
                    DegenerateQuadrilateral);
}

TEST_CASE("degree-12 quadrilateral integral") {
    Ln a(Rat(1), Rat(0), Rat(1)), b(Rat(0), Rat(1), Rat(1)), c(Rat(1), Rat(0), Rat(-1)),
        d(Rat(0), Rat(1), Rat(-1));
    RationalIntegral<Rat> r = degree12_billiard_integral(a, b, c, d, Rat(2), false);
    CHECK(r.deg == 12);
    CHECK_THROWS_AS(degree12_billiard_integral(a, b, c, d, Rat(0)), ZeroMu);

    // the factored evaluator matches the expanded polynomials
    ChiFactored<Rat> cf(a, b, c, d, Rat(2));
    RatSampler rs(45);
    for (int k = 0; k < 20; ++k) {
        Vec3<Rat> m{rs.rat(), rs.rat(), rs.rat()};
        try {
            Rat v = cf.at_moment(m);
            CHECK(v * r.den.at(m) == r.num.at(m));
        } catch (const EvaluationOnExceptionalLine&) {
        }
    }
}

TEST_CASE("dualization of boundary pieces") {
    // 2b1-style admissible segment: x2 = 1 with lines through (0, -1)
    Billiard<Rat> bil;
    bil.pieces.push_back(BoundaryPiece<Rat>::segment(
        Pt(Rat(-3), Rat(1), Rat(1)), Pt(Rat(3), Rat(1), Rat(1)),
        FieldSpec<Rat>::central(Pt(Rat(0), Rat(-1), Rat(1)))));
    bil.pieces.push_back(BoundaryPiece<Rat>::arc(circle1(), {}, {}, FieldSpec<Rat>::normal()));
    DualMultibilliard<Rat> mb = dualize(bil);
    REQUIRE(mb.vertices.size() == 1);
    REQUIRE(mb.curves.size() == 1);
    CHECK(mb.vertices[0].center == Pt(Rat(0), Rat(1), Rat(-1)));
    CHECK(mb.vertices[0].axis == Ln(Rat(0), Rat(-1), Rat(1)));
    // the normal-field circle dualizes into the isotropic pencil
    CHECK(mb.curves[0].pencil);
    CHECK(mb.curves[0].carrier == dual_conic(circle1()));

    // round-trip of the segment line through the polarity
    CHECK(orthogonal_polar_dual(orthogonal_polar_dual(bil.pieces[0].line)) == bil.pieces[0].line);
}

TEST_CASE("orbit tracing in a circle") {
    Billiard<double> bil;
    Mat3<double> m = Mat3<double>::identity();
    m[2][2] = -1;
    bil.pieces.push_back(
        BoundaryPiece<double>::arc(Conic<double>(m), {}, {}, FieldSpec<double>::normal()));
    Orbit o = trace_orbit(bil, {0.1, 0.0, 0.3, 1.0}, 60);
    CHECK(o.end == OrbitEnd::Completed);
    REQUIRE(o.events.size() == 60);
    // stays on the circle, keeps unit speed, preserves the caustic radius
    double caustic = -1;
    for (auto& e : o.events) {
        CHECK(std::fabs(e.x * e.x + e.y * e.y - 1) < 1e-9);
        CHECK(std::fabs(std::hypot(e.vx_out, e.vy_out) - 1) < 1e-12);
        double r = std::fabs(e.x * e.vy_out - e.y * e.vx_out);
        if (caustic < 0) caustic = r;
        CHECK(std::fabs(r - caustic) < 1e-9);
    }
}

TEST_CASE("orbit termination causes") {
    // right half circle with endpoints (0, +-1)
    Billiard<double> bil;
    Mat3<double> m = Mat3<double>::identity();
    m[2][2] = -1;
    bil.pieces.push_back(BoundaryPiece<double>::arc(
        Conic<double>(m), {{Line<double>(1.0, 0.0, 0.0), 1}},
        {Point<double>(0.0, 1.0, 1.0), Point<double>(0.0, -1.0, 1.0)},
        FieldSpec<double>::normal()));
    Orbit corner = trace_orbit(bil, {0.0, 0.0, 0.0, 1.0}, 10);
    CHECK(corner.end == OrbitEnd::CornerHit);
    Orbit escape = trace_orbit(bil, {0.0, 0.0, -1.0, 0.0}, 10);
    CHECK(escape.end == OrbitEnd::Escape);

    bil.excluded.push_back(Point<double>(1.0, 0.0, 1.0));
    Orbit base = trace_orbit(bil, {0.0, 0.0, 1.0, 0.0}, 10);
    CHECK(base.end == OrbitEnd::BasePointApproach);
}

TEST_CASE("billiard validator on an exotic scene") {
    // parabola arc with the 2a1 field plus its admissible vertical segment
    Billiard<Rat> bil;
    bil.pieces.push_back(BoundaryPiece<Rat>::arc(parabola_conic<Rat>(), {}, {},
                                                 FieldSpec<Rat>::exotic_field({ExoticTag::A1, 1})));
    bil.pieces.push_back(BoundaryPiece<Rat>::segment(
        Pt(Rat(0), Rat(1), Rat(1)), Pt(Rat(0), Rat(4), Rat(1)),
        FieldSpec<Rat>::parallel(Rat(1), Rat(0))));
    BilliardReport rep = validate_billiard(bil);
    CHECK(rep.valid);
    CHECK(rep.exotic);
    CHECK(rep.predicted_min_degree == 6);

    // a segment off the catalog is flagged
    Billiard<Rat> bad = bil;
    bad.pieces[1] = BoundaryPiece<Rat>::segment(Pt(Rat(1), Rat(0), Rat(1)),
                                                Pt(Rat(1), Rat(3), Rat(1)),
                                                FieldSpec<Rat>::parallel(Rat(1), Rat(0)));
    BilliardReport rep2 = validate_billiard(bad);
    CHECK(!rep2.valid);
}
