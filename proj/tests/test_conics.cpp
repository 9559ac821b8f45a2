#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pb/conics.hpp"
#include "pb/dualbill.hpp"

using namespace pb;

using Pt = Point<Rat>;
using Ln = Line<Rat>;
using Cn = Conic<Rat>;

static Cn circle(Rat r2) {
    Mat3<Rat> m = Mat3<Rat>::identity();
    m[2][2] = -r2;
    return Cn(m);
}

TEST_CASE("tangent lines") {
    Cn par = parabola_conic<Rat>();  // x2*x3 = x1^2
    CHECK(tangent_line(par, Pt(Rat(1), Rat(1), Rat(1))) == Ln(Rat(2), Rat(-1), Rat(-1)));
    CHECK(tangent_line(par, Pt(Rat(0), Rat(1), Rat(0))) == Ln(Rat(0), Rat(0), Rat(1)));
    CHECK(tangent_line(circle(Rat(1)), Pt(Rat(0), Rat(1), Rat(1))) == Ln(Rat(0), Rat(1), Rat(-1)));
    CHECK_THROWS_AS(tangent_line(circle(Rat(1)), Pt(Rat(0), Rat(2), Rat(1))), Error);
    // vertex of a line pair is a singular point
    Cn deg = conic_from_lines(Ln(Rat(1), Rat(0), Rat(0)), Ln(Rat(0), Rat(1), Rat(0)));
    CHECK_THROWS_AS(tangent_line(deg, Pt(Rat(0), Rat(0), Rat(1))), SingularPointOfConic);
}

TEST_CASE("line restrictions as binary quadratics") {
    // unit circle along x1 = 1, frame (1,0) and the vertical direction: s^2
    Quadratic<Rat> q = line_conic_restriction(circle(Rat(1)), Pt(Rat(1), Rat(0), Rat(1)),
                                              Pt(Rat(0), Rat(1), Rat(0)));
    CHECK(is_zero(q.a));
    CHECK(is_zero(q.b));
    CHECK(!is_zero(q.c));

    // parabola along its tangent at (1,1): a perfect square
    Quadratic<Rat> q2 = line_conic_restriction(parabola_conic<Rat>(), Pt(Rat(1), Rat(1), Rat(1)),
                                               Pt(Rat(1), Rat(2), Rat(0)));
    CHECK(is_zero(q2.a));
    CHECK(is_zero(q2.b));
    CHECK(!is_zero(q2.c));

    // circle of squared radius lam along x1 = 1: (1 - lam) t^2 + s^2 up to scale
    for (int lam : {2, 3, 10}) {
        Quadratic<Rat> ql = line_conic_restriction(circle(Rat(lam)), Pt(Rat(1), Rat(0), Rat(1)),
                                                   Pt(Rat(0), Rat(1), Rat(0)));
        CHECK(ql.a == Rat(1 - lam));
        CHECK(is_zero(ql.b));
        CHECK(ql.c == Rat(1));
    }
}

TEST_CASE("pencil members and parameter lookup") {
    // members x1^2 + x2^2 - lam * x3^2
    Mat3<Rat> c1m = Mat3<Rat>::zero();
    c1m[2][2] = -1;
    Pencil<Rat> p(circle(Rat(0)), Cn(c1m));
    CHECK(p1_equal(p.member_through(Pt(Rat(1), Rat(0), Rat(1))), P1<Rat>(1)));
    CHECK(p1_equal(p.member_through(Pt(Rat(1), Rat(2), Rat(1))), P1<Rat>(5)));
    CHECK(p.contains(circle(Rat(7))));
    CHECK(!p.contains(parabola_conic<Rat>()));
    CHECK_THROWS_AS(Pencil<Rat>(circle(Rat(1)), circle(Rat(1))), DegeneratePencil);
}

TEST_CASE("singular members of pencils") {
    // base points (+-1, 0), (0, +-1): three real simple singular members
    Mat3<Rat> e = Mat3<Rat>::zero();
    e[0][0] = Rat(1, 4);
    e[1][1] = Rat(4);
    e[2][2] = Rat(-1);
    Pencil<Rat> pa(circle(Rat(1)), Cn(e));
    SingularSpectrum sa = singular_parameters(pa);
    CHECK(sa.unresolved_degree == 0);
    REQUIRE(sa.params.size() == 3);
    for (auto& sp : sa.params) CHECK(sp.multiplicity == 1);

    // concentric circles: a double and a simple parameter
    Pencil<Rat> pc(circle(Rat(1)), circle(Rat(4)));
    SingularSpectrum sc = singular_parameters(pc);
    std::vector<int> mults;
    for (auto& sp : sc.params) mults.push_back(sp.multiplicity);
    std::sort(mults.rbegin(), mults.rend());
    CHECK(mults == std::vector<int>{2, 1});

    // parabola translates: the line at infinity counted three times
    Cn inf2 = conic_from_double_line(Ln(Rat(0), Rat(0), Rat(1)));
    Pencil<Rat> pe(parabola_conic<Rat>(), inf2);
    SingularSpectrum se = singular_parameters(pe);
    REQUIRE(se.params.size() == 1);
    CHECK(se.params[0].lambda.is_infinity());
    CHECK(se.params[0].multiplicity == 3);

    // a pencil of line pairs through one common line is singular throughout
    Ln shared(Rat(1), Rat(0), Rat(0));
    Pencil<Rat> ps(conic_from_lines(shared, Ln(Rat(0), Rat(1), Rat(0))),
                   conic_from_lines(shared, Ln(Rat(0), Rat(1), Rat(-1))));
    CHECK_THROWS_AS(singular_parameters(ps), AllMembersSingular);
}

TEST_CASE("classification by base multiplicities") {
    // two circles in general position: four simple base points
    Mat3<Rat> c2 = Mat3<Rat>::identity();
    c2[0][2] = c2[2][0] = -1;
    c2[2][2] = -1;
    Pencil<Rat> pa(circle(Rat(1)), Cn(c2));
    Classification ca = classify_pencil(pa);
    CHECK(ca.tag == 'a');
    CHECK(ca.pattern == std::vector<int>{1, 1, 1, 1});

    // x2 = x1^2 and x2 = 2 x1^2: two double contacts
    Mat3<Rat> m2 = Mat3<Rat>::zero();
    m2[0][0] = -4;
    m2[1][2] = m2[2][1] = 1;
    Pencil<Rat> pcc(parabola_conic<Rat>(), Cn(m2));
    CHECK(classify_pencil(pcc).tag == 'c');

    // x2 = x1^2 and x2 = x1^2 + 1: order-four contact at infinity
    Mat3<Rat> m3 = Mat3<Rat>::zero();
    m3[0][0] = -2;
    m3[1][2] = m3[2][1] = 1;
    m3[2][2] = -2;
    Pencil<Rat> pee(parabola_conic<Rat>(), Cn(m3));
    Classification ce = classify_pencil(pee);
    CHECK(ce.tag == 'e');
    CHECK(ce.pattern == std::vector<int>{4});
}

TEST_CASE("dual conics and dual pencils") {
    CHECK(dual_conic(circle(Rat(1))) == circle(Rat(1)));
    Mat3<Rat> e = Mat3<Rat>::zero();
    e[0][0] = Rat(1, 25);
    e[1][1] = Rat(1, 16);
    e[2][2] = Rat(-1);
    Mat3<Rat> ed = Mat3<Rat>::zero();
    ed[0][0] = 25;
    ed[1][1] = 16;
    ed[2][2] = -1;
    CHECK(dual_conic(Cn(e)) == Cn(ed));
    CHECK_THROWS_AS(dual_conic(conic_from_double_line(Ln(Rat(1), Rat(0), Rat(0)))),
                    SingularConic);

    // the dual pencil is spanned by duals of regular members: dualizing its
    // generators back lands in the source pencil
    Pencil<Rat> p(circle(Rat(1)), Cn(e));
    Pencil<Rat> dp = dual_pencil(p);
    CHECK(dp.from_dualization);
    CHECK(p.contains(dual_conic(dp.c0)));
    CHECK(p.contains(dual_conic(dp.c1)));
}

TEST_CASE("conic transforms preserve incidence") {
    RatSampler rs(31);
    Cn c = circle(Rat(1));
    for (int k = 0; k < 15; ++k) {
        Mat3<Rat> m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = rs.rat();
        if (is_zero(m.det())) continue;
        ProjMap<Rat> g(m);
        Cn tc = transform_conic(g, c);
        // rational points of the circle via the standard parametrization
        Rat t = rs.rat();
        Pt pt(Rat(1) - t * t, Rat(2) * t, Rat(1) + t * t);
        CHECK(c.contains(pt));
        CHECK(tc.contains(g(pt)));
    }
}
