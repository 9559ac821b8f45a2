#pragma once
// Projective plane primitives over an arbitrary scalar backend:
// points, lines, 3x3 projective maps, Mobius maps on P^1, cross ratios,
// harmonic conjugates and involutions built from quadratic coefficients.

#include <array>
#include <initializer_list>

#include "pb/scalar.hpp"

namespace pb {

template <class K>
using Vec3 = std::array<K, 3>;

template <class K>
Vec3<K> cross(const Vec3<K>& u, const Vec3<K>& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

template <class K>
K dot(const Vec3<K>& u, const Vec3<K>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

template <class K>
bool vec_zero(const Vec3<K>& u) {
    return is_zero(u[0]) && is_zero(u[1]) && is_zero(u[2]);
}

// Proportionality by cross-multiplication; no normalization needed.
template <class K>
bool proportional(const Vec3<K>& u, const Vec3<K>& v) {
    return is_zero(u[0] * v[1] - u[1] * v[0]) &&
           is_zero(u[0] * v[2] - u[2] * v[0]) &&
           is_zero(u[1] * v[2] - u[2] * v[1]);
}

template <class K>
struct Point {
    Vec3<K> h;
    Point() : h{K(0), K(0), K(1)} {}
    explicit Point(const Vec3<K>& v) : h(v) {
        if (vec_zero(h)) throw Error("zero point triple");
    }
    Point(const K& x, const K& y, const K& z) : Point(Vec3<K>{x, y, z}) {}
    static Point affine(const K& x, const K& y) { return Point(x, y, K(1)); }
    bool operator==(const Point& o) const { return proportional(h, o.h); }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

template <class K>
struct Line {
    Vec3<K> xi;
    Line() : xi{K(0), K(0), K(1)} {}
    explicit Line(const Vec3<K>& v) : xi(v) {
        if (vec_zero(xi)) throw Error("zero line triple");
    }
    Line(const K& a, const K& b, const K& c) : Line(Vec3<K>{a, b, c}) {}
    K at(const Point<K>& p) const { return dot(xi, p.h); }
    bool contains(const Point<K>& p) const { return is_zero(at(p)); }
    bool operator==(const Line& o) const { return proportional(xi, o.xi); }
    bool operator!=(const Line& o) const { return !(*this == o); }
};

template <class K>
Line<K> join(const Point<K>& p, const Point<K>& q) {
    Vec3<K> c = cross(p.h, q.h);
    if (vec_zero(c)) throw DegenerateTriple("join of equal points");
    return Line<K>(c);
}

template <class K>
Point<K> meet(const Line<K>& l, const Line<K>& m) {
    Vec3<K> c = cross(l.xi, m.xi);
    if (vec_zero(c)) throw DegenerateTriple("meet of equal lines");
    return Point<K>(c);
}

// Orthogonal polarity: coordinate-triple swap between points and lines.
template <class K>
Line<K> orthogonal_polar_dual(const Point<K>& p) { return Line<K>(p.h); }
template <class K>
Point<K> orthogonal_polar_dual(const Line<K>& l) { return Point<K>(l.xi); }

template <class K>
struct Mat3 {
    std::array<Vec3<K>, 3> m;  // rows

    static Mat3 identity() {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = K(i == j ? 1 : 0);
        return r;
    }
    static Mat3 zero() {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = K(0);
        return r;
    }

    Vec3<K>& operator[](int i) { return m[i]; }
    const Vec3<K>& operator[](int i) const { return m[i]; }

    Vec3<K> apply(const Vec3<K>& v) const {
        return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r = zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) r[i][j] += m[i][k] * o[k][j];
        return r;
    }
    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = m[i][j] + o[i][j];
        return r;
    }
    Mat3 scaled(const K& s) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = m[i][j] * s;
        return r;
    }
    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
        return r;
    }
    K det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    Mat3 adjugate() const {
        Mat3 r;
        const Mat3& a = *this;
        r[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
        r[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
        r[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
        r[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
        r[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
        r[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
        r[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
        r[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
        r[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        return r;
    }

    bool proportional_to(const Mat3& o) const {
        // flatten and compare up to scale
        Vec3<K> dummy;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        if (!is_zero(m[i][j] * o[k][l] - m[k][l] * o[i][j]))
                            return false;
        (void)dummy;
        return true;
    }
};

template <class K>
struct ProjMap {
    Mat3<K> m;

    ProjMap() : m(Mat3<K>::identity()) {}
    explicit ProjMap(const Mat3<K>& a) : m(a) {
        if (is_zero(m.det())) throw SingularMap();
    }

    Point<K> operator()(const Point<K>& p) const { return Point<K>(m.apply(p.h)); }
    // contragredient action: xi' = adj(m)^T xi  (proportional to m^{-T} xi)
    Line<K> operator()(const Line<K>& l) const {
        return Line<K>(m.adjugate().transpose().apply(l.xi));
    }
    ProjMap inverse() const { return ProjMap(m.adjugate()); }
    ProjMap operator*(const ProjMap& o) const { return ProjMap(m * o.m); }
    bool is_involution() const { return (m * m).proportional_to(Mat3<K>::identity()); }
};

// The projective involution fixing `axis` pointwise and every line through
// `center` (which acts on them as a central symmetry about the center).
template <class K>
ProjMap<K> angular_symmetry(const Point<K>& center, const Line<K>& axis) {
    K s = dot(axis.xi, center.h);
    if (is_zero(s)) throw DegenerateTriple("angular symmetry center on its axis");
    Mat3<K> m = Mat3<K>::identity().scaled(s);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] -= K(2) * center.h[i] * axis.xi[j];
    return ProjMap<K>(m);
}

// 2x2 fractional-linear map z -> (a z + b)/(c z + d) on P^1.
template <class K>
struct Mob {
    K a{1}, b{0}, c{0}, d{1};

    Mob() = default;
    Mob(const K& aa, const K& bb, const K& cc, const K& dd) : a(aa), b(bb), c(cc), d(dd) {
        if (is_zero(det())) throw SingularMap("singular Mobius map");
    }
    K det() const { return a * d - b * c; }
    P1<K> operator()(const P1<K>& z) const {
        return P1<K>(a * z.n + b * z.d, c * z.n + d * z.d);
    }
    Mob operator*(const Mob& o) const {
        return Mob(a * o.a + b * o.c, a * o.b + b * o.d,
                   c * o.a + d * o.c, c * o.b + d * o.d);
    }
    Mob inverse() const { return Mob(d, -b, -c, a); }
    bool is_identity() const { return is_zero(b) && is_zero(c) && is_zero(a - d); }
    bool proportional_to(const Mob& o) const {
        const K u[4] = {a, b, c, d};
        const K v[4] = {o.a, o.b, o.c, o.d};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!is_zero(u[i] * v[j] - u[j] * v[i])) return false;
        return true;
    }
    bool is_involution() const { return (*this * *this).proportional_to(Mob()); }
};

// ((a-c)(b-d)) / ((a-d)(b-c)), with infinity handled homogeneously.
// Returned as a P1 value; -1 means the quadruple is harmonic.
template <class K>
P1<K> cross_ratio(const P1<K>& a, const P1<K>& b, const P1<K>& c, const P1<K>& d) {
    const P1<K>* v[4] = {&a, &b, &c, &d};
    int distinct = 0;
    for (int i = 0; i < 4; ++i) {
        bool dup = false;
        for (int j = 0; j < i; ++j)
            if (p1_equal(*v[i], *v[j])) dup = true;
        if (!dup) ++distinct;
    }
    if (distinct < 3) throw UndefinedCrossRatio();
    K num = p1_det(a, c) * p1_det(b, d);
    K den = p1_det(a, d) * p1_det(b, c);
    return P1<K>(num, den);
}

template <class K>
bool is_harmonic(const P1<K>& a, const P1<K>& b, const P1<K>& c, const P1<K>& d) {
    P1<K> r = cross_ratio(a, b, c, d);
    return is_zero(r.n + r.d);
}

// Unique d with cross_ratio(a,b,c,d) = -1.
template <class K>
P1<K> harmonic_conjugate(const P1<K>& a, const P1<K>& b, const P1<K>& c) {
    if (p1_equal(a, b) || p1_equal(c, a) || p1_equal(c, b)) throw DegenerateTriple();
    K kac = p1_det(a, c);
    K kbc = p1_det(b, c);
    // d solves det(a,c)det(b,d) + det(b,c)det(a,d) = 0
    return P1<K>(kac * b.n + kbc * a.n, kac * b.d + kbc * a.d);
}

// Quadratic a z^2 + b z w + c w^2 as a homogeneous binary form.
template <class K>
struct Quadratic {
    K a{}, b{}, c{};
    bool zero() const { return is_zero(a) && is_zero(b) && is_zero(c); }
    K at(const P1<K>& z) const { return a * z.n * z.n + b * z.n * z.d + c * z.d * z.d; }
};

template <class K>
bool quadratics_proportional(const Quadratic<K>& p, const Quadratic<K>& q) {
    return is_zero(p.a * q.b - p.b * q.a) && is_zero(p.a * q.c - p.c * q.a) &&
           is_zero(p.b * q.c - p.c * q.b);
}

// Pull back q through a Mobius map: (q o g), again a binary quadratic.
template <class K>
Quadratic<K> pullback(const Quadratic<K>& q, const Mob<K>& g) {
    Quadratic<K> r;
    r.a = q.at(P1<K>(g.a, g.c));
    r.c = q.at(P1<K>(g.b, g.d));
    K mid = q.at(P1<K>(g.a + g.b, g.c + g.d));
    r.b = mid - r.a - r.c;
    return r;
}

// The involutive Mobius map fixing z0 and permuting the root pair of q,
// computed from the coefficients alone (no root extraction).
//
// For a != 0 the involutions swapping the roots form the family
// u*[[-a,-b],[0,a]] + v*[[0,c],[a,0]]; the fixed point condition at
// z0 = (n:d) pins (u, v) = (a n^2 - c d^2, -(2 a n d + b d^2)).
template <class K>
Mob<K> involution_fixing_point_swapping_roots(const P1<K>& z0, const Quadratic<K>& q) {
    if (q.zero()) throw DegenerateQuadratic("identically zero quadratic");
    K disc = q.b * q.b - K(4) * q.a * q.c;
    bool z0_on_q = is_zero(q.at(z0));
    if (z0_on_q) {
        if (is_zero(disc)) throw DegenerateQuadratic("z0 is a double root");
        throw NoSuchInvolution("z0 is a simple root of q");
    }
    if (!is_zero(q.a)) {
        const K& n = z0.n;
        const K& d = z0.d;
        K u = q.a * n * n - q.c * d * d;
        K v = -(K(2) * q.a * n * d + q.b * d * d);
        Mob<K> g(-u * q.a, -u * q.b + v * q.c, v * q.a, u * q.a);
        return g;
    }
    if (!is_zero(q.c)) {
        // root at infinity: conjugate by z -> 1/z
        Quadratic<K> qr{q.c, q.b, q.a};
        Mob<K> g = involution_fixing_point_swapping_roots(P1<K>(z0.d, z0.n), qr);
        return Mob<K>(g.d, g.c, g.b, g.a);
    }
    // q = b z w, roots {0, infinity}: g(z) = z0^2 / z
    return Mob<K>(K(0), z0.n * z0.n, z0.d * z0.d, K(0));
}

// Mobius map sending (z1, z2, z3) to (0, 1, infinity).
template <class K>
Mob<K> mobius_to_standard(const P1<K>& z1, const P1<K>& z2, const P1<K>& z3) {
    K k1 = p1_det(z2, z3);
    K k2 = p1_det(z2, z1);
    // f(z) = (det(z,z1) k1 : det(z,z3) k2)
    return Mob<K>(z1.d * k1, -z1.n * k1, z3.d * k2, -z3.n * k2);
}

// Mobius map sending z_i to w_i for three pairs.
template <class K>
Mob<K> mobius_through(const P1<K>& z1, const P1<K>& w1, const P1<K>& z2, const P1<K>& w2,
                      const P1<K>& z3, const P1<K>& w3) {
    Mob<K> f = mobius_to_standard(z1, z2, z3);
    Mob<K> g = mobius_to_standard(w1, w2, w3);
    return g.inverse() * f;
}

} // namespace pb
