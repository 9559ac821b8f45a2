#pragma once
// Dual billiard structures on conics: pencil-defined involutions on tangent
// lines, the seven exotic families on the parabola, their rational
// integrals, vertex involutions, and the sampled invariance checker.

#include "pb/conics.hpp"

namespace pb {

// normal-chart parabola: coordinates [z : w : t], equation w*t = z^2
template <class K>
Conic<K> parabola_conic() {
    Mat3<K> m = Mat3<K>::zero();
    m[0][0] = K(-2);
    m[1][2] = K(1);
    m[2][1] = K(1);
    return Conic<K>(m);
}

enum class ExoticTag { A1, A2, B1, B2, C1, C2, D };

struct ExoticKind {
    ExoticTag tag = ExoticTag::A1;
    int N = 1;  // only meaningful for A1, A2
};

inline const char* exotic_name(ExoticTag t) {
    switch (t) {
        case ExoticTag::A1: return "2a1";
        case ExoticTag::A2: return "2a2";
        case ExoticTag::B1: return "2b1";
        case ExoticTag::B2: return "2b2";
        case ExoticTag::C1: return "2c1";
        case ExoticTag::C2: return "2c2";
        case ExoticTag::D: return "2d";
    }
    return "?";
}

template <class K>
K rho_of(const ExoticKind& k) {
    if (k.tag == ExoticTag::A1) return K(2) - K(2) / K(2 * k.N + 1);
    if (k.tag == ExoticTag::A2) return K(2) - K(1) / K(k.N + 1);
    throw Error("rho defined only for the 2a families");
}

// f(z) of the u -> -u/(1 + f(z0) u) involutions, as a ratio of polynomials
template <class K>
P1<K> exotic_f(ExoticTag t, const K& z) {
    switch (t) {
        case ExoticTag::B1: return P1<K>(K(5) * z - K(3), K(2) * z * (z - K(1)));
        case ExoticTag::B2: return P1<K>(K(3) * z, z * z + K(1));
        case ExoticTag::C1: return P1<K>(K(4) * z * z, z * z * z - K(1));
        case ExoticTag::C2: return P1<K>(K(8) * z - K(4), K(3) * z * (z - K(1)));
        case ExoticTag::D: return P1<K>(K(7) * z - K(4), K(3) * z * (z - K(1)));
        default: throw Error("no f for the 2a families");
    }
}

// involution on a tangent line: point(u:v) = u*E0 + v*E1, map g in the (u:v)
// coordinate
template <class K>
struct TangentInvolution {
    Point<K> tangency;
    Point<K> e0, e1;
    Mob<K> g;

    P1<K> coordinate(const Point<K>& x) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                K d = e0.h[i] * e1.h[j] - e0.h[j] * e1.h[i];
                if (is_zero(d)) continue;
                K u = x.h[i] * e1.h[j] - x.h[j] * e1.h[i];
                K v = e0.h[i] * x.h[j] - e0.h[j] * x.h[i];
                return P1<K>(u, v);
            }
        throw Error("degenerate tangent line frame");
    }
    Point<K> point(const P1<K>& c) const {
        Vec3<K> h;
        for (int i = 0; i < 3; ++i) h[i] = c.n * e0.h[i] + c.d * e1.h[i];
        return Point<K>(h);
    }
    Point<K> apply(const Point<K>& x) const { return point(g(coordinate(x))); }
};

template <class K>
struct DualBilliardStructure {
    Conic<K> carrier;
    bool exotic = false;

    // pencil case
    std::optional<Pencil<K>> pencil;
    P1<K> lambda_c;                      // carrier = pencil.member(lambda_c)
    std::optional<Point<K>> sample_point;  // a rational point, for sampling

    // exotic case: chart maps ambient coordinates to the normal [z:w:t]
    ExoticKind kind{};
    ProjMap<K> chart;

    static DualBilliardStructure pencil_defined(const Pencil<K>& p, const P1<K>& lam,
                                                std::optional<Point<K>> sample = {}) {
        DualBilliardStructure s;
        s.carrier = p.member(lam);
        s.pencil = p;
        s.lambda_c = lam;
        s.sample_point = sample;
        return s;
    }
    static DualBilliardStructure exotic_structure(const ExoticKind& k,
                                                  const ProjMap<K>& chart = ProjMap<K>()) {
        DualBilliardStructure s;
        s.exotic = true;
        s.kind = k;
        s.chart = chart;
        s.carrier = transform_conic(chart.inverse(), parabola_conic<K>());
        return s;
    }
};

// exotic involution in the tangent-line z-coordinate at tangency z0
template <class K>
Mob<K> exotic_tangent_mobius(const ExoticKind& k, const K& z0) {
    if (k.tag == ExoticTag::A1 || k.tag == ExoticTag::A2) {
        if (is_zero(z0)) throw BasePointOfStructure("z0 = 0 for a 2a structure");
        K r = rho_of<K>(k);
        return Mob<K>((r - K(1)) * z0, (K(2) - r) * z0 * z0, r, (K(1) - r) * z0);
    }
    P1<K> f = exotic_f(k.tag, z0);
    if (is_zero(f.d)) throw BasePointOfStructure("pole of f at the tangency point");
    // u -> -u/(1 + f u) conjugated by u = z - z0; kept polynomial in (fn, fd)
    const K& fn = f.n;
    const K& fd = f.d;
    return Mob<K>(z0 * fn - fd, z0 * (K(2) * fd - z0 * fn), fn, fd - z0 * fn);
}

template <class K>
TangentInvolution<K> tangent_involution(const DualBilliardStructure<K>& s, const Point<K>& p) {
    if (!s.carrier.contains(p)) throw Error("tangent_involution: point not on carrier");
    if (s.exotic) {
        Point<K> pn = s.chart(p);
        if (is_zero(pn.h[2])) throw BasePointOfStructure("infinite point of the parabola");
        K z0 = pn.h[0] / pn.h[2];
        Mob<K> g = exotic_tangent_mobius(s.kind, z0);
        ProjMap<K> back = s.chart.inverse();
        TangentInvolution<K> ti;
        ti.tangency = p;
        // tangent line w = 2 z0 z - z0^2, coordinate z: point z*[1:2z0:0] + [0:-z0^2:1]
        ti.e0 = back(Point<K>(K(1), K(2) * z0, K(0)));
        ti.e1 = back(Point<K>(K(0), K(0) - z0 * z0, K(1)));
        ti.g = g;
        return ti;
    }
    const Pencil<K>& pen = *s.pencil;
    bool is_base = false;
    try {
        pen.member_through(p);
    } catch (const BasePoint&) {
        is_base = true;
    }
    if (is_base) throw BasePointOfStructure("base point of the pencil");
    Line<K> tl = tangent_line(s.carrier, p);
    // a second point spanning the tangent line
    Point<K> b = p;
    for (int i = 0; i < 3; ++i) {
        Vec3<K> e{K(0), K(0), K(0)};
        e[i] = K(1);
        Vec3<K> c = cross(tl.xi, e);
        if (vec_zero(c)) continue;
        Point<K> cand(c);
        if (!(cand == p)) {
            b = cand;
            break;
        }
    }
    // members distinct from the carrier, for construction plus cross-checks
    std::vector<P1<K>> lams;
    for (int k = 0; int(lams.size()) < 3 && k < 12; ++k) {
        P1<K> lam = (k == 0) ? P1<K>::infinity() : P1<K>(K(k - 1));
        if (p1_equal(lam, s.lambda_c)) continue;
        lams.push_back(lam);
    }
    Quadratic<K> q0 = line_conic_restriction(pen.member(lams[0]), p, b);
    TangentInvolution<K> ti;
    ti.tangency = p;
    ti.e0 = p;
    ti.e1 = b;
    ti.g = involution_fixing_point_swapping_roots(P1<K>(K(1), K(0)), q0);
    for (size_t i = 1; i < lams.size(); ++i) {
        Quadratic<K> qi = line_conic_restriction(pen.member(lams[i]), p, b);
        if (!quadratics_proportional(pullback(qi, ti.g), qi))
            throw VerificationFailed("involution does not permute a member's root pair");
    }
    return ti;
}

// coefficients c_j of the exotic integrals
template <class K>
std::vector<K> exotic_cj(const ExoticKind& k) {
    std::vector<K> c;
    if (k.tag == ExoticTag::A1)
        for (int j = 1; j <= k.N; ++j)
            c.push_back(K(-4 * j * (2 * k.N + 1 - j)) / K((2 * k.N + 1 - 2 * j) * (2 * k.N + 1 - 2 * j)));
    else if (k.tag == ExoticTag::A2)
        for (int j = 1; j <= k.N; ++j)
            c.push_back(K(-j * (2 * k.N + 2 - j)) / K((k.N + 1 - j) * (k.N + 1 - j)));
    else
        throw Error("c_j defined only for the 2a families");
    return c;
}

// canonical integral in the normal chart, homogenized in [z:w:t]
template <class K>
RationalIntegral<K> exotic_integral_normal(const ExoticKind& k) {
    using P = Poly3<K>;
    P z = P::variable(0), w = P::variable(1), t = P::variable(2);
    P F = w * t - z * z;
    P num, den;
    switch (k.tag) {
        case ExoticTag::A1: {
            num = F.pow(2 * k.N + 1);
            den = P::constant(K(1));
            for (auto& c : exotic_cj<K>(k)) {
                P f = w * t - (z * z).scaled(c);
                den = den * f * f;
            }
            den = den * t * t;
            break;
        }
        case ExoticTag::A2: {
            num = F.pow(k.N + 1);
            den = z;
            for (auto& c : exotic_cj<K>(k)) den = den * (w * t - (z * z).scaled(c));
            den = den * t;
            break;
        }
        case ExoticTag::B1:
            num = F * F;
            den = (w * t + (z * z).scaled(K(3))) * (z - t) * (z - w);
            break;
        case ExoticTag::B2:
            num = F * F;
            den = (z * z + w * w + w * t + t * t) * (z * z + t * t);
            break;
        case ExoticTag::C1: {
            num = F.pow(3);
            P g = t * t * t + w * w * w - (z * w * t).scaled(K(2));
            den = g * g;
            break;
        }
        case ExoticTag::C2: {
            num = F.pow(3);
            P g = (z * z * z).scaled(K(8)) - (z * z * w).scaled(K(8)) - (z * z * t).scaled(K(8)) -
                  w * w * t - w * t * t + (z * w * t).scaled(K(10));
            den = g * g;
            break;
        }
        case ExoticTag::D: {
            num = F.pow(3);
            P g = w * t * t + (z * z * t).scaled(K(8)) + (w * w * t).scaled(K(4)) +
                  (w * z * z).scaled(K(5)) - (z * w * t).scaled(K(14)) - (z * z * z).scaled(K(4));
            den = (w * t + (z * z).scaled(K(8))) * (z - t) * g;
            break;
        }
    }
    return RationalIntegral<K>(num, den);
}

template <class K>
RationalIntegral<K> canonical_integral(const DualBilliardStructure<K>& s) {
    if (s.exotic) return exotic_integral_normal<K>(s.kind).pullback(s.chart.m);
    const Pencil<K>& p = *s.pencil;
    Poly3<K> q0 = p.c0.form(), q1 = p.c1.form();
    // numerator vanishes exactly on the carrier member
    Poly3<K> num = q0.scaled(s.lambda_c.d) + q1.scaled(s.lambda_c.n);
    Poly3<K> den = s.lambda_c.is_infinity() ? q0 : q1;
    return RationalIntegral<K>(num, den);
}

// vertex of a dual multibilliard: angular symmetry about an axis, or the
// degenerate variant fixing a conic s through the center pointwise
template <class K>
struct VertexSpec {
    Point<K> center;
    bool degenerate = false;
    Line<K> axis;   // angular case
    Conic<K> s;     // degenerate case

    static VertexSpec angular(const Point<K>& c, const Line<K>& ax) {
        if (ax.contains(c)) throw Error("vertex center on its axis");
        VertexSpec v;
        v.center = c;
        v.axis = ax;
        return v;
    }
    static VertexSpec degenerate_over(const Point<K>& c, const Conic<K>& s) {
        if (!s.contains(c)) throw Error("degenerate vertex center not on its conic");
        if (!s.regular()) throw SingularConic();
        VertexSpec v;
        v.center = c;
        v.degenerate = true;
        v.s = s;
        return v;
    }
};

template <class K>
ProjMap<K> vertex_proj_map(const VertexSpec<K>& v) {
    if (v.degenerate) throw Error("degenerate vertex has no linear map");
    return angular_symmetry(v.center, v.axis);
}

template <class K>
Point<K> vertex_apply(const VertexSpec<K>& v, const Point<K>& x) {
    if (!v.degenerate) return vertex_proj_map(v)(x);
    if (x == v.center) return x;
    // restrict s to the line joining center and x; x maps to the harmonic
    // conjugate with respect to the two intersection points with s
    Quadratic<K> q = line_conic_restriction(v.s, v.center, x);
    // q.a = 0 since the center lies on s; second root at (-q.c : q.b)
    if (is_zero(q.b)) throw EvaluationOnExceptionalLine("tangent line at the center");
    Vec3<K> h;
    for (int i = 0; i < 3; ++i) h[i] = (K(0) - K(2) * q.c) * v.center.h[i] + q.b * x.h[i];
    return Point<K>(h);
}

template <class K>
struct ExoticVertex {
    VertexSpec<K> spec;
    bool real = true;
};

// vertex catalog in the normal chart; the angular axis is the polar of the
// center with respect to the parabola
template <class K>
VertexSpec<K> parabola_angular_vertex(const Point<K>& center) {
    Conic<K> par = parabola_conic<K>();
    return VertexSpec<K>::angular(center, Line<K>(par.q.apply(center.h)));
}

// count of vertices that exist only over an extension by sqrt(-3)
inline int exotic_complex_vertex_count(ExoticTag t) { return t == ExoticTag::C1 ? 2 : 0; }

template <class K>
std::vector<ExoticVertex<K>> exotic_admissible_vertices(const ExoticKind& k,
                                                        bool include_complex = false) {
    std::vector<ExoticVertex<K>> out;
    auto add = [&](const Point<K>& c, bool real) {
        out.push_back({parabola_angular_vertex(c), real});
    };
    switch (k.tag) {
        case ExoticTag::A1:
        case ExoticTag::A2:
        case ExoticTag::B2:
            add(Point<K>(K(1), K(0), K(0)), true);
            break;
        case ExoticTag::B1:
            add(Point<K>(K(0), K(-1), K(1)), true);
            break;
        case ExoticTag::C1: {
            add(Point<K>(K(0), K(-1), K(1)), true);
            if (include_complex) {
                // centers (0, -e), (0, -conj(e)) with e a primitive cube root of
                // unity; requires sqrt(-3) in K
                if constexpr (std::is_same_v<K, EisenRat>) {
                    EisenRat eps(Rat(-1, 2), Rat(1, 2));
                    add(Point<K>(K(0), K(0) - eps, K(1)), false);
                    add(Point<K>(K(0), K(0) - eps.conj(), K(1)), false);
                } else {
                    throw UnsupportedFieldKind("complex 2c1 vertices need sqrt(-3)");
                }
            }
            break;
        }
        case ExoticTag::C2:
            add(Point<K>(K(0), K(-1), K(1)), true);
            add(Point<K>(K(1), K(0), K(1)), true);
            add(Point<K>(K(1), K(1), K(0)), true);
            break;
        case ExoticTag::D:
            break;
    }
    return out;
}

template <class K>
struct DualMultibilliard {
    std::vector<DualBilliardStructure<K>> curves;
    std::vector<VertexSpec<K>> vertices;
};

struct InvarianceReport {
    int curve_samples = 0, vertex_samples = 0;
    int curve_failures = 0, vertex_failures = 0;
    bool ok() const { return curve_failures == 0 && vertex_failures == 0; }
};

// second intersection of the conic with the line through p0 (on c) along d
template <class K>
Point<K> conic_second_point(const Conic<K>& c, const Point<K>& p0, const Point<K>& d) {
    Quadratic<K> q = line_conic_restriction(c, d, p0);
    // param point t*d + s*p0; q.c = 0; other root (-q.b : q.a)
    if (is_zero(q.a)) throw TangentialIncidence("direction tangent at p0");
    Vec3<K> h;
    for (int i = 0; i < 3; ++i) h[i] = (K(0) - q.b) * d.h[i] + q.a * p0.h[i];
    return Point<K>(h);
}

template <class K>
InvarianceReport check_invariance(const RationalIntegral<K>& R, const DualMultibilliard<K>& mb,
                                  int samples, std::uint64_t seed) {
    RatSampler rs(seed);
    auto rnd = [&]() -> K { return K(rs.integer(-30, 30)) / K(rs.integer(1, 7)); };
    InvarianceReport rep;
    for (auto& s : mb.curves) {
        int done = 0, guard = 0;
        while (done < samples && guard < samples * 40) {
            ++guard;
            try {
                Point<K> p;
                if (s.exotic) {
                    K z = rnd();
                    p = s.chart.inverse()(Point<K>(z, z * z, K(1)));
                } else {
                    if (!s.sample_point) throw Error("no sample point on carrier");
                    Point<K> d(rnd(), rnd(), K(1));
                    p = conic_second_point(s.carrier, *s.sample_point, d);
                }
                TangentInvolution<K> ti = tangent_involution(s, p);
                Point<K> x = ti.point(P1<K>(rnd()));
                Point<K> y = ti.apply(x);
                if (!R.values_equal(x.h, y.h)) ++rep.curve_failures;
                ++rep.curve_samples;
                ++done;
            } catch (const Error&) {
                continue;  // resample away from excluded loci
            }
        }
    }
    for (auto& v : mb.vertices) {
        int done = 0, guard = 0;
        while (done < samples && guard < samples * 40) {
            ++guard;
            try {
                Point<K> x(rnd(), rnd(), K(1));
                Point<K> y = vertex_apply(v, x);
                if (!R.values_equal(x.h, y.h)) ++rep.vertex_failures;
                ++rep.vertex_samples;
                ++done;
            } catch (const Error&) {
                continue;
            }
        }
    }
    return rep;
}

} // namespace pb
