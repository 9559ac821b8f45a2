#pragma once
// Projective billiards: boundary pieces (conic arcs and segments) carrying
// line fields, the harmonic reflection law, orbit tracing, the moment-vector
// duality to dual multibilliards, the velocity-space Psi integrals, and the
// chi-coefficient degree-12 integral.

#include <cmath>

#include "pb/pencilint.hpp"

namespace pb {

enum class FieldKind { DualPencil, Exotic, Central, Tangent, Parallel, Normal };

template <class K>
struct FieldSpec {
    FieldKind kind = FieldKind::Normal;

    // DualPencil: the pencil in the dual (moment) plane containing the dual
    // of this piece's conic as member dual_lambda
    Pencil<K> dual_pencil;
    P1<K> dual_lambda;

    // Exotic: the family tag and the chart mapping ambient coordinates to
    // the normal chart (boundary -> x2 = x1^2)
    ExoticKind exotic{};
    ProjMap<K> chart;

    Point<K> focus;          // Central
    Conic<K> tangent_conic;  // Tangent
    int branch = 0;
    K dir1{}, dir2{};        // Parallel
    bool pseudo = false;     // Normal: reflect the x2 gradient component

    static FieldSpec normal(bool pseudo_euclidean = false) {
        FieldSpec f;
        f.kind = FieldKind::Normal;
        f.pseudo = pseudo_euclidean;
        return f;
    }
    static FieldSpec central(const Point<K>& p) {
        FieldSpec f;
        f.kind = FieldKind::Central;
        f.focus = p;
        return f;
    }
    static FieldSpec parallel(const K& d1, const K& d2) {
        FieldSpec f;
        f.kind = FieldKind::Parallel;
        f.dir1 = d1;
        f.dir2 = d2;
        return f;
    }
    static FieldSpec tangent(const Conic<K>& s, int branch) {
        FieldSpec f;
        f.kind = FieldKind::Tangent;
        f.tangent_conic = s;
        f.branch = branch;
        return f;
    }
    static FieldSpec dual_pencil_field(const Pencil<K>& p, const P1<K>& lam) {
        FieldSpec f;
        f.kind = FieldKind::DualPencil;
        f.dual_pencil = p;
        f.dual_lambda = lam;
        return f;
    }
    static FieldSpec exotic_field(const ExoticKind& k, const ProjMap<K>& chart = ProjMap<K>()) {
        FieldSpec f;
        f.kind = FieldKind::Exotic;
        f.exotic = k;
        f.chart = chart;
        return f;
    }
};

template <class K>
struct BoundaryPiece {
    bool is_segment = false;

    // segment data: affine endpoints, ambient line
    Point<K> seg_a, seg_b;
    Line<K> line;

    // arc data: conic with halfplane cuts selecting the arc
    Conic<K> conic;
    std::vector<std::pair<Line<K>, int>> cuts;  // sign * line(P) >= 0 on the arc

    std::vector<Point<K>> endpoints;  // for corner detection
    FieldSpec<K> field;

    static BoundaryPiece segment(const Point<K>& a, const Point<K>& b, const FieldSpec<K>& f) {
        BoundaryPiece p;
        p.is_segment = true;
        p.seg_a = a;
        p.seg_b = b;
        p.line = join(a, b);
        p.endpoints = {a, b};
        p.field = f;
        return p;
    }
    static BoundaryPiece arc(const Conic<K>& c, std::vector<std::pair<Line<K>, int>> cuts,
                             std::vector<Point<K>> ends, const FieldSpec<K>& f) {
        BoundaryPiece p;
        p.conic = c;
        p.cuts = std::move(cuts);
        p.endpoints = std::move(ends);
        p.field = f;
        return p;
    }
};

template <class K>
struct Billiard {
    std::vector<BoundaryPiece<K>> pieces;
    std::vector<Point<K>> excluded;  // base points of boundary structures
};

// exotic transversal direction fields on x2 = x1^2, in chart coordinates
template <class K>
std::pair<K, K> exotic_direction(const ExoticKind& k, const K& x1, const K& x2) {
    switch (k.tag) {
        case ExoticTag::A1:
        case ExoticTag::A2: {
            K r = rho_of<K>(k);
            return {r, K(2) * (r - K(2)) * x1};
        }
        case ExoticTag::B1: return {K(5) * x1 + K(3), K(2) * (x2 - x1)};
        case ExoticTag::B2: return {K(3) * x1, K(2) * x2 - K(4)};
        case ExoticTag::C1: return {x2, x1 * x2 - K(1)};
        case ExoticTag::C2: return {K(2) * x1 + K(1), x2 - x1};
        case ExoticTag::D: return {K(7) * x1 + K(4), K(2) * x2 - K(4) * x1};
    }
    throw Error("unreachable");
}

template <class K>
K sqrt_scalar(const K&) {
    throw UnsupportedFieldKind("square roots unavailable on this backend");
}
inline double sqrt_scalar(double x) {
    if (x < 0) throw NoRealTangent();
    return std::sqrt(x);
}
inline Rat sqrt_scalar(const Rat& x) {
    if (x < 0) throw NoRealTangent();
    mpz_class n = sqrt(x.get_num());
    mpz_class d = sqrt(x.get_den());
    if (n * n != x.get_num() || d * d != x.get_den())
        throw NoRealTangent("irrational square root on the exact backend");
    return Rat(n, d);
}

template <class K>
Line<K> line_through_direction(const Point<K>& q, const K& dx, const K& dy) {
    return join(q, Point<K>(dx, dy, K(0)));
}

template <class K>
Line<K> transversal_line(const BoundaryPiece<K>& piece, const Point<K>& q) {
    const FieldSpec<K>& f = piece.field;
    switch (f.kind) {
        case FieldKind::Central:
            return join(q, f.focus);
        case FieldKind::Parallel:
            return line_through_direction(q, f.dir1, f.dir2);
        case FieldKind::Normal: {
            Vec3<K> g = piece.conic.gradient(q);
            K gy = f.pseudo ? K(0) - g[1] : g[1];
            return line_through_direction(q, g[0], gy);
        }
        case FieldKind::Exotic: {
            Point<K> qc = f.chart(q);
            if (is_zero(qc.h[2])) throw BasePointOfStructure("infinite chart point");
            K x1 = qc.h[0] / qc.h[2], x2 = qc.h[1] / qc.h[2];
            auto [dx, dy] = exotic_direction(f.exotic, x1, x2);
            Point<K> inf = f.chart.inverse()(Point<K>(dx, dy, K(0)));
            return join(q, inf);
        }
        case FieldKind::Tangent: {
            // tangents from q to the conic: dual points on the dual conic
            Conic<K> sd = dual_conic(f.tangent_conic);
            Line<K> l0 = join(q, Point<K>(q.h[0] + K(1), q.h[1], q.h[2]));
            Line<K> l1 = join(q, Point<K>(q.h[0], q.h[1] + K(1), q.h[2]));
            Quadratic<K> qq = line_conic_restriction(sd, Point<K>(l0.xi), Point<K>(l1.xi));
            // roots of qq.a t^2 + qq.b t + qq.c
            K disc = qq.b * qq.b - K(4) * qq.a * qq.c;
            K s = sqrt_scalar(disc);
            if (is_zero(qq.a)) {
                if (is_zero(qq.b)) throw NoRealTangent();
                // roots: t = -c/b and t = infinity
                P1<K> r = (f.branch == 0) ? P1<K>(K(0) - qq.c, qq.b) : P1<K>::infinity();
                Vec3<K> xi;
                for (int i = 0; i < 3; ++i) xi[i] = r.n * l0.xi[i] + r.d * l1.xi[i];
                return Line<K>(xi);
            }
            K t = (f.branch == 0) ? K((K(0) - qq.b + s) / (K(2) * qq.a))
                                  : K((K(0) - qq.b - s) / (K(2) * qq.a));
            Vec3<K> xi;
            for (int i = 0; i < 3; ++i) xi[i] = t * l0.xi[i] + l1.xi[i];
            return Line<K>(xi);
        }
        case FieldKind::DualPencil: {
            Line<K> t = tangent_line(piece.conic, q);
            // a second line through q spanning the line pencil
            Point<K> aux(q.h[0] + K(1), q.h[1] + K(2), q.h[2] + K(5));
            if (aux == q || t.contains(aux)) aux = Point<K>(q.h[0] + K(3), q.h[1] - K(1), q.h[2] + K(7));
            Line<K> u = join(q, aux);
            Point<K> td(t.xi), ud(u.xi);
            Mob<K> g;
            bool have = false;
            for (int k = 0; k < 12 && !have; ++k) {
                P1<K> lam = (k == 0) ? P1<K>::infinity() : P1<K>(K(k - 1));
                if (p1_equal(lam, f.dual_lambda)) continue;
                Conic<K> mem = f.dual_pencil.member(lam);
                Quadratic<K> qq = line_conic_restriction(mem, td, ud);
                if (is_zero(qq.a)) continue;  // member through the dual tangent point
                g = involution_fixing_point_swapping_roots(P1<K>(K(1), K(0)), qq);
                have = true;
                if constexpr (FT<K>::exact) {
                    // cross-validate against one more member
                    for (int k2 = k + 1; k2 < 12; ++k2) {
                        P1<K> lam2 = P1<K>(K(k2 - 1));
                        if (p1_equal(lam2, f.dual_lambda)) continue;
                        Quadratic<K> q2 = line_conic_restriction(f.dual_pencil.member(lam2), td, ud);
                        if (is_zero(q2.a)) continue;
                        if (!quadratics_proportional(pullback(q2, g), q2))
                            throw VerificationFailed("caustic involutions disagree");
                        break;
                    }
                }
            }
            if (!have) throw BasePointOfStructure("no usable caustic member");
            // second fixed line of the involution fixing the tangent (1:0)
            if (!is_zero(g.c)) throw VerificationFailed("involution does not fix the tangent");
            Vec3<K> xi;
            for (int i = 0; i < 3; ++i) xi[i] = g.b * t.xi[i] + (g.d - g.a) * u.xi[i];
            return Line<K>(xi);
        }
    }
    throw Error("unreachable");
}

// tangent direction of the piece at q, as an affine 2-vector
template <class K>
std::pair<K, K> piece_tangent_direction(const BoundaryPiece<K>& piece, const Point<K>& q) {
    if (piece.is_segment) {
        K ax = piece.seg_a.h[0] / piece.seg_a.h[2], ay = piece.seg_a.h[1] / piece.seg_a.h[2];
        K bx = piece.seg_b.h[0] / piece.seg_b.h[2], by = piece.seg_b.h[1] / piece.seg_b.h[2];
        return {bx - ax, by - ay};
    }
    Vec3<K> g = piece.conic.gradient(q);
    return {K(0) - g[1], g[0]};
}

// reflection: v = alpha*T + beta*N maps to alpha*T - beta*N
template <class K>
std::pair<K, K> reflect(const BoundaryPiece<K>& piece, const Point<K>& q, const K& vx,
                        const K& vy) {
    auto [tx, ty] = piece_tangent_direction(piece, q);
    Line<K> n = transversal_line(piece, q);
    K nx = n.xi[1], ny = K(0) - n.xi[0];
    K det = tx * ny - ty * nx;
    if (is_zero(det)) throw Error("transversal line tangent to the boundary");
    K alpha = (vx * ny - vy * nx) / det;
    K beta = (tx * vy - ty * vx) / det;
    if (is_zero(beta)) throw TangentialIncidence();
    return {alpha * tx - beta * nx, alpha * ty - beta * ny};
}

// ---- moments and duality ------------------------------------------------

template <class K>
Vec3<K> moment(const K& x1, const K& x2, const K& v1, const K& v2) {
    return {K(0) - v2, v1, x1 * v2 - x2 * v1};
}

template <class K>
DualMultibilliard<K> dualize(const Billiard<K>& b) {
    DualMultibilliard<K> mb;
    for (auto& piece : b.pieces) {
        if (piece.is_segment) {
            Point<K> center = orthogonal_polar_dual(piece.line);
            switch (piece.field.kind) {
                case FieldKind::Central:
                    mb.vertices.push_back(
                        VertexSpec<K>::angular(center, orthogonal_polar_dual(piece.field.focus)));
                    break;
                case FieldKind::Parallel:
                    mb.vertices.push_back(VertexSpec<K>::angular(
                        center, Line<K>(piece.field.dir1, piece.field.dir2, K(0))));
                    break;
                case FieldKind::Tangent:
                    mb.vertices.push_back(VertexSpec<K>::degenerate_over(
                        center, dual_conic(piece.field.tangent_conic)));
                    break;
                default:
                    throw UnsupportedFieldKind("segment with a non-segment field");
            }
        } else {
            switch (piece.field.kind) {
                case FieldKind::DualPencil:
                    mb.curves.push_back(DualBilliardStructure<K>::pencil_defined(
                        piece.field.dual_pencil, piece.field.dual_lambda));
                    break;
                case FieldKind::Normal: {
                    // the normal field makes the conic a member of its confocal
                    // family; dually, the pencil spanned by the dual conic and
                    // the isotropic form
                    Conic<K> dc = dual_conic(piece.conic);
                    Mat3<K> iso = Mat3<K>::zero();
                    iso[0][0] = K(1);
                    iso[1][1] = piece.field.pseudo ? K(-1) : K(1);
                    Pencil<K> dp(dc, Conic<K>(iso));
                    mb.curves.push_back(
                        DualBilliardStructure<K>::pencil_defined(dp, P1<K>(K(0))));
                    break;
                }
                case FieldKind::Exotic: {
                    // chart map F: (z, w, t) -> (z/2, t, w) conjugates the dual
                    // of the orthogonal-polar dual structure to the normal form
                    Mat3<K> fm = Mat3<K>::zero();
                    fm[0][0] = K(1) / K(2);
                    fm[1][2] = K(1);
                    fm[2][1] = K(1);
                    // ambient dual coordinates -> normal chart: F after the
                    // contragredient of the billiard-side chart
                    Mat3<K> dual_chart = piece.field.chart.m.adjugate().transpose();
                    mb.curves.push_back(DualBilliardStructure<K>::exotic_structure(
                        piece.field.exotic, ProjMap<K>(fm * dual_chart)));
                    break;
                }
                default:
                    throw UnsupportedFieldKind("arc with a segment-only field");
            }
        }
    }
    return mb;
}

// ---- orbit tracing (binary64) -------------------------------------------

struct OrbitState {
    double x = 0, y = 0, vx = 1, vy = 0;
};

enum class OrbitEnd { Completed, CornerHit, BasePointApproach, Escape, Tangential };

inline const char* orbit_end_name(OrbitEnd e) {
    switch (e) {
        case OrbitEnd::Completed: return "completed";
        case OrbitEnd::CornerHit: return "corner";
        case OrbitEnd::BasePointApproach: return "base-point";
        case OrbitEnd::Escape: return "escape";
        case OrbitEnd::Tangential: return "tangential";
    }
    return "?";
}

struct OrbitEvent {
    int piece = -1;
    double x = 0, y = 0;
    double vx_in = 0, vy_in = 0, vx_out = 0, vy_out = 0;
};

struct Orbit {
    std::vector<OrbitEvent> events;
    OrbitEnd end = OrbitEnd::Completed;
};

inline Orbit trace_orbit(const Billiard<double>& b, OrbitState s, int nsteps,
                         double delta = 1e-6) {
    Orbit orbit;
    const double tmin = 1e-7;
    const double corner_tol = 1e-9;
    for (int step = 0; step < nsteps; ++step) {
        double best_t = -1;
        int best_piece = -1;
        int hits_at_best = 0;
        for (size_t pi = 0; pi < b.pieces.size(); ++pi) {
            const auto& piece = b.pieces[pi];
            auto consider = [&](double t) {
                if (t <= tmin) return;
                if (best_t < 0 || t < best_t - 1e-10) {
                    best_t = t;
                    best_piece = int(pi);
                    hits_at_best = 1;
                } else if (std::fabs(t - best_t) <= 1e-10 && int(pi) != best_piece) {
                    ++hits_at_best;
                }
            };
            if (piece.is_segment) {
                const auto& xi = piece.line.xi;
                double denom = xi[0] * s.vx + xi[1] * s.vy;
                if (std::fabs(denom) < 1e-14) continue;
                double t = -(xi[0] * s.x + xi[1] * s.y + xi[2]) / denom;
                if (t <= tmin) continue;
                double hx = s.x + t * s.vx, hy = s.y + t * s.vy;
                double ax = piece.seg_a.h[0] / piece.seg_a.h[2],
                       ay = piece.seg_a.h[1] / piece.seg_a.h[2];
                double bx = piece.seg_b.h[0] / piece.seg_b.h[2],
                       by = piece.seg_b.h[1] / piece.seg_b.h[2];
                double len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
                double u = ((hx - ax) * (bx - ax) + (hy - ay) * (by - ay)) / len2;
                if (u < -1e-9 || u > 1 + 1e-9) continue;
                consider(t);
            } else {
                Vec3<double> r{s.x, s.y, 1.0}, v{s.vx, s.vy, 0.0};
                const Mat3<double>& q = piece.conic.q;
                double A = dot(v, q.apply(v));
                double B = 2 * dot(r, q.apply(v));
                double C = dot(r, q.apply(r));
                std::vector<double> roots;
                if (std::fabs(A) < 1e-14) {
                    if (std::fabs(B) > 1e-14) roots.push_back(-C / B);
                } else {
                    double disc = B * B - 4 * A * C;
                    if (disc >= 0) {
                        double sq = std::sqrt(disc);
                        roots.push_back((-B + sq) / (2 * A));
                        roots.push_back((-B - sq) / (2 * A));
                    }
                }
                for (double t : roots) {
                    if (t <= tmin) continue;
                    double hx = s.x + t * s.vx, hy = s.y + t * s.vy;
                    bool onarc = true;
                    for (auto& [l, sign] : piece.cuts)
                        if (sign * (l.xi[0] * hx + l.xi[1] * hy + l.xi[2]) < -1e-9) onarc = false;
                    if (onarc) consider(t);
                }
            }
        }
        if (best_piece < 0) {
            orbit.end = OrbitEnd::Escape;
            return orbit;
        }
        double hx = s.x + best_t * s.vx, hy = s.y + best_t * s.vy;
        if (hits_at_best > 1) {
            orbit.end = OrbitEnd::CornerHit;
            return orbit;
        }
        for (auto& e : b.pieces[best_piece].endpoints) {
            double ex = e.h[0] / e.h[2], ey = e.h[1] / e.h[2];
            if (std::hypot(hx - ex, hy - ey) < corner_tol) {
                orbit.end = OrbitEnd::CornerHit;
                return orbit;
            }
        }
        for (auto& e : b.excluded) {
            double ex = e.h[0] / e.h[2], ey = e.h[1] / e.h[2];
            if (std::hypot(hx - ex, hy - ey) < delta) {
                orbit.end = OrbitEnd::BasePointApproach;
                return orbit;
            }
        }
        OrbitEvent ev;
        ev.piece = best_piece;
        ev.x = hx;
        ev.y = hy;
        ev.vx_in = s.vx;
        ev.vy_in = s.vy;
        try {
            auto [ox, oy] = reflect(b.pieces[best_piece], Point<double>(hx, hy, 1.0), s.vx, s.vy);
            double n = std::hypot(ox, oy);
            ev.vx_out = ox / n;
            ev.vy_out = oy / n;
        } catch (const Error&) {
            orbit.end = OrbitEnd::Tangential;
            return orbit;
        }
        orbit.events.push_back(ev);
        s = {hx, hy, ev.vx_out, ev.vy_out};
    }
    return orbit;
}

// ---- integrals in (v1, v2, Delta) ---------------------------------------

// substitution matrix sending (v1, v2, Delta) to the moment (-v2, v1, Delta)
template <class K>
Mat3<K> moment_substitution() {
    Mat3<K> a = Mat3<K>::zero();
    a[0][1] = K(-1);
    a[1][0] = K(1);
    a[2][2] = K(1);
    return a;
}

template <class K>
RationalIntegral<K> exotic_psi_normal(const ExoticKind& k) {
    using P = Poly3<K>;
    P v1 = P::variable(0), v2 = P::variable(1), de = P::variable(2);
    P F = (v1 * de).scaled(K(4)) - v2 * v2;
    P num, den;
    switch (k.tag) {
        case ExoticTag::A1: {
            num = F.pow(2 * k.N + 1);
            den = v1 * v1;
            for (auto& c : exotic_cj<K>(k)) {
                P f = (v1 * de).scaled(K(4)) - (v2 * v2).scaled(c);
                den = den * f * f;
            }
            break;
        }
        case ExoticTag::A2: {
            num = F.pow(k.N + 1);
            den = v1 * v2;
            for (auto& c : exotic_cj<K>(k))
                den = den * ((v1 * de).scaled(K(4)) - (v2 * v2).scaled(c));
            break;
        }
        case ExoticTag::B1:
            num = F * F;
            den = ((v1 * de).scaled(K(4)) + (v2 * v2).scaled(K(3))) *
                  (v1.scaled(K(2)) + v2) * (de.scaled(K(2)) + v2);
            break;
        case ExoticTag::B2:
            num = F * F;
            den = (v2 * v2 + (de * de).scaled(K(4)) + (v1 * de).scaled(K(4)) +
                   (v1 * v1).scaled(K(4))) *
                  (v2 * v2 + (v1 * v1).scaled(K(4)));
            break;
        case ExoticTag::C1: {
            num = F.pow(3);
            P g = v1.pow(3) + de.pow(3) + v1 * v2 * de;
            den = g * g;
            break;
        }
        case ExoticTag::C2: {
            num = F.pow(3);
            P g = v2.pow(3) + (v2 * v2 * v1).scaled(K(2)) +
                  (v1 * v1 + (v2 * v2).scaled(K(2)) + (v1 * v2).scaled(K(5))) * de +
                  v1 * de * de;
            den = g * g;
            break;
        }
        case ExoticTag::D: {
            num = F.pow(3);
            P g = (v1 * v2 * v2).scaled(K(8)) + v2.pow(3).scaled(K(2)) +
                  ((v1 * v1).scaled(K(4)) + (v2 * v2).scaled(K(5)) + (v1 * v2).scaled(K(28))) * de +
                  (v1 * de * de).scaled(K(16));
            den = (v1 * de + (v2 * v2).scaled(K(2))) * (v1.scaled(K(2)) + v2) * g;
            break;
        }
    }
    return RationalIntegral<K>(num, den);
}

// integral in the variables (v1, v2, Delta)
template <class K>
RationalIntegral<K> psi_integral(const FieldSpec<K>& f) {
    if (f.kind == FieldKind::Exotic) return exotic_psi_normal<K>(f.exotic);
    if (f.kind == FieldKind::DualPencil) {
        Poly3<K> q0 = f.dual_pencil.c0.form().substitute(moment_substitution<K>());
        Poly3<K> q1 = f.dual_pencil.c1.form().substitute(moment_substitution<K>());
        // vanish on the carrier member
        Poly3<K> num = q0.scaled(f.dual_lambda.d) + q1.scaled(f.dual_lambda.n);
        Poly3<K> den = f.dual_lambda.is_infinity() ? q0 : q1;
        return RationalIntegral<K>(num, den);
    }
    throw UnsupportedFieldKind("psi_integral needs an arc field");
}

// product over the parameter group of the member-through function of a
// dual-plane pencil; a first integral in the moment coordinates
template <class K>
RationalIntegral<K> group_orbit_integral(const Pencil<K>& dual_plane, const GroupClosure<K>& g,
                                         bool in_velocity_vars = true) {
    if (g.infinite) throw Error("infinite parameter group");
    Poly3<K> q0 = dual_plane.c0.form();
    Poly3<K> q1 = dual_plane.c1.form();
    if (in_velocity_vars) {
        q0 = q0.substitute(moment_substitution<K>());
        q1 = q1.substitute(moment_substitution<K>());
    }
    // lambda(M) = (-q0 : q1); each group element acts by its Mobius matrix
    Poly3<K> num = Poly3<K>::constant(K(1));
    Poly3<K> den = Poly3<K>::constant(K(1));
    for (auto& e : g.elements) {
        Poly3<K> n = q0.scaled(K(0) - e.a) + q1.scaled(e.b);
        Poly3<K> d = q0.scaled(K(0) - e.c) + q1.scaled(e.d);
        num = num * n;
        den = den * d;
    }
    return RationalIntegral<K>(num, den);
}

// ---- chi coefficients and the degree-12 billiard integral ---------------

template <class K>
struct ChiCoefficients {
    K chi_ab_cd{}, chi_bc_ad{}, chi_ac_bd{};
    // intersection points, affine triples (x1, x2, 1)
    Point<K> ab, cd, bc, ad, ac, bd;
};

// component ratio of two parallel vectors
template <class K>
K parallel_ratio(const K& ux, const K& uy, const K& vx, const K& vy) {
    if (!is_zero(vx)) return ux / vx;
    if (!is_zero(vy)) return uy / vy;
    throw DegenerateQuadrilateral("zero direction vector");
}

// homogeneous intersection points; tolerates points at infinity
template <class K>
struct ChiPoints {
    Point<K> ab, cd, bc, ad, ac, bd;
};

template <class K>
ChiPoints<K> chi_intersections(const Line<K>& a, const Line<K>& b, const Line<K>& c,
                               const Line<K>& d) {
    ChiPoints<K> p;
    try {
        p.ab = meet(a, b);
        p.cd = meet(c, d);
        p.bc = meet(b, c);
        p.ad = meet(a, d);
        p.ac = meet(a, c);
        p.bd = meet(b, d);
    } catch (const DegenerateTriple&) {
        throw DegenerateQuadrilateral("coincident side lines");
    }
    auto same = [](const Point<K>& u, const Point<K>& v) { return proportional(u.h, v.h); };
    if (same(p.ab, p.ac) || same(p.ab, p.bc) || same(p.cd, p.ac) || same(p.cd, p.bd) ||
        same(p.ab, p.cd))
        throw DegenerateQuadrilateral("three concurrent side lines");
    return p;
}

template <class K>
std::array<Poly3<K>, 3> chi_forms_of(const ChiPoints<K>& p) {
    auto lin = [](const Point<K>& q) { return Poly3<K>::linear(q.h); };
    return {lin(p.ab) * lin(p.cd), lin(p.bc) * lin(p.ad), lin(p.ac) * lin(p.bd)};
}

// coefficients making the three forms vanish in combination
template <class K>
std::array<K, 3> chi_nullspace_of(const std::array<Poly3<K>, 3>& q) {
    auto coeff = [](const Poly3<K>& f, const typename Poly3<K>::Mono& m) {
        auto it = f.t.find(m);
        return it == f.t.end() ? K(0) : it->second;
    };
    std::vector<typename Poly3<K>::Mono> monos;
    for (int idx = 0; idx < 3; ++idx)
        for (auto& [m, v] : q[idx].t) monos.push_back(m);
    for (size_t i = 0; i < monos.size(); ++i)
        for (size_t j = 0; j < monos.size(); ++j) {
            K a11 = coeff(q[0], monos[i]), a12 = coeff(q[1], monos[i]), r1 = coeff(q[2], monos[i]);
            K a21 = coeff(q[0], monos[j]), a22 = coeff(q[1], monos[j]), r2 = coeff(q[2], monos[j]);
            K det = a11 * a22 - a12 * a21;
            if (is_zero(det)) continue;
            K x = K(0) - (r1 * a22 - r2 * a12);
            K y = K(0) - (a11 * r2 - a21 * r1);
            // verify the full combination vanishes
            Poly3<K> z = q[0].scaled(x) + q[1].scaled(y) + q[2].scaled(det);
            if (!z.zero()) throw DegenerateQuadrilateral("no vanishing combination");
            return {x, y, det};
        }
    throw DegenerateQuadrilateral("forms do not span a plane");
}

template <class K>
ChiCoefficients<K> chi_coefficients(const Line<K>& a, const Line<K>& b, const Line<K>& c,
                                    const Line<K>& d) {
    ChiPoints<K> pts = chi_intersections(a, b, c, d);
    auto affine = [](const Point<K>& p) {
        if (is_zero(p.h[2])) throw DegenerateQuadrilateral("parallel side lines");
        return Point<K>(p.h[0] / p.h[2], p.h[1] / p.h[2], K(1));
    };
    ChiCoefficients<K> out;
    out.ab = affine(pts.ab);
    out.cd = affine(pts.cd);
    out.bc = affine(pts.bc);
    out.ad = affine(pts.ad);
    out.ac = affine(pts.ac);
    out.bd = affine(pts.bd);
    // signed length ratios measured from ab: s, tau along a; t, rho along b
    auto diff = [](const Point<K>& p, const Point<K>& q) {
        return std::pair<K, K>(p.h[0] - q.h[0], p.h[1] - q.h[1]);
    };
    auto [sx, sy] = diff(out.ac, out.ab);
    auto [taux, tauy] = diff(out.ad, out.ab);
    auto [tx, ty] = diff(out.bd, out.ab);
    auto [rhox, rhoy] = diff(out.bc, out.ab);
    K st_over = parallel_ratio(sx, sy, taux, tauy) * parallel_ratio(tx, ty, rhox, rhoy);
    out.chi_ab_cd = st_over - K(1);
    out.chi_bc_ad = K(0) - st_over;
    out.chi_ac_bd = K(1);
    return out;
}

// the three quadratic forms <r(em), M><r(fn), M> as polynomials in M
template <class K>
std::array<Poly3<K>, 3> chi_quadratic_forms(const ChiCoefficients<K>& chi) {
    auto lin = [](const Point<K>& p) { return Poly3<K>::linear(p.h); };
    return {lin(chi.ab) * lin(chi.cd), lin(chi.bc) * lin(chi.ad), lin(chi.ac) * lin(chi.bd)};
}

// nullspace route over the affine intersection points, for comparison with
// the closed form (same form representatives)
template <class K>
std::array<K, 3> chi_by_nullspace(const Line<K>& a, const Line<K>& b, const Line<K>& c,
                                  const Line<K>& d) {
    ChiCoefficients<K> chi = chi_coefficients(a, b, c, d);
    return chi_nullspace_of(chi_quadratic_forms(chi));
}

// degree-12 first integral of the quadrilateral billiard, in moment
// coordinates by default or in (v1, v2, Delta)
template <class K>
RationalIntegral<K> degree12_billiard_integral(const Line<K>& a, const Line<K>& b,
                                               const Line<K>& c, const Line<K>& d, const K& mu,
                                               bool in_velocity_vars = true) {
    if (is_zero(mu)) throw ZeroMu();
    auto forms = chi_forms_of(chi_intersections(a, b, c, d));
    auto chi = chi_nullspace_of(forms);
    Poly3<K> g[3] = {forms[0].scaled(chi[0]), forms[1].scaled(chi[1]),
                     forms[2].scaled(chi[2])};
    Poly3<K> num = Poly3<K>::constant(K(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            num = num * (g[i] + g[j].scaled(mu));
        }
    Poly3<K> den = g[0] * g[1] * g[2];
    den = den * den;
    if (in_velocity_vars) {
        num = num.substitute(moment_substitution<K>());
        den = den.substitute(moment_substitution<K>());
    }
    return RationalIntegral<K>(num, den);
}

// factored evaluator for the degree-12 integral; near the singular lines the
// expanded polynomial cancels catastrophically in float, the product does not
template <class K>
struct ChiFactored {
    std::array<std::pair<Vec3<K>, Vec3<K>>, 3> pairs;  // the six linear forms
    std::array<K, 3> chi;
    K mu;

    ChiFactored(const Line<K>& a, const Line<K>& b, const Line<K>& c, const Line<K>& d,
                const K& mu_) : mu(mu_) {
        if (is_zero(mu)) throw ZeroMu();
        ChiPoints<K> p = chi_intersections(a, b, c, d);
        pairs = {std::pair{p.ab.h, p.cd.h}, std::pair{p.bc.h, p.ad.h},
                 std::pair{p.ac.h, p.bd.h}};
        chi = chi_nullspace_of(chi_forms_of(p));
    }

    K at_moment(const Vec3<K>& M) const {
        K g[3];
        for (int i = 0; i < 3; ++i)
            g[i] = chi[i] * dot(pairs[i].first, M) * dot(pairs[i].second, M);
        K num(1);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                num = num * (g[i] + mu * g[j]);
            }
        K den = g[0] * g[1] * g[2];
        den = den * den;
        if (is_zero(den)) throw EvaluationOnExceptionalLine("moment line through a vertex");
        return num / den;
    }
    K at_state(const K& x, const K& y, const K& vx, const K& vy) const {
        return at_moment(Vec3<K>{K(0) - vy, vx, x * vy - y * vx});
    }
};

// ---- admissible-line catalogs -------------------------------------------

template <class K>
struct LineCatalogEntry {
    Line<K> line;
    FieldSpec<K> field;
    std::string label;
    bool skew = false;
};

// duals of the angular vertices of the dual-plane pencil's catalog
template <class K>
std::vector<LineCatalogEntry<K>> admissible_lines(const Pencil<K>& dual_plane_pencil) {
    VertexCatalog<K> cat = admissible_vertices(dual_plane_pencil);
    std::vector<LineCatalogEntry<K>> out;
    for (auto& e : cat.entries) {
        if (e.spec.degenerate) continue;
        LineCatalogEntry<K> le;
        le.line = orthogonal_polar_dual(e.spec.center);
        Point<K> f = orthogonal_polar_dual(e.spec.axis);
        le.field = is_zero(f.h[2]) ? FieldSpec<K>::parallel(f.h[0], f.h[1])
                                   : FieldSpec<K>::central(f);
        le.label = "k_" + e.label;
        le.skew = e.skew;
        out.push_back(le);
    }
    return out;
}

template <class K>
std::vector<LineCatalogEntry<K>> exotic_admissible_lines(const ExoticKind& k) {
    std::vector<LineCatalogEntry<K>> out;
    auto line = [](K a, K b, K c) { return Line<K>(a, b, c); };
    switch (k.tag) {
        case ExoticTag::A1:
        case ExoticTag::A2:
        case ExoticTag::B2:
            // the x2-axis with the horizontal (normal) line field
            out.push_back({line(K(1), K(0), K(0)), FieldSpec<K>::parallel(K(1), K(0)), "x2-axis",
                           true});
            break;
        case ExoticTag::B1:
        case ExoticTag::C1:
            out.push_back({line(K(0), K(1), K(-1)),
                           FieldSpec<K>::central(Point<K>(K(0), K(-1), K(1))), "x2=1", true});
            break;
        case ExoticTag::C2:
            out.push_back({line(K(0), K(1), K(-1)),
                           FieldSpec<K>::central(Point<K>(K(0), K(-1), K(1))), "x2=1", true});
            out.push_back({line(K(2), K(0), K(1)), FieldSpec<K>::parallel(K(-1), K(1)),
                           "x1=-1/2", true});
            out.push_back({line(K(2), K(1), K(0)),
                           FieldSpec<K>::central(Point<K>(K(-1), K(0), K(1))), "x2=-2x1", true});
            break;
        case ExoticTag::D:
            break;
    }
    return out;
}

struct BilliardReport {
    bool valid = false;
    bool exotic = false;
    int predicted_min_degree = 0;
    std::vector<std::string> notes;
};

template <class K>
BilliardReport validate_billiard(const Billiard<K>& b) {
    BilliardReport rep;
    bool any_exotic = false;
    for (auto& p : b.pieces)
        if (!p.is_segment && p.field.kind == FieldKind::Exotic) any_exotic = true;
    if (any_exotic) {
        rep.exotic = true;
        ExoticKind kind{};
        ProjMap<K> chart;
        for (auto& p : b.pieces)
            if (!p.is_segment && p.field.kind == FieldKind::Exotic) {
                kind = p.field.exotic;
                chart = p.field.chart;
            }
        auto cat = exotic_admissible_lines<K>(kind);
        bool all_ok = true;
        for (auto& p : b.pieces) {
            if (!p.is_segment) continue;
            // the catalog lives in chart coordinates: map the segment line
            Line<K> lc = chart(p.line);
            bool found = false;
            for (auto& e : cat)
                if (e.line == lc) found = true;
            if (!found) {
                all_ok = false;
                rep.notes.push_back("segment line is not admissible");
            }
        }
        rep.valid = all_ok;
        switch (kind.tag) {
            case ExoticTag::A1: rep.predicted_min_degree = 2 * (2 * kind.N + 1); break;
            case ExoticTag::A2: rep.predicted_min_degree = 4 * kind.N + 4; break;
            case ExoticTag::B1:
            case ExoticTag::B2: rep.predicted_min_degree = 4; break;
            default: rep.predicted_min_degree = 6; break;
        }
        return rep;
    }
    DualMultibilliard<K> mb = dualize(b);
    MultibilliardReport mrep = validate_pencil_multibilliard(mb);
    rep.valid = mrep.is_pencil_type;
    rep.predicted_min_degree = mrep.predicted_min_degree;
    rep.notes = mrep.violations;
    return rep;
}

} // namespace pb
