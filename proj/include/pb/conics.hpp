#pragma once
// Conics as symmetric 3x3 forms, pencils C0 + lambda*C1, singular members,
// the five-type classification by base multiplicity pattern, and duals.

#include <optional>
#include <vector>

#include "pb/poly.hpp"

namespace pb {

template <class K>
struct Conic {
    Mat3<K> q;  // symmetric, up to scale

    Conic() : q(Mat3<K>::identity()) {}
    explicit Conic(const Mat3<K>& m) : q(m) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!is_zero(q[i][j] - q[j][i])) throw Error("conic matrix not symmetric");
        bool nz = false;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!is_zero(q[i][j])) nz = true;
        if (!nz) throw Error("zero conic matrix");
    }

    K at(const Point<K>& p) const { return dot(p.h, q.apply(p.h)); }
    bool contains(const Point<K>& p) const { return is_zero(at(p)); }
    bool regular() const { return !is_zero(q.det()); }
    Vec3<K> gradient(const Point<K>& p) const { return q.apply(p.h); }

    Poly3<K> form() const {
        Poly3<K> f;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                typename Poly3<K>::Mono m{0, 0, 0};
                ++m[i];
                ++m[j];
                f.add_term(m, q[i][j]);
            }
        return f;
    }

    bool operator==(const Conic& o) const { return q.proportional_to(o.q); }
    bool operator!=(const Conic& o) const { return !(*this == o); }
};

// symmetrized product of two linear forms: the degenerate conic l1 union l2
template <class K>
Conic<K> conic_from_lines(const Line<K>& l1, const Line<K>& l2) {
    Mat3<K> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = l1.xi[i] * l2.xi[j] + l1.xi[j] * l2.xi[i];
    return Conic<K>(m);
}

template <class K>
Conic<K> conic_from_double_line(const Line<K>& l) {
    return conic_from_lines(l, l);
}

template <class K>
Line<K> tangent_line(const Conic<K>& c, const Point<K>& p) {
    if (!c.contains(p)) throw Error("tangent_line: point not on conic");
    Vec3<K> g = c.gradient(p);
    if (vec_zero(g)) throw SingularPointOfConic();
    return Line<K>(g);
}

// quadratic in the parameter (t:s) of the point t*P + s*Q along the line PQ
template <class K>
Quadratic<K> line_conic_restriction(const Conic<K>& c, const Point<K>& p, const Point<K>& q) {
    Quadratic<K> r;
    r.a = dot(p.h, c.q.apply(p.h));
    r.b = K(2) * dot(p.h, c.q.apply(q.h));
    r.c = dot(q.h, c.q.apply(q.h));
    return r;
}

template <class K>
Conic<K> transform_conic(const ProjMap<K>& m, const Conic<K>& c) {
    Mat3<K> a = m.m.adjugate();  // proportional to the inverse
    return Conic<K>(a.transpose() * c.q * a);
}

template <class K>
Conic<K> dual_conic(const Conic<K>& c) {
    if (!c.regular()) throw SingularConic();
    return Conic<K>(c.q.adjugate());
}

// Base data recorded by typed constructors: the distinguished points and
// lines of the five pencil types.
//   a: pts = {A, B, C, D}
//   b: pts = {A, B, C}, lines = {L} (members tangent to L at C)
//   c: pts = {A, C}, lines = {L_A, L_C} (tangency lines at the two points)
//   d: pts = {A, B}, lines = {L} (tangent at A, members pass through B)
//   e: pts = {A}, lines = {L} (order-4 contact at A along L)
template <class K>
struct BaseData {
    char tag = '?';
    std::vector<Point<K>> pts;
    std::vector<Line<K>> lines;
};

template <class K>
struct Pencil {
    Conic<K> c0, c1;  // member(lambda) = c0 + lambda*c1, member(inf) = c1
    std::optional<BaseData<K>> base;
    bool from_dualization = false;  // see dual_pencil

    Pencil() = default;
    Pencil(const Conic<K>& a, const Conic<K>& b) : c0(a), c1(b) {
        if (a.q.proportional_to(b.q)) throw DegeneratePencil("proportional generators");
    }

    Conic<K> member(const P1<K>& lam) const {
        Mat3<K> m = c0.q.scaled(lam.d) + c1.q.scaled(lam.n);
        bool nz = false;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!is_zero(m[i][j])) nz = true;
        if (!nz) throw Error("zero member");
        return Conic<K>(m);
    }

    P1<K> member_through(const Point<K>& p) const {
        K v0 = c0.at(p);
        K v1 = c1.at(p);
        if (is_zero(v0) && is_zero(v1)) throw BasePoint();
        return P1<K>(K(0) - v0, v1);
    }

    bool contains(const Conic<K>& c) const {
        // c proportional to d*c0 + n*c1 for some (n:d): solve by cross-elimination
        try {
            // pick a matrix position where c0, c1 are independent
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        for (int l = k; l < 3; ++l) {
                            K det = c0.q[i][j] * c1.q[k][l] - c0.q[k][l] * c1.q[i][j];
                            if (is_zero(det)) continue;
                            K d = c.q[i][j] * c1.q[k][l] - c.q[k][l] * c1.q[i][j];
                            K n = c0.q[i][j] * c.q[k][l] - c0.q[k][l] * c.q[i][j];
                            if (is_zero(n) && is_zero(d)) continue;
                            return c.q.proportional_to((c0.q.scaled(d) + c1.q.scaled(n)));
                        }
            return false;
        } catch (const Error&) {
            return false;
        }
    }
};

// parameters of the singular members, as roots of the determinant cubic
template <class K>
struct SingularParam {
    P1<K> lambda;
    int multiplicity = 1;
};

// exact rational roots plus the degree of the unresolved residual factor
struct SingularSpectrum {
    std::vector<SingularParam<Rat>> params;
    int unresolved_degree = 0;
};

inline SingularSpectrum singular_parameters(const Pencil<Rat>& p) {
    // F(n, d) = det(d*c0 + n*c1), a binary cubic; interpolate its coefficients
    auto f = [&](const Rat& n, const Rat& d) {
        return (p.c0.q.scaled(d) + p.c1.q.scaled(n)).det();
    };
    Rat k0 = f(0, 1);            // d^3 coefficient
    Rat k3 = f(1, 0);            // n^3 coefficient
    Rat s = f(1, 1), t = f(1, -1);
    Rat k2 = (s - t) / 2 - k0;   // n^2 d
    Rat k1 = (s + t) / 2 - k3;   // n d^2
    UniPoly<Rat> cubic({k0, k1, k2, k3});
    if (cubic.zero()) throw AllMembersSingular();

    SingularSpectrum out;
    int inf_mult = 3 - cubic.degree();
    if (inf_mult > 0) out.params.push_back({P1<Rat>::infinity(), inf_mult});
    int found = 0;
    for (auto& [r, m] : rational_roots(cubic)) {
        out.params.push_back({P1<Rat>(r), m});
        found += m;
    }
    out.unresolved_degree = cubic.degree() - found;
    return out;
}

// Intersection multiplicity pattern of two conics via the resultant in the
// third coordinate, after a shear making the projection generic.
template <class K>
UniPoly<K> conic_resultant(const Conic<K>& u, const Conic<K>& v) {
    auto split = [](const Conic<K>& c, K& a, UniPoly<K>& b, UniPoly<K>& cc) {
        // c(y1, 1, y3) = a*y3^2 + b(y1)*y3 + cc(y1)
        a = c.q[2][2];
        b = UniPoly<K>({K(2) * c.q[1][2], K(2) * c.q[0][2]});
        cc = UniPoly<K>({c.q[1][1], K(2) * c.q[0][1], c.q[0][0]});
    };
    K a1, a2;
    UniPoly<K> b1, b2, c1, c2;
    split(u, a1, b1, c1);
    split(v, a2, b2, c2);
    UniPoly<K> ac = c2.scaled(a1) - c1.scaled(a2);
    UniPoly<K> ab = b2.scaled(a1) - b1.scaled(a2);
    UniPoly<K> bc = b1 * c2 - b2 * c1;
    return ac * ac - ab * bc;
}

struct Classification {
    char tag = '?';
    std::vector<int> pattern;  // base multiplicities, descending, summing to 4
};

template <class K>
Classification classify_pencil(const Pencil<K>& p) {
    if (p.base) {
        Classification c;
        c.tag = p.base->tag;
        switch (c.tag) {
            case 'a': c.pattern = {1, 1, 1, 1}; break;
            case 'b': c.pattern = {2, 1, 1}; break;
            case 'c': c.pattern = {2, 2}; break;
            case 'd': c.pattern = {3, 1}; break;
            case 'e': c.pattern = {4}; break;
        }
        return c;
    }
    // shared component <=> resultant identically zero for every projection
    RatSampler rs(20260824);
    std::vector<int> best;
    int zero_runs = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat3<K> m = Mat3<K>::identity();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = K(rs.integer(-9, 9));
        if (is_zero(m.det())) continue;
        ProjMap<K> g(m);
        Conic<K> u = transform_conic(g, p.c0);
        Conic<K> v = transform_conic(g, p.c1);
        UniPoly<K> res = conic_resultant(u, v);
        if (res.zero()) {
            ++zero_runs;
            continue;
        }
        if (res.degree() < 4) continue;  // root at infinity: projection not generic
        std::vector<int> pat = multiplicity_pattern(res);
        if (pat.size() > best.size()) best = pat;
    }
    if (best.empty()) {
        if (zero_runs > 0) throw DegeneratePencil("generators share a component");
        throw DegeneratePencil("no generic projection found");
    }
    Classification c;
    c.pattern = best;
    int n = int(best.size());
    if (n == 4) c.tag = 'a';
    else if (n == 3) c.tag = 'b';
    else if (n == 1) c.tag = 'e';
    else c.tag = (best[0] == 3) ? 'd' : 'c';
    return c;
}

// The pencil spanned by the duals of two regular members. Duals of *all*
// members form a quadratic family; this pencil is the paper's dual pencil
// (duals of members of a pencil), flagged as such.
template <class K>
Pencil<K> dual_pencil(const Pencil<K>& p) {
    Conic<K> d0, d1;
    bool have0 = false, have1 = false;
    // find two regular members among small parameters
    for (int k = -4; k <= 4 && !(have0 && have1); ++k) {
        P1<K> lam = (k == 4) ? P1<K>::infinity() : P1<K>(K(k));
        Conic<K> m = p.member(lam);
        if (!m.regular()) continue;
        if (!have0) {
            d0 = dual_conic(m);
            have0 = true;
        } else if (!d0.q.proportional_to(dual_conic(m).q)) {
            d1 = dual_conic(m);
            have1 = true;
        }
    }
    if (!(have0 && have1)) throw AllMembersSingular("fewer than two regular members found");
    Pencil<K> d(d0, d1);
    d.from_dualization = true;
    return d;
}

} // namespace pb
