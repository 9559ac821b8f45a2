#pragma once
// Pencil-type multibilliards: typed pencil constructors with base data,
// admissible-vertex catalogs, induced involutions on the pencil parameter,
// the group closure with the 2/4/12 degree predictor, the xi normalization
// and the degree-12 integral.

#include <functional>
#include <map>
#include <string>

#include "pb/dualbill.hpp"

namespace pb {

// ---- typed constructors -------------------------------------------------

template <class K>
Pencil<K> pencil_type_a(const Point<K>& a, const Point<K>& b, const Point<K>& c,
                        const Point<K>& d) {
    const Point<K>* pts[4] = {&a, &b, &c, &d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (join(*pts[i], *pts[j]).contains(*pts[k]))
                    throw DegeneratePencil("three base points collinear");
    Pencil<K> p(conic_from_lines(join(a, b), join(c, d)),
                conic_from_lines(join(a, c), join(b, d)));
    p.base = BaseData<K>{'a', {a, b, c, d}, {}};
    return p;
}

template <class K>
Pencil<K> pencil_type_b(const Point<K>& a, const Point<K>& b, const Point<K>& c,
                        const Line<K>& l) {
    if (!l.contains(c)) throw DegeneratePencil("tangency point not on its line");
    if (l.contains(a) || l.contains(b)) throw DegeneratePencil("simple base point on L");
    if (join(a, b).contains(c)) throw DegeneratePencil("C on line AB");
    Pencil<K> p(conic_from_lines(l, join(a, b)),
                conic_from_lines(join(c, a), join(c, b)));
    p.base = BaseData<K>{'b', {a, b, c}, {l}};
    return p;
}

template <class K>
Pencil<K> pencil_type_c(const Point<K>& a, const Line<K>& la, const Point<K>& c,
                        const Line<K>& lc) {
    if (!la.contains(a) || !lc.contains(c)) throw DegeneratePencil("tangency incidence fails");
    if (a == c || la == lc) throw DegeneratePencil("coincident tangency data");
    Line<K> ac = join(a, c);
    if (ac == la || ac == lc) throw DegeneratePencil("chord equals a tangency line");
    Pencil<K> p(conic_from_lines(la, lc), conic_from_double_line(ac));
    p.base = BaseData<K>{'c', {a, c}, {la, lc}};
    return p;
}

template <class K>
Pencil<K> pencil_type_d(const Conic<K>& s, const Point<K>& a, const Point<K>& b,
                        const Line<K>& l) {
    if (!s.regular()) throw SingularConic();
    if (!s.contains(a) || !s.contains(b)) throw DegeneratePencil("S misses a base point");
    if (tangent_line(s, a) != l) throw DegeneratePencil("L not tangent to S at A");
    if (l.contains(b)) throw DegeneratePencil("B on the tangent line");
    Pencil<K> p(s, conic_from_lines(l, join(a, b)));
    p.base = BaseData<K>{'d', {a, b}, {l}};
    return p;
}

template <class K>
Pencil<K> pencil_type_e(const Conic<K>& s, const Point<K>& a) {
    if (!s.regular()) throw SingularConic();
    if (!s.contains(a)) throw DegeneratePencil("A not on S");
    Line<K> l = tangent_line(s, a);
    Pencil<K> p(s, conic_from_double_line(l));
    p.base = BaseData<K>{'e', {a}, {l}};
    return p;
}

// ---- parameter lookup ---------------------------------------------------

// which member a given conic is, if any
template <class K>
P1<K> member_param_of(const Pencil<K>& p, const Conic<K>& c) {
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k; l < 3; ++l) {
                    K det = p.c0.q[i][j] * p.c1.q[k][l] - p.c0.q[k][l] * p.c1.q[i][j];
                    if (is_zero(det)) continue;
                    K d = c.q[i][j] * p.c1.q[k][l] - c.q[k][l] * p.c1.q[i][j];
                    K n = p.c0.q[i][j] * c.q[k][l] - p.c0.q[k][l] * c.q[i][j];
                    if (is_zero(n) && is_zero(d)) continue;
                    if (!c.q.proportional_to(p.c0.q.scaled(d) + p.c1.q.scaled(n)))
                        throw PencilNotPreserved("conic not in pencil");
                    return P1<K>(n, d);
                }
    throw PencilNotPreserved("conic not in pencil");
}

// ---- vertex catalogs ----------------------------------------------------

template <class K>
struct VertexCatalogEntry {
    VertexSpec<K> spec;
    bool skew = false;
    std::string label;  // e.g. "M1", "K_AB", "C", "A_over_S"
};

template <class K>
struct VertexCatalog {
    std::vector<VertexCatalogEntry<K>> entries;
    // one-parameter families, keyed by name; the parameter meaning is
    // family-specific (a member parameter or a coordinate along a line)
    std::map<std::string, std::function<VertexCatalogEntry<K>(const P1<K>&)>> families;
};

// axis of a standard vertex: the polar of the center, which must agree
// across members (checked on two regular members)
template <class K>
Line<K> standard_axis(const Pencil<K>& p, const Point<K>& center) {
    std::vector<Line<K>> found;
    for (int k = -3; k <= 3 && found.size() < 2; ++k) {
        P1<K> lam = (k == 3) ? P1<K>::infinity() : P1<K>(K(k));
        Conic<K> m = p.member(lam);
        if (!m.regular()) continue;
        Vec3<K> pol = m.q.apply(center.h);
        if (vec_zero(pol)) continue;
        found.push_back(Line<K>(pol));
    }
    if (found.size() < 2 || found[0] != found[1])
        throw PencilNotPreserved("polar of center varies across members");
    return found[0];
}

template <class K>
VertexCatalog<K> admissible_vertices(const Pencil<K>& p) {
    if (!p.base) throw BaseDataUnavailable("pencil lacks stored base data");
    const BaseData<K>& bd = *p.base;
    VertexCatalog<K> cat;
    auto quasi_global = [&p](const Point<K>& c, std::string label) {
        return [&p, c, label](const P1<K>& lam) {
            Conic<K> s = p.member(lam);
            if (!s.regular()) throw SingularConic("quasi-global structure needs a regular member");
            return VertexCatalogEntry<K>{VertexSpec<K>::degenerate_over(c, s), true, label};
        };
    };
    switch (bd.tag) {
        case 'a': {
            const Point<K>&a = bd.pts[0], &b = bd.pts[1], &c = bd.pts[2], &d = bd.pts[3];
            Point<K> m1 = meet(join(a, b), join(c, d));
            Point<K> m2 = meet(join(a, d), join(b, c));
            Point<K> m3 = meet(join(a, c), join(b, d));
            cat.entries.push_back({VertexSpec<K>::angular(m1, join(m2, m3)), false, "M1"});
            cat.entries.push_back({VertexSpec<K>::angular(m2, join(m1, m3)), false, "M2"});
            cat.entries.push_back({VertexSpec<K>::angular(m3, join(m1, m2)), false, "M3"});
            // skew K_EL on line EL: meet with the diagonal-point line avoiding
            // EL; axis is the complementary pair's line
            struct PairDef {
                int i, j;  // the pair E, L
                const char* name;
            };
            const PairDef pairs[6] = {{0, 1, "K_AB"}, {2, 3, "K_CD"}, {0, 3, "K_AD"},
                                      {1, 2, "K_BC"}, {0, 2, "K_AC"}, {1, 3, "K_BD"}};
            const Point<K>* pts[4] = {&a, &b, &c, &d};
            const Point<K>* ms[3] = {&m1, &m2, &m3};
            for (auto& pr : pairs) {
                Line<K> el = join(*pts[pr.i], *pts[pr.j]);
                std::vector<const Point<K>*> off;
                for (auto* m : ms)
                    if (!el.contains(*m)) off.push_back(m);
                Point<K> kel = meet(el, join(*off[0], *off[1]));
                int ci = -1, cj = -1;
                for (int t = 0; t < 4; ++t)
                    if (t != pr.i && t != pr.j) (ci < 0 ? ci : cj) = t;
                cat.entries.push_back(
                    {VertexSpec<K>::angular(kel, join(*pts[ci], *pts[cj])), true, pr.name});
            }
            break;
        }
        case 'b': {
            const Point<K>&a = bd.pts[0], &b = bd.pts[1], &c = bd.pts[2];
            const Line<K>& l = bd.lines[0];
            Line<K> ab = join(a, b);
            Point<K> m = meet(ab, l);
            // K_AB on AB with (M, K_AB, A, B) harmonic
            TangentInvolution<K> frame;  // reuse the coordinate helper
            frame.e0 = a;
            frame.e1 = b;
            P1<K> pm = frame.coordinate(m);
            P1<K> pk = harmonic_conjugate(P1<K>(K(1), K(0)), P1<K>(K(0), K(1)), pm);
            Point<K> kab = frame.point(pk);
            cat.entries.push_back({VertexSpec<K>::angular(m, join(c, kab)), false, "M"});
            cat.entries.push_back({VertexSpec<K>::angular(kab, l), true, "K_AB"});
            cat.entries.push_back({VertexSpec<K>::angular(c, ab), true, "C"});
            cat.families["C_over_S"] = quasi_global(c, "C_over_S");
            break;
        }
        case 'c': {
            const Point<K>&a = bd.pts[0], &c = bd.pts[1];
            const Line<K>&la = bd.lines[0], &lc = bd.lines[1];
            Point<K> m = meet(la, lc);
            Line<K> ac = join(a, c);
            cat.entries.push_back({VertexSpec<K>::angular(m, ac), false, "M"});
            cat.entries.push_back({VertexSpec<K>::angular(a, lc), true, "A"});
            cat.entries.push_back({VertexSpec<K>::angular(c, la), true, "C"});
            cat.families["A_over_S"] = quasi_global(a, "A_over_S");
            cat.families["C_over_S"] = quasi_global(c, "C_over_S");
            // standard family: M' on AC, parameter (t:s) for t*A + s*C
            cat.families["M_prime"] = [&p, a, c](const P1<K>& par) {
                if (is_zero(par.n) || is_zero(par.d))
                    throw DegenerateTriple("M' must differ from the tangency points");
                Vec3<K> h;
                for (int i = 0; i < 3; ++i) h[i] = par.n * a.h[i] + par.d * c.h[i];
                Point<K> mp(h);
                return VertexCatalogEntry<K>{VertexSpec<K>::angular(mp, standard_axis(p, mp)),
                                             false, "M_prime"};
            };
            break;
        }
        case 'd': {
            const Point<K>&a = bd.pts[0], &b = bd.pts[1];
            const Line<K>& l = bd.lines[0];
            cat.families["A_over_S"] = quasi_global(a, "A_over_S");
            // skew C on L minus A, parameter (t:s) gives t*P + s*A with P a
            // second point of L; axis AB
            Point<K> pl = a;
            for (int i = 0; i < 3; ++i) {
                Vec3<K> e{K(0), K(0), K(0)};
                e[i] = K(1);
                Vec3<K> cr = cross(l.xi, e);
                if (!vec_zero(cr) && !(Point<K>(cr) == a)) {
                    pl = Point<K>(cr);
                    break;
                }
            }
            Line<K> ab = join(a, b);
            cat.families["C_skew"] = [a, b, pl, ab](const P1<K>& par) {
                if (is_zero(par.n)) throw DegenerateTriple("C must differ from A");
                Vec3<K> h;
                for (int i = 0; i < 3; ++i) h[i] = par.n * pl.h[i] + par.d * a.h[i];
                return VertexCatalogEntry<K>{VertexSpec<K>::angular(Point<K>(h), ab), true,
                                             "C_skew"};
            };
            break;
        }
        case 'e': {
            const Point<K>& a = bd.pts[0];
            const Line<K>& l = bd.lines[0];
            cat.families["A_over_S"] = quasi_global(a, "A_over_S");
            Point<K> pl = a;
            for (int i = 0; i < 3; ++i) {
                Vec3<K> e{K(0), K(0), K(0)};
                e[i] = K(1);
                Vec3<K> cr = cross(l.xi, e);
                if (!vec_zero(cr) && !(Point<K>(cr) == a)) {
                    pl = Point<K>(cr);
                    break;
                }
            }
            cat.families["C_standard"] = [&p, a, pl](const P1<K>& par) {
                if (is_zero(par.n)) throw DegenerateTriple("C must differ from A");
                Vec3<K> h;
                for (int i = 0; i < 3; ++i) h[i] = par.n * pl.h[i] + par.d * a.h[i];
                Point<K> c(h);
                return VertexCatalogEntry<K>{VertexSpec<K>::angular(c, standard_axis(p, c)),
                                             false, "C_standard"};
            };
            break;
        }
        default:
            throw DegeneratePencil("unknown pencil tag");
    }
    return cat;
}

// ---- induced involutions on the parameter -------------------------------

template <class K>
Mob<K> induced_lambda_involution(const Pencil<K>& p, const VertexSpec<K>& v,
                                 std::uint64_t seed = 77) {
    RatSampler rs(seed);
    auto rnd = [&]() -> K { return K(rs.integer(-25, 25)) / K(rs.integer(1, 6)); };
    std::vector<std::pair<P1<K>, P1<K>>> pairs;
    int guard = 0;
    while (pairs.size() < 4 && guard < 400) {
        ++guard;
        try {
            Point<K> x(rnd(), rnd(), K(1));
            P1<K> lam = p.member_through(x);
            Point<K> y = vertex_apply(v, x);
            P1<K> lam2 = p.member_through(y);
            bool dup = false;
            for (auto& pr : pairs)
                if (p1_equal(pr.first, lam) || p1_equal(pr.second, lam2)) dup = true;
            if (!dup) pairs.push_back({lam, lam2});
        } catch (const Error&) {
            continue;
        }
    }
    if (pairs.size() < 4) throw PencilNotPreserved("could not sample the parameter action");
    Mob<K> g = mobius_through(pairs[0].first, pairs[0].second, pairs[1].first, pairs[1].second,
                              pairs[2].first, pairs[2].second);
    if (!p1_equal(g(pairs[3].first), pairs[3].second))
        throw PencilNotPreserved("parameter action is not projective");
    if (!g.is_involution()) throw PencilNotPreserved("parameter action is not an involution");
    return g;
}

// ---- group closure ------------------------------------------------------

template <class K>
struct GroupClosure {
    bool infinite = false;
    std::vector<Mob<K>> elements;
    size_t size() const { return elements.size(); }
};

template <class K>
GroupClosure<K> group_closure(const std::vector<Mob<K>>& gens, size_t bound = 24) {
    GroupClosure<K> g;
    g.elements.push_back(Mob<K>());
    auto known = [&](const Mob<K>& m) {
        for (auto& e : g.elements)
            if (e.proportional_to(m)) return true;
        return false;
    };
    size_t frontier = 0;
    while (frontier < g.elements.size()) {
        Mob<K> cur = g.elements[frontier++];
        for (auto& gen : gens) {
            Mob<K> next = gen * cur;
            if (!known(next)) {
                g.elements.push_back(next);
                if (g.elements.size() > bound) {
                    g.infinite = true;
                    g.elements.clear();
                    return g;
                }
            }
        }
    }
    return g;
}

// ---- validator ----------------------------------------------------------

struct MultibilliardReport {
    bool is_pencil_type = false;
    std::vector<std::string> violations;
    size_t group_order = 0;  // 0 when infinite
    int predicted_min_degree = 0;
};

template <class K>
MultibilliardReport validate_pencil_multibilliard(const DualMultibilliard<K>& mb) {
    MultibilliardReport rep;
    if (mb.curves.empty()) {
        rep.violations.push_back("condition 1: no curves");
        return rep;
    }
    for (auto& c : mb.curves)
        if (c.exotic) {
            rep.violations.push_back("condition 1: exotic curve present");
            return rep;
        }
    const Pencil<K>& pen = *mb.curves[0].pencil;
    for (auto& c : mb.curves)
        if (!pen.contains(c.pencil->c0) || !pen.contains(c.pencil->c1)) {
            rep.violations.push_back("condition 1: curves span different pencils");
            return rep;
        }
    char tag = '?';
    try {
        tag = classify_pencil(pen).tag;
    } catch (const Error&) {
    }

    std::vector<Mob<K>> gens;
    std::vector<int> skew_idx;
    std::vector<int> degen_skew_idx;
    for (size_t i = 0; i < mb.vertices.size(); ++i) {
        const auto& v = mb.vertices[i];
        try {
            Mob<K> g = induced_lambda_involution(pen, v);
            gens.push_back(g);
            if (!g.proportional_to(Mob<K>())) {
                skew_idx.push_back(int(i));
                if (v.degenerate) degen_skew_idx.push_back(int(i));
            }
        } catch (const Error& e) {
            rep.violations.push_back(std::string("condition 2: vertex ") + std::to_string(i) +
                                     " is not admissible (" + e.what() + ")");
        }
    }
    // condition 3: a quasi-global skew vertex excludes other skew vertices,
    // except the paired cases of types c and d
    if (!degen_skew_idx.empty() && skew_idx.size() > 1) {
        bool excused = false;
        if (tag == 'c' && skew_idx.size() == 2 && degen_skew_idx.size() == 2) {
            const auto& v1 = mb.vertices[skew_idx[0]];
            const auto& v2 = mb.vertices[skew_idx[1]];
            excused = v1.s == v2.s;  // both quasi-global over the same member
        }
        if (tag == 'd' && skew_idx.size() == 2 && degen_skew_idx.size() == 1) {
            // A quasi-global over S paired with the tangent-line vertex C;
            // admissibility of both was already checked, accept the pair
            excused = true;
        }
        if (!excused)
            rep.violations.push_back("condition 3: quasi-global skew vertex with another skew vertex");
    }
    // condition 4: type d admits at most one vertex on L besides A
    if (tag == 'd' && pen.base) {
        const Line<K>& l = pen.base->lines[0];
        int on_l = 0;
        for (auto& v : mb.vertices)
            if (!v.degenerate && l.contains(v.center)) ++on_l;
        if (on_l > 1) rep.violations.push_back("condition 4: several vertices on the tangent line");
    }
    // condition 5: one structure per skew vertex center
    for (size_t i = 0; i < mb.vertices.size(); ++i)
        for (size_t j = i + 1; j < mb.vertices.size(); ++j)
            if (mb.vertices[i].center == mb.vertices[j].center)
                rep.violations.push_back("condition 5: repeated structures at one vertex");

    GroupClosure<K> g = group_closure(gens);
    if (g.infinite) {
        rep.violations.push_back("parameter group is infinite");
        rep.group_order = 0;
    } else {
        rep.group_order = g.size();
        rep.predicted_min_degree = int(2 * g.size());
    }
    rep.is_pencil_type = rep.violations.empty();
    return rep;
}

// ---- xi normalization and the degree-12 integral ------------------------

template <class K>
struct XiNormalization {
    // products of opposite-side functionals; q1 + q2 + q3 = 0
    Poly3<K> q1;  // xi_AC * xi_BD
    Poly3<K> q2;  // xi_BC * xi_AD
    Poly3<K> q3;  // xi_AB * xi_CD
    std::vector<Line<K>> lines;  // scaled AB, CD, BC, AD, AC, BD
};

template <class K>
XiNormalization<K> normalize_xi(const Pencil<K>& p) {
    if (!p.base || p.base->tag != 'a') throw NotTypeA();
    const Point<K>&a = p.base->pts[0], &b = p.base->pts[1], &c = p.base->pts[2],
                  &d = p.base->pts[3];
    Line<K> ab = join(a, b), cd = join(c, d), bc = join(b, c), ad = join(a, d),
            ac = join(a, c), bd = join(b, d);
    auto prod = [](const Line<K>& u, const Line<K>& v) {
        return Poly3<K>::linear(u.xi) * Poly3<K>::linear(v.xi);
    };
    Poly3<K> p3 = prod(ab, cd), p2 = prod(bc, ad), p1 = prod(ac, bd);
    // the three degenerate members span a 2-dimensional space: solve
    // alpha*p3 + beta*p2 + gamma*p1 = 0 by elimination on two monomials
    // where p1 has independent data
    auto coeff = [](const Poly3<K>& f, const typename Poly3<K>::Mono& m) {
        auto it = f.t.find(m);
        return it == f.t.end() ? K(0) : it->second;
    };
    std::vector<typename Poly3<K>::Mono> monos;
    for (auto& [m, v] : (p1 + p2 + p3).t) monos.push_back(m);
    for (auto& [m, v] : p1.t) monos.push_back(m);
    for (auto& [m, v] : p2.t) monos.push_back(m);
    for (auto& [m, v] : p3.t) monos.push_back(m);
    K alpha, beta, gamma;
    bool found = false;
    for (size_t i = 0; i < monos.size() && !found; ++i)
        for (size_t j = 0; j < monos.size() && !found; ++j) {
            // alpha * p3[mi] + beta * p2[mi] = -gamma * p1[mi], two equations
            K a11 = coeff(p3, monos[i]), a12 = coeff(p2, monos[i]), r1 = coeff(p1, monos[i]);
            K a21 = coeff(p3, monos[j]), a22 = coeff(p2, monos[j]), r2 = coeff(p1, monos[j]);
            K det = a11 * a22 - a12 * a21;
            if (is_zero(det)) continue;
            gamma = det;
            alpha = K(0) - (r1 * a22 - r2 * a12);
            beta = K(0) - (a11 * r2 - a21 * r1);
            found = true;
        }
    if (!found) throw DegeneratePencil("xi products do not span a plane");
    Poly3<K> z = p3.scaled(alpha) + p2.scaled(beta) + p1.scaled(gamma);
    if (!z.zero()) throw VerificationFailed("xi normalization identity fails");
    XiNormalization<K> xn;
    xn.q3 = p3.scaled(alpha);
    xn.q2 = p2.scaled(beta);
    xn.q1 = p1.scaled(gamma);
    xn.lines = {Line<K>(Vec3<K>{ab.xi[0] * alpha, ab.xi[1] * alpha, ab.xi[2] * alpha}), cd,
                Line<K>(Vec3<K>{bc.xi[0] * beta, bc.xi[1] * beta, bc.xi[2] * beta}), ad,
                Line<K>(Vec3<K>{ac.xi[0] * gamma, ac.xi[1] * gamma, ac.xi[2] * gamma}), bd};
    return xn;
}

template <class K>
RationalIntegral<K> degree12_integral(const Pencil<K>& p, const K& mu) {
    if (is_zero(mu)) throw ZeroMu();
    XiNormalization<K> xn = normalize_xi(p);
    const Poly3<K> q[3] = {xn.q1, xn.q2, xn.q3};
    Poly3<K> num = Poly3<K>::constant(K(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            num = num * (q[i] + q[j].scaled(mu));
        }
    Poly3<K> den = (q[0] * q[1] * q[2]);
    den = den * den;
    RationalIntegral<K> r(num, den);
    std::vector<Poly3<K>> factors;
    for (auto& l : xn.lines) factors.push_back(Poly3<K>::linear(l.xi));
    r.remove_common_factors(factors);
    return r;
}

} // namespace pb
