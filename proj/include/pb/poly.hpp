#pragma once
// Polynomial utilities: dense univariate polynomials over a field (gcd,
// squarefree structure), binary forms, sparse trivariate polynomials for
// homogeneous integrals, and the RationalIntegral pair.

#include <algorithm>
#include <map>
#include <vector>

#include "pb/projgeom.hpp"

namespace pb {

template <class K>
struct UniPoly {
    std::vector<K> c;  // c[i] is the coefficient of x^i

    UniPoly() = default;
    explicit UniPoly(std::vector<K> cc) : c(std::move(cc)) { trim(); }
    static UniPoly constant(const K& v) { return UniPoly(std::vector<K>{v}); }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return zero() ? -1 : int(c.size()) - 1; }
    const K& lead() const { return c.back(); }

    K at(const K& x) const {
        K v(0);
        for (int i = degree(); i >= 0; --i) v = v * x + c[i];
        return v;
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<K> r(std::max(c.size(), o.c.size()), K(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return UniPoly(r);
    }
    UniPoly operator-(const UniPoly& o) const {
        std::vector<K> r(std::max(c.size(), o.c.size()), K(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
        return UniPoly(r);
    }
    UniPoly operator*(const UniPoly& o) const {
        if (zero() || o.zero()) return UniPoly();
        std::vector<K> r(c.size() + o.c.size() - 1, K(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return UniPoly(r);
    }
    UniPoly scaled(const K& s) const {
        std::vector<K> r = c;
        for (auto& v : r) v = v * s;
        return UniPoly(r);
    }

    UniPoly derivative() const {
        if (degree() <= 0) return UniPoly();
        std::vector<K> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * K(int(i));
        return UniPoly(r);
    }

    // division with remainder over a field
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
        if (b.zero()) throw Error("polynomial division by zero");
        q = UniPoly();
        r = a;
        q.c.assign(std::max<int>(0, a.degree() - b.degree() + 1), K(0));
        while (!r.zero() && r.degree() >= b.degree()) {
            K f = r.lead() / b.lead();
            int s = r.degree() - b.degree();
            q.c[s] = f;
            for (int i = 0; i <= b.degree(); ++i) r.c[i + s] -= f * b.c[i];
            r.trim();
        }
        q.trim();
    }

    UniPoly monic() const {
        if (zero()) return *this;
        return scaled(K(1) / lead());
    }
};

template <class K>
UniPoly<K> poly_gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.zero()) {
        UniPoly<K> q, r;
        UniPoly<K>::divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a.monic();
}

// Yun-style squarefree structure: returns {multiplicity -> squarefree part},
// omitting trivial constant parts.
template <class K>
std::map<int, UniPoly<K>> squarefree_decomposition(const UniPoly<K>& f) {
    std::map<int, UniPoly<K>> out;
    if (f.degree() < 1) return out;
    UniPoly<K> a = f.monic();
    UniPoly<K> d = a.derivative();
    UniPoly<K> g = poly_gcd(a, d);
    UniPoly<K> w, rem;
    UniPoly<K>::divmod(a, g, w, rem);
    int i = 1;
    while (w.degree() > 0) {
        UniPoly<K> y = poly_gcd(w, g);
        UniPoly<K> z;
        UniPoly<K>::divmod(w, y, z, rem);
        if (z.degree() > 0) out[i] = z;
        UniPoly<K> gq;  // divmod must not alias its dividend with the quotient
        UniPoly<K>::divmod(g, y, gq, rem);
        g = gq;
        w = y;
        ++i;
    }
    return out;
}

// Multiplicities of the roots of f over the algebraic closure, sorted
// descending; sums to deg f.
template <class K>
std::vector<int> multiplicity_pattern(const UniPoly<K>& f) {
    std::vector<int> out;
    for (auto& [m, part] : squarefree_decomposition(f))
        for (int i = 0; i < part.degree(); ++i) out.push_back(m);
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Rational roots of an integer-cleared polynomial over Rat, by the rational
// root theorem. Returns (root, multiplicity) pairs.
inline std::vector<std::pair<Rat, int>> rational_roots(const UniPoly<Rat>& f) {
    std::vector<std::pair<Rat, int>> out;
    if (f.degree() < 1) return out;
    // clear denominators
    mpz_class lcm = 1;
    for (auto& v : f.c) lcm = lcm / gcd(lcm, v.get_den()) * v.get_den();
    std::vector<mpz_class> ic;
    for (auto& v : f.c) ic.push_back(mpz_class(v * Rat(lcm)));
    int lo = 0;
    while (ic[lo] == 0) ++lo;  // factor x^lo
    if (lo > 0) out.push_back({Rat(0), lo});
    mpz_class a0 = abs(ic[lo]);
    mpz_class an = abs(ic.back());
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d;
        for (mpz_class i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                d.push_back(n / i);
            }
        return d;
    };
    auto mult_at = [&](const Rat& r) {
        int m = 0;
        UniPoly<Rat> g = f;
        while (g.degree() >= 1 && is_zero(g.at(r))) {
            UniPoly<Rat> q, rem;
            UniPoly<Rat>::divmod(g, UniPoly<Rat>({-r, Rat(1)}), q, rem);
            g = q;
            ++m;
        }
        return m;
    };
    for (auto& p : divisors(a0))
        for (auto& q : divisors(an))
            for (int s : {1, -1}) {
                Rat r(s * p, q);
                r.canonicalize();
                bool seen = false;
                for (auto& [rr, mm] : out)
                    if (rr == r) seen = true;
                if (seen) continue;
                if (is_zero(f.at(r))) out.push_back({r, mult_at(r)});
            }
    return out;
}

// Sparse polynomial in (y1, y2, y3).
template <class K>
struct Poly3 {
    using Mono = std::array<int, 3>;
    std::map<Mono, K> t;

    Poly3() = default;
    static Poly3 constant(const K& v) {
        Poly3 p;
        if (!is_zero(v)) p.t[{0, 0, 0}] = v;
        return p;
    }
    static Poly3 variable(int i) {
        Poly3 p;
        Mono m{0, 0, 0};
        m[i] = 1;
        p.t[m] = K(1);
        return p;
    }
    static Poly3 linear(const Vec3<K>& xi) {
        Poly3 p;
        for (int i = 0; i < 3; ++i)
            if (!is_zero(xi[i])) p.t[Poly3::unit(i)] = xi[i];
        return p;
    }
    static Mono unit(int i) {
        Mono m{0, 0, 0};
        m[i] = 1;
        return m;
    }

    void add_term(const Mono& m, const K& v) {
        auto it = t.find(m);
        if (it == t.end()) {
            if (!is_zero(v)) t[m] = v;
        } else {
            it->second += v;
            if (is_zero(it->second)) t.erase(it);
        }
    }

    bool zero() const { return t.empty(); }
    int degree() const {
        int d = -1;
        for (auto& [m, v] : t) d = std::max(d, m[0] + m[1] + m[2]);
        return d;
    }
    bool homogeneous() const {
        int d = degree();
        for (auto& [m, v] : t)
            if (m[0] + m[1] + m[2] != d) return false;
        return true;
    }

    Poly3 operator+(const Poly3& o) const {
        Poly3 r = *this;
        for (auto& [m, v] : o.t) r.add_term(m, v);
        return r;
    }
    Poly3 operator-(const Poly3& o) const {
        Poly3 r = *this;
        for (auto& [m, v] : o.t) r.add_term(m, K(0) - v);
        return r;
    }
    Poly3 operator*(const Poly3& o) const {
        Poly3 r;
        for (auto& [m1, v1] : t)
            for (auto& [m2, v2] : o.t)
                r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, v1 * v2);
        return r;
    }
    Poly3 scaled(const K& s) const {
        Poly3 r;
        for (auto& [m, v] : t) r.add_term(m, v * s);
        return r;
    }
    Poly3 pow(int n) const {
        Poly3 r = constant(K(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    K at(const Vec3<K>& y) const {
        K s(0);
        for (auto& [m, v] : t) {
            K term = v;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < m[i]; ++j) term *= y[i];
            s += term;
        }
        return s;
    }

    // substitute y_i -> row_i(a) * y, i.e. pull back along the map given by a
    Poly3 substitute(const Mat3<K>& a) const {
        Poly3 lin[3] = {linear(a[0]), linear(a[1]), linear(a[2])};
        Poly3 r;
        for (auto& [m, v] : t) {
            Poly3 term = constant(v);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < m[i]; ++j) term = term * lin[i];
            r = r + term;
        }
        return r;
    }

    bool proportional_to(const Poly3& o) const {
        if (zero() || o.zero()) return zero() && o.zero();
        // cross-multiply against the other's leading term
        const auto& [m0, v0] = *t.begin();
        auto it = o.t.find(m0);
        if (it == o.t.end()) return false;
        const K& w0 = it->second;
        if (t.size() != o.t.size()) return false;
        for (auto& [m, v] : t) {
            auto jt = o.t.find(m);
            if (jt == o.t.end()) return false;
            if (!is_zero(v * w0 - jt->second * v0)) return false;
        }
        return true;
    }
    bool operator==(const Poly3& o) const {
        return (*this - o).zero();
    }
};

// Exact division; throws when o does not divide this.
template <class K>
Poly3<K> divide_exact(Poly3<K> num, const Poly3<K>& den) {
    if (den.zero()) throw Error("division by zero polynomial");
    Poly3<K> q;
    auto dlead = den.t.rbegin();  // largest monomial in map order
    while (!num.zero()) {
        auto nlead = num.t.rbegin();
        typename Poly3<K>::Mono m;
        for (int i = 0; i < 3; ++i) {
            m[i] = nlead->first[i] - dlead->first[i];
            if (m[i] < 0) throw Error("inexact polynomial division");
        }
        K f = nlead->second / dlead->second;
        Poly3<K> term;
        term.t[m] = f;
        q = q + term;
        num = num - term * den;
    }
    return q;
}

template <class K>
bool divides(const Poly3<K>& den, const Poly3<K>& num) {
    try {
        divide_exact(num, den);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// Ratio of two homogeneous trivariate polynomials of equal degree.
template <class K>
struct RationalIntegral {
    Poly3<K> num, den;
    int deg = 0;

    RationalIntegral() = default;
    RationalIntegral(Poly3<K> n, Poly3<K> d) : num(std::move(n)), den(std::move(d)) {
        if (den.zero()) throw Error("rational integral with zero denominator");
        deg = std::max(num.degree(), den.degree());
    }

    // value as a homogeneous pair; avoids dividing by zero at poles
    P1<K> value(const Vec3<K>& y) const { return P1<K>(num.at(y), den.at(y)); }

    bool values_equal(const Vec3<K>& y1, const Vec3<K>& y2) const {
        K a = num.at(y1), b = den.at(y1);
        K c = num.at(y2), d = den.at(y2);
        if (is_zero(b) || is_zero(d)) throw EvaluationOnExceptionalLine("pole of integral");
        return is_zero(a * d - c * b);
    }

    RationalIntegral pullback(const Mat3<K>& m) const {
        return RationalIntegral(num.substitute(m), den.substitute(m));
    }

    // strip common factors drawn from a list of candidate divisors
    void remove_common_factors(const std::vector<Poly3<K>>& candidates) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& f : candidates) {
                if (f.degree() < 1) continue;
                while (divides(f, num) && divides(f, den)) {
                    num = divide_exact(num, f);
                    den = divide_exact(den, f);
                    changed = true;
                }
            }
        }
        deg = std::max(num.degree(), den.degree());
    }
};

} // namespace pb
