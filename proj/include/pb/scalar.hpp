#pragma once
// Scalar backends: exact rationals (GMP), quadratic extensions Q(sqrt(D)),
// and binary64 with a configured tolerance.

#include <gmpxx.h>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include "pb/error.hpp"

namespace pb {

using Rat = mpq_class;

inline Rat rat_of_string(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }
inline double to_double(const Rat& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// Field traits. Exact backends decide equality; the float backend compares
// against a configurable absolute tolerance (callers pre-scale).
template <class K>
struct FT {
    static constexpr bool exact = true;
    static bool zero(const K& x) { return x == K(0); }
};

struct FloatTolerance {
    static double& eps() {
        static double e = 1e-9;
        return e;
    }
};

template <>
struct FT<double> {
    static constexpr bool exact = false;
    static bool zero(double x) { return std::fabs(x) <= FloatTolerance::eps(); }
};

template <class K>
bool is_zero(const K& x) { return FT<K>::zero(x); }

// collapse GMP expression templates before dispatching on the value type
template <class T, class U>
bool is_zero(const __gmp_expr<T, U>& e) { return FT<Rat>::zero(Rat(e)); }

// a + b*sqrt(D) over base field B. D must not be a square in B.
template <class B, int D>
struct QE {
    B a{}, b{};

    QE() = default;
    QE(int v) : a(v), b(0) {}
    QE(const B& v) : a(v), b(0) {}
    QE(const B& x, const B& y) : a(x), b(y) {}

    static QE sqrt_d() { return QE(B(0), B(1)); }

    QE conj() const { return QE(a, B(-1) * b); }
    B norm() const { return a * a - B(D) * b * b; }
    bool is_real() const { return is_zero(b); }

    QE operator-() const { return QE(B(-1) * a, B(-1) * b); }
    QE operator+(const QE& o) const { return QE(a + o.a, b + o.b); }
    QE operator-(const QE& o) const { return QE(a - o.a, b - o.b); }
    QE operator*(const QE& o) const {
        return QE(a * o.a + B(D) * b * o.b, a * o.b + b * o.a);
    }
    QE operator/(const QE& o) const {
        B n = o.norm();
        if (is_zero(n)) throw Error("division by zero in quadratic extension");
        QE t = *this * o.conj();
        return QE(t.a / n, t.b / n);
    }
    QE& operator+=(const QE& o) { return *this = *this + o; }
    QE& operator-=(const QE& o) { return *this = *this - o; }
    QE& operator*=(const QE& o) { return *this = *this * o; }
    QE& operator/=(const QE& o) { return *this = *this / o; }

    bool operator==(const QE& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QE& o) const { return !(*this == o); }
};

template <class B, int D>
struct FT<QE<B, D>> {
    static constexpr bool exact = FT<B>::exact;
    static bool zero(const QE<B, D>& x) { return is_zero(x.a) && is_zero(x.b); }
};

template <class B, int D>
std::ostream& operator<<(std::ostream& os, const QE<B, D>& x) {
    return os << "(" << x.a << "+" << x.b << "*sqrt(" << D << "))";
}

using GaussRat = QE<Rat, -1>;  // Q(i)
using EisenRat = QE<Rat, -3>;  // Q(sqrt(-3)), holds cube roots of unity

// Value on the projective line, stored as a homogeneous pair (num, den).
// Infinity is (1, 0).
template <class K>
struct P1 {
    K n{}, d{};

    P1() : n(0), d(1) {}
    P1(const K& v) : n(v), d(1) {}
    P1(int v) : n(v), d(1) {}
    P1(const K& nn, const K& dd) : n(nn), d(dd) {
        if (is_zero(n) && is_zero(d)) throw Error("P1 value (0:0)");
    }

    static P1 infinity() { return P1(K(1), K(0)); }
    bool is_infinity() const { return is_zero(d); }
    K finite() const {
        if (is_infinity()) throw Error("P1 value is infinite");
        return n / d;
    }
};

template <class K>
K p1_det(const P1<K>& x, const P1<K>& y) {
    return x.n * y.d - x.d * y.n;
}

template <class K>
bool p1_equal(const P1<K>& x, const P1<K>& y) {
    return is_zero(p1_det(x, y));
}

// Uniform small rationals; deterministic given the engine state.
struct RatSampler {
    std::mt19937_64 rng;
    explicit RatSampler(std::uint64_t seed) : rng(seed) {}

    Rat rat(int lo = -20, int hi = 20, int max_den = 7) {
        std::uniform_int_distribution<int> num(lo, hi);
        std::uniform_int_distribution<int> den(1, max_den);
        Rat r(num(rng), den(rng));
        r.canonicalize();
        return r;
    }
    Rat nonzero_rat(int lo = -20, int hi = 20, int max_den = 7) {
        for (;;) {
            Rat r = rat(lo, hi, max_den);
            if (r != 0) return r;
        }
    }
    int integer(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng);
    }
};

} // namespace pb
