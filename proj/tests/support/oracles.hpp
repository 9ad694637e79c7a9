#pragma once

// Slow reference implementations for the tests. They use GMP and plain
// loops directly and share no code with the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

inline std::optional<mpz_class> bisect_root(const mpz_class& n, unsigned e) {
    const bool neg = n < 0;
    if (neg && e % 2 == 0) return std::nullopt;
    const mpz_class m = neg ? mpz_class(-n) : n;
    mpz_class lo = 0, hi = 1;
    auto power = [e](const mpz_class& x) {
        mpz_class r = 1;
        for (unsigned i = 0; i < e; ++i) r *= x;
        return r;
    };
    while (power(hi) < m) hi *= 2;
    while (lo < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (power(mid) < m) lo = mid + 1;
        else hi = mid;
    }
    if (power(lo) != m) return std::nullopt;
    return neg ? mpz_class(-lo) : lo;
}

inline std::vector<std::pair<long, int>> trial_factor(long n) {
    std::vector<std::pair<long, int>> out;
    n = n < 0 ? -n : n;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long divisor_count(long n) {
    long d = 0;
    n = n < 0 ? -n : n;
    for (long i = 1; i <= n; ++i) d += n % i == 0;
    return d;
}

inline bool prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// Quadratic residue symbol by listing the squares.
inline int legendre_by_squares(long a, long p) {
    long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// Affine point on y^2 = x^3 + c over Q, or infinity; tangent-chord law
// written out directly.
struct QPoint {
    bool inf = true;
    mpq_class x, y;
    bool operator==(const QPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

inline QPoint qadd(const QPoint& P, const QPoint& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    mpq_class lam;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return {};
        lam = 3 * P.x * P.x / (2 * P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    QPoint R{false, lam * lam - P.x - Q.x, 0};
    R.y = lam * (P.x - R.x) - P.y;
    R.x.canonicalize();
    R.y.canonicalize();
    return R;
}

inline QPoint qmul(long n, QPoint P) {
    if (n < 0) {
        n = -n;
        P.y = -P.y;
    }
    QPoint R;
    for (long i = 0; i < n; ++i) R = qadd(R, P);
    return R;
}

// Torsion by brute force: integral points with |x| <= bound whose order
// divides 6 (the only torsion orders on Mordell curves).
inline std::vector<QPoint> torsion_brute(long c, long bound) {
    std::vector<QPoint> out{QPoint{}};
    for (long x = -bound; x <= bound; ++x) {
        mpz_class rhs = mpz_class(x) * x * x + c;
        if (rhs < 0) continue;
        auto y = bisect_root(rhs, 2);
        if (!y) continue;
        for (int s : {1, -1}) {
            if (s < 0 && *y == 0) continue;
            QPoint P{false, mpq_class(x), mpq_class(s * *y)};
            if (qmul(6, P).inf) out.push_back(P);
        }
    }
    return out;
}

// Affine point mod p, or infinity.
struct FPoint {
    bool inf = true;
    long x = 0, y = 0;
    bool operator<(const FPoint& o) const { return std::tie(inf, x, y) > std::tie(o.inf, o.x, o.y); }
    bool operator==(const FPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

inline long inv_mod(long a, long p) {
    long r = 1, b = ((a % p) + p) % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline FPoint fadd(const FPoint& P, const FPoint& Q, long p) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    long lam;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0) return {};
        lam = 3 * P.x % p * P.x % p * inv_mod(2 * P.y, p) % p;
    } else {
        lam = ((Q.y - P.y) % p + p) % p * inv_mod(((Q.x - P.x) % p + p) % p, p) % p;
    }
    FPoint R{false, ((lam * lam - P.x - Q.x) % p + 2 * p) % p, 0};
    R.y = ((lam * (P.x - R.x) - P.y) % p + 2 * p) % p;
    return R;
}

inline FPoint freduce(const QPoint& P, long p) {
    if (P.inf) return {};
    mpz_class d = P.x.get_den();
    if (d % p == 0) return {};
    auto r = [p](const mpq_class& q) {
        mpz_class n = q.get_num() % p, d = q.get_den() % p;
        long nn = (n.get_si() + p) % p, dd = (d.get_si() + p) % p;
        return nn * inv_mod(dd, p) % p;
    };
    return {false, r(P.x), r(P.y)};
}

// Reduce first, then walk the cyclic subgroup.
inline std::set<FPoint> cyclic_mod_p(const QPoint& P, long p) {
    std::set<FPoint> out;
    FPoint G = freduce(P, p), R;
    do {
        out.insert(R);
        R = fadd(R, G, p);
    } while (!R.inf);
    return out;
}

// Every rational X = a/b with height <= H and Y^2 = X^6 + k, both signs.
inline std::set<std::pair<mpq_class, mpq_class>> naive_points(long k, long H) {
    std::set<std::pair<mpq_class, mpq_class>> out;
    for (long b = 1; b <= H; ++b)
        for (long a = -H; a <= H; ++a) {
            if (std::gcd(a, b) != 1) continue;
            mpz_class a6 = mpz_class(a) * a * a * a * a * a;
            mpz_class b6 = mpz_class(b) * b * b * b * b * b;
            auto z = bisect_root(a6 + k * b6, 2);
            if (!z) continue;
            mpq_class X(a, b), Y(*z, b * b * b);
            X.canonicalize();
            Y.canonicalize();
            out.insert({X, Y});
            out.insert({X, -Y});
        }
    return out;
}

// (m + n w)(a + b w)^6 in Z[w], w^2 = -1 - w, returned as (real, w) parts.
inline std::pair<mpz_class, mpz_class> omega_expand(const mpz_class& m, const mpz_class& n, const mpz_class& a,
                                                    const mpz_class& b) {
    auto mul = [](std::pair<mpz_class, mpz_class> u, std::pair<mpz_class, mpz_class> v) {
        // (u0 + u1 w)(v0 + v1 w) = u0 v0 + (u0 v1 + u1 v0) w + u1 v1 (-1 - w)
        return std::pair<mpz_class, mpz_class>{u.first * v.first - u.second * v.second,
                                               u.first * v.second + u.second * v.first - u.second * v.second};
    };
    std::pair<mpz_class, mpz_class> r{m, n}, base{a, b};
    for (int i = 0; i < 6; ++i) r = mul(r, base);
    return r;
}

}  // namespace oracle
