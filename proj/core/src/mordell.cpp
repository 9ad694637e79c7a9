#include "sextic/mordell.hpp"

#include <algorithm>
#include <stdexcept>

namespace sextic {

MordellCurve::MordellCurve(Integer c) : c_(std::move(c)) {
    if (c_ == 0) throw std::invalid_argument("MordellCurve: c must be nonzero");
}

bool point_less(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinite || b.infinite) return a.infinite && !b.infinite;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

std::string to_string(const CurvePoint& P) {
    if (P.infinite) return "O";
    return "(" + P.x.get_str() + "," + P.y.get_str() + ")";
}

bool on_curve(const MordellCurve& E, const CurvePoint& P) {
    if (P.infinite) return true;
    return P.y * P.y == P.x * P.x * P.x + E.c();
}

CurvePoint negate(const CurvePoint& P) {
    if (P.infinite) return P;
    return CurvePoint::affine(P.x, -P.y);
}

CurvePoint add(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q) {
    (void)E;
    if (P.infinite) return Q;
    if (Q.infinite) return P;
    Rational lambda;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return CurvePoint::infinity();
        lambda = 3 * P.x * P.x / (2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    Rational x = lambda * lambda - P.x - Q.x;
    Rational y = lambda * (P.x - x) - P.y;
    return CurvePoint::affine(std::move(x), std::move(y));
}

CurvePoint multiply(const MordellCurve& E, const Integer& n, const CurvePoint& P) {
    Integer m = abs(n);
    CurvePoint base = sgn(n) < 0 ? negate(P) : P;
    CurvePoint acc = CurvePoint::infinity();
    const std::size_t bits = m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = add(E, acc, acc);
        if (mpz_tstbit(m.get_mpz_t(), i)) acc = add(E, acc, base);
    }
    return acc;
}

bool is_torsion(const MordellCurve& E, const CurvePoint& P) {
    CurvePoint Q = P;
    for (int n = 1; n <= 12; ++n) {
        if (Q.infinite) return true;
        Q = add(E, Q, P);
    }
    return false;
}

std::vector<CurvePoint> torsion_points(const MordellCurve& E) {
    const Integer& c = E.c();
    std::vector<CurvePoint> out{CurvePoint::infinity()};
    auto consider = [&](const Integer& y) {
        auto x = is_cube(Integer(y * y - c));
        if (!x) return;
        CurvePoint P = CurvePoint::affine(Rational(*x), Rational(y));
        if (is_torsion(E, P)) out.push_back(P);
    };
    consider(0);
    // y^2 | 432 c^2 forces y | 12c
    const Integer bound = 432 * c * c;
    for (const auto& y : positive_divisors(Integer(12 * c))) {
        if (!mpz_divisible_p(bound.get_mpz_t(), Integer(y * y).get_mpz_t())) continue;
        consider(y);
        consider(Integer(-y));
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

CurvePoint scale_down(const CurvePoint& P, const Integer& t) {
    if (P.infinite) return P;
    const Integer t2 = t * t;
    return CurvePoint::affine(P.x / Rational(t2), P.y / Rational(t2 * t));
}

CurvePoint scale_up(const CurvePoint& P, const Integer& t) {
    if (P.infinite) return P;
    const Integer t2 = t * t;
    return CurvePoint::affine(P.x * Rational(t2), P.y * Rational(t2 * t));
}

std::string to_string(const ModPoint& P) {
    if (P.infinite) return "O";
    return "(" + std::to_string(P.x) + "," + std::to_string(P.y) + ")";
}

bool good_reduction(const MordellCurve& E, std::uint64_t p) {
    return p > 3 && is_prime(p) && mod_u64(E.c(), p) != 0;
}

ReducedCurve::ReducedCurve(const MordellCurve& E, std::uint64_t p) : p_(p), c_(0) {
    if (!good_reduction(E, p)) throw std::invalid_argument("bad reduction at p = " + std::to_string(p));
    c_ = mod_u64(E.c(), p);
}

bool ReducedCurve::contains(const ModPoint& P) const {
    if (P.infinite) return true;
    return mulmod(P.y, P.y, p_) == (mulmod(mulmod(P.x, P.x, p_), P.x, p_) + c_) % p_;
}

ModPoint ReducedCurve::negate(const ModPoint& P) const {
    if (P.infinite || P.y == 0) return P;
    return ModPoint::affine(P.x, p_ - P.y);
}

ModPoint ReducedCurve::add(const ModPoint& P, const ModPoint& Q) const {
    if (P.infinite) return Q;
    if (Q.infinite) return P;
    std::uint64_t lambda;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return ModPoint::infinity();
        lambda = mulmod(mulmod(3, mulmod(P.x, P.x, p_), p_), invmod(mulmod(2, P.y, p_), p_), p_);
    } else {
        lambda = mulmod((Q.y + p_ - P.y) % p_, invmod((Q.x + p_ - P.x) % p_, p_), p_);
    }
    const std::uint64_t x = (mulmod(lambda, lambda, p_) + 2 * p_ - P.x - Q.x) % p_;
    const std::uint64_t y = (mulmod(lambda, (P.x + p_ - x) % p_, p_) + p_ - P.y) % p_;
    return ModPoint::affine(x, y);
}

ModPoint ReducedCurve::multiply(std::uint64_t n, const ModPoint& P) const {
    ModPoint acc = ModPoint::infinity();
    ModPoint base = P;
    while (n) {
        if (n & 1) acc = add(acc, base);
        base = add(base, base);
        n >>= 1;
    }
    return acc;
}

std::uint64_t ReducedCurve::order(const ModPoint& P) const {
    std::uint64_t n = 1;
    for (ModPoint Q = P; !Q.infinite; Q = add(Q, P)) ++n;
    return n;
}

std::vector<ModPoint> ReducedCurve::points() const {
    std::vector<ModPoint> out{ModPoint::infinity()};
    for (std::uint64_t x = 0; x < p_; ++x) {
        const std::uint64_t rhs = (mulmod(mulmod(x, x, p_), x, p_) + c_) % p_;
        for (std::uint64_t y = 0; y < p_; ++y)
            if (mulmod(y, y, p_) == rhs) out.push_back(ModPoint::affine(x, y));
    }
    return out;
}

ModPoint reduce_mod_p(const MordellCurve& E, const CurvePoint& P, std::uint64_t p) {
    if (!good_reduction(E, p)) throw std::invalid_argument("bad reduction at p = " + std::to_string(p));
    if (P.infinite) return ModPoint::infinity();
    auto x = rational_mod(P.x, p);
    auto y = rational_mod(P.y, p);
    // in lowest terms x = u/t^2, y = v/t^3, so p divides both denominators or neither
    if (!x || !y) return ModPoint::infinity();
    return ModPoint::affine(*x, *y);
}

std::uint64_t point_order_mod_p(const MordellCurve& E, const ModPoint& P, std::uint64_t p) {
    ReducedCurve R(E, p);
    if (!R.contains(P)) throw std::invalid_argument("point not on reduced curve");
    return R.order(P);
}

}  // namespace sextic
