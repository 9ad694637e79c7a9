#pragma once

// Mordell curves y^2 = x^3 + c over Q and over prime fields.

#include "sextic/arith.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sextic {

class MordellCurve {
public:
    explicit MordellCurve(Integer c);

    const Integer& c() const { return c_; }

    bool operator==(const MordellCurve&) const = default;

private:
    Integer c_;
};

struct CurvePoint {
    bool infinite = true;
    Rational x;
    Rational y;

    static CurvePoint infinity() { return {}; }
    static CurvePoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }

    bool operator==(const CurvePoint& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return x == o.x && y == o.y;
    }
};

// Orders infinity first, then by (x, y).
bool point_less(const CurvePoint& a, const CurvePoint& b);

std::string to_string(const CurvePoint& P);

bool on_curve(const MordellCurve& E, const CurvePoint& P);

CurvePoint negate(const CurvePoint& P);
CurvePoint add(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint multiply(const MordellCurve& E, const Integer& n, const CurvePoint& P);

// Finite order detected by multiples up to 12 (Mazur).
bool is_torsion(const MordellCurve& E, const CurvePoint& P);

// Full torsion subgroup, sorted with point_less.
std::vector<CurvePoint> torsion_points(const MordellCurve& E);

// Rescaling between y^2 = x^3 + c t^6 and y^2 = x^3 + c: (x, y) -> (x/t^2, y/t^3).
CurvePoint scale_down(const CurvePoint& P, const Integer& t);
CurvePoint scale_up(const CurvePoint& P, const Integer& t);

struct ModPoint {
    bool infinite = true;
    std::uint64_t x = 0;
    std::uint64_t y = 0;

    static ModPoint infinity() { return {}; }
    static ModPoint affine(std::uint64_t x, std::uint64_t y) { return {false, x, y}; }

    bool operator==(const ModPoint& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return x == o.x && y == o.y;
    }
    auto operator<=>(const ModPoint& o) const {
        if (infinite != o.infinite) return infinite ? std::strong_ordering::less : std::strong_ordering::greater;
        if (infinite) return std::strong_ordering::equal;
        if (auto cmp = x <=> o.x; cmp != 0) return cmp;
        return y <=> o.y;
    }
};

std::string to_string(const ModPoint& P);

// y^2 = x^3 + c over F_p with p an odd prime not dividing 6c.
class ReducedCurve {
public:
    ReducedCurve(const MordellCurve& E, std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint64_t c() const { return c_; }

    bool contains(const ModPoint& P) const;
    ModPoint negate(const ModPoint& P) const;
    ModPoint add(const ModPoint& P, const ModPoint& Q) const;
    ModPoint multiply(std::uint64_t n, const ModPoint& P) const;
    std::uint64_t order(const ModPoint& P) const;
    std::vector<ModPoint> points() const;

private:
    std::uint64_t p_;
    std::uint64_t c_;
};

bool good_reduction(const MordellCurve& E, std::uint64_t p);

// Throws std::invalid_argument at bad primes.
ModPoint reduce_mod_p(const MordellCurve& E, const CurvePoint& P, std::uint64_t p);

std::uint64_t point_order_mod_p(const MordellCurve& E, const ModPoint& P, std::uint64_t p);

}  // namespace sextic
