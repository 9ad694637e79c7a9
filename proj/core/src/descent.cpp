#include "sextic/descent.hpp"

#include <algorithm>
#include <stdexcept>

namespace sextic {

std::string to_string(EqType t) {
    switch (t) {
        case EqType::I: return "I";
        case EqType::II: return "II";
        case EqType::III: return "III";
        case EqType::IV: return "IV";
    }
    return "?";
}

std::string to_string(Cover c) {
    switch (c) {
        case Cover::E1: return "E1";
        case Cover::E2: return "E2";
        case Cover::E3: return "E3";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::LocalModM: return "LocalModM";
        case Method::RankZeroE1: return "RankZeroE1";
        case Method::RankZeroE2: return "RankZeroE2";
        case Method::RankZeroE3: return "RankZeroE3";
        case Method::Sieve221: return "Sieve221";
        case Method::Congruence: return "Congruence";
    }
    return "?";
}

namespace {

std::string term(const Integer& coef, const char* var, bool first) {
    std::string out;
    if (!first) out += sgn(coef) < 0 ? " - " : " + ";
    else if (sgn(coef) < 0) out += "-";
    const Integer a = abs(coef);
    if (a != 1) out += a.get_str() + "*";
    return out + var;
}

Integer monomial(unsigned vars, const Solution& s) {
    Integer v = 1;
    if (vars & kVarX) v *= s.x;
    if (vars & kVarY1) v *= s.y1;
    if (vars & kVarY2) v *= s.y2;
    return v;
}

Integer pow_int(const Integer& b, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational pow_rat(const Rational& b, unsigned e) {
    return make_rational(pow_int(b.get_num(), e), pow_int(b.get_den(), e));
}

}  // namespace

std::string DescentEquation::to_string() const {
    std::string lhs = x_coef == 1 ? "x^3" : x_coef.get_str() + "*x^3";
    return lhs + " = " + term(y1_coef, "y1^6", true) + term(d2, "y2^6", false);
}

std::string DescentEquation::label() const {
    return sextic::to_string(type) + "(" + d1.get_str() + "," + d2.get_str() + ")";
}

DescentEquation make_equation(EqType type, const Integer& k, const Integer& d1, const Integer& d2) {
    if (sgn(d2) <= 0) throw std::invalid_argument("make_equation: d2 must be positive");
    DescentEquation eq{type, k, d1, d2, 0, 0, 1, d1, {}};
    const Integer delta = gcd(d1, d2);
    const Integer a = d1 / delta;
    const Integer b = d2 / delta;
    switch (type) {
        case EqType::I:
            eq.A = 4 * d1;
            eq.B = 4 * d2;
            eq.x_coef = 2;
            eq.conditions = {{a, kVarY1, b, kVarY2}, {2, kVarX, 1, kVarY1 | kVarY2}};
            break;
        case EqType::II:
            eq.A = 16 * d1;
            eq.B = d2;
            eq.y1_coef = 16 * d1;
            eq.conditions = {{Integer(2 * a), kVarY1, b, kVarY2}, {1, kVarX, 2, kVarY1 | kVarY2}};
            break;
        case EqType::III:
            eq.A = d1;
            eq.B = d2;
            eq.conditions = {{a, kVarY1, b, kVarY2}, {1, kVarX, 1, kVarY1 | kVarY2}};
            break;
        case EqType::IV:
            eq.A = 32 * d1;
            eq.B = d2;
            eq.y1_coef = 32 * d1;
            eq.conditions = {{Integer(2 * a), kVarY1, b, kVarY2}, {1, kVarX, 2, kVarY1 | kVarY2}};
            break;
    }
    return eq;
}

bool equation_holds(const DescentEquation& eq, const Solution& s) {
    return eq.x_coef * pow_int(s.x, 3) == eq.y1_coef * pow_int(s.y1, 6) + eq.d2 * pow_int(s.y2, 6);
}

bool conditions_hold(const DescentEquation& eq, const Solution& s) {
    for (const auto& c : eq.conditions) {
        if (gcd(Integer(c.coef_a * monomial(c.vars_a, s)), Integer(c.coef_b * monomial(c.vars_b, s))) != 1)
            return false;
    }
    return true;
}

std::vector<DescentEquation> generate_S(const Integer& k, std::vector<DropRecord>* dropped) {
    if (k == 0) throw std::invalid_argument("generate_S: k must be nonzero");
    if (!sixth_power_free(k)) throw std::invalid_argument("generate_S: k must be sixth-power free");

    std::vector<std::pair<EqType, Integer>> plan;  // type and the product d1 d2
    if (mpz_odd_p(k.get_mpz_t())) {
        plan = {{EqType::I, Integer(-k)}, {EqType::II, Integer(-k)}};
    } else if (mpz_divisible_ui_p(k.get_mpz_t(), 4)) {
        plan = {{EqType::III, Integer(-k / 4)}};
    } else {
        plan = {{EqType::IV, Integer(-k / 2)}};
    }

    std::vector<DescentEquation> out;
    for (const auto& [type, N] : plan) {
        const bool symmetric = type == EqType::I || type == EqType::III;
        for (const auto& pr : divisor_pairs(N)) {
            // (d1, d2) and (d2, d1) describe the same equation when both are positive
            if (symmetric && sgn(pr.d1) > 0 && pr.d1 > pr.d2) continue;
            DescentEquation eq = make_equation(type, k, pr.d1, pr.d2);
            bool keep = true;
            for (const auto& [p, e] : factorize(pr.delta)) {
                (void)e;
                const unsigned m = static_cast<unsigned>(p.get_ui() * p.get_ui());
                if (locally_unsolvable(eq, m)) {
                    if (dropped) dropped->push_back({eq, p, m});
                    keep = false;
                    break;
                }
            }
            if (keep) out.push_back(std::move(eq));
        }
    }
    return out;
}

MordellCurve covering_curve(const DescentEquation& eq, Cover which) {
    switch (which) {
        case Cover::E1: return MordellCurve(-pow_int(eq.A, 3) * eq.B);
        case Cover::E2: return MordellCurve(-eq.A * pow_int(eq.B, 3));
        case Cover::E3: return MordellCurve(-432 * eq.A * eq.A * eq.B * eq.B);
    }
    throw std::logic_error("covering_curve");
}

CoverModel cover_model(const DescentEquation& eq, Cover which) {
    MordellCurve raw = covering_curve(eq, which);
    auto split = sixth_power_split(raw.c());
    return {which, raw, MordellCurve(split.kernel), split.t};
}

Integer y3_of(const DescentEquation& eq, const Solution& s) { return eq.type == EqType::I ? Integer(2 * s.x) : s.x; }

namespace {

// E3 coordinates in the affine variables u = y1/y2, v = y3/y2^2, scaled to
// the integral model (4X, 8Y).
CurvePoint e3_point(const Integer& A, const Integer& B, const Rational& u, const Rational& v) {
    if (v == 0) return CurvePoint::infinity();
    const Rational u6 = pow_rat(u, 6);
    const Rational X = (pow_rat(v, 6) - Rational(A * B) * u6) / (pow_rat(u, 4) * v * v);
    const Rational Y = (Rational(A) * u6 - Rational(B)) * (Rational(2 * A) * u6 + Rational(B)) *
                       (Rational(A) * u6 + Rational(2 * B)) / (2 * u6 * pow_rat(v, 3));
    return CurvePoint::affine(4 * X, 8 * Y);
}

}  // namespace

CurvePoint map_to_cover(const DescentEquation& eq, const Solution& s, Cover which) {
    if (s.y1 == 0 || s.y2 == 0) throw std::invalid_argument("map_to_cover: y1 y2 must be nonzero");
    const Integer y3 = y3_of(eq, s);
    switch (which) {
        case Cover::E1:
            return CurvePoint::affine(make_rational(eq.A * y3, s.y2 * s.y2),
                                      make_rational(eq.A * eq.A * pow_int(s.y1, 3), pow_int(s.y2, 3)));
        case Cover::E2:
            return CurvePoint::affine(make_rational(eq.B * y3, s.y1 * s.y1),
                                      make_rational(eq.B * eq.B * pow_int(s.y2, 3), pow_int(s.y1, 3)));
        case Cover::E3:
            return e3_point(eq.A, eq.B, make_rational(s.y1, s.y2), make_rational(y3, s.y2 * s.y2));
    }
    throw std::logic_error("map_to_cover");
}

CurvePoint map_to_E1(const Rational& X, const Rational& Y) { return CurvePoint::affine(X * X, Y); }

CurvePoint map_to_E2(const Integer& k, const Rational& X, const Rational& Y) {
    if (X == 0) return CurvePoint::infinity();
    return CurvePoint::affine(Rational(k) / (X * X), Rational(k) * Y / (X * X * X));
}

std::optional<SexticPoint> point_from_solution(const DescentEquation& eq, const Solution& s) {
    Integer y = s.y1 * s.y2;
    if (eq.type == EqType::II || eq.type == EqType::IV) y *= 2;
    if (y == 0) return std::nullopt;
    const Rational X = make_rational(s.x, y);
    const Rational rhs = pow_rat(X, 6) + Rational(eq.k);
    auto Y = rational_sqrt(rhs);
    if (!Y) return std::nullopt;
    return SexticPoint{X, *Y};
}

std::vector<Located> locate_in_S(const std::vector<DescentEquation>& S, const Rational& X, const Rational& Y) {
    std::vector<Located> out;
    if (Y * Y != pow_rat(X, 6) + Rational(S.empty() ? Integer(0) : S.front().k)) return out;
    const Integer& q = X.get_den();
    // With d2 > 0 some members only carry the mirror point -X; fall back to it.
    for (const Integer& x : {Integer(X.get_num()), Integer(-X.get_num())}) {
        for (std::size_t i = 0; i < S.size(); ++i) {
            const auto& eq = S[i];
            Integer yy = q;
            if (eq.type == EqType::II || eq.type == EqType::IV) {
                if (mpz_odd_p(q.get_mpz_t())) continue;
                yy = q / 2;
            }
            for (const auto& y1 : positive_divisors(yy)) {
                Solution s{x, y1, yy / y1};
                if (equation_holds(eq, s) && conditions_hold(eq, s)) {
                    out.push_back({i, s});
                    break;
                }
            }
        }
        if (!out.empty() || x == 0) break;
    }
    return out;
}

bool locally_unsolvable(const DescentEquation& eq, unsigned m) {
    if (m < 2) throw std::invalid_argument("locally_unsolvable: m must be at least 2");
    std::vector<unsigned> primes;
    for (const auto& [p, e] : factorize(Integer(m))) {
        (void)e;
        primes.push_back(static_cast<unsigned>(p.get_ui()));
    }
    const std::uint64_t xc = mod_u64(eq.x_coef, m);
    const std::uint64_t ac = mod_u64(eq.y1_coef, m);
    const std::uint64_t bc = mod_u64(eq.d2, m);

    // per condition and prime: whether the coefficient side is already divisible
    auto divisible = [](const Integer& c, unsigned p) { return mod_u64(c, p) == 0; };

    std::vector<std::uint64_t> cube(m), sixth(m);
    for (std::uint64_t r = 0; r < m; ++r) {
        cube[r] = r * r % m * r % m;
        sixth[r] = cube[r] * cube[r] % m;
    }
    for (std::uint64_t x = 0; x < m; ++x) {
        const std::uint64_t lhs = xc * cube[x] % m;
        for (std::uint64_t y1 = 0; y1 < m; ++y1) {
            for (std::uint64_t y2 = 0; y2 < m; ++y2) {
                if ((ac * sixth[y1] + bc * sixth[y2]) % m != lhs) continue;
                bool ok = true;
                for (unsigned p : primes) {
                    auto var_div = [&](unsigned vars) {
                        return ((vars & kVarX) && x % p == 0) || ((vars & kVarY1) && y1 % p == 0) ||
                               ((vars & kVarY2) && y2 % p == 0);
                    };
                    for (const auto& c : eq.conditions) {
                        const bool a = divisible(c.coef_a, p) || var_div(c.vars_a);
                        const bool b = divisible(c.coef_b, p) || var_div(c.vars_b);
                        if (a && b) ok = false;
                    }
                }
                if (ok) return false;
            }
        }
    }
    return true;
}

std::string EliminationCertificate::summary() const {
    switch (method) {
        case Method::LocalModM:
            return "no solutions mod " + std::to_string(modulus) + " (" + std::to_string(residues_checked) +
                   " residue triples)";
        case Method::RankZeroE1:
        case Method::RankZeroE2:
        case Method::RankZeroE3: {
            std::string s = to_string(method) + " on y^2 = x^3 + " + curve_c.get_str() + ": " +
                            std::to_string(trace.size()) + " torsion points, " + std::to_string(solutions.size()) +
                            " solutions";
            return s;
        }
        case Method::Sieve221:
        case Method::Congruence: return payload;
    }
    return payload;
}

std::optional<EliminationCertificate> eliminate_locally(const DescentEquation& eq,
                                                        const std::vector<unsigned>& moduli) {
    for (unsigned m : moduli) {
        if (locally_unsolvable(eq, m)) {
            EliminationCertificate cert;
            cert.method = Method::LocalModM;
            cert.modulus = m;
            cert.residues_checked = static_cast<std::uint64_t>(m) * m * m;
            return cert;
        }
    }
    return std::nullopt;
}

namespace {

// Rational roots s = a/b of an integer polynomial (coefficients by degree)
// where a and b are both sixth powers up to sign.
std::vector<Rational> sixth_power_roots(const std::vector<Integer>& coef) {
    auto sixth_roots = [](const Integer& n) {
        Integer r = 1;
        for (const auto& [p, e] : factorize(n))
            for (unsigned i = 0; i < e / 6; ++i) r *= p;
        return positive_divisors(r);
    };
    std::vector<Rational> out;
    if (coef.front() == 0) out.push_back(0);
    for (const auto& a : sixth_roots(coef.front() == 0 ? Integer(1) : coef.front())) {
        for (const auto& b : sixth_roots(coef.back())) {
            const Rational s = make_rational(pow_int(a, 6), pow_int(b, 6));
            Rational v = 0;
            for (std::size_t i = coef.size(); i-- > 0;) v = v * s + Rational(coef[i]);
            if (v == 0 && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    }
    return out;
}

}  // namespace

std::vector<Solution> pullback(const DescentEquation& eq, Cover which, const CurvePoint& reduced_point,
                               std::string* why_not) {
    const CoverModel model = cover_model(eq, which);
    const CurvePoint P = scale_up(reduced_point, model.t);
    auto reject = [&](const std::string& why) {
        if (why_not) *why_not = why;
        return std::vector<Solution>{};
    };

    // candidate (u, v) with u = y1/y2 and v = y3/y2^2
    std::vector<std::pair<Rational, Rational>> cand;
    switch (which) {
        case Cover::E1:
        case Cover::E2: {
            const Integer& lead = which == Cover::E1 ? eq.A : eq.B;
            if (P.infinite) return reject(which == Cover::E1 ? "point at infinity forces y2 = 0" : "point at infinity forces y1 = 0");
            if (P.y == 0) return reject(which == Cover::E1 ? "y = 0 forces y1 = 0" : "y = 0 forces y2 = 0");
            auto w = rational_cbrt(P.y / Rational(lead * lead));
            if (!w) return reject("second coordinate is not a cube multiple");
            const Rational v = P.x / Rational(lead);
            if (which == Cover::E1) {
                cand.emplace_back(*w, v);
            } else {
                // w = y2/y1 and v = y3/y1^2; rescale to y2 = 1
                cand.emplace_back(1 / *w, v / (*w * *w));
            }
            break;
        }
        case Cover::E3: {
            if (P.infinite) {
                auto u = rational_root(Rational(-eq.B) / Rational(eq.A), 6);
                if (!u || *u == 0) return reject("point at infinity needs -B/A to be a sixth power");
                cand.emplace_back(*u, 0);
                break;
            }
            const Rational Y3 = P.y / 8;
            const Integer& n = Y3.get_num();
            const Integer& d = Y3.get_den();
            const Integer& A = eq.A;
            const Integer& B = eq.B;
            std::vector<Integer> poly{-2 * pow_int(B, 3) * d, -3 * A * B * B * d - 2 * B * n,
                                      3 * A * A * B * d - 2 * A * n, 2 * pow_int(A, 3) * d};
            for (const auto& s : sixth_power_roots(poly)) {
                if (s == 0) continue;
                auto u = rational_root(s, 6);
                auto v = rational_cbrt(Rational(A) * s + Rational(B));
                if (!u || !v || *v == 0) continue;
                if (e3_point(A, B, *u, *v) == P) cand.emplace_back(*u, *v);
            }
            if (cand.empty()) return reject("no rational sixth power root of the pull-back cubic");
            break;
        }
    }

    std::vector<Solution> out;
    std::string last = "side conditions fail";
    for (const auto& [u, v] : cand) {
        if (u == 0) {
            last = "forces y1 = 0";
            continue;
        }
        const Integer& y1 = u.get_num();
        const Integer& y2 = u.get_den();
        const Rational y3r = v * Rational(y2 * y2);
        if (y3r.get_den() != 1) {
            last = "y3 not integral";
            continue;
        }
        Integer x = y3r.get_num();
        if (eq.type == EqType::I) {
            if (mpz_odd_p(x.get_mpz_t())) {
                last = "y3 odd for type I";
                continue;
            }
            x /= 2;
        }
        Solution s{x, y1, y2};
        if (!equation_holds(eq, s)) {
            last = "inconsistent pull-back";
            continue;
        }
        if (!conditions_hold(eq, s)) {
            last = "side conditions fail";
            continue;
        }
        out.push_back(s);
    }
    if (out.empty()) return reject(last);
    return out;
}

std::optional<EliminationCertificate> eliminate_by_rank0(const DescentEquation& eq, const FactsDB& facts) {
    for (Cover which : {Cover::E1, Cover::E2, Cover::E3}) {
        const CoverModel model = cover_model(eq, which);
        const CurveFact* fact = facts.find(model.reduced.c());
        if (!fact || fact->rank != 0) continue;
        EliminationCertificate cert;
        cert.method = which == Cover::E1 ? Method::RankZeroE1 : which == Cover::E2 ? Method::RankZeroE2 : Method::RankZeroE3;
        cert.curve_c = model.reduced.c();
        cert.scale_t = model.t;
        for (const auto& T : torsion_points(model.reduced)) {
            std::string why;
            auto sols = pullback(eq, which, T, &why);
            cert.trace.push_back({T, sols.empty() ? why : "solution"});
            for (auto& s : sols)
                if (std::find(cert.solutions.begin(), cert.solutions.end(), s) == cert.solutions.end())
                    cert.solutions.push_back(std::move(s));
        }
        return cert;
    }
    return std::nullopt;
}

bool recheck(const DescentEquation& eq, const EliminationCertificate& cert, const FactsDB& facts) {
    switch (cert.method) {
        case Method::LocalModM: return cert.modulus >= 2 && locally_unsolvable(eq, cert.modulus);
        case Method::RankZeroE1:
        case Method::RankZeroE2:
        case Method::RankZeroE3: {
            const Cover which = cert.method == Method::RankZeroE1 ? Cover::E1
                                : cert.method == Method::RankZeroE2 ? Cover::E2
                                                                    : Cover::E3;
            const CoverModel model = cover_model(eq, which);
            const CurveFact* fact = facts.find(model.reduced.c());
            if (!fact || fact->rank != 0 || model.reduced.c() != cert.curve_c) return false;
            const auto tors = torsion_points(model.reduced);
            if (tors.size() != cert.trace.size()) return false;
            std::vector<Solution> sols;
            for (const auto& T : tors)
                for (auto& s : pullback(eq, which, T))
                    if (std::find(sols.begin(), sols.end(), s) == sols.end()) sols.push_back(s);
            return sols == cert.solutions;
        }
        case Method::Sieve221:
        case Method::Congruence: return false;
    }
    return false;
}

}  // namespace sextic
