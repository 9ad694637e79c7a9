#include "sextic/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace sextic {

SieveProblem make_sieve_problem(const Integer& D) {
    if (D == 0) throw std::invalid_argument("sieve: D must be nonzero");
    SieveProblem prob{D, valuation(D, 3), 0};
    prob.nu = prob.tau == 0 ? 5 : prob.tau == 1 ? 6 : static_cast<int>(prob.tau) - 1;
    return prob;
}

namespace {

std::vector<Integer> odd_primes(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        if (p != 2) out.push_back(p);
    }
    return out;
}

bool odd_primes_one_mod_three(const Integer& n) {
    for (const auto& p : odd_primes(n))
        if (mod_u64(p, 3) != 1) return false;
    return true;
}

bool residue_at_odd_primes(const Integer& a, const Integer& n) {
    for (const auto& p : odd_primes(n))
        if (legendre_symbol(a, p) != 1) return false;
    return true;
}

}  // namespace

std::vector<DivisorPair> case_i_pairs(const Integer& D) {
    if (D == 0) throw std::invalid_argument("case_i_pairs: D must be nonzero");
    static const std::pair<unsigned, unsigned> allowed[] = {{1, 1}, {1, 7}, {1, 8}, {4, 2}, {4, 4},
                                                            {4, 7}, {7, 1}, {7, 4}, {7, 5}};
    std::vector<DivisorPair> out;
    // here 3 does not divide D Y1, so a factor 3 in D rules the case out
    if (mpz_divisible_ui_p(D.get_mpz_t(), 3)) return out;
    for (const auto& pr : divisor_pairs(D)) {
        const auto key = std::make_pair(static_cast<unsigned>(mod_u64(pr.d2, 9)), static_cast<unsigned>(mod_u64(pr.d1, 9)));
        if (std::find(std::begin(allowed), std::end(allowed), key) == std::end(allowed)) continue;
        if (gcd(Integer(2 * pr.d1), pr.d2) != 1) continue;
        if (!residue_at_odd_primes(Integer(3 * pr.d2), pr.d1)) continue;
        if (!odd_primes_one_mod_three(pr.d2)) continue;
        out.push_back(pr);
    }
    return out;
}

std::vector<DivisorPair> case_ii_pairs(const Integer& D) {
    const SieveProblem prob = make_sieve_problem(D);
    Integer rest = D;
    for (unsigned i = 0; i < prob.tau; ++i) rest /= 3;
    std::vector<DivisorPair> out;
    for (const auto& pr : divisor_pairs(rest)) {
        if (gcd(Integer(2 * pr.d1), pr.d2) != 1) continue;
        if (!residue_at_odd_primes(pr.d2, pr.d1)) continue;
        if (!odd_primes_one_mod_three(pr.d2)) continue;
        out.push_back(pr);
    }
    return out;
}

Integer OmegaForm::F1(const Integer& a, const Integer& b) const {
    Integer v = 0, ap = 1;
    std::array<Integer, 7> bp;
    bp[0] = 1;
    for (int i = 1; i < 7; ++i) bp[i] = bp[i - 1] * b;
    for (int i = 6; i >= 0; --i) {
        v += f1[i] * ap * bp[i];
        ap *= a;
    }
    return v;
}

Integer OmegaForm::F2(const Integer& a, const Integer& b) const {
    Integer v = 0, ap = 1;
    std::array<Integer, 7> bp;
    bp[0] = 1;
    for (int i = 1; i < 7; ++i) bp[i] = bp[i - 1] * b;
    for (int i = 6; i >= 0; --i) {
        v += f2[i] * ap * bp[i];
        ap *= a;
    }
    return v;
}

OmegaForm omega_forms(const Integer& m, const Integer& n) {
    OmegaForm f{m, n, {}, {}};
    f.f1 = {n, 6 * (m - n), -15 * m, 20 * n, 15 * (m - n), -6 * m, n};
    f.f2 = {m - 2 * n, -6 * (2 * m - n), 15 * (m + n), 20 * (m - 2 * n), -15 * (2 * m - n), 6 * (m + n), m - 2 * n};
    return f;
}

OmegaForm omega_forms(const Integer& m, const Integer& n, const Integer& d2) {
    if (m * m - m * n + n * n != d2) throw std::invalid_argument("omega_forms: (m, n) does not represent d2");
    return omega_forms(m, n);
}

std::vector<std::pair<Integer, Integer>> omega_representations(const Integer& d2) {
    std::vector<std::pair<Integer, Integer>> out;
    if (sgn(d2) <= 0) return out;
    // m^2 - mn + n^2 >= (m^2 + n^2) / 2
    Integer bound = sqrt(Integer(2 * d2)) + 1;
    for (Integer m = -bound; m <= bound; ++m)
        for (Integer n = -bound; n <= bound; ++n)
            if (m * m - m * n + n * n == d2) out.emplace_back(m, n);
    return out;
}

std::vector<std::pair<Integer, Integer>> normalized_representations(const Integer& d2, unsigned tau) {
    auto reps = omega_representations(d2);
    if (tau == 2) return reps;
    std::erase_if(reps, [](const auto& mn) { return mod_u64(mn.second, 3) != 0 || mod_u64(mn.first, 3) == 0; });
    return reps;
}

std::vector<C1C2Pair> c1c2_pairs(const Integer& N) {
    std::vector<C1C2Pair> out;
    for (const auto& c1 : positive_divisors(N)) {
        Integer c2 = N / c1;
        if (gcd(c1, c2) == 1) out.push_back({c1, c2});
    }
    return out;
}

MordellCurve c1_curve(const Integer& c1) { return MordellCurve(64 * c1 * c1); }
MordellCurve c2_curve(const Integer& c2) { return MordellCurve(64 * c2 * c2); }

CurvePoint c1_map(const Integer& c1, const Rational& u, const Rational& w) {
    return CurvePoint::affine(Rational(8 * c1) * w, Rational(8 * c1) * (2 * u - 1));
}

CurvePoint c2_map(const Integer& c2, const Rational& T, const Rational& w) {
    if (T == 0) return CurvePoint::infinity();
    return CurvePoint::affine(Rational(-8 * c2) * w / T, Rational(24 * c2) / T);
}

std::optional<Rational> u_from_c1_point(const Integer& c1, const CurvePoint& P) {
    if (P.infinite) return std::nullopt;
    return (P.y / Rational(8 * c1) + 1) / 2;
}

std::optional<Rational> u_from_c2_point(const Integer& c2, const CurvePoint& P) {
    if (P.infinite) return Rational(1, 2);
    if (P.y == 0) return std::nullopt;
    const Rational T = Rational(24 * c2) / P.y;
    return (T + 1) / 2;
}

std::string u_rejection(const std::optional<Rational>& u, bool normalized) {
    if (!u) return "u = infinity forces b = 0";
    const Integer& a = u->get_num();
    const Integer& b = u->get_den();
    if (omega_forms(1, 0).F1(a, b) == 0) return "u = " + u->get_str() + " gives F1 = 0, so Y1 = 0";
    if (normalized) {
        if (mpz_even_p(a.get_mpz_t()) || mpz_even_p(b.get_mpz_t())) return "u = " + u->get_str() + ": ab is even";
        if (mod_u64(Integer(a + b), 3) == 0) return "u = " + u->get_str() + ": a + b = 0 mod 3";
    }
    return {};
}

namespace {

std::uint64_t strip(std::uint64_t& v, std::uint64_t p) {
    std::uint64_t e = 0;
    while (v % p == 0) v /= p, ++e;
    return e;
}

// Is g / c a cube in Q_p, given g only modulo p^r?  Undecidable cases
// answer true.
bool cube_class_possible(std::uint64_t g, std::uint64_t p, unsigned r, const Integer& c) {
    if (g == 0) return true;
    const std::uint64_t vg = strip(g, p);
    const unsigned vc = valuation(c, Integer(static_cast<unsigned long>(p)));
    if ((vg + 3 - vc % 3) % 3 != 0) return false;
    Integer cu = c;
    for (unsigned i = 0; i < vc; ++i) cu /= static_cast<unsigned long>(p);
    if (p == 3) {
        if (r < vg + 2) return true;
        const std::uint64_t ratio = mulmod(g % 9, invmod(mod_u64(cu, 9), 9), 9);
        return ratio == 1 || ratio == 8;
    }
    if (p % 3 == 1) {
        const std::uint64_t ratio = mulmod(g % p, invmod(mod_u64(cu, p), p), p);
        return powmod(ratio, (p - 1) / 3, p) == 1;
    }
    return true;
}

}  // namespace

bool c1c2_locally_unsolvable(const C1C2Pair& pr, std::uint64_t p, bool normalized) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("c1c2_locally_unsolvable: p must be prime");
    unsigned r = 0;
    std::uint64_t q = 1;
    while (q <= (std::uint64_t(1) << 20) / p) q *= p, ++r;
    const Integer c1 = 2 * pr.c1, c2 = 2 * pr.c2;

    auto possible = [&](std::uint64_t a, std::uint64_t b) {
        if (normalized) {
            if (p == 2 && (a % 2 == 0 || b % 2 == 0)) return false;
            if (p == 3 && (a + b) % 3 == 0) return false;
        }
        const std::uint64_t amb = (a + q - b) % q;
        const std::uint64_t g1 = mulmod(mulmod(a, b, q), amb, q);
        const std::uint64_t f1 = (a + b) % q;
        const std::uint64_t f2 = (2 * a % q + q - b) % q;
        const std::uint64_t f3 = (a + q - 2 * b % q) % q;
        const std::uint64_t g2 = mulmod(mulmod(f1, f2, q), f3, q);
        return cube_class_possible(g1, p, r, c1) && cube_class_possible(g2, p, r, c2);
    };
    for (std::uint64_t t = 0; t < q; ++t)
        if (possible(1, t)) return false;
    for (std::uint64_t s = 0; s < q / p; ++s)
        if (possible(p * s % q, 1)) return false;
    return true;
}

C1C2Result eliminate_c1c2(const Integer& N, const FactsDB& facts, bool normalized) {
    if (sgn(N) <= 0) throw std::invalid_argument("eliminate_c1c2: N must be positive");
    C1C2Result res{N, {}, std::nullopt};
    for (const auto& pr : c1c2_pairs(N)) {
        C1C2Step step{pr, 0, 0, 0, {}};
        std::optional<std::string> why_not;
        for (int which : {1, 2}) {
            const MordellCurve raw = which == 1 ? c1_curve(pr.c1) : c2_curve(pr.c2);
            const auto split = sixth_power_split(raw.c());
            const CurveFact* fact = facts.find(split.kernel);
            if (!fact || fact->rank != 0) continue;
            step.curve = which;
            step.reduced_c = split.kernel;
            for (const auto& T : torsion_points(MordellCurve(split.kernel))) {
                const CurvePoint P = scale_up(T, split.t);
                const auto u = which == 1 ? u_from_c1_point(pr.c1, P) : u_from_c2_point(pr.c2, P);
                std::string why = u_rejection(u, normalized);
                if (why.empty()) {
                    why_not = "torsion point " + to_string(T) + " gives admissible u = " + u->get_str();
                    why = "admissible";
                }
                step.pullbacks.emplace_back(T, why);
            }
            break;
        }
        if (step.curve == 0) why_not = "no rank-0 fact for either curve";
        if (why_not) {
            std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13};
            for (const auto& [q, e] : factorize(N)) {
                (void)e;
                if (q > 13 && q.fits_ulong_p()) primes.push_back(q.get_ui());
            }
            for (std::uint64_t p : primes) {
                if (c1c2_locally_unsolvable(pr, p, normalized)) {
                    step.local_prime = p;
                    why_not.reset();
                    break;
                }
            }
        }
        if (why_not && !res.failure) res.failure = "pair (" + pr.c1.get_str() + "," + pr.c2.get_str() + "): " + *why_not;
        res.steps.push_back(std::move(step));
    }
    return res;
}

bool quartic_locally_unsolvable(const SieveProblem& prob, const DivisorPair& pair, bool case_ii, unsigned m) {
    if (m < 2) throw std::invalid_argument("quartic_locally_unsolvable: modulus must be at least 2");
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : factorize(Integer(m))) {
        (void)e;
        primes.push_back(p.get_ui());
    }
    const std::uint64_t d1 = mod_u64(pair.d1, m), d2 = mod_u64(pair.d2, m);
    // a Y2^4 + b Y2^2 Y3^6 + c Y3^12 = d2 Y4^6,  X = Y2^2 + shift Y3^6
    std::uint64_t a = 3, shift = d1;
    if (case_ii) {
        a = 1;
        shift = mulmod(powmod(3, prob.nu, m), d1, m);
    }
    const std::uint64_t b = case_ii ? shift : mulmod(3, d1, m);
    const std::uint64_t c =
        case_ii ? mulmod(powmod(3, 2 * prob.nu - 1, m), mulmod(d1, d1, m), m) : mulmod(d1, d1, m);
    const bool three_in_gcd = case_ii && prob.nu + 1 > static_cast<int>(prob.tau);

    std::vector<std::uint64_t> sq(m), sixth(m);
    for (std::uint64_t y = 0; y < m; ++y) sq[y] = y * y % m, sixth[y] = powmod(y, 6, m);
    for (std::uint64_t y2 = 0; y2 < m; ++y2)
        for (std::uint64_t y3 = 0; y3 < m; ++y3) {
            const std::uint64_t lhs = (a * sq[y2] % m * sq[y2] + b * sq[y2] % m * sixth[y3] + c * sixth[y3] % m * sixth[y3]) % m;
            const std::uint64_t X = (sq[y2] + shift * sixth[y3]) % m;
            for (std::uint64_t y4 = 0; y4 < m; ++y4) {
                if (lhs != d2 * sixth[y4] % m) continue;
                bool ok = true;
                for (std::uint64_t p : primes) {
                    const bool y3p = y3 % p == 0, y4p = y4 % p == 0, y2p = y2 % p == 0, xp = X % p == 0;
                    if ((p == 2 || d1 % p == 0 || y3p) && (d2 % p == 0 || y4p)) ok = false;
                    if (xp && (y2p || y3p || y4p)) ok = false;
                    if (y2p && d2 % p == 0) ok = false;
                    if (p == 3 && !case_ii && (y3p || y4p)) ok = false;
                    if (p == 3 && three_in_gcd && xp) ok = false;
                }
                if (ok) return false;
            }
        }
    return true;
}

std::optional<Integer> c1c2_constant(const SieveProblem& prob, const DivisorPair& pair) {
    if (prob.nu < 2) return std::nullopt;
    Integer v = abs(pair.d1);
    for (int i = 0; i < prob.nu - 2; ++i) v *= 3;
    if (!mpz_divisible_ui_p(v.get_mpz_t(), 4)) return std::nullopt;
    return cube_free_kernel(Integer(v / 4));
}

std::string Sieve221Result::summary() const {
    std::string s = "D = " + problem.D.get_str() + " (tau " + std::to_string(problem.tau) + ", nu " +
                    std::to_string(problem.nu) + "): case (i) " + std::to_string(case_i.size()) + " pairs, case (ii) " +
                    std::to_string(case_ii.size()) + " pairs";
    for (const auto& e : eliminations)
        s += "; N = " + e.N.get_str() + " " + (e.eliminated() ? "eliminated" : "failed") + " over " +
             std::to_string(e.steps.size()) + " coprime pairs";
    for (const auto& k : local_kills) s += "; " + k;
    for (const auto& r : residuals) s += "; residual: " + r;
    return s;
}

Sieve221Result sieve_221(const Integer& D, const FactsDB& facts) {
    Sieve221Result res;
    res.problem = make_sieve_problem(D);
    res.case_i = case_i_pairs(D);
    res.case_ii = case_ii_pairs(D);
    auto local_kill = [&](const DivisorPair& pr, bool case_ii, const std::string& name) {
        for (unsigned m : {16u, 9u, 7u, 13u}) {
            if (quartic_locally_unsolvable(res.problem, pr, case_ii, m)) {
                res.local_kills.push_back(name + ": no solutions mod " + std::to_string(m));
                return true;
            }
        }
        return false;
    };
    for (const auto& pr : res.case_i) {
        const std::string name = "case (i) pair (d2,d1) = (" + pr.d2.get_str() + "," + pr.d1.get_str() + ")";
        if (!local_kill(pr, false, name)) res.residuals.push_back(name);
    }
    for (const auto& pr : res.case_ii) {
        const std::string name = "case (ii) pair (d2,d1) = (" + pr.d2.get_str() + "," + pr.d1.get_str() + ")";
        if (local_kill(pr, true, name)) continue;
        const auto reps = normalized_representations(pr.d2, res.problem.tau);
        if (reps.empty()) continue;  // d2 has no admissible representation
        if (std::any_of(reps.begin(), reps.end(), [](const auto& mn) { return mn.second != 0; })) {
            res.residuals.push_back(name + " with n != 0");
            continue;
        }
        const auto N = c1c2_constant(res.problem, pr);
        if (!N) {
            res.residuals.push_back(name + ": no c1 c2 reduction");
            continue;
        }
        auto elim = eliminate_c1c2(*N, facts, res.problem.tau != 2);
        if (!elim.eliminated()) res.residuals.push_back(name + ": " + *elim.failure);
        res.eliminations.push_back(std::move(elim));
    }
    return res;
}

}  // namespace sextic
