#include "sextic/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace sextic {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::optional<Integer> is_square(const Integer& n) {
    if (sgn(n) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Integer> is_cube(const Integer& n) {
    Integer r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) == 0) return std::nullopt;
    return r;
}

std::optional<Rational> rational_root(const Rational& q, unsigned e) {
    if (e % 2 == 0 && sgn(q) < 0) return std::nullopt;
    Integer a, b;
    if (mpz_root(a.get_mpz_t(), q.get_num_mpz_t(), e) == 0) return std::nullopt;
    if (mpz_root(b.get_mpz_t(), q.get_den_mpz_t(), e) == 0) return std::nullopt;
    return make_rational(a, b);
}

std::optional<Rational> rational_sqrt(const Rational& q) { return rational_root(q, 2); }
std::optional<Rational> rational_cbrt(const Rational& q) { return rational_root(q, 3); }

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
    std::vector<std::pair<Integer, unsigned>> out;
    Integer m = abs(n);
    if (m <= 1) return out;
    auto strip = [&](const Integer& p) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    // 6j +- 1 wheel
    for (Integer p = 5; p * p <= m; p += 6) {
        strip(p);
        Integer q = p + 2;
        strip(q);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    // deterministic for everything in scope: trial division below 2^64,
    // GMP's test above that
    if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t p = 5; p * p <= n; p += 6)
        if (n % p == 0 || n % (p + 2) == 0) return false;
    return true;
}

bool sixth_power_free(const Integer& k) {
    if (k == 0) throw std::invalid_argument("sixth_power_free: k must be nonzero");
    for (const auto& [p, e] : factorize(k))
        if (e >= 6) return false;
    return true;
}

SixthPowerSplit sixth_power_split(const Integer& c) {
    if (c == 0) throw std::invalid_argument("sixth_power_split: zero");
    Integer kernel = sgn(c) < 0 ? -1 : 1;
    Integer t = 1;
    for (const auto& [p, e] : factorize(c)) {
        for (unsigned i = 0; i < e / 6; ++i) t *= p;
        for (unsigned i = 0; i < e % 6; ++i) kernel *= p;
    }
    return {kernel, t};
}

Integer cube_free_kernel(const Integer& n) {
    if (n == 0) throw std::invalid_argument("cube_free_kernel: zero");
    Integer kernel = sgn(n) < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(n))
        for (unsigned i = 0; i < e % 3; ++i) kernel *= p;
    return kernel;
}

std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<DivisorPair> divisor_pairs(const Integer& N, bool require_d2_positive) {
    if (N == 0) throw std::invalid_argument("divisor_pairs: N must be nonzero");
    std::vector<DivisorPair> out;
    const auto divs = positive_divisors(N);
    for (const auto& d2 : divs) {
        Integer d1 = N / d2;
        out.push_back({d1, d2, gcd(d1, d2)});
    }
    if (!require_d2_positive) {
        for (const auto& d2 : divs) {
            Integer d1 = N / -d2;
            out.push_back({d1, Integer(-d2), gcd(d1, d2)});
        }
    }
    return out;
}

int legendre_symbol(const Integer& a, const Integer& p) {
    if (p < 3 || !mpz_odd_p(p.get_mpz_t()) || !is_prime(p))
        throw std::invalid_argument("legendre_symbol: modulus must be an odd prime");
    return mpz_legendre(mod_floor(a, p).get_mpz_t(), p.get_mpz_t());
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Integer m = n;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::optional<std::uint64_t> rational_mod(const Rational& q, std::uint64_t p) {
    const std::uint64_t d = mod_u64(q.get_den(), p);
    if (d == 0) return std::nullopt;
    return mulmod(mod_u64(q.get_num(), p), invmod(d, p), p);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), Integer(static_cast<unsigned long>(a)).get_mpz_t(),
                    Integer(static_cast<unsigned long>(m)).get_mpz_t()))
        throw std::domain_error("invmod: not invertible");
    return r.get_ui();
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(std::string_view s) {
    std::string str(s);
    if (!str.empty() && str.front() == '+') str.erase(0, 1);
    const std::size_t digits_from = (!str.empty() && str.front() == '-') ? 1 : 0;
    if (str.size() == digits_from ||
        !std::all_of(str.begin() + digits_from, str.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return Integer(str, 10);
}

Rational parse_rational(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return make_rational(parse_integer(s.substr(0, slash)), den);
}

}  // namespace sextic
