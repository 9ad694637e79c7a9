#pragma once

// Arbitrary precision integers and rationals, backed by GMP, plus the small
// number-theoretic predicates the rest of the library needs.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sextic {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer& num, const Integer& den);

std::optional<Integer> is_square(const Integer& n);
std::optional<Integer> is_cube(const Integer& n);

// Root of a rational square or cube, if it is one.
std::optional<Rational> rational_sqrt(const Rational& q);
std::optional<Rational> rational_cbrt(const Rational& q);
std::optional<Rational> rational_root(const Rational& q, unsigned e);

// Throws std::invalid_argument for k = 0.
bool sixth_power_free(const Integer& k);

// Splits c = s * t^6 with s sixth-power free and t > 0.
struct SixthPowerSplit {
    Integer kernel;
    Integer t;
};
SixthPowerSplit sixth_power_split(const Integer& c);

// Smallest |m| with n = m * (cube) and sign carried by m.
Integer cube_free_kernel(const Integer& n);

struct DivisorPair {
    Integer d1;
    Integer d2;
    Integer delta;  // gcd(d1, d2)

    bool operator==(const DivisorPair&) const = default;
};

// Ordered pairs with d1 * d2 = N, sorted by ascending d2. With
// require_d2_positive false the negative d2 pairs follow the positive ones.
std::vector<DivisorPair> divisor_pairs(const Integer& N, bool require_d2_positive = true);

std::vector<Integer> positive_divisors(const Integer& n);

// Prime factorization of |n| by trial division, primes ascending.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

int legendre_symbol(const Integer& a, const Integer& p);

// Exponent of p in n (n != 0).
unsigned valuation(const Integer& n, const Integer& p);

Integer mod_floor(const Integer& a, const Integer& m);
std::uint64_t mod_u64(const Integer& a, std::uint64_t m);

// Residue of a rational modulo p; nullopt when p divides the denominator.
std::optional<std::uint64_t> rational_mod(const Rational& q, std::uint64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

std::string to_string(const Integer& n);
// Always "num/den", den included even when 1.
std::string to_fraction_string(const Rational& q);

// Accepts "n" or "n/d" with optional sign; throws std::invalid_argument.
Integer parse_integer(std::string_view s);
Rational parse_rational(std::string_view s);

}  // namespace sextic
