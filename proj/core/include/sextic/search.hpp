#pragma once

// Height-bounded search for rational points on Y^2 = X^6 + k.

#include "sextic/arith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sextic {

struct FoundPoint {
    Rational X;
    Rational Y;
    Integer height;

    bool operator==(const FoundPoint&) const = default;
};

// Orders by height, then X, then Y.
bool found_less(const FoundPoint& a, const FoundPoint& b);

std::string format_point_line(const Integer& k, const FoundPoint& pt);

Integer naive_height(const Rational& X);

bool verify_point(const Integer& k, const Rational& X, const Rational& Y);

// Quadratic residue filter on p^6 + k q^6 modulo 64, 63, 65 and 11.
class Presieve {
public:
    explicit Presieve(const Integer& k);

    // False only when p^6 + k q^6 is certainly not a square.
    bool maybe_square(std::uint64_t p, std::uint64_t q) const;

    static bool residue_ok(const Integer& value);

private:
    static constexpr unsigned kModuli[4] = {64, 63, 65, 11};
    std::uint64_t kmod_[4];
    std::uint64_t sixth_[4][65];
};

struct SearchOptions {
    unsigned threads = 1;
};

// All points with height(X) <= H, both signs of X and Y, sorted.
std::vector<FoundPoint> search_k(const Integer& k, std::uint64_t H, const SearchOptions& opts = {});

struct CensusRecord {
    Integer k;
    std::size_t count = 0;
    Integer max_height;
    std::vector<FoundPoint> points;

    bool operator==(const CensusRecord&) const = default;
};

struct CensusOptions {
    unsigned threads = 1;
    std::string ledger_path;  // empty: no persistence
};

// One record per k in [k_lo, k_hi] (k = 0 skipped). With a ledger, finished
// k values are appended as they complete and reused on the next run.
std::vector<CensusRecord> census(const Integer& k_lo, const Integer& k_hi, std::uint64_t H,
                                 const CensusOptions& opts = {});

std::string format_census_line(const CensusRecord& rec, std::uint64_t H);
std::optional<std::pair<CensusRecord, std::uint64_t>> parse_census_line(const std::string& line);

// The three orbits X in {1/a^2, a, a^4/2} on k = a^12/4 + 1, with Y computed
// exactly. Throws std::runtime_error if some X gives a non-square.
struct FamilyPoints {
    Integer k;
    std::vector<FoundPoint> points;  // X > 0, Y > 0 representatives
};
FamilyPoints verify_family(const Integer& a);

}  // namespace sextic
