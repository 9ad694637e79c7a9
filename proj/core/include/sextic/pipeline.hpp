#pragma once

// Per-k solving: rank-0 classification, descent, local and rank-0
// elimination, the D Y1^6 + Y2^6 = X^3 sieve, congruence certificates, and
// comparison against a reference table.

#include "sextic/congruence.hpp"
#include "sextic/descent.hpp"
#include "sextic/facts.hpp"
#include "sextic/search.hpp"
#include "sextic/sieve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sextic {

enum class Status { SolvedZeroRank, SolvedElementary, SolvedCongruence, ReducedChabautyNeeded, Unresolved };

std::string to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

struct SolveConfig {
    const FactsDB* facts = nullptr;
    std::uint64_t height = 200;
    bool prime_search = true;
    std::uint64_t max_prime = 100;
    bool use_sieve = true;
    SieveOptions sieve;
    // k values whose leftover equations are known to need elliptic Chabauty
    std::vector<Integer> chabauty_ks;
    unsigned threads = 1;
};

struct EquationOutcome {
    DescentEquation eq;
    std::optional<EliminationCertificate> elimination;
    std::optional<CongruenceCertificate> congruence;
    std::optional<Sieve221Result> sieve;

    bool residual() const { return !elimination.has_value(); }
};

struct SolveReport {
    Integer k;
    Status status = Status::Unresolved;
    std::optional<RankZeroSide> rank_zero;
    std::vector<FoundPoint> points;
    std::vector<FoundPoint> search_points;
    std::vector<EquationOutcome> equations;
    std::vector<DropRecord> dropped;
    bool sound = true;
    std::vector<std::string> notes;

    std::vector<DescentEquation> residuals() const;
};

// Sign orbit of each point, sorted and deduplicated.
std::vector<FoundPoint> expand_orbits(const std::vector<std::pair<Rational, Rational>>& reps);

// Points of C_k coming from torsion of the rank-0 curve(s).
std::vector<FoundPoint> zero_rank_points(const Integer& k, RankZeroSide side);

SolveReport solve(const Integer& k, const SolveConfig& cfg);

// Sixth-power-free nonzero k in [lo, hi], solved and sorted by k.
std::vector<SolveReport> solve_range(const Integer& lo, const Integer& hi, const SolveConfig& cfg);

std::string report_json(const SolveReport& r);
std::string report_text(const SolveReport& r);

struct ExpectedRow {
    Integer k;
    Status status = Status::Unresolved;
    std::vector<std::pair<Rational, Rational>> points;  // representatives, X >= 0, Y >= 0
    std::string source;

    bool operator==(const ExpectedRow&) const = default;
};

// Line format: row <k> status <Status> pts <xn/xd,yn/yd> ... source "<text>"
class ExpectedTable {
public:
    static ExpectedTable parse(std::string_view text, const std::string& origin = "<memory>");
    static ExpectedTable load(const std::string& path);
    static ExpectedTable bundled();

    const ExpectedRow* find(const Integer& k) const;
    const std::map<Integer, ExpectedRow>& rows() const { return rows_; }
    std::vector<Integer> with_status(Status s) const;
    std::string serialize() const;

private:
    std::map<Integer, ExpectedRow> rows_;
};

struct TableComparison {
    std::vector<std::string> mismatches;
    std::size_t point_mismatches = 0;
    std::size_t status_mismatches = 0;
    std::string rendered;

    bool ok() const { return mismatches.empty(); }
};

TableComparison emit_table(const std::vector<SolveReport>& reports, const ExpectedTable& expected);

}  // namespace sextic
