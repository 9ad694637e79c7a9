#pragma once

// Externally sourced rank and generator data for Mordell curves.
//
// File format, one fact per line ('#' starts a comment):
//   curve <c> rank <r> gen <xn/xd,yn/yd> ... source "<text>"

#include "sextic/mordell.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sextic {

struct CurveFact {
    Integer c;
    unsigned rank = 0;
    std::vector<CurvePoint> generators;
    std::string source;
    bool verified = false;

    bool operator==(const CurveFact&) const = default;
};

class FactsError : public std::runtime_error {
public:
    FactsError(std::string origin, std::size_t line, const std::string& what);

    const std::string& origin() const { return origin_; }
    std::size_t line() const { return line_; }

private:
    std::string origin_;
    std::size_t line_;
};

enum class RankZeroSide { E1, E2, Both };

std::string to_string(RankZeroSide side);

// Checks generators: on the curve, of infinite order, count equals rank.
// Returns an empty string on success, otherwise the reason.
std::string validate_fact(const CurveFact& fact);

class FactsDB {
public:
    static FactsDB load(const std::string& path);
    static FactsDB parse(std::string_view text, const std::string& origin = "<memory>");
    static FactsDB bundled();

    // Adds a fact after validation; throws FactsError on failure.
    void insert(CurveFact fact, const std::string& origin = "<memory>", std::size_t line = 0);
    // Stores a fact as is, verified flag untouched. For tests and tooling.
    void insert_unchecked(CurveFact fact);

    // Verified facts only.
    const CurveFact* find(const Integer& c) const;
    // Any fact, verified or not.
    const CurveFact* find_any(const Integer& c) const;

    std::optional<unsigned> rank(const Integer& c) const;

    // Which of y^2 = x^3 + k, y^2 = x^3 + k^2 has rank 0 according to the
    // stored facts; nullopt when neither does or data is missing.
    std::optional<RankZeroSide> rank_zero_component(const Integer& k) const;

    std::string serialize() const;

    std::size_t size() const { return facts_.size(); }
    const std::map<Integer, CurveFact>& entries() const { return facts_; }

    bool operator==(const FactsDB&) const = default;

private:
    std::map<Integer, CurveFact> facts_;
};

}  // namespace sextic
