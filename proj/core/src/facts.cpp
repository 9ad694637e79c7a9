#include "sextic/facts.hpp"

#include <fstream>
#include <sstream>

namespace sextic {

namespace bundled {
extern const std::string_view facts_text;
}

FactsError::FactsError(std::string origin, std::size_t line, const std::string& what)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what), origin_(std::move(origin)), line_(line) {}

std::string to_string(RankZeroSide side) {
    switch (side) {
        case RankZeroSide::E1: return "E1";
        case RankZeroSide::E2: return "E2";
        case RankZeroSide::Both: return "both";
    }
    return "?";
}

std::string validate_fact(const CurveFact& fact) {
    if (fact.c == 0) return "curve constant is zero";
    if (fact.generators.size() != fact.rank)
        return "rank " + std::to_string(fact.rank) + " but " + std::to_string(fact.generators.size()) +
               " generators";
    const MordellCurve E(fact.c);
    for (const auto& P : fact.generators) {
        if (P.infinite || !on_curve(E, P)) return "generator " + to_string(P) + " is not on the curve";
        if (is_torsion(E, P)) return "generator " + to_string(P) + " is a torsion point";
    }
    return {};
}

namespace {

// Minimal tokenizer: whitespace separated words, double-quoted strings.
std::vector<std::string> tokenize(std::string_view line, bool& unterminated) {
    std::vector<std::string> out;
    unterminated = false;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        if (line[i] == '"') {
            const auto end = line.find('"', i + 1);
            if (end == std::string_view::npos) {
                unterminated = true;
                return out;
            }
            out.push_back("\"" + std::string(line.substr(i + 1, end - i - 1)));
            i = end + 1;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

CurvePoint parse_point(const std::string& tok) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected x,y in '" + tok + "'");
    return CurvePoint::affine(parse_rational(tok.substr(0, comma)), parse_rational(tok.substr(comma + 1)));
}

}  // namespace

FactsDB FactsDB::parse(std::string_view text, const std::string& origin) {
    FactsDB db;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;

        bool unterminated = false;
        const auto tok = tokenize(line, unterminated);
        if (unterminated) throw FactsError(origin, lineno, "unterminated source string");
        if (tok.empty()) continue;

        CurveFact fact;
        try {
            if (tok.size() < 4 || tok[0] != "curve" || tok[2] != "rank")
                throw std::invalid_argument("expected 'curve <c> rank <r>'");
            fact.c = parse_integer(tok[1]);
            const Integer r = parse_integer(tok[3]);
            if (r < 0 || r > 64) throw std::invalid_argument("rank out of range");
            fact.rank = static_cast<unsigned>(r.get_ui());
            std::size_t i = 4;
            if (i < tok.size() && tok[i] == "gen") {
                for (++i; i < tok.size() && tok[i] != "source"; ++i) fact.generators.push_back(parse_point(tok[i]));
            }
            if (i + 2 != tok.size() || tok[i] != "source" || tok[i + 1].front() != '"')
                throw std::invalid_argument("expected trailing source \"...\"");
            fact.source = tok[i + 1].substr(1);
        } catch (const std::invalid_argument& e) {
            throw FactsError(origin, lineno, e.what());
        }
        db.insert(std::move(fact), origin, lineno);
    }
    return db;
}

FactsDB FactsDB::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FactsError(path, 0, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

FactsDB FactsDB::bundled() { return parse(bundled::facts_text, "bundled"); }

void FactsDB::insert(CurveFact fact, const std::string& origin, std::size_t line) {
    if (facts_.count(fact.c)) throw FactsError(origin, line, "duplicate fact for curve " + fact.c.get_str());
    if (auto why = validate_fact(fact); !why.empty())
        throw FactsError(origin, line, "curve " + fact.c.get_str() + ": " + why);
    fact.verified = true;
    facts_.emplace(fact.c, std::move(fact));
}

void FactsDB::insert_unchecked(CurveFact fact) { facts_.insert_or_assign(fact.c, std::move(fact)); }

const CurveFact* FactsDB::find(const Integer& c) const {
    const CurveFact* f = find_any(c);
    return f && f->verified ? f : nullptr;
}

const CurveFact* FactsDB::find_any(const Integer& c) const {
    auto it = facts_.find(c);
    return it == facts_.end() ? nullptr : &it->second;
}

std::optional<unsigned> FactsDB::rank(const Integer& c) const {
    if (const auto* f = find(c)) return f->rank;
    return std::nullopt;
}

std::optional<RankZeroSide> FactsDB::rank_zero_component(const Integer& k) const {
    if (k == 0) return std::nullopt;
    const auto r1 = rank(sixth_power_split(k).kernel);
    const auto r2 = rank(sixth_power_split(Integer(k * k)).kernel);
    const bool z1 = r1 && *r1 == 0;
    const bool z2 = r2 && *r2 == 0;
    if (z1 && z2) return RankZeroSide::Both;
    if (z1) return RankZeroSide::E1;
    if (z2) return RankZeroSide::E2;
    return std::nullopt;
}

std::string FactsDB::serialize() const {
    std::string out;
    for (const auto& [c, f] : facts_) {
        out += "curve " + c.get_str() + " rank " + std::to_string(f.rank);
        if (!f.generators.empty()) {
            out += " gen";
            for (const auto& P : f.generators) out += " " + to_fraction_string(P.x) + "," + to_fraction_string(P.y);
        }
        out += " source \"" + f.source + "\"\n";
    }
    return out;
}

}  // namespace sextic
