#include "sextic/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sextic {

namespace bundled {
extern const std::string_view table_text;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::SolvedZeroRank: return "SolvedZeroRank";
        case Status::SolvedElementary: return "SolvedElementary";
        case Status::SolvedCongruence: return "SolvedCongruence";
        case Status::ReducedChabautyNeeded: return "ReducedChabautyNeeded";
        case Status::Unresolved: return "Unresolved";
    }
    return "?";
}

std::optional<Status> parse_status(std::string_view s) {
    for (Status st : {Status::SolvedZeroRank, Status::SolvedElementary, Status::SolvedCongruence,
                      Status::ReducedChabautyNeeded, Status::Unresolved})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

std::vector<DescentEquation> SolveReport::residuals() const {
    std::vector<DescentEquation> out;
    for (const auto& e : equations)
        if (e.residual()) out.push_back(e.eq);
    return out;
}

std::vector<FoundPoint> expand_orbits(const std::vector<std::pair<Rational, Rational>>& reps) {
    std::vector<FoundPoint> out;
    for (const auto& [X, Y] : reps)
        for (const Rational& x : {X, Rational(-X)})
            for (const Rational& y : {Y, Rational(-Y)}) out.push_back({x, y, naive_height(x)});
    std::sort(out.begin(), out.end(), found_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FoundPoint> zero_rank_points(const Integer& k, RankZeroSide side) {
    std::vector<std::pair<Rational, Rational>> reps;
    if (side == RankZeroSide::E1 || side == RankZeroSide::Both) {
        // (X, Y) -> (X^2, Y)
        for (const auto& T : torsion_points(MordellCurve(k))) {
            if (T.infinite) continue;
            if (auto X = rational_sqrt(T.x)) reps.emplace_back(*X, T.y);
        }
    } else {
        // (X, Y) -> (k/X^2, kY/X^3); X = 0 goes to infinity
        const auto split = sixth_power_split(Integer(k * k));
        for (const auto& T : torsion_points(MordellCurve(split.kernel))) {
            const CurvePoint P = scale_up(T, split.t);
            if (P.infinite) {
                if (auto Y = is_square(k)) reps.emplace_back(Rational(0), Rational(*Y));
                continue;
            }
            if (P.x == 0) continue;
            auto X = rational_sqrt(Rational(k) / P.x);
            if (X) reps.emplace_back(*X, P.y * *X * *X * *X / Rational(k));
        }
    }
    for (const auto& [X, Y] : reps)
        if (!verify_point(k, X, Y)) throw std::logic_error("zero_rank_points: pull-back off the curve");
    return expand_orbits(reps);
}

namespace {

bool contains(const std::vector<Integer>& v, const Integer& k) { return std::find(v.begin(), v.end(), k) != v.end(); }

EquationOutcome attack(const DescentEquation& eq, const SolveConfig& cfg) {
    const FactsDB& facts = *cfg.facts;
    EquationOutcome out{eq, std::nullopt, std::nullopt, std::nullopt};

    if ((out.elimination = eliminate_locally(eq))) return out;
    if ((out.elimination = eliminate_by_rank0(eq, facts))) return out;

    // D Y1^6 + Y2^6 = X^3 shape
    std::optional<Integer> D;
    if (eq.B == 1) D = eq.A;
    else if (eq.A == 1) D = eq.B;
    if (D && sixth_power_free(*D)) {
        auto res = sieve_221(*D, facts);
        if (res.eliminated()) {
            EliminationCertificate cert;
            cert.method = Method::Sieve221;
            cert.payload = res.summary();
            out.elimination = cert;
            out.sieve = std::move(res);
            return out;
        }
        out.sieve = std::move(res);
    }

    auto congruence = [&](CongruenceCertificate c) {
        EliminationCertificate cert;
        cert.method = Method::Congruence;
        cert.payload = c.summary();
        cert.curve_c = c.curve.c();
        out.elimination = cert;
        out.congruence = std::move(c);
    };

    if (cfg.prime_search) {
        if (auto c = search_certificate(eq, facts, cfg.max_prime)) {
            congruence(std::move(*c));
            return out;
        }
    }
    if (cover_model(eq, Cover::E1).reduced.c() == -375 && eq.type == EqType::II && eq.d1 == 5 && eq.d2 == 3) {
        try {
            congruence(certify_80_3(facts));
            return out;
        } catch (const std::exception&) {
        }
    }
    if (cfg.use_sieve) {
        for (Cover which : {Cover::E1, Cover::E2}) {
            const CurveFact* fact = facts.find(cover_model(eq, which).reduced.c());
            if (!fact || fact->rank == 0) continue;
            if (auto c = sieve_certificate(eq, *fact, which, cfg.sieve)) {
                congruence(std::move(*c));
                return out;
            }
        }
    }
    return out;
}

bool same_points(const std::vector<FoundPoint>& a, const std::vector<FoundPoint>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].X != b[i].X || a[i].Y != b[i].Y) return false;
    return true;
}

}  // namespace

SolveReport solve(const Integer& k, const SolveConfig& cfg) {
    if (k == 0) throw std::invalid_argument("solve: k must be nonzero");
    if (!sixth_power_free(k)) throw std::invalid_argument("solve: k must be sixth-power free");
    if (!cfg.facts) throw std::invalid_argument("solve: no facts database");

    SolveReport rep;
    rep.k = k;
    rep.search_points = search_k(k, cfg.height, {cfg.threads});

    rep.rank_zero = cfg.facts->rank_zero_component(k);
    if (rep.rank_zero) {
        rep.status = Status::SolvedZeroRank;
        rep.points = zero_rank_points(k, *rep.rank_zero);
        rep.notes.push_back("rank 0 on " + to_string(*rep.rank_zero));
    } else {
        for (const auto& eq : generate_S(k, &rep.dropped)) rep.equations.push_back(attack(eq, cfg));

        bool residual = false, congruence = false;
        std::vector<std::pair<Rational, Rational>> reps;
        for (const auto& e : rep.equations) {
            if (e.residual()) {
                residual = true;
                continue;
            }
            if (e.elimination->method == Method::Congruence) congruence = true;
            for (const auto& s : e.elimination->solutions)
                if (auto pt = point_from_solution(e.eq, s)) reps.emplace_back(abs(pt->X), pt->Y);
        }
        if (residual) {
            rep.status = contains(cfg.chabauty_ks, k) ? Status::ReducedChabautyNeeded : Status::Unresolved;
            rep.points = rep.search_points;
        } else {
            rep.status = congruence ? Status::SolvedCongruence : Status::SolvedElementary;
            rep.points = expand_orbits(reps);
        }
    }

    if (rep.status != Status::ReducedChabautyNeeded && rep.status != Status::Unresolved) {
        std::vector<FoundPoint> low;
        for (const auto& pt : rep.points)
            if (pt.height <= cfg.height) low.push_back(pt);
        if (!same_points(low, rep.search_points)) {
            rep.sound = false;
            rep.notes.push_back("search up to height " + std::to_string(cfg.height) +
                                " disagrees with the certified point set");
        }
    }
    return rep;
}

std::vector<SolveReport> solve_range(const Integer& lo, const Integer& hi, const SolveConfig& cfg) {
    std::vector<Integer> ks;
    for (Integer k = lo; k <= hi; ++k)
        if (k != 0 && sixth_power_free(k)) ks.push_back(k);
    std::vector<SolveReport> out(ks.size());
    const unsigned n = std::max(1u, cfg.threads);
    SolveConfig inner = cfg;
    inner.threads = 1;
    auto work = [&](unsigned tid) {
        for (std::size_t i = tid; i < ks.size(); i += n) out[i] = solve(ks[i], inner);
    };
    if (n == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    return out;
}

namespace {

nlohmann::ordered_json point_json(const FoundPoint& pt) {
    return {{"X", to_fraction_string(pt.X)}, {"Y", to_fraction_string(pt.Y)}, {"height", pt.height.get_str()}};
}

}  // namespace

std::string report_json(const SolveReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k.get_str();
    j["status"] = to_string(r.status);
    if (r.rank_zero) j["rank_zero"] = to_string(*r.rank_zero);
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& pt : r.points) j["points"].push_back(point_json(pt));
    j["equations"] = nlohmann::ordered_json::array();
    for (const auto& e : r.equations) {
        nlohmann::ordered_json ej;
        ej["label"] = e.eq.label();
        ej["equation"] = e.eq.to_string();
        if (e.elimination) {
            ej["method"] = to_string(e.elimination->method);
            ej["certificate"] = e.elimination->summary();
            if (!e.elimination->solutions.empty()) {
                ej["solutions"] = nlohmann::ordered_json::array();
                for (const auto& s : e.elimination->solutions)
                    ej["solutions"].push_back(nlohmann::ordered_json::array({s.x.get_str(), s.y1.get_str(), s.y2.get_str()}));
            }
        } else {
            ej["method"] = "residual";
        }
        j["equations"].push_back(ej);
    }
    j["dropped"] = nlohmann::ordered_json::array();
    for (const auto& d : r.dropped)
        j["dropped"].push_back(nlohmann::ordered_json{{"label", d.eq.label()}, {"modulus", d.modulus}});
    j["sound"] = r.sound;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j.dump();
}

std::string report_text(const SolveReport& r) {
    std::ostringstream out;
    out << "k = " << r.k << "\nstatus: " << to_string(r.status) << "\n";
    if (r.rank_zero) out << "rank 0 curve: " << to_string(*r.rank_zero) << "\n";
    out << "points:";
    if (r.points.empty()) out << " none";
    for (const auto& pt : r.points) out << " (" << pt.X << "," << pt.Y << ")";
    out << "\n";
    for (const auto& d : r.dropped) out << "  dropped " << d.eq.to_string() << "  [no solutions mod " << d.modulus << "]\n";
    for (const auto& e : r.equations) {
        out << "  " << e.eq.label() << "  " << e.eq.to_string() << "\n    ";
        if (e.elimination) out << to_string(e.elimination->method) << ": " << e.elimination->summary();
        else out << "residual";
        out << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    if (!r.sound) out << "WARNING: soundness check failed\n";
    return out.str();
}

ExpectedTable ExpectedTable::parse(std::string_view text, const std::string& origin) {
    ExpectedTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        std::string body = line.substr(0, hash);
        std::string source;
        if (auto q = body.find('"'); q != std::string::npos) {
            const auto q2 = body.find('"', q + 1);
            if (q2 == std::string::npos) throw FactsError(origin, lineno, "unterminated source string");
            source = body.substr(q + 1, q2 - q - 1);
            body = body.substr(0, q);
        }
        std::istringstream ls(body);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        try {
            if (tok.size() < 5 || tok[0] != "row" || tok[2] != "status" || tok[4] != "pts" || tok.back() != "source")
                throw std::invalid_argument("expected 'row <k> status <S> pts ... source \"...\"'");
            ExpectedRow row;
            row.k = parse_integer(tok[1]);
            auto st = parse_status(tok[3]);
            if (!st) throw std::invalid_argument("unknown status '" + tok[3] + "'");
            row.status = *st;
            for (std::size_t i = 5; i + 1 < tok.size(); ++i) {
                const auto comma = tok[i].find(',');
                if (comma == std::string::npos) throw std::invalid_argument("expected X,Y");
                row.points.emplace_back(parse_rational(tok[i].substr(0, comma)), parse_rational(tok[i].substr(comma + 1)));
            }
            row.source = source;
            for (const auto& [X, Y] : row.points)
                if (!verify_point(row.k, X, Y)) throw std::invalid_argument("point not on the curve");
            if (!t.rows_.emplace(row.k, row).second) throw std::invalid_argument("duplicate row");
        } catch (const std::invalid_argument& e) {
            throw FactsError(origin, lineno, e.what());
        }
    }
    return t;
}

ExpectedTable ExpectedTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FactsError(path, 0, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

ExpectedTable ExpectedTable::bundled() { return parse(bundled::table_text, "bundled"); }

const ExpectedRow* ExpectedTable::find(const Integer& k) const {
    auto it = rows_.find(k);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<Integer> ExpectedTable::with_status(Status s) const {
    std::vector<Integer> out;
    for (const auto& [k, row] : rows_)
        if (row.status == s) out.push_back(k);
    return out;
}

std::string ExpectedTable::serialize() const {
    std::string out;
    for (const auto& [k, row] : rows_) {
        out += "row " + k.get_str() + " status " + to_string(row.status) + " pts";
        for (const auto& [X, Y] : row.points) out += " " + to_fraction_string(X) + "," + to_fraction_string(Y);
        out += " source \"" + row.source + "\"\n";
    }
    return out;
}

TableComparison emit_table(const std::vector<SolveReport>& reports, const ExpectedTable& expected) {
    TableComparison cmp;
    std::ostringstream out;
    std::set<Integer> seen;
    for (const auto& r : reports) {
        seen.insert(r.k);
        std::vector<std::pair<Rational, Rational>> reps;
        for (const auto& pt : r.points)
            if (pt.X >= 0 && pt.Y >= 0) reps.emplace_back(pt.X, pt.Y);
        out << r.k.get_str() << "\t";
        if (reps.empty()) out << "-";
        for (std::size_t i = 0; i < reps.size(); ++i)
            out << (i ? ", " : "") << "(" << reps[i].first << "," << reps[i].second << ")";
        out << "\t" << to_string(r.status);

        const ExpectedRow* row = expected.find(r.k);
        if (!row) {
            cmp.mismatches.push_back("k = " + r.k.get_str() + ": no expected row");
            out << "\tMISSING\n";
            continue;
        }
        bool bad = false;
        if (!same_points(r.points, expand_orbits(row->points))) {
            ++cmp.point_mismatches;
            cmp.mismatches.push_back("k = " + r.k.get_str() + ": point set differs");
            bad = true;
        }
        if (r.status != row->status) {
            ++cmp.status_mismatches;
            cmp.mismatches.push_back("k = " + r.k.get_str() + ": status " + to_string(r.status) + ", expected " +
                                     to_string(row->status));
            bad = true;
        }
        if (!r.sound) {
            cmp.mismatches.push_back("k = " + r.k.get_str() + ": soundness check failed");
            bad = true;
        }
        out << (bad ? "\tMISMATCH\n" : "\tok\n");
    }
    cmp.rendered = out.str();
    return cmp;
}

}  // namespace sextic
