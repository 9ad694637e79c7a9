#include <sextic/pipeline.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <regex>
#include <thread>

using namespace sextic;

namespace {

struct Range {
    Integer lo, hi;
};

Integer parse_k(const std::string& s) {
    try {
        return parse_integer(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--k", "not an integer: " + s);
    }
}

Range parse_range(const std::string& s, const std::string& opt) {
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw CLI::ValidationError(opt, "expected lo..hi, got '" + s + "'");
    Range r{parse_integer(m[1].str()), parse_integer(m[2].str())};
    if (r.lo > r.hi) throw CLI::ValidationError(opt, "empty range " + s);
    return r;
}

FactsDB load_facts(const std::string& where) { return where == "bundled" ? FactsDB::bundled() : FactsDB::load(where); }

ExpectedTable load_table(const std::string& where) {
    return where == "bundled" ? ExpectedTable::bundled() : ExpectedTable::load(where);
}

void require_solvable_k(const Integer& k) {
    if (k == 0) throw CLI::ValidationError("--k", "k must be nonzero");
    if (!sixth_power_free(k)) throw CLI::ValidationError("--k", "k must be sixth-power free");
}

nlohmann::ordered_json point_json(const FoundPoint& pt) {
    return {{"X", to_fraction_string(pt.X)}, {"Y", to_fraction_string(pt.Y)}, {"height", pt.height.get_str()}};
}

// CLI11 reads "-25" as an option name; glue negative values to their flag.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
    static const std::regex negative(R"(^-\d.*)");
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc &&
            std::regex_match(argv[i + 1], negative)) {
            a += "=";
            a += argv[++i];
        }
        args.push_back(a);
    }
    std::reverse(args.begin(), args.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational points on Y^2 = X^6 + k"};
    app.require_subcommand(1);

    std::string facts_path = "bundled";
    std::string table_path = "bundled";
    std::uint64_t height = 200;
    unsigned threads = 1;
    bool json_lines = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--facts", facts_path, "Facts file, or 'bundled'");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
        sub->add_flag("--json-lines", json_lines, "One JSON record per line");
    };

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Determine the rational points for one k or a range");
    std::string solve_k, solve_range_s;
    bool no_sieve = false, no_prime_search = false;
    solve_cmd->add_option("--k", solve_k, "Value of k");
    solve_cmd->add_option("--k-range", solve_range_s, "Range lo..hi");
    solve_cmd->add_option("--height", height, "Search height attached to the report")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--table", table_path, "Reference table used to label Chabauty rows, or 'bundled'");
    solve_cmd->add_flag("--no-sieve", no_sieve, "Skip the multi-prime Mordell-Weil sieve");
    solve_cmd->add_flag("--no-prime-search", no_prime_search, "Skip single-prime congruence certificates");
    common(solve_cmd);

    // search
    auto* search_cmd = app.add_subcommand("search", "List points of height at most H");
    std::string search_k_s;
    search_cmd->add_option("--k", search_k_s, "Value of k")->required();
    search_cmd->add_option("--height", height, "Height bound")->check(CLI::PositiveNumber);
    common(search_cmd);

    // census
    auto* census_cmd = app.add_subcommand("census", "Point counts over a range of k");
    std::string census_range_s, resume_path;
    census_cmd->add_option("--k-range", census_range_s, "Range lo..hi")->required();
    census_cmd->add_option("--height", height, "Height bound")->check(CLI::PositiveNumber);
    census_cmd->add_option("--resume", resume_path, "Ledger file; finished k are reused and new ones appended");
    common(census_cmd);

    // table
    auto* table_cmd = app.add_subcommand("table", "Solve a range and compare with the reference table");
    std::string table_range_s = "-50..50";
    table_cmd->add_option("--range", table_range_s, "Range lo..hi");
    table_cmd->add_option("--expected", table_path, "Reference table, or 'bundled'");
    table_cmd->add_option("--height", height, "Search height")->check(CLI::PositiveNumber);
    common(table_cmd);

    // verify-facts
    auto* verify_cmd = app.add_subcommand("verify-facts", "Load and validate a facts file");
    std::string verify_path = "bundled";
    verify_cmd->add_option("path", verify_path, "Facts file, or 'bundled'");

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "Show and recheck the certificate for each descent equation");
    std::string certify_k, certify_eq;
    std::uint64_t certify_prime = 0;
    certify_cmd->add_option("--k", certify_k, "Value of k")->required();
    certify_cmd->add_option("--equation", certify_eq, "Only this equation, e.g. I(5,5)");
    certify_cmd->add_option("--prime", certify_prime, "Run the single-prime test at this prime instead");
    certify_cmd->add_option("--facts", facts_path, "Facts file, or 'bundled'");

    try {
        app.parse(glue_negative_values(argc, argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*solve_cmd) {
            if (solve_k.empty() == solve_range_s.empty())
                throw CLI::ValidationError("solve", "give exactly one of --k and --k-range");
            const FactsDB facts = load_facts(facts_path);
            const ExpectedTable table = load_table(table_path);
            SolveConfig cfg;
            cfg.facts = &facts;
            cfg.height = height;
            cfg.use_sieve = !no_sieve;
            cfg.prime_search = !no_prime_search;
            cfg.chabauty_ks = table.with_status(Status::ReducedChabautyNeeded);
            cfg.threads = threads;
            std::vector<SolveReport> reports;
            if (!solve_k.empty()) {
                const Integer k = parse_k(solve_k);
                require_solvable_k(k);
                reports.push_back(solve(k, cfg));
            } else {
                const Range r = parse_range(solve_range_s, "--k-range");
                reports = solve_range(r.lo, r.hi, cfg);
            }
            bool sound = true;
            for (const auto& rep : reports) {
                std::cout << (json_lines ? report_json(rep) + "\n" : report_text(rep));
                sound = sound && rep.sound;
            }
            return sound ? 0 : 1;
        }

        if (*search_cmd) {
            const Integer k = parse_k(search_k_s);
            if (k == 0) throw CLI::ValidationError("--k", "k must be nonzero");
            for (const auto& pt : search_k(k, height, {threads})) {
                if (json_lines) {
                    auto j = point_json(pt);
                    j["k"] = k.get_str();
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << format_point_line(k, pt) << "\n";
                }
            }
            return 0;
        }

        if (*census_cmd) {
            const Range r = parse_range(census_range_s, "--k-range");
            for (const auto& rec : census(r.lo, r.hi, height, {threads, resume_path})) {
                if (json_lines) {
                    nlohmann::ordered_json j;
                    j["k"] = rec.k.get_str();
                    j["height"] = height;
                    j["count"] = rec.count;
                    j["max_height"] = rec.max_height.get_str();
                    j["points"] = nlohmann::ordered_json::array();
                    for (const auto& pt : rec.points) j["points"].push_back(point_json(pt));
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << format_census_line(rec, height) << "\n";
                }
            }
            return 0;
        }

        if (*table_cmd) {
            const Range r = parse_range(table_range_s, "--range");
            const FactsDB facts = load_facts(facts_path);
            const ExpectedTable expected = load_table(table_path);
            SolveConfig cfg;
            cfg.facts = &facts;
            cfg.height = height;
            cfg.chabauty_ks = expected.with_status(Status::ReducedChabautyNeeded);
            cfg.threads = threads;
            const auto reports = solve_range(r.lo, r.hi, cfg);
            const TableComparison cmp = emit_table(reports, expected);
            if (json_lines) {
                for (const auto& rep : reports) std::cout << report_json(rep) << "\n";
                nlohmann::ordered_json summary;
                summary["rows"] = reports.size();
                summary["point_mismatches"] = cmp.point_mismatches;
                summary["status_mismatches"] = cmp.status_mismatches;
                summary["mismatches"] = cmp.mismatches;
                std::cout << summary.dump() << "\n";
            } else {
                std::cout << cmp.rendered;
                for (const auto& m : cmp.mismatches) std::cout << "mismatch: " << m << "\n";
                std::cout << reports.size() << " rows, " << cmp.point_mismatches << " point mismatches, "
                          << cmp.status_mismatches << " status mismatches\n";
            }
            return cmp.ok() ? 0 : 1;
        }

        if (*verify_cmd) {
            const FactsDB facts = load_facts(verify_path);
            std::size_t positive = 0;
            for (const auto& [c, f] : facts.entries()) positive += f.rank > 0;
            std::cout << facts.size() << " facts verified (" << positive << " of positive rank)\n";
            return 0;
        }

        if (*certify_cmd) {
            const Integer k = parse_k(certify_k);
            require_solvable_k(k);
            const FactsDB facts = load_facts(facts_path);
            bool all_ok = true, matched = false;
            for (const auto& eq : generate_S(k)) {
                if (!certify_eq.empty() && eq.label() != certify_eq) continue;
                matched = true;
                if (certify_prime) {
                    std::cout << eq.label() << "  " << eq.to_string() << "\n";
                    bool found = false;
                    for (Cover which : {Cover::E1, Cover::E2}) {
                        const CurveFact* fact = facts.find(cover_model(eq, which).reduced.c());
                        if (!fact || fact->rank == 0) continue;
                        if (auto c = certify_impossible(eq, *fact, certify_prime)) {
                            std::cout << "  " << c->summary() << "\n";
                            found = true;
                            break;
                        }
                    }
                    if (!found) std::cout << "  no certificate at p = " << certify_prime << "\n";
                    all_ok = all_ok && found;
                    continue;
                }
            }
            if (!certify_prime) {
                SolveConfig cfg;
                cfg.facts = &facts;
                const SolveReport rep = solve(k, cfg);
                for (const auto& e : rep.equations) {
                    if (!certify_eq.empty() && e.eq.label() != certify_eq) continue;
                    std::cout << e.eq.label() << "  " << e.eq.to_string() << "\n";
                    if (!e.elimination) {
                        std::cout << "  no certificate\n";
                        all_ok = false;
                        continue;
                    }
                    const EliminationCertificate& cert = *e.elimination;
                    std::cout << "  " << cert.summary();
                    if (cert.method != Method::Congruence && cert.method != Method::Sieve221) {
                        const bool ok = recheck(e.eq, cert, facts);
                        std::cout << (ok ? "  [rechecked]" : "  [RECHECK FAILED]");
                        all_ok = all_ok && ok;
                    }
                    std::cout << "\n";
                }
                if (rep.rank_zero) std::cout << "rank 0 on " << to_string(*rep.rank_zero) << "; no descent needed\n";
            }
            if (!matched) throw CLI::ValidationError("--equation", "no equation " + certify_eq + " in S(" + k.get_str() + ")");
            return all_ok ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
