#include "sextic/search.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sextic {

bool found_less(const FoundPoint& a, const FoundPoint& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.X != b.X) return a.X < b.X;
    return a.Y < b.Y;
}

std::string format_point_line(const Integer& k, const FoundPoint& pt) {
    return k.get_str() + " " + to_fraction_string(pt.X) + " " + to_fraction_string(pt.Y) + " " + pt.height.get_str();
}

Integer naive_height(const Rational& X) {
    const Integer n = abs(X.get_num());
    return n > X.get_den() ? n : Integer(X.get_den());
}

bool verify_point(const Integer& k, const Rational& X, const Rational& Y) {
    const Rational X2 = X * X;
    return Y * Y == X2 * X2 * X2 + Rational(k);
}

namespace {

struct SquareTables {
    bool sq[4][65] = {};
    SquareTables() {
        const unsigned mods[4] = {64, 63, 65, 11};
        for (int i = 0; i < 4; ++i)
            for (unsigned r = 0; r < mods[i]; ++r) sq[i][r * r % mods[i]] = true;
    }
};

const SquareTables& square_tables() {
    static const SquareTables t;
    return t;
}

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t isqrt_u128(u128 v) {
    if (v == 0) return 0;
    int bits = 0;
    for (u128 t = v; t; t >>= 1) ++bits;
    u128 x = u128(1) << ((bits + 1) / 2);
    while (true) {
        u128 y = (x + v / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return static_cast<std::uint64_t>(x);
}

Integer to_integer(u128 v) {
    Integer hi(static_cast<unsigned long>(v >> 64));
    Integer lo(static_cast<unsigned long>(v & ~std::uint64_t(0)));
    return (hi << 64) + lo;
}

void emit(std::vector<FoundPoint>& out, std::uint64_t p, std::uint64_t q, const Integer& root) {
    const Integer qi(static_cast<unsigned long>(q));
    const Integer pi(static_cast<unsigned long>(p));
    const Rational X = make_rational(pi, qi);
    const Rational Y = make_rational(root, Integer(qi * qi * qi));
    const Integer h(static_cast<unsigned long>(std::max(p, q)));
    for (int sx : {1, -1}) {
        if (sx < 0 && p == 0) continue;
        for (int sy : {1, -1}) {
            if (sy < 0 && root == 0) continue;
            out.push_back({sx > 0 ? X : Rational(-X), sy > 0 ? Y : Rational(-Y), h});
        }
    }
}

}  // namespace

Presieve::Presieve(const Integer& k) {
    for (int i = 0; i < 4; ++i) {
        const unsigned m = kModuli[i];
        kmod_[i] = mod_u64(k, m);
        for (unsigned r = 0; r < m; ++r) sixth_[i][r] = powmod(r, 6, m);
    }
}

bool Presieve::maybe_square(std::uint64_t p, std::uint64_t q) const {
    const auto& sq = square_tables().sq;
    for (int i = 0; i < 4; ++i) {
        const unsigned m = kModuli[i];
        if (!sq[i][(sixth_[i][p % m] + kmod_[i] * sixth_[i][q % m]) % m]) return false;
    }
    return true;
}

bool Presieve::residue_ok(const Integer& value) {
    const auto& sq = square_tables().sq;
    for (int i = 0; i < 4; ++i)
        if (!sq[i][mod_u64(value, kModuli[i])]) return false;
    return true;
}

std::vector<FoundPoint> search_k(const Integer& k, std::uint64_t H, const SearchOptions& opts) {
    if (k == 0) throw std::invalid_argument("search_k: k must be nonzero");
    if (H < 1) throw std::invalid_argument("search_k: height must be at least 1");
    const Presieve sieve(k);
    // p^6 + k q^6 stays below 2^127 for these bounds
    const bool fast = H <= 20000 && abs(k) < (Integer(1) << 40);
    const long long ks = fast ? k.get_si() : 0;

    std::vector<u128> sixth;
    if (fast) {
        sixth.resize(H + 1);
        for (std::uint64_t p = 0; p <= H; ++p) {
            u128 s = p;
            sixth[p] = s * s * s * s * s * s;
        }
    }

    const unsigned nthreads = std::max(1u, opts.threads);
    std::vector<std::vector<FoundPoint>> parts(nthreads);
    auto work = [&](unsigned tid) {
        auto& out = parts[tid];
        for (std::uint64_t q = 1 + tid; q <= H; q += nthreads) {
            for (std::uint64_t p = q == 1 ? 0 : 1; p <= H; ++p) {
                if (!sieve.maybe_square(p, q)) continue;
                if (std::gcd(p, q) != 1) continue;
                if (fast) {
                    const i128 v = static_cast<i128>(sixth[p]) + static_cast<i128>(ks) * static_cast<i128>(sixth[q]);
                    if (v < 0) continue;
                    const std::uint64_t r = isqrt_u128(static_cast<u128>(v));
                    if (static_cast<u128>(r) * r != static_cast<u128>(v)) continue;
                    emit(out, p, q, to_integer(r));
                } else {
                    Integer pp(static_cast<unsigned long>(p)), qq(static_cast<unsigned long>(q));
                    Integer p6, q6;
                    mpz_pow_ui(p6.get_mpz_t(), pp.get_mpz_t(), 6);
                    mpz_pow_ui(q6.get_mpz_t(), qq.get_mpz_t(), 6);
                    if (auto r = is_square(Integer(p6 + k * q6))) emit(out, p, q, *r);
                }
            }
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::vector<FoundPoint> all;
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end(), found_less);
    return all;
}

std::string format_census_line(const CensusRecord& rec, std::uint64_t H) {
    std::string s = "k " + rec.k.get_str() + " height " + std::to_string(H) + " count " + std::to_string(rec.count) +
                    " maxh " + rec.max_height.get_str() + " points";
    for (const auto& pt : rec.points) s += " " + to_fraction_string(pt.X) + "," + to_fraction_string(pt.Y);
    return s;
}

std::optional<std::pair<CensusRecord, std::uint64_t>> parse_census_line(const std::string& line) {
    std::istringstream in(line);
    std::string kw_k, kw_h, kw_c, kw_m, kw_p, k, h, c, m;
    if (!(in >> kw_k >> k >> kw_h >> h >> kw_c >> c >> kw_m >> m >> kw_p)) return std::nullopt;
    if (kw_k != "k" || kw_h != "height" || kw_c != "count" || kw_m != "maxh" || kw_p != "points") return std::nullopt;
    try {
        CensusRecord rec;
        rec.k = parse_integer(k);
        rec.count = std::stoull(c);
        rec.max_height = parse_integer(m);
        std::string tok;
        while (in >> tok) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos) return std::nullopt;
            const Rational X = parse_rational(tok.substr(0, comma));
            rec.points.push_back({X, parse_rational(tok.substr(comma + 1)), naive_height(X)});
        }
        if (rec.points.size() != rec.count) return std::nullopt;
        return std::make_pair(rec, static_cast<std::uint64_t>(std::stoull(h)));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<CensusRecord> census(const Integer& k_lo, const Integer& k_hi, std::uint64_t H,
                                 const CensusOptions& opts) {
    std::vector<CensusRecord> out;
    if (k_lo > k_hi) return out;

    std::map<Integer, CensusRecord> done;
    if (!opts.ledger_path.empty()) {
        std::ifstream in(opts.ledger_path);
        std::string line;
        while (std::getline(in, line)) {
            // a truncated last line from an interrupted run simply fails to parse
            if (auto rec = parse_census_line(line); rec && rec->second == H) done[rec->first.k] = rec->first;
        }
    }
    std::ofstream ledger;
    if (!opts.ledger_path.empty()) {
        bool needs_newline = false;
        if (std::ifstream tail(opts.ledger_path, std::ios::ate | std::ios::binary); tail && tail.tellg() > 0) {
            tail.seekg(-1, std::ios::end);
            needs_newline = tail.get() != '\n';
        }
        ledger.open(opts.ledger_path, std::ios::app);
        if (needs_newline) ledger << '\n';
    }

    for (Integer k = k_lo; k <= k_hi; ++k) {
        if (k == 0) continue;
        if (auto it = done.find(k); it != done.end()) {
            out.push_back(it->second);
            continue;
        }
        CensusRecord rec;
        rec.k = k;
        rec.points = search_k(k, H, {opts.threads});
        rec.count = rec.points.size();
        rec.max_height = 0;
        for (const auto& pt : rec.points) if (pt.height > rec.max_height) rec.max_height = pt.height;
        if (ledger.is_open()) ledger << format_census_line(rec, H) << std::endl;
        out.push_back(std::move(rec));
    }
    return out;
}

FamilyPoints verify_family(const Integer& a) {
    if (a < 2 || mpz_odd_p(a.get_mpz_t())) throw std::invalid_argument("verify_family: a must be even and >= 2");
    Integer a12;
    mpz_pow_ui(a12.get_mpz_t(), a.get_mpz_t(), 12);
    FamilyPoints fam{a12 / 4 + 1, {}};
    const Rational candidates[] = {make_rational(1, Integer(a * a)), Rational(a),
                                   Rational(Integer(a * a * a * a / 2))};
    for (const auto& X : candidates) {
        const Rational X2 = X * X;
        auto Y = rational_sqrt(X2 * X2 * X2 + Rational(fam.k));
        if (!Y) throw std::runtime_error("verify_family: X = " + X.get_str() + " gives no rational Y");
        fam.points.push_back({X, *Y, naive_height(X)});
    }
    return fam;
}

}  // namespace sextic
