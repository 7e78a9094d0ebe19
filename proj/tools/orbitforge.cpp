// orbitforge: periodic-orbit counts of interval maps.
//
// Subcommands:
//   table   orbit-count table (selectors 1..n-max plus the psi column)
//   count   orbit counts for one selector
//   lucas   fixed-point counts of the period-3 map's iterates
//   verify  cross-path verification suites (exit 1 on any failure)
//   oracle  exact geometric counts from the piecewise-linear oracle
//   lambda  growth constant lambda_n with exact bracket
//   order   Sharkovskii-order query
//   bound   sharp orbit-count lower bound for a forced period
//   scan    relation scans between the count families
//
// Exit codes: 0 success, 1 verification/hypothesis/resource failure,
// 2 usage error. ORBITFORGE_PIECE_CAP overrides the oracle piece budget.

#include "orbitforge/io.hpp"
#include "orbitforge/orbits.hpp"
#include "orbitforge/plmap.hpp"
#include "orbitforge/sharkovskii.hpp"
#include "orbitforge/spectral.hpp"
#include "orbitforge/symbolic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace orbitforge;

std::size_t piece_cap_from_env() {
    if (const char* s = std::getenv("ORBITFORGE_PIECE_CAP")) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(s, &pos);
            if (pos != std::string(s).size() || v == 0) throw std::invalid_argument(s);
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("ORBITFORGE_PIECE_CAP", "must be a positive integer");
        }
    }
    return kDefaultPieceCap;
}

PLMap select_map(const std::string& name, long n, const std::string& map_json_path) {
    if (!map_json_path.empty()) {
        std::ifstream in(map_json_path);
        if (!in) throw CLI::ValidationError("--map-json", "cannot open " + map_json_path);
        json j;
        in >> j;
        return plmap_from_json(j);
    }
    if (name == "thm1") return make_period3_map();
    if (name == "fn") return make_odd_period_map(n);
    throw CLI::ValidationError("--map", "unknown map '" + name + "'");
}

// ---------------------------------------------------------------------------

struct TableOptions {
    long n_max = 5;
    long m_max = 31;
    std::string format = "text";
};

int run_table(const TableOptions& o) {
    const OrbitTable t = build_table(o.n_max, o.m_max);
    if (o.format == "csv") {
        std::cout << table_to_csv(t);
    } else if (o.format == "json") {
        std::cout << table_to_json(t).dump(2) << '\n';
    } else {
        std::vector<std::vector<std::string>> cells;
        std::vector<std::string> header{"m"};
        for (long n = 1; n <= t.n_max; ++n) header.push_back("phi" + std::to_string(n));
        header.push_back("psi");
        cells.push_back(header);
        for (const auto& row : t.rows) {
            std::vector<std::string> line{std::to_string(row.m)};
            for (const auto& v : row.phi) line.push_back(to_string(v));
            line.push_back(to_string(row.psi));
            cells.push_back(std::move(line));
        }
        std::vector<std::size_t> width(cells[0].size(), 0);
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
        }
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
            }
            std::cout << '\n';
        }
    }
    return 0;
}

struct CountOptions {
    long n = 1;
    long m_max = 31;
    std::string format = "text";
};

int run_count(const CountOptions& o) {
    CountFunction phi = (o.n == 1) ? lucas_count_function() : family_count_function(o.n, o.m_max);
    json rows = json::array();
    for (long m = 1; m <= o.m_max; ++m) {
        BigInt orbits = detail::orbits_from_phi(m, phi);
        if (o.format == "json") {
            rows.push_back(json{{"m", m}, {"orbits", detail::bigint_to_json(orbits)}});
        } else if (o.format == "csv") {
            std::cout << m << ',' << to_string(orbits) << '\n';
        } else {
            std::cout << m << '\t' << to_string(orbits) << '\n';
        }
    }
    if (o.format == "json") {
        std::cout << json{{"n", o.n}, {"rows", rows}}.dump(2) << '\n';
    }
    return 0;
}

struct LucasOptions {
    long k_max = 18;
    std::string format = "text";
};

int run_lucas(const LucasOptions& o) {
    const auto seq = lucas_sequence(o.k_max);
    json arr = json::array();
    for (long k = 1; k <= o.k_max; ++k) {
        const BigInt& v = seq[static_cast<std::size_t>(k - 1)];
        if (o.format == "json") {
            arr.push_back(detail::bigint_to_json(v));
        } else if (o.format == "csv") {
            std::cout << k << ',' << to_string(v) << '\n';
        } else {
            std::cout << k << '\t' << to_string(v) << '\n';
        }
    }
    if (o.format == "json") std::cout << json{{"values", arr}}.dump(2) << '\n';
    return 0;
}

struct OracleOptions {
    std::string map = "thm1";
    std::string map_json;
    long n = 2;
    long k_max = 8;
    bool orbits = false;
    std::string format = "text";
};

int run_oracle(const OracleOptions& o) {
    const std::size_t cap = piece_cap_from_env();
    const PLMap map = select_map(o.map, o.n, o.map_json);
    json rows = json::array();
    for (long k = 1; k <= o.k_max; ++k) {
        BigInt fixed = count_periodic_points(map, k, cap);
        std::optional<BigInt> orb;
        if (o.orbits) orb = count_minimal_period_orbits(map, k, cap);
        if (o.format == "json") {
            json row{{"k", k}, {"fixed_points", detail::bigint_to_json(fixed)}};
            if (orb) row["orbits"] = detail::bigint_to_json(*orb);
            rows.push_back(std::move(row));
        } else {
            const char sep = (o.format == "csv") ? ',' : '\t';
            std::cout << k << sep << to_string(fixed);
            if (orb) std::cout << sep << to_string(*orb);
            std::cout << '\n';
        }
    }
    if (o.format == "json") std::cout << json{{"rows", rows}}.dump(2) << '\n';
    return 0;
}

struct LambdaOptions {
    long n = 1;
    double tol = 1e-12;
};

int run_lambda(const LambdaOptions& o) {
    const RootApprox r = dominant_root(o.n, o.tol);
    json j{{"n", o.n},
           {"lambda", r.value},
           {"tol", o.tol},
           {"radius", r.radius},
           {"bracket", {to_string(r.bracket_lo), to_string(r.bracket_hi)}}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_order(long s, long t) {
    std::cout << (precedes(s, t) ? "true" : "false") << '\n';
    return 0;
}

int run_bound(long s, long t) {
    try {
        const SharpBound b = sharp_orbit_bound(s, t);
        std::cout << to_string(b.orbits) << ' '
                  << (b.status == BoundStatus::formula ? "formula" : "formula-inapplicable") << '\n';
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bound: " << e.what() << '\n';
        return 1;
    }
}

struct ScanOptions {
    long n_max = 5;
    long m_max = 63;
};

int run_scan(const ScanOptions& o) {
    const auto entries = scan_orbit_relations(o.n_max, o.m_max);
    json arr = json::array();
    bool verified_ok = true;
    for (const auto& e : entries) {
        arr.push_back(scan_entry_to_json(e));
        if (e.verified_range && !e.holds) verified_ok = false;
    }
    std::cout << json{{"n_max", o.n_max}, {"m_max", o.m_max}, {"checks", arr}}.dump(2) << '\n';
    return verified_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string suite = "all";
    std::string map = "thm1";
    long n = 2;
    long k_max = 0;  // 0: per-suite default
    long m_max = 0;
};

json check_result(const std::string& name, bool pass, const std::string& detail = "") {
    json j{{"check", name}, {"pass", pass}};
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

void verify_properties(long n, long k_max, json& checks, bool& all_pass) {
    for (const auto& p : check_recursion_properties(n, k_max)) {
        if (!p.pass) all_pass = false;
        json j = property_check_to_json(p);
        j["check"] = "properties/" + p.property + "/n=" + std::to_string(n);
        checks.push_back(std::move(j));
    }
}

void verify_oracle(const std::string& map_name, long n, long k_max, json& checks, bool& all_pass) {
    const std::size_t cap = piece_cap_from_env();
    const PLMap map = select_map(map_name, n, "");
    std::vector<BigInt> expected;
    if (map_name == "thm1") {
        expected = lucas_sequence(k_max);
    } else {
        expected = fixed_point_counts(n, k_max);
    }
    bool pass = true;
    std::string detail;
    for (long k = 1; k <= k_max; ++k) {
        BigInt got = count_periodic_points(map, k, cap);
        if (got != expected[static_cast<std::size_t>(k - 1)]) {
            pass = false;
            detail = "k=" + std::to_string(k) + ": oracle " + to_string(got) + " != expected " +
                     to_string(expected[static_cast<std::size_t>(k - 1)]);
            break;
        }
    }
    if (!pass) all_pass = false;
    checks.push_back(check_result("oracle/" + map_name + (map_name == "fn" ? "/n=" + std::to_string(n) : "") +
                                      "/k<=" + std::to_string(k_max),
                                  pass, detail));
}

void verify_symbolic(const std::string& map_name, long n, long k_max, json& checks, bool& all_pass) {
    const PLMap map = select_map(map_name, n, "");
    const auto got = symbolic_crossing_sequence(map, k_max);
    std::vector<BigInt> expected;
    if (map_name == "thm1") {
        expected = lucas_sequence(k_max);
    } else {
        expected = fixed_point_counts(n, k_max);
    }
    bool pass = got == expected;
    std::string detail;

    if (map_name == "fn" && pass) {
        // Full located-count identification against the direct index recursion.
        const SubstitutionRules rules = derive_rules(map);
        auto type_of = [&](long j) {
            long lo, hi;
            if (j == n) {
                lo = n;
                hi = n + 2;
            } else if (j == n + 1) {
                lo = n + 1;
                hi = 2 * n + 1;
            } else {
                lo = j;
                hi = j + 1;
            }
            return rules.type_index(static_cast<Label>(lo - 1), static_cast<Label>(hi - 1));
        };
        LocatedCounts counts = initial_located_counts(map, rules);
        PairCountMatrix m(n);
        for (long k = 1; k <= k_max && pass; ++k) {
            for (long i = 1; i <= 2 * n && pass; ++i) {
                for (long j = 1; j <= 2 * n && pass; ++j) {
                    int t = type_of(j);
                    if (t < 0 || counts.counts[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(t)] !=
                                     m.at(i, j)) {
                        pass = false;
                        detail = "located counts diverge at k=" + std::to_string(k) + " i=" + std::to_string(i) +
                                 " j=" + std::to_string(j);
                    }
                }
            }
            if (k < k_max) {
                counts = advance_located_counts(counts, rules);
                m.advance();
            }
        }
    }
    if (!pass) all_pass = false;
    checks.push_back(check_result("symbolic/" + map_name + (map_name == "fn" ? "/n=" + std::to_string(n) : "") +
                                      "/k<=" + std::to_string(k_max),
                                  pass, detail));
}

void verify_mobius(long m_max, json& checks, bool& all_pass) {
    std::vector<CountFunction> phis;
    phis.push_back(lucas_count_function());
    for (long n = 2; n <= 5; ++n) phis.push_back(family_count_function(n, m_max));
    phis.push_back(power2_count_function());
    bool pass = true;
    std::string detail;
    for (const auto& phi : phis) {
        for (long m = 1; m <= m_max && pass; ++m) {
            BigInt back = 0;
            for (long d : divisors(m)) back += mobius_combine(d, phi);
            if (back != phi.eval(m)) {
                pass = false;
                detail = phi.name + ": inversion fails at m=" + std::to_string(m);
            }
            if (mobius_combine(m, phi) % m != 0) {
                pass = false;
                detail = phi.name + ": divisibility fails at m=" + std::to_string(m);
            }
        }
    }
    if (!pass) all_pass = false;
    checks.push_back(check_result("mobius/m<=" + std::to_string(m_max), pass, detail));
}

void verify_growth(long m_max, json& checks, bool& all_pass) {
    const GrowthCheckReport r = check_orbit_growth(m_max);
    if (!r.pass) all_pass = false;
    std::string detail = "corrected ratio " + std::to_string(r.corrected_ratio) + ", golden gap " +
                         std::to_string(r.golden_gap);
    if (!r.strictly_increasing) detail += ", first violation at m=" + std::to_string(r.first_violation);
    checks.push_back(check_result("growth/m<=" + std::to_string(m_max), r.pass, detail));
}

int run_verify(const VerifyOptions& o) {
    json checks = json::array();
    bool all_pass = true;
    const bool all = o.suite == "all";
    if (all || o.suite == "properties") {
        verify_properties(o.n, o.k_max > 0 ? o.k_max : 80, checks, all_pass);
    }
    if (all || o.suite == "oracle") {
        if (all) {
            verify_oracle("thm1", 0, o.k_max > 0 ? o.k_max : 10, checks, all_pass);
            verify_oracle("fn", o.n, o.k_max > 0 ? o.k_max : 8, checks, all_pass);
        } else {
            verify_oracle(o.map, o.n, o.k_max > 0 ? o.k_max : 10, checks, all_pass);
        }
    }
    if (all || o.suite == "symbolic") {
        if (all) {
            verify_symbolic("thm1", 0, o.k_max > 0 ? o.k_max : 18, checks, all_pass);
            verify_symbolic("fn", o.n, o.k_max > 0 ? o.k_max : 40, checks, all_pass);
        } else {
            verify_symbolic(o.map, o.n, o.k_max > 0 ? o.k_max : 40, checks, all_pass);
        }
    }
    if (all || o.suite == "mobius") {
        verify_mobius(o.m_max > 0 ? o.m_max : 200, checks, all_pass);
    }
    if (all || o.suite == "thm1c") {
        verify_growth(o.m_max > 0 ? o.m_max : 63, checks, all_pass);
    }
    std::cout << json{{"suite", o.suite}, {"pass", all_pass}, {"checks", checks}}.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-orbit counts of interval maps"};
    app.require_subcommand(1);

    auto add_format = [](CLI::App* cmd, std::string& fmt) {
        cmd->add_option("--format", fmt, "output format")
            ->check(CLI::IsMember({"text", "csv", "json"}))
            ->capture_default_str();
    };

    TableOptions table_opts;
    auto* table_cmd = app.add_subcommand("table", "orbit-count table");
    table_cmd->add_option("--n-max", table_opts.n_max)->check(CLI::PositiveNumber)->capture_default_str();
    table_cmd->add_option("--m-max", table_opts.m_max)->check(CLI::PositiveNumber)->capture_default_str();
    add_format(table_cmd, table_opts.format);

    CountOptions count_opts;
    auto* count_cmd = app.add_subcommand("count", "orbit counts for one selector");
    count_cmd->add_option("--n", count_opts.n)->check(CLI::PositiveNumber)->capture_default_str();
    count_cmd->add_option("--m-max", count_opts.m_max)->check(CLI::PositiveNumber)->capture_default_str();
    add_format(count_cmd, count_opts.format);

    LucasOptions lucas_opts;
    auto* lucas_cmd = app.add_subcommand("lucas", "fixed-point counts of the period-3 map");
    lucas_cmd->add_option("--k-max", lucas_opts.k_max)->check(CLI::PositiveNumber)->capture_default_str();
    add_format(lucas_cmd, lucas_opts.format);

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "cross-path verification suites");
    verify_cmd->add_option("--suite", verify_opts.suite)
        ->check(CLI::IsMember({"all", "properties", "oracle", "symbolic", "mobius", "thm1c"}))
        ->capture_default_str();
    verify_cmd->add_option("--map", verify_opts.map)->check(CLI::IsMember({"thm1", "fn"}));
    verify_cmd->add_option("--n", verify_opts.n)->check(CLI::Range(2L, 16L))->capture_default_str();
    verify_cmd->add_option("--k-max", verify_opts.k_max)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--m-max", verify_opts.m_max)->check(CLI::PositiveNumber);

    OracleOptions oracle_opts;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact geometric counts");
    oracle_cmd->add_option("--map", oracle_opts.map)->check(CLI::IsMember({"thm1", "fn"}))->capture_default_str();
    oracle_cmd->add_option("--map-json", oracle_opts.map_json, "load the map from a JSON node list");
    oracle_cmd->add_option("--n", oracle_opts.n)->check(CLI::Range(2L, 64L))->capture_default_str();
    oracle_cmd->add_option("--k-max", oracle_opts.k_max)->check(CLI::PositiveNumber)->capture_default_str();
    oracle_cmd->add_flag("--orbits", oracle_opts.orbits, "also count minimal-period orbits");
    add_format(oracle_cmd, oracle_opts.format);

    LambdaOptions lambda_opts;
    auto* lambda_cmd = app.add_subcommand("lambda", "growth constant");
    lambda_cmd->add_option("--n", lambda_opts.n)->check(CLI::PositiveNumber)->capture_default_str();
    lambda_cmd->add_option("--tol", lambda_opts.tol)->check(CLI::PositiveNumber)->capture_default_str();

    long order_s = 0, order_t = 0;
    auto* order_cmd = app.add_subcommand("order", "Sharkovskii-order query");
    order_cmd->add_option("--s", order_s)->required()->check(CLI::PositiveNumber);
    order_cmd->add_option("--t", order_t)->required()->check(CLI::PositiveNumber);

    long bound_s = 0, bound_t = 0;
    auto* bound_cmd = app.add_subcommand("bound", "sharp orbit-count lower bound");
    bound_cmd->add_option("--s", bound_s)->required()->check(CLI::PositiveNumber);
    bound_cmd->add_option("--t", bound_t)->required()->check(CLI::PositiveNumber);

    ScanOptions scan_opts;
    auto* scan_cmd = app.add_subcommand("scan", "relation scans between count families");
    scan_cmd->add_option("--n-max", scan_opts.n_max)->check(CLI::PositiveNumber)->capture_default_str();
    scan_cmd->add_option("--m-max", scan_opts.m_max)->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (table_cmd->parsed()) return run_table(table_opts);
        if (count_cmd->parsed()) return run_count(count_opts);
        if (lucas_cmd->parsed()) return run_lucas(lucas_opts);
        if (verify_cmd->parsed()) return run_verify(verify_opts);
        if (oracle_cmd->parsed()) return run_oracle(oracle_opts);
        if (lambda_cmd->parsed()) return run_lambda(lambda_opts);
        if (order_cmd->parsed()) return run_order(order_s, order_t);
        if (bound_cmd->parsed()) return run_bound(bound_s, bound_t);
        if (scan_cmd->parsed()) return run_scan(scan_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const piece_cap_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 1;
    } catch (const degenerate_iterate_error& e) {
        std::cerr << "degenerate iterate: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
