#pragma once

// Serialization: maps as JSON node lists, located counts as JSON cell lists,
// orbit tables as CSV ("m,phi1,...,phiN,psi", LF endings, exact integers)
// and as a JSON mirror, and check reports as JSON. Values that fit in 64
// bits are emitted as JSON numbers; larger ones as decimal strings.

#include "orbitforge/orbits.hpp"
#include "orbitforge/plmap.hpp"
#include "orbitforge/symbolic.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitforge {

using json = nlohmann::json;

namespace detail {

inline json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
    return json(to_string(v));
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string");
}

}  // namespace detail

// { "nodes": [[x_num, x_den, y_num, y_den], ...] }
inline json plmap_to_json(const PLMap& map) {
    json nodes = json::array();
    for (const auto& n : map.nodes()) {
        nodes.push_back({detail::bigint_to_json(n.x.get_num()), detail::bigint_to_json(n.x.get_den()),
                         detail::bigint_to_json(n.y.get_num()), detail::bigint_to_json(n.y.get_den())});
    }
    return json{{"nodes", nodes}};
}

inline PLMap plmap_from_json(const json& j) {
    if (!j.contains("nodes") || !j["nodes"].is_array()) {
        throw std::invalid_argument("plmap_from_json: missing nodes array");
    }
    std::vector<PLMap::Node> nodes;
    for (const auto& e : j["nodes"]) {
        if (!e.is_array() || e.size() != 4) {
            throw std::invalid_argument("plmap_from_json: node entries must be [x_num, x_den, y_num, y_den]");
        }
        nodes.push_back({make_rational(detail::bigint_from_json(e[0]), detail::bigint_from_json(e[1])),
                         make_rational(detail::bigint_from_json(e[2]), detail::bigint_from_json(e[3]))});
    }
    return PLMap(std::move(nodes));
}

// { "step": k, "counts": [[interval, lo, hi, count], ...] } with 1-based
// intervals and labels named by their node coordinates.
inline json located_counts_to_json(const LocatedCounts& c, const SubstitutionRules& rules,
                                   const std::vector<Rational>& xs) {
    json cells = json::array();
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
        for (std::size_t t = 0; t < c.counts[i].size(); ++t) {
            if (c.counts[i][t] == 0) continue;
            const PairType& pt = rules.types[t];
            json lo = is_integer(xs[static_cast<std::size_t>(pt.lo)])
                          ? detail::bigint_to_json(xs[static_cast<std::size_t>(pt.lo)].get_num())
                          : json(to_string(xs[static_cast<std::size_t>(pt.lo)]));
            json hi = is_integer(xs[static_cast<std::size_t>(pt.hi)])
                          ? detail::bigint_to_json(xs[static_cast<std::size_t>(pt.hi)].get_num())
                          : json(to_string(xs[static_cast<std::size_t>(pt.hi)]));
            cells.push_back({static_cast<std::int64_t>(i + 1), lo, hi, detail::bigint_to_json(c.counts[i][t])});
        }
    }
    return json{{"step", c.step}, {"counts", cells}};
}

inline std::string table_csv_header(long n_max) {
    std::string h = "m";
    for (long n = 1; n <= n_max; ++n) h += ",phi" + std::to_string(n);
    h += ",psi";
    return h;
}

inline std::string table_to_csv(const OrbitTable& t) {
    std::ostringstream os;
    os << table_csv_header(t.n_max) << '\n';
    for (const auto& row : t.rows) {
        os << row.m;
        for (const auto& v : row.phi) os << ',' << to_string(v);
        os << ',' << to_string(row.psi) << '\n';
    }
    return os.str();
}

inline OrbitTable table_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("table_from_csv: empty input");
    long n_max = 0;
    {
        std::istringstream hs(line);
        std::string field;
        if (!std::getline(hs, field, ',') || field != "m") {
            throw std::invalid_argument("table_from_csv: header must start with 'm'");
        }
        std::vector<std::string> rest;
        while (std::getline(hs, field, ',')) rest.push_back(field);
        if (rest.empty() || rest.back() != "psi") {
            throw std::invalid_argument("table_from_csv: header must end with 'psi'");
        }
        n_max = static_cast<long>(rest.size()) - 1;
        for (long n = 1; n <= n_max; ++n) {
            if (rest[static_cast<std::size_t>(n - 1)] != "phi" + std::to_string(n)) {
                throw std::invalid_argument("table_from_csv: unexpected header column");
            }
        }
    }
    OrbitTable t;
    t.n_max = n_max;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        OrbitTableRow row;
        if (!std::getline(ls, field, ',')) throw std::invalid_argument("table_from_csv: short row");
        row.m = std::stol(field);
        for (long n = 1; n <= n_max; ++n) {
            if (!std::getline(ls, field, ',')) throw std::invalid_argument("table_from_csv: short row");
            row.phi.emplace_back(field);
        }
        if (!std::getline(ls, field, ',')) throw std::invalid_argument("table_from_csv: short row");
        row.psi = BigInt(field);
        if (std::getline(ls, field, ',')) throw std::invalid_argument("table_from_csv: extra fields");
        t.rows.push_back(std::move(row));
    }
    t.m_max = t.rows.empty() ? 0 : t.rows.back().m;
    return t;
}

// {"m_max":..., "n_max":..., "rows":[{"m":..., "phi":[...], "psi":...}]}
inline json table_to_json(const OrbitTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json phi = json::array();
        for (const auto& v : row.phi) phi.push_back(detail::bigint_to_json(v));
        rows.push_back(json{{"m", row.m}, {"phi", phi}, {"psi", detail::bigint_to_json(row.psi)}});
    }
    return json{{"m_max", t.m_max}, {"n_max", t.n_max}, {"rows", rows}};
}

inline json property_check_to_json(const PropertyCheck& p) {
    json j{{"property", p.property}, {"range", p.range}, {"pass", p.pass}};
    if (!p.pass) j["counterexample"] = p.counterexample;
    return j;
}

inline json scan_entry_to_json(const ScanEntry& e) {
    json j{{"claim", e.claim},
           {"range", e.range},
           {"verified_range", e.verified_range},
           {"holds", e.holds},
           {"counterexamples", e.counterexamples}};
    if (!e.first_counterexample.empty()) j["first_counterexample"] = e.first_counterexample;
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

}  // namespace orbitforge
