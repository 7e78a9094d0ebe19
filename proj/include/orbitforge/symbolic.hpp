#pragma once

// Symbolic machinery for Markov piecewise-linear maps: a map whose node
// values all land on node coordinates is encoded by the sequence of its node
// values, substitution rules for adjacent label pairs are read off the base
// graph by restriction, and iterates are described either as expanded label
// strings or, asymptotically, as located pair counts (how many monotone
// branches of each value-span type sit over each base interval). Summing the
// located counts over cells whose value span covers the location interval
// counts the intersections of the iterate's graph with the diagonal.

#include "orbitforge/plmap.hpp"
#include "orbitforge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbitforge {

class non_markov_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A label is the index of a base node; index order equals coordinate order.
using Label = int;

struct Representation {
    std::vector<Label> labels;

    bool operator==(const Representation&) const = default;
};

// Unordered value-span type of a monotone branch, as a pair of base-node
// indices with lo < hi.
struct PairType {
    Label lo = 0;
    Label hi = 0;

    friend bool operator==(const PairType&, const PairType&) = default;
    friend auto operator<=>(const PairType&, const PairType&) = default;
};

// The base partition: node x-coordinates in increasing order.
inline std::vector<Rational> base_partition(const PLMap& map) {
    std::vector<Rational> xs;
    xs.reserve(map.nodes().size());
    for (const auto& n : map.nodes()) xs.push_back(n.x);
    return xs;
}

namespace detail {

// One label per node (no merging); throws if some node value is not a node
// coordinate.
inline std::vector<Label> node_label_indices(const PLMap& map) {
    const auto& ns = map.nodes();
    std::vector<Label> out;
    out.reserve(ns.size());
    for (const auto& node : ns) {
        auto it = std::lower_bound(ns.begin(), ns.end(), node.y,
                                   [](const PLMap::Node& n, const Rational& v) { return n.x < v; });
        if (it == ns.end() || it->x != node.y) {
            throw non_markov_error("map is not Markov: node value " + to_string(node.y) +
                                   " is not a node coordinate");
        }
        out.push_back(static_cast<Label>(it - ns.begin()));
    }
    return out;
}

inline std::vector<Label> merge_duplicates(const std::vector<Label>& seq) {
    std::vector<Label> out;
    out.reserve(seq.size());
    for (Label l : seq) {
        if (out.empty() || out.back() != l) out.push_back(l);
    }
    return out;
}

}  // namespace detail

// Label sequence of the node values, consecutive duplicates merged.
inline Representation base_representation(const PLMap& map) {
    Representation rep{detail::merge_duplicates(detail::node_label_indices(map))};
    if (rep.labels.size() < 2) {
        throw std::invalid_argument("base_representation: fewer than 2 distinct labels");
    }
    return rep;
}

// Sub-representation of a position-aligned representation (label i sits over
// the i-th base node) over base nodes u..v, consecutive duplicates merged.
inline Representation restrict_representation(const Representation& rep, Label u, Label v) {
    if (!(u < v)) throw std::invalid_argument("restrict_representation: require u < v");
    if (u < 0 || static_cast<std::size_t>(v) >= rep.labels.size()) {
        throw std::invalid_argument("restrict_representation: labels outside base");
    }
    std::vector<Label> slice(rep.labels.begin() + u, rep.labels.begin() + v + 1);
    return Representation{detail::merge_duplicates(slice)};
}

// Substitution rules of a Markov map: for every ordered label pair (a,b)
// adjacent in some reachable representation, the replacement string is the
// base graph restricted to [a:b], reversed when a > b. Also carries the
// unordered pair-type universe and the induced type-transition multiplicities.
struct SubstitutionRules {
    std::size_t base_node_count = 0;
    std::map<std::pair<Label, Label>, Representation> rules;  // ordered pair -> replacement
    std::vector<PairType> types;                              // sorted universe
    std::vector<std::vector<long>> type_transition;           // [from][to] multiplicity

    int type_index(Label a, Label b) const {
        PairType t{std::min(a, b), std::max(a, b)};
        auto it = std::lower_bound(types.begin(), types.end(), t);
        if (it == types.end() || *it != t) return -1;
        return static_cast<int>(it - types.begin());
    }
};

inline SubstitutionRules derive_rules(const PLMap& map) {
    const std::vector<Label> full = detail::node_label_indices(map);
    const std::vector<Label> base = detail::merge_duplicates(full);

    auto rule_for = [&](Label a, Label b) {
        const Label lo = std::min(a, b);
        const Label hi = std::max(a, b);
        std::vector<Label> slice(full.begin() + lo, full.begin() + hi + 1);
        slice = detail::merge_duplicates(slice);
        if (a > b) std::reverse(slice.begin(), slice.end());
        return Representation{std::move(slice)};
    };

    SubstitutionRules out;
    out.base_node_count = full.size();
    std::deque<std::pair<Label, Label>> queue;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) queue.emplace_back(base[i], base[i + 1]);
    while (!queue.empty()) {
        auto p = queue.front();
        queue.pop_front();
        if (out.rules.count(p)) continue;
        Representation r = rule_for(p.first, p.second);
        for (std::size_t i = 0; i + 1 < r.labels.size(); ++i) {
            queue.emplace_back(r.labels[i], r.labels[i + 1]);
        }
        // Both orientations belong to the universe; the transition table
        // reads the ascending one even when only the other is reachable.
        queue.emplace_back(p.second, p.first);
        out.rules.emplace(p, std::move(r));
    }

    for (const auto& [p, r] : out.rules) {
        PairType t{std::min(p.first, p.second), std::max(p.first, p.second)};
        auto it = std::lower_bound(out.types.begin(), out.types.end(), t);
        if (it == out.types.end() || *it != t) out.types.insert(it, t);
    }
    out.type_transition.assign(out.types.size(), std::vector<long>(out.types.size(), 0));
    for (std::size_t ti = 0; ti < out.types.size(); ++ti) {
        const auto& r = out.rules.at({out.types[ti].lo, out.types[ti].hi});
        for (std::size_t i = 0; i + 1 < r.labels.size(); ++i) {
            int tj = out.type_index(r.labels[i], r.labels[i + 1]);
            if (tj < 0) throw std::logic_error("derive_rules: pair universe not closed");
            ++out.type_transition[ti][static_cast<std::size_t>(tj)];
        }
    }
    return out;
}

// One substitution step: every adjacent pair is replaced by its rule string,
// shared endpoints merged. Applied to the representation of the k-th iterate
// this yields the representation of the (k+1)-st.
inline Representation expand(const Representation& rep, const SubstitutionRules& rules,
                             std::size_t label_cap = kDefaultPieceCap) {
    if (rep.labels.size() < 2) throw std::invalid_argument("expand: representation too short");
    std::vector<Label> out;
    for (std::size_t i = 0; i + 1 < rep.labels.size(); ++i) {
        auto it = rules.rules.find({rep.labels[i], rep.labels[i + 1]});
        if (it == rules.rules.end()) {
            throw std::invalid_argument("expand: missing rule for an adjacent pair");
        }
        const auto& r = it->second.labels;
        if (out.empty()) {
            out.assign(r.begin(), r.end());
        } else {
            if (out.back() != r.front()) throw std::logic_error("expand: rule endpoints disagree");
            out.insert(out.end(), r.begin() + 1, r.end());
        }
        if (out.size() > label_cap) {
            throw piece_cap_error("expand: label cap (" + std::to_string(label_cap) + ") exceeded");
        }
    }
    return Representation{std::move(out)};
}

// counts[i][t]: number of monotone branches of pair type t over base
// interval i in the step-th iterate.
struct LocatedCounts {
    long step = 0;
    std::vector<std::vector<BigInt>> counts;  // [interval][type]
};

// Step-1 counts: each adjacent pair of the base representation sits over the
// base interval given by its position.
inline LocatedCounts initial_located_counts(const PLMap& map, const SubstitutionRules& rules) {
    const std::vector<Label> full = detail::node_label_indices(map);
    LocatedCounts out;
    out.step = 1;
    out.counts.assign(full.size() - 1, std::vector<BigInt>(rules.types.size(), BigInt(0)));
    for (std::size_t p = 0; p + 1 < full.size(); ++p) {
        if (full[p] == full[p + 1]) continue;  // constant piece
        int t = rules.type_index(full[p], full[p + 1]);
        if (t < 0) throw std::logic_error("initial_located_counts: pair outside universe");
        out.counts[p][static_cast<std::size_t>(t)] += 1;
    }
    return out;
}

// Substitution acts on types only; the location index is preserved because a
// branch subdivides into branches over the same base interval.
inline LocatedCounts advance_located_counts(const LocatedCounts& c, const SubstitutionRules& rules) {
    const std::size_t n_types = rules.types.size();
    LocatedCounts out;
    out.step = c.step + 1;
    out.counts.assign(c.counts.size(), std::vector<BigInt>(n_types, BigInt(0)));
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
        if (c.counts[i].size() != n_types) {
            throw std::invalid_argument("advance_located_counts: type dimension mismatch");
        }
        for (std::size_t t1 = 0; t1 < n_types; ++t1) {
            const BigInt& v = c.counts[i][t1];
            if (v == 0) continue;
            for (std::size_t t2 = 0; t2 < n_types; ++t2) {
                long mult = rules.type_transition[t1][t2];
                if (mult != 0) out.counts[i][t2] += v * mult;
            }
        }
    }
    return out;
}

// mask[i][t] is set exactly when type t's value span covers base interval i;
// a covering branch crosses the diagonal over that interval.
struct CrossingMask {
    std::vector<std::vector<bool>> mask;  // [interval][type]
};

inline CrossingMask crossing_mask(const PLMap& map, const SubstitutionRules& rules) {
    const std::size_t n_intervals = map.nodes().size() - 1;
    CrossingMask out;
    out.mask.assign(n_intervals, std::vector<bool>(rules.types.size(), false));
    for (std::size_t i = 0; i < n_intervals; ++i) {
        for (std::size_t t = 0; t < rules.types.size(); ++t) {
            const PairType& pt = rules.types[t];
            out.mask[i][t] = pt.lo <= static_cast<Label>(i) && pt.hi >= static_cast<Label>(i + 1);
        }
    }
    return out;
}

inline BigInt count_crossings(const LocatedCounts& counts, const CrossingMask& mask) {
    if (counts.counts.size() != mask.mask.size() ||
        (!counts.counts.empty() && counts.counts[0].size() != mask.mask[0].size())) {
        throw std::invalid_argument("count_crossings: dimension mismatch");
    }
    BigInt total = 0;
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
        for (std::size_t t = 0; t < counts.counts[i].size(); ++t) {
            if (mask.mask[i][t]) total += counts.counts[i][t];
        }
    }
    return total;
}

// Diagonal-crossing counts of iterates 1..k_max via the substitution layer.
inline std::vector<BigInt> symbolic_crossing_sequence(const PLMap& map, long k_max) {
    if (k_max < 1) throw std::invalid_argument("symbolic_crossing_sequence: require k_max >= 1");
    const SubstitutionRules rules = derive_rules(map);
    const CrossingMask mask = crossing_mask(map, rules);
    LocatedCounts counts = initial_located_counts(map, rules);
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (long k = 1; k <= k_max; ++k) {
        out.push_back(count_crossings(counts, mask));
        if (k < k_max) counts = advance_located_counts(counts, rules);
    }
    return out;
}

// "3,1,2"-style rendering using the node coordinates as label names.
inline std::string representation_to_string(const Representation& rep,
                                            const std::vector<Rational>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < rep.labels.size(); ++i) {
        if (i) os << ',';
        os << to_string(xs[static_cast<std::size_t>(rep.labels[i])]);
    }
    return os.str();
}

}  // namespace orbitforge
