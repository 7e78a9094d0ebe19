#pragma once

// Continuous piecewise-linear self-maps of a compact interval, with exact
// rational nodes. Everything here is exact: iteration composes graphs
// symbolically (no sampling), and fixed points are solved per linear piece
// and deduplicated by exact comparison. This module is the ground-truth
// oracle against which the combinatorial counting layers are checked.

#include "orbitforge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbitforge {

inline constexpr std::size_t kDefaultPieceCap = 10'000'000;

// Iteration would exceed the configured piece budget.
class piece_cap_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An iterate contains a segment lying on the diagonal, so point counts are
// not well defined for it.
class degenerate_iterate_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PLMap {
  public:
    struct Node {
        Rational x;
        Rational y;
    };

    explicit PLMap(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2) throw std::invalid_argument("PLMap: need at least 2 nodes");
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
            if (!(nodes_[i].x < nodes_[i + 1].x)) {
                throw std::invalid_argument("PLMap: node x-coordinates must be strictly increasing");
            }
        }
        const Rational& lo = nodes_.front().x;
        const Rational& hi = nodes_.back().x;
        for (const Node& n : nodes_) {
            if (n.y < lo || n.y > hi) {
                throw std::invalid_argument("PLMap: not a self-map (node value outside domain)");
            }
        }
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t piece_count() const { return nodes_.size() - 1; }
    const Rational& domain_lo() const { return nodes_.front().x; }
    const Rational& domain_hi() const { return nodes_.back().x; }

    // Exact linear interpolation between the bracketing nodes.
    Rational evaluate(const Rational& x) const {
        if (x < domain_lo() || x > domain_hi()) {
            throw std::domain_error("PLMap::evaluate: argument outside domain");
        }
        // First node with x-coordinate >= x.
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x,
                                   [](const Node& n, const Rational& v) { return n.x < v; });
        if (it->x == x) return it->y;
        const Node& b = *it;
        const Node& a = *(it - 1);
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }

    Rational operator()(const Rational& x) const { return evaluate(x); }

    bool operator==(const PLMap& other) const {
        if (nodes_.size() != other.nodes_.size()) return false;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].x != other.nodes_[i].x || nodes_[i].y != other.nodes_[i].y) return false;
        }
        return true;
    }

  private:
    std::vector<Node> nodes_;
};

// The 3-node map on [1,3] whose integer nodes form the period-3 orbit
// 1 -> 3 -> 2 -> 1 (slope -2 on [1,2], slope 1 on [2,3]).
inline PLMap make_period3_map() {
    return PLMap({{make_rational(1), make_rational(3)},
                  {make_rational(2), make_rational(1)},
                  {make_rational(3), make_rational(2)}});
}

// The family member on [1, 2n+1] (n >= 2) whose integer nodes form a single
// orbit of odd period 2n+1. Nodes are placed at every integer so that all
// node values land on node coordinates; values at x = 1..2n+1 read
// (n+1), (2n+1), 2n, 2n-1, ..., (n+2), n, n-1, ..., 2, 1.
inline PLMap make_odd_period_map(long n) {
    if (n < 2) throw std::invalid_argument("make_odd_period_map: require n >= 2");
    std::vector<PLMap::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(2 * n + 1));
    auto push = [&](long x, long y) { nodes.push_back({make_rational(x), make_rational(y)}); };
    push(1, n + 1);
    push(2, 2 * n + 1);
    for (long x = 3; x <= n + 1; ++x) push(x, 2 * n + 3 - x);
    for (long x = n + 2; x <= 2 * n + 1; ++x) push(x, 2 * n + 2 - x);
    return PLMap(std::move(nodes));
}

// Graph of x -> outer(inner(x)), computed exactly. The partition of the
// result refines inner's partition by the inner-preimages of outer's nodes.
// With merge_collinear, interior nodes where consecutive pieces are
// collinear are dropped (constant runs included).
inline PLMap compose(const PLMap& outer, const PLMap& inner, bool merge_collinear = true,
                     std::size_t piece_cap = kDefaultPieceCap) {
    const auto& in = inner.nodes();
    const auto& on = outer.nodes();
    std::vector<PLMap::Node> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i + 1 < in.size(); ++i) {
        const Rational& x0 = in[i].x;
        const Rational& y0 = in[i].y;
        const Rational& x1 = in[i + 1].x;
        const Rational& y1 = in[i + 1].y;
        out.push_back({x0, outer.evaluate(y0)});
        if (y0 != y1) {
            const bool ascending = y0 < y1;
            const Rational& lo = ascending ? y0 : y1;
            const Rational& hi = ascending ? y1 : y0;
            // Outer nodes strictly inside the value span of this piece.
            auto first = std::upper_bound(on.begin(), on.end(), lo,
                                          [](const Rational& v, const PLMap::Node& n) { return v < n.x; });
            auto last = std::lower_bound(on.begin(), on.end(), hi,
                                         [](const PLMap::Node& n, const Rational& v) { return n.x < v; });
            const Rational dx = x1 - x0;
            const Rational dy = y1 - y0;
            auto cut_at = [&](const PLMap::Node& node) {
                Rational t = x0 + (node.x - y0) * dx / dy;
                out.push_back({std::move(t), node.y});
            };
            if (ascending) {
                for (auto it = first; it != last; ++it) cut_at(*it);
            } else {
                for (auto it = last; it != first;) cut_at(*--it);
            }
        }
        if (out.size() > piece_cap) {
            throw piece_cap_error("compose: piece cap (" + std::to_string(piece_cap) + ") exceeded");
        }
    }
    out.push_back({in.back().x, outer.evaluate(in.back().y)});

    if (merge_collinear && out.size() > 2) {
        std::vector<PLMap::Node> merged;
        merged.reserve(out.size());
        merged.push_back(out.front());
        for (std::size_t j = 1; j + 1 < out.size(); ++j) {
            const PLMap::Node& a = merged.back();
            const PLMap::Node& b = out[j];
            const PLMap::Node& c = out[j + 1];
            if ((b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x)) continue;
            merged.push_back(b);
        }
        merged.push_back(out.back());
        out = std::move(merged);
    }
    return PLMap(std::move(out));
}

// Exact graph of the k-th iterate. k = 1 returns the map unchanged.
inline PLMap iterate(const PLMap& map, long k, std::size_t piece_cap = kDefaultPieceCap,
                     bool merge_collinear = true) {
    if (k < 1) throw std::invalid_argument("iterate: require k >= 1");
    PLMap g = map;
    for (long step = 2; step <= k; ++step) {
        g = compose(map, g, merge_collinear, piece_cap);
    }
    return g;
}

struct SolutionSet {
    std::vector<Rational> points;  // sorted, pairwise distinct
    bool degenerate = false;       // some piece lies on the diagonal; points not exhaustive
};

// All exact solutions of map(x) = x. Solutions shared by two pieces (at a
// partition node) are counted once; a piece lying on the diagonal sets the
// degenerate flag instead of contributing a continuum.
inline SolutionSet solve_fixed_points(const PLMap& map) {
    std::set<Rational> pts;
    bool degenerate = false;
    const auto& ns = map.nodes();
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        const Rational& x0 = ns[i].x;
        const Rational& y0 = ns[i].y;
        const Rational dx = ns[i + 1].x - x0;
        const Rational dy = ns[i + 1].y - y0;
        if (dx == dy) {
            if (y0 == x0) degenerate = true;
            continue;  // slope-1 piece parallel to (or on) the diagonal
        }
        Rational sol = (dy * x0 - y0 * dx) / (dy - dx);
        if (x0 <= sol && sol <= ns[i + 1].x) pts.insert(std::move(sol));
    }
    SolutionSet out;
    out.points.assign(pts.begin(), pts.end());
    out.degenerate = degenerate;
    return out;
}

// Number of distinct solutions of map^k(x) = x.
inline BigInt count_periodic_points(const PLMap& map, long k,
                                    std::size_t piece_cap = kDefaultPieceCap) {
    SolutionSet s = solve_fixed_points(iterate(map, k, piece_cap));
    if (s.degenerate) {
        throw degenerate_iterate_error("count_periodic_points: iterate " + std::to_string(k) +
                                       " has a diagonal segment");
    }
    return BigInt(static_cast<unsigned long>(s.points.size()));
}

// Number of distinct orbits of minimal period exactly m, found by solving
// map^m(x) = x exactly and classifying every solution by direct iteration.
inline BigInt count_minimal_period_orbits(const PLMap& map, long m,
                                          std::size_t piece_cap = kDefaultPieceCap) {
    if (m < 1) throw std::invalid_argument("count_minimal_period_orbits: require m >= 1");
    SolutionSet s = solve_fixed_points(iterate(map, m, piece_cap));
    if (s.degenerate) {
        throw degenerate_iterate_error("count_minimal_period_orbits: iterate " + std::to_string(m) +
                                       " has a diagonal segment");
    }
    unsigned long points_with_period_m = 0;
    for (const Rational& x : s.points) {
        Rational y = map.evaluate(x);
        long d = 1;
        while (y != x) {
            y = map.evaluate(y);
            if (++d > m) {
                throw std::logic_error("count_minimal_period_orbits: orbit longer than m");
            }
        }
        if (d == m) ++points_with_period_m;
    }
    if (points_with_period_m % static_cast<unsigned long>(m) != 0) {
        throw std::logic_error("count_minimal_period_orbits: point count not divisible by period");
    }
    return BigInt(points_with_period_m / static_cast<unsigned long>(m));
}

}  // namespace orbitforge
