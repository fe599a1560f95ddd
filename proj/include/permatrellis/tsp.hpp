#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "matrix.hpp"
#include "semiring.hpp"
#include "trellis.hpp"

namespace permatrellis {

/// Distances d_ij >= 0 with d_ii = 0; asymmetry allowed.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> d;  // row-major

    explicit DistanceMatrix(int nn = 0) : n(nn), d(std::size_t(nn) * nn, 0.0) {}
    double& at(int i, int j) { return d[std::size_t(i - 1) * n + (j - 1)]; }
    const double& at(int i, int j) const { return d[std::size_t(i - 1) * n + (j - 1)]; }

    void validate() const {
        if (n < 1) throw std::invalid_argument("distance matrix: n must be positive");
        for (int i = 1; i <= n; ++i) {
            if (at(i, i) != 0.0)
                throw std::invalid_argument("distance matrix: diagonal must be zero");
            for (int j = 1; j <= n; ++j)
                if (at(i, j) < 0.0)
                    throw std::invalid_argument("distance matrix: negative distance");
        }
    }
};

/// Trellis of all closed walks 1, x_2, ..., x_n, 1 with x_2..x_n in
/// {2..n} and consecutive symbols distinct. Length n+1; interior levels
/// hold the n-1 possible current cities.
inline Trellis<int> build_walk_trellis(int n) {
    if (n < 3) throw std::invalid_argument("build_walk_trellis: n must be >= 3");
    Trellis<int> t;
    t.levels.resize(n + 2);
    t.edges.resize(n + 1);
    t.levels[0] = {"root"};
    t.levels[1] = {"1"};
    t.edges[0].push_back({0, 0, 1});
    for (int j = 2; j <= n; ++j)
        for (int c = 2; c <= n; ++c) t.levels[j].push_back(std::to_string(c));
    t.levels[n + 1] = {"1"};
    for (int c = 2; c <= n; ++c) t.edges[1].push_back({0, c - 2, c});
    for (int j = 2; j < n; ++j)
        for (int u = 2; u <= n; ++u)
            for (int v = 2; v <= n; ++v)
                if (u != v) t.edges[j].push_back({u - 2, v - 2, v});
    for (int c = 2; c <= n; ++c) t.edges[n].push_back({c - 2, 0, 1});
    return t;
}

/// Canonical trellis over the alphabet {2..n}, framed by 1-labeled root
/// and toor edges so its paths are the circular tour strings 1 x_2..x_n 1.
inline Trellis<int> build_circular_trellis(int n) {
    if (n < 3) throw std::invalid_argument("build_circular_trellis: n must be >= 3");
    int m = n - 1;  // alphabet size
    Trellis<int> inner = build_canonical(m);
    Trellis<int> t;
    t.levels.resize(n + 2);
    t.edges.resize(n + 1);
    t.levels[0] = {"root"};
    for (int j = 0; j <= m; ++j) t.levels[j + 1] = inner.levels[j];
    t.levels[n + 1] = {"toor"};
    t.edges[0].push_back({0, 0, 1});
    for (int j = 0; j < m; ++j)
        for (const auto& e : inner.edges[j])
            t.edges[j + 1].push_back({e.from, e.to, e.label + 1});  // shift to {2..n}
    t.edges[n].push_back({0, 0, 1});
    return t;
}

/// Remove a degenerate first level: a single root whose edges all go to a
/// single level-1 vertex. Used to align the intersection construction
/// (which has the walk trellis's extra root layer) with the direct one.
inline Trellis<int> fold_root(const Trellis<int>& t) {
    if (t.levels.front().size() != 1 || t.levels[1].size() != 1 || t.edges[0].size() != 1)
        throw std::invalid_argument("fold_root: first layer is not degenerate");
    Trellis<int> out;
    out.levels.assign(t.levels.begin() + 1, t.levels.end());
    out.edges.assign(t.edges.begin() + 1, t.edges.end());
    return out;
}

/// Direct (S, v) construction: level 0 holds (empty, 1), level j in [1, n-1]
/// holds the pairs with |S| = j and v in S, level n the toor. Labels are
/// the entered city (1 for the closing edge). |V| = (n-1)2^{n-2} + 2,
/// |E| = (n-1)(n-2)2^{n-3} + 2(n-1).
inline Trellis<int> build_tsp_trellis(int n) {
    if (n < 3 || n > 28) throw std::invalid_argument("build_tsp_trellis: n out of range");
    int m = n - 1;  // cities 2..n as bits 0..m-1
    Trellis<int> t;
    t.levels.resize(n + 1);
    t.edges.resize(n);
    t.levels[0] = {"(,1)"};
    t.levels[n] = {"toor"};

    auto tag = [&](std::uint32_t mask, int v) {
        std::string s = "({";
        for (int b = 0; b < m; ++b)
            if (mask >> b & 1) s += std::to_string(b + 2) + " ";
        if (s.back() == ' ') s.pop_back();
        return s + "}," + std::to_string(v + 2) + ")";
    };

    // Vertex index per level: (mask, v) pairs with popcount(mask) = j.
    std::vector<std::vector<std::pair<std::uint32_t, int>>> verts(n + 1);
    std::vector<std::vector<int>> index(n);  // level 1..n-1: (mask * m + v) -> idx
    for (int j = 1; j < n; ++j) index[j].assign((std::size_t(1) << m) * m, -1);
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) {
        int j = std::popcount(mask);
        if (j >= n) continue;
        for (int v = 0; v < m; ++v) {
            if (!(mask >> v & 1)) continue;
            index[j][std::size_t(mask) * m + v] = (int)verts[j].size();
            verts[j].push_back({mask, v});
            t.levels[j].push_back(tag(mask, v));
        }
    }

    for (int v = 0; v < m; ++v)
        t.edges[0].push_back({0, index[1][std::size_t(1u << v) * m + v], v + 2});
    for (int j = 1; j + 1 < n; ++j)
        for (std::size_t u = 0; u < verts[j].size(); ++u) {
            auto [mask, cu] = verts[j][u];
            for (int v = 0; v < m; ++v) {
                if (mask >> v & 1) continue;
                std::uint32_t next = mask | (1u << v);
                t.edges[j].push_back({(int)u, index[j + 1][std::size_t(next) * m + v], v + 2});
            }
        }
    std::uint32_t full = (std::uint32_t(1) << m) - 1;
    for (int v = 0; v < m; ++v)
        t.edges[n - 1].push_back({index[n - 1][std::size_t(full) * m + v], 0, 1});
    return t;
}

/// Same structure with distance labels d_{uv} on each edge, suitable for a
/// min-plus Viterbi flow.
inline Trellis<double> build_tsp_trellis_labeled(const DistanceMatrix& dm) {
    dm.validate();
    int n = dm.n;
    Trellis<int> sym = build_tsp_trellis(n);
    // Recover the source city of each edge from the vertex tags is clumsy;
    // rebuild labels from the (S, v) structure instead.
    Trellis<double> t;
    t.levels = sym.levels;
    t.edges.resize(sym.edges.size());
    // Parse the entered-city label; the source city is the label of the
    // source vertex's own entering edges, tracked per level.
    std::vector<std::vector<int>> city(t.levels.size());
    city[0] = {1};
    for (std::size_t j = 0; j < sym.edges.size(); ++j) {
        city[j + 1].assign(t.levels[j + 1].size(), 1);
        for (const auto& e : sym.edges[j]) {
            int from_city = city[j][e.from];
            int to_city = e.label;
            city[j + 1][e.to] = to_city;
            t.edges[j].push_back({e.from, e.to, dm.at(from_city, to_city)});
        }
    }
    return t;
}

struct TspResult {
    double length = 0;
    std::vector<int> tour;  // 1, x_2, ..., x_n, 1 when requested
    OpCounter counter;      // adds and comparisons
};

/// Held-Karp as an implicit min-sum Viterbi flow over the (S, v) trellis.
/// The first-layer transitions initialize mu and are free; every other
/// trellis edge costs one addition, and each vertex of in-degree k costs
/// k-1 comparisons. Ties go to the lowest predecessor city.
inline TspResult solve_tsp(const DistanceMatrix& dm, bool want_tour = false) {
    dm.validate();
    int n = dm.n;
    if (n < 3 || n > 28) throw std::invalid_argument("solve_tsp: n out of range");
    int m = n - 1;
    std::size_t nmask = std::size_t(1) << m;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> mu(nmask, std::vector<double>(m, inf));
    std::vector<std::vector<std::int8_t>> parent;
    if (want_tour) parent.assign(nmask, std::vector<std::int8_t>(m, -1));

    TspResult res;
    for (int v = 0; v < m; ++v) mu[std::size_t(1) << v][v] = dm.at(1, v + 2);
    for (std::uint32_t mask = 1; mask < nmask; ++mask) {
        if (std::popcount(mask) < 2) continue;
        for (int v = 0; v < m; ++v) {
            if (!(mask >> v & 1)) continue;
            std::uint32_t rest = mask & ~(1u << v);
            double best = inf;
            int best_u = -1;
            bool first = true;
            for (int u = 0; u < m; ++u) {
                if (!(rest >> u & 1)) continue;
                double cand = mu[rest][u] + dm.at(u + 2, v + 2);
                ++res.counter.adds;
                if (first) {
                    best = cand;
                    best_u = u;
                    first = false;
                } else {
                    ++res.counter.comparisons;
                    if (cand < best) {
                        best = cand;
                        best_u = u;
                    }
                }
            }
            mu[mask][v] = best;
            if (want_tour) parent[mask][v] = (std::int8_t)best_u;
        }
    }
    std::uint32_t full = (std::uint32_t)nmask - 1;
    double best = inf;
    int best_v = -1;
    bool first = true;
    for (int v = 0; v < m; ++v) {
        double cand = mu[full][v] + dm.at(v + 2, 1);
        ++res.counter.adds;
        if (first) {
            best = cand;
            best_v = v;
            first = false;
        } else {
            ++res.counter.comparisons;
            if (cand < best) {
                best = cand;
                best_v = v;
            }
        }
    }
    res.length = best;
    if (want_tour) {
        std::vector<int> rev = {1};
        std::uint32_t mask = full;
        int v = best_v;
        while (v >= 0) {
            rev.push_back(v + 2);
            int u = parent[mask][v];
            mask &= ~(1u << v);
            v = u;
        }
        rev.push_back(1);
        std::reverse(rev.begin(), rev.end());
        res.tour = std::move(rev);
    }
    return res;
}

/// Exact minimum over all (n-1)! tours. Desk scale.
inline double tsp_bruteforce(const DistanceMatrix& dm) {
    dm.validate();
    int n = dm.n;
    if (n < 3 || n > 10) throw std::invalid_argument("tsp_bruteforce: n out of range");
    std::vector<int> perm(n - 1);
    for (int i = 0; i < n - 1; ++i) perm[i] = i + 2;
    double best = std::numeric_limits<double>::infinity();
    do {
        double len = dm.at(1, perm.front());
        for (int i = 0; i + 1 < n - 1; ++i) len += dm.at(perm[i], perm[i + 1]);
        len += dm.at(perm.back(), 1);
        best = std::min(best, len);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Closed forms for the direct TSP trellis.
inline std::uint64_t tsp_vertex_count(int n) {
    return std::uint64_t(n - 1) * (std::uint64_t(1) << (n - 2)) + 2;
}
inline std::uint64_t tsp_edge_count(int n) {
    return std::uint64_t(n - 1) * (n - 2) * (std::uint64_t(1) << (n - 3)) + 2 * std::uint64_t(n - 1);
}
inline std::uint64_t tsp_additions(int n) {
    return std::uint64_t(n - 1) * (n - 2) * (std::uint64_t(1) << (n - 3)) + (n - 1);
}
inline std::int64_t tsp_comparisons(int n) {
    // (n-1)(n-4)2^{n-3} + (2n-3); negative middle term possible at n = 3.
    return std::int64_t(n - 1) * (n - 4) * (std::int64_t(1) << (n - 3)) + (2 * n - 3);
}

}  // namespace permatrellis
