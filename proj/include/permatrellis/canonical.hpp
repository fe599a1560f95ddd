#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "matrix.hpp"
#include "trellis.hpp"

namespace permatrellis {

/// Safety bound on trellis-based permanent computation; the env var
/// PERMATRELLIS_MAX_N overrides it.
inline int max_permanent_n(int fallback = 30) {
    if (const char* s = std::getenv("PERMATRELLIS_MAX_N")) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return fallback;
}

namespace detail {

// Next mask with the same popcount (Gosper's hack).
inline std::uint64_t next_subset(std::uint64_t v) {
    std::uint64_t c = v & -v, r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

// All j-subsets of [n] as bitmasks, ascending.
inline std::vector<std::uint64_t> subsets_of_size(int n, int j) {
    std::vector<std::uint64_t> out;
    if (j == 0) return {0};
    std::uint64_t v = (std::uint64_t(1) << j) - 1;
    std::uint64_t last = v << (n - j);
    for (;;) {
        out.push_back(v);
        if (v == last) break;
        v = next_subset(v);
    }
    return out;
}

inline std::string subset_tag(std::uint64_t mask) {
    if (mask == 0) return "{}";
    std::string s = "{";
    for (int i = 0; i < 64; ++i)
        if (mask >> i & 1) s += std::to_string(i + 1) + ",";
    s.back() = '}';
    return s;
}

}  // namespace detail

/// The canonical permutation trellis T_n: level j holds all j-subsets of
/// [n]; (u, v) is an edge iff v = u + {i}, labeled i. |V| = 2^n,
/// |E| = n 2^{n-1}.
inline Trellis<int> build_canonical(int n) {
    if (n < 1 || n > 62) throw std::invalid_argument("build_canonical: n out of range");
    Trellis<int> t;
    t.levels.resize(n + 1);
    t.edges.resize(n);
    std::vector<std::uint64_t> prev = {0};
    std::unordered_map<std::uint64_t, int> prev_index = {{0, 0}};
    t.levels[0] = {detail::subset_tag(0)};
    for (int j = 1; j <= n; ++j) {
        auto cur = detail::subsets_of_size(n, j);
        std::unordered_map<std::uint64_t, int> cur_index;
        cur_index.reserve(cur.size());
        for (std::size_t v = 0; v < cur.size(); ++v) {
            t.levels[j].push_back(detail::subset_tag(cur[v]));
            cur_index[cur[v]] = (int)v;
            for (int i = 0; i < n; ++i)
                if (cur[v] >> i & 1)
                    t.edges[j - 1].push_back(
                        {prev_index.at(cur[v] & ~(std::uint64_t(1) << i)), (int)v, i + 1});
        }
        prev = std::move(cur);
        prev_index = std::move(cur_index);
    }
    return t;
}

/// The unmerged trellis for S_n: interior level j holds every ordered
/// j-prefix of a permutation (n!/(n-j)! vertices); all full permutations
/// end at a single toor. Merging mergeable pairs exhaustively reduces it
/// to the canonical trellis.
inline Trellis<int> build_prefix_trellis(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("build_prefix_trellis: n out of range");
    Trellis<int> t;
    t.levels.resize(n + 1);
    t.edges.resize(n);
    std::vector<std::vector<int>> prev = {{}};
    t.levels[0] = {"e"};
    for (int j = 1; j <= n; ++j) {
        std::vector<std::vector<int>> cur;
        for (std::size_t u = 0; u < prev.size(); ++u) {
            for (int i = 1; i <= n; ++i) {
                if (std::find(prev[u].begin(), prev[u].end(), i) != prev[u].end()) continue;
                int v;
                if (j == n) {
                    v = 0;
                    if (t.levels[n].empty()) t.levels[n].push_back("toor");
                } else {
                    std::vector<int> word = prev[u];
                    word.push_back(i);
                    std::string tag;
                    for (int s : word) tag += std::to_string(s);
                    v = (int)cur.size();
                    cur.push_back(std::move(word));
                    t.levels[j].push_back(std::move(tag));
                }
                t.edges[j - 1].push_back({(int)u, v, i});
            }
        }
        prev = std::move(cur);
    }
    return t;
}

/// Relabel a symbol trellis over [n] with matrix entries: symbol i at edge
/// layer j becomes a_{ij}.
template <typename V>
Trellis<V> relabel_with_matrix(const Trellis<int>& t, const Matrix<V>& a) {
    if (t.length() != a.n)
        throw std::invalid_argument("relabel_with_matrix: length/dimension mismatch");
    return relabel<V>(t, [&](int sym, int layer) {
        if (sym < 1 || sym > a.n)
            throw std::invalid_argument("relabel_with_matrix: symbol out of range");
        return a.at(sym, layer);
    });
}

/// per(A) as the Viterbi flow on the canonical trellis. The trellis is
/// never materialized: level j is streamed as the j-subsets of [n] and
/// only two level buffers of mu values are kept.
///
/// When `normalize_column` is nonzero (or `auto_normalize`), the flow runs
/// on A|_t whose rows with a_it != 0 are divided by a_it; every edge into
/// level t then carries the label 1 and its multiplication is skipped
/// structurally. The flow is rescaled by the product of the nonzero a_it.
template <typename V>
FlowResult<V> permanent_trellis_impl(const Matrix<V>& a, int normalize_column) {
    int n = a.n;
    if (n > max_permanent_n())
        throw std::invalid_argument("permanent_trellis: n exceeds configured bound");
    int t = normalize_column;

    FlowResult<V> res{V(0), {}, 0, false, false};
    std::vector<char> row_normalized(n + 1, 0);
    Matrix<V> b = a;
    if (t > 0) {
        for (int i = 1; i <= n; ++i) {
            if (a.at(i, t) == V(0)) continue;
            row_normalized[i] = 1;
            for (int j = 1; j <= n; ++j) {
                if (j == t) {
                    b.at(i, j) = V(1);
                    continue;
                }
                b.at(i, j) = a.at(i, j) / a.at(i, t);
                ++res.counter.mults;
            }
        }
    }

    std::unordered_map<std::uint64_t, V> prev;
    prev.reserve(1);
    prev[0] = V(1);
    for (int j = 1; j <= n; ++j) {
        auto masks = detail::subsets_of_size(n, j);
        res.peak_width = std::max(res.peak_width, masks.size());
        std::unordered_map<std::uint64_t, V> cur;
        cur.reserve(masks.size());
        for (std::uint64_t mask : masks) {
            V acc(0);
            bool first = true;
            for (int i = 1; i <= n; ++i) {
                if (!(mask >> (i - 1) & 1)) continue;
                const V& mu = prev.at(mask & ~(std::uint64_t(1) << (i - 1)));
                V term;
                if (j == 1) {
                    term = b.at(i, j);
                } else if (j == t && row_normalized[i]) {
                    term = mu;  // label is the structural 1; no multiplication
                } else {
                    term = b.at(i, j) * mu;
                    ++res.counter.mults;
                }
                if (first) {
                    acc = std::move(term);
                    first = false;
                } else {
                    acc = acc + term;
                    ++res.counter.adds;
                }
            }
            cur.emplace(mask, std::move(acc));
        }
        prev = std::move(cur);
    }
    res.value = prev.at((std::uint64_t(1) << n) - 1);
    if (t > 0) {
        for (int i = 1; i <= n; ++i) {
            if (!row_normalized[i]) continue;
            res.value = res.value * a.at(i, t);
            ++res.counter.mults;
        }
    }
    return res;
}

template <typename V>
FlowResult<V> permanent_trellis(const Matrix<V>& a) {
    return permanent_trellis_impl(a, 0);
}

/// Normalized variant; t = 0 selects the default column floor(n/2) + 1.
template <typename V>
FlowResult<V> permanent_trellis_normalized(const Matrix<V>& a, int t = 0) {
    if (t == 0) t = a.n / 2 + 1;
    if (t < 1 || t > a.n)
        throw std::invalid_argument("permanent_trellis_normalized: bad column index");
    return permanent_trellis_impl(a, t);
}

}  // namespace permatrellis
