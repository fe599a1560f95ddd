#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "semiring.hpp"

namespace permatrellis {

/// Formal Q-linear combination of alphabet symbols. A plain symbol is a
/// unit combination; vertex merging may introduce fractional coefficients.
using SymbolCombo = std::map<int, Rational>;

inline SymbolCombo make_combo(int symbol) { return SymbolCombo{{symbol, Rational(1)}}; }

inline SymbolCombo combo_add(const SymbolCombo& a, const SymbolCombo& b) {
    SymbolCombo r = a;
    for (const auto& [sym, c] : b) {
        auto& slot = r[sym];
        slot += c;
        if (slot == 0) r.erase(sym);
    }
    return r;
}

inline SymbolCombo combo_scale(const SymbolCombo& a, const Rational& s) {
    SymbolCombo r;
    if (s == 0) return r;
    for (const auto& [sym, c] : a) r.emplace(sym, c * s);
    return r;
}

/// Leveled edge-labeled DAG. Level j holds the vertex tags of V_j; edge
/// layer j holds the edges from V_j to V_{j+1}. Vertices are identified by
/// (level, index). Parallel edges are forbidden.
template <typename L>
struct Trellis {
    struct Edge {
        int from;  // index into levels[j]
        int to;    // index into levels[j+1]
        L label;
    };

    std::vector<std::vector<std::string>> levels;   // size length()+1
    std::vector<std::vector<Edge>> edges;           // size length()

    int length() const { return static_cast<int>(edges.size()); }
    std::size_t vertex_count() const {
        std::size_t v = 0;
        for (const auto& lv : levels) v += lv.size();
        return v;
    }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& layer : edges) e += layer.size();
        return e;
    }
    std::size_t peak_width() const {
        std::size_t w = 0;
        for (const auto& lv : levels) w = std::max(w, lv.size());
        return w;
    }
    int root_degree() const { return edges.empty() ? 0 : static_cast<int>(edges.front().size()); }
};

template <typename L>
void validate(const Trellis<L>& t) {
    if (t.levels.size() != t.edges.size() + 1)
        throw std::invalid_argument("trellis: levels/edges size mismatch");
    for (int j = 0; j < t.length(); ++j) {
        std::vector<std::pair<int, int>> seen;
        for (const auto& e : t.edges[j]) {
            if (e.from < 0 || e.from >= (int)t.levels[j].size() || e.to < 0 ||
                e.to >= (int)t.levels[j + 1].size())
                throw std::invalid_argument("trellis: edge endpoint out of range");
            seen.emplace_back(e.from, e.to);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("trellis: parallel edges are forbidden");
    }
}

/// Closed-form complexity of a Viterbi flow on this trellis, from the graph
/// alone: |E| - deg(root) multiplications, |E| - |V| + 1 additions,
/// max_j |V_j| space.
struct ComplexityMeasures {
    std::uint64_t mults;
    std::uint64_t adds;
    std::uint64_t space;
};

template <typename L>
ComplexityMeasures complexity_measures(const Trellis<L>& t) {
    std::uint64_t e = t.edge_count();
    std::uint64_t v = t.vertex_count();
    return {e - t.root_degree(), e - v + 1, t.peak_width()};
}

template <typename V>
struct FlowResult {
    V value;
    OpCounter counter;
    std::size_t peak_width = 0;
    bool empty_flow = false;       // no root-to-toor path
    bool had_unreachable = false;  // some vertex had no incoming edge
};

namespace detail {

// Edges of one layer bucketed by destination, preserving stored order
// within each bucket (the flow contract fixes the per-vertex reduction
// order regardless of parallelism).
template <typename L>
std::vector<std::vector<const typename Trellis<L>::Edge*>> bucket_by_destination(
    const Trellis<L>& t, int layer) {
    std::vector<std::vector<const typename Trellis<L>::Edge*>> in(t.levels[layer + 1].size());
    for (const auto& e : t.edges[layer]) in[e.to].push_back(&e);
    return in;
}

}  // namespace detail

/// Viterbi flow over a scalar-labeled trellis. Keeps exactly two level
/// buffers. Multiplications on edges leaving the root are skipped since
/// mu(root) is the semiring one; this realizes the |E| - deg(root) count.
/// Optional level parallelism splits the vertices of a level across
/// threads; each vertex still reduces its incoming edges sequentially.
template <typename S>
FlowResult<typename S::Value> viterbi_flow(const Trellis<typename S::Value>& t,
                                           int threads = 1) {
    using V = typename S::Value;
    if (t.levels.empty() || t.levels.front().size() != 1)
        throw std::invalid_argument("viterbi_flow: |V_0| must be 1");

    FlowResult<V> result{S::zero(), {}, t.peak_width(), false, false};
    std::vector<V> prev{S::one()};
    std::vector<char> prev_live{1};

    for (int j = 0; j < t.length(); ++j) {
        auto in = detail::bucket_by_destination(t, j);
        std::size_t width = t.levels[j + 1].size();
        std::vector<V> cur(width, S::zero());
        std::vector<char> cur_live(width, 0);
        if (width == 0) {
            result.empty_flow = true;
            result.value = S::zero();
            return result;
        }

        std::vector<OpCounter> counters(std::max(threads, 1));
        auto run = [&](std::size_t lo, std::size_t hi, OpCounter& ctr) {
            for (std::size_t v = lo; v < hi; ++v) {
                bool first = true;
                for (const auto* e : in[v]) {
                    if (!prev_live[e->from]) continue;
                    V term = (j == 0) ? e->label
                                      : counted_mul<S>(ctr, e->label, prev[e->from]);
                    if (first) {
                        cur[v] = term;
                        first = false;
                    } else {
                        cur[v] = counted_add<S>(ctr, cur[v], term);
                    }
                }
                cur_live[v] = first ? 0 : 1;
            }
        };

        if (threads <= 1 || width < 64) {
            run(0, width, counters[0]);
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (width + threads - 1) / threads;
            for (int k = 0; k < threads; ++k) {
                std::size_t lo = std::min(width, k * chunk);
                std::size_t hi = std::min(width, lo + chunk);
                if (lo < hi) pool.emplace_back(run, lo, hi, std::ref(counters[k]));
            }
            for (auto& th : pool) th.join();
        }
        for (const auto& c : counters) result.counter += c;
        for (char live : cur_live)
            if (!live) result.had_unreachable = true;

        prev = std::move(cur);
        prev_live = std::move(cur_live);
    }

    if (t.levels.back().size() != 1 || !prev_live[0]) {
        result.empty_flow = true;
        result.value = S::zero();
        return result;
    }
    result.value = prev[0];
    return result;
}

/// Like viterbi_flow but retains mu(v) for every vertex. Used where the
/// intermediate flows themselves are meaningful (repeated rows, order
/// statistics). Same counting conventions.
template <typename S>
struct AllFlows {
    std::vector<std::vector<typename S::Value>> mu;  // per level, per vertex
    std::vector<std::vector<char>> live;
    OpCounter counter;
};

template <typename S>
AllFlows<S> viterbi_flow_all(const Trellis<typename S::Value>& t) {
    using V = typename S::Value;
    if (t.levels.empty() || t.levels.front().size() != 1)
        throw std::invalid_argument("viterbi_flow_all: |V_0| must be 1");
    AllFlows<S> r;
    r.mu.resize(t.levels.size());
    r.live.resize(t.levels.size());
    r.mu[0] = {S::one()};
    r.live[0] = {1};
    for (int j = 0; j < t.length(); ++j) {
        auto in = detail::bucket_by_destination(t, j);
        std::size_t width = t.levels[j + 1].size();
        r.mu[j + 1].assign(width, S::zero());
        r.live[j + 1].assign(width, 0);
        for (std::size_t v = 0; v < width; ++v) {
            bool first = true;
            for (const auto* e : in[v]) {
                if (!r.live[j][e->from]) continue;
                V term = (j == 0) ? e->label
                                  : counted_mul<S>(r.counter, e->label, r.mu[j][e->from]);
                if (first) {
                    r.mu[j + 1][v] = term;
                    first = false;
                } else {
                    r.mu[j + 1][v] = counted_add<S>(r.counter, r.mu[j + 1][v], term);
                }
            }
            r.live[j + 1][v] = first ? 0 : 1;
        }
    }
    return r;
}

/// Relabel a symbol trellis into a semiring trellis via a callback
/// label(symbol, layer) with layer in [1..length].
template <typename V, typename F>
Trellis<V> relabel(const Trellis<int>& t, F&& label) {
    Trellis<V> out;
    out.levels = t.levels;
    out.edges.resize(t.edges.size());
    for (int j = 0; j < t.length(); ++j) {
        out.edges[j].reserve(t.edges[j].size());
        for (const auto& e : t.edges[j])
            out.edges[j].push_back({e.from, e.to, label(e.label, j + 1)});
    }
    return out;
}

inline Trellis<SymbolCombo> to_combo_trellis(const Trellis<int>& t) {
    return relabel<SymbolCombo>(t, [](int sym, int) { return make_combo(sym); });
}

}  // namespace permatrellis
