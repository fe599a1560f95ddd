#pragma once

#include <stdexcept>
#include <string>

#include "path_multiset.hpp"

namespace permatrellis {

/// Mergeability test (desk-scale): v, v' are mergeable iff
///   P(v)F(v) + P(v')F(v') = P(v)F(v') + P(v')F(v)   in Q[Sigma^+].
inline bool is_mergeable(const Trellis<SymbolCombo>& t, int level, int v1, int v2,
                         std::size_t cap = 1000000) {
    if (v1 == v2) throw std::invalid_argument("is_mergeable: vertices must be distinct");
    if (level < 0 || level >= (int)t.levels.size())
        throw std::invalid_argument("is_mergeable: level out of range");
    auto past = past_sets(t, cap);
    auto fut = future_sets(t, cap);
    const auto& p1 = past[level][v1];
    const auto& p2 = past[level][v2];
    const auto& f1 = fut[level][v1];
    const auto& f2 = fut[level][v2];
    PathMultiset lhs = pm_add(pm_concat(p1, f1), pm_concat(p2, f2));
    PathMultiset rhs = pm_add(pm_concat(p1, f2), pm_concat(p2, f1));
    return lhs == rhs;
}

inline bool is_mergeable(const Trellis<int>& t, int level, int v1, int v2,
                         std::size_t cap = 1000000) {
    return is_mergeable(to_combo_trellis(t), level, v1, v2, cap);
}

/// Merge two vertices of the same level: incoming labels are added,
/// outgoing labels are averaged (missing edges count as zero, so a
/// one-sided outgoing edge is halved). Mergeability is a caller
/// obligation and is not re-verified here.
inline Trellis<SymbolCombo> merge_vertices(const Trellis<SymbolCombo>& t, int level,
                                           int v1, int v2) {
    if (v1 == v2) throw std::invalid_argument("merge_vertices: vertices must be distinct");
    if (level <= 0 || level >= (int)t.levels.size())
        throw std::invalid_argument("merge_vertices: level out of range");
    if (v1 > v2) std::swap(v1, v2);

    Trellis<SymbolCombo> out;
    out.levels = t.levels;
    out.edges = t.edges;

    // New index map for the merged level: v1, v2 -> merged slot (placed last).
    auto& lv = out.levels[level];
    std::string merged_tag = t.levels[level][v1] + "+" + t.levels[level][v2];
    std::vector<int> remap(lv.size());
    {
        std::vector<std::string> tags;
        int idx = 0;
        for (int i = 0; i < (int)lv.size(); ++i) {
            if (i == v1 || i == v2) continue;
            remap[i] = idx++;
            tags.push_back(lv[i]);
        }
        remap[v1] = remap[v2] = idx;
        tags.push_back(std::move(merged_tag));
        lv = std::move(tags);
    }
    int merged = remap[v1];

    if (level > 0) {
        std::map<int, SymbolCombo> incoming;  // keyed by source vertex
        std::vector<typename Trellis<SymbolCombo>::Edge> kept;
        for (const auto& e : out.edges[level - 1]) {
            if (e.to == v1 || e.to == v2)
                incoming[e.from] = combo_add(incoming[e.from], e.label);
            else
                kept.push_back({e.from, remap[e.to], e.label});
        }
        for (auto& [w, label] : incoming) kept.push_back({w, merged, std::move(label)});
        out.edges[level - 1] = std::move(kept);
    }
    if (level < (int)out.edges.size()) {
        std::map<int, SymbolCombo> outgoing;  // keyed by destination vertex
        std::vector<typename Trellis<SymbolCombo>::Edge> kept;
        for (const auto& e : out.edges[level]) {
            if (e.from == v1 || e.from == v2)
                outgoing[e.to] = combo_add(outgoing[e.to], e.label);
            else
                kept.push_back({remap[e.from], e.to, e.label});
        }
        for (auto& [w, label] : outgoing)
            kept.push_back({merged, w, combo_scale(label, Rational(1, 2))});
        out.edges[level] = std::move(kept);
    }
    return out;
}

/// Exhaustive search for one mergeable pair; returns {level, v1, v2} or
/// {-1, -1, -1} if the trellis is fully merged.
struct MergeablePair {
    int level = -1, v1 = -1, v2 = -1;
    explicit operator bool() const { return level >= 0; }
};

inline MergeablePair find_mergeable_pair(const Trellis<SymbolCombo>& t,
                                         std::size_t cap = 1000000) {
    auto past = past_sets(t, cap);
    auto fut = future_sets(t, cap);
    for (int j = 1; j + 1 < (int)t.levels.size(); ++j) {
        int w = (int)t.levels[j].size();
        for (int a = 0; a < w; ++a)
            for (int b = a + 1; b < w; ++b) {
                PathMultiset lhs = pm_add(pm_concat(past[j][a], fut[j][a]),
                                          pm_concat(past[j][b], fut[j][b]));
                PathMultiset rhs = pm_add(pm_concat(past[j][a], fut[j][b]),
                                          pm_concat(past[j][b], fut[j][a]));
                if (lhs == rhs) return {j, a, b};
            }
    }
    return {};
}

/// Biproperness: all outgoing labels distinct at every vertex and all
/// incoming labels distinct at every vertex. Defined for symbol labels.
inline bool is_biproper(const Trellis<int>& t) {
    for (int j = 0; j < t.length(); ++j) {
        std::set<std::pair<int, int>> out_seen, in_seen;
        for (const auto& e : t.edges[j]) {
            if (!out_seen.insert({e.from, e.label}).second) return false;
            if (!in_seen.insert({e.to, e.label}).second) return false;
        }
    }
    return true;
}

}  // namespace permatrellis
