#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "trellis.hpp"

namespace permatrellis {

/// Intersection trellis: product vertices per level, edges kept only where
/// both factors carry the same label. A cleanup pass removes product
/// vertices that are unreachable from the root side or cannot reach the
/// final level, so the result represents C(T) multiset-intersect C(T').
inline Trellis<int> intersect(const Trellis<int>& a, const Trellis<int>& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("intersect: trellises must have equal length");
    int n = a.length();

    // Product construction, keeping only matched-label edges.
    std::vector<std::vector<std::pair<int, int>>> verts(n + 1);
    std::vector<std::map<std::pair<int, int>, int>> index(n + 1);
    auto vertex_id = [&](int j, int va, int vb) {
        auto [it, fresh] = index[j].try_emplace({va, vb}, (int)verts[j].size());
        if (fresh) verts[j].push_back({va, vb});
        return it->second;
    };
    struct PEdge {
        int from, to, label;
    };
    std::vector<std::vector<PEdge>> edges(n);
    for (std::size_t va = 0; va < a.levels[0].size(); ++va)
        for (std::size_t vb = 0; vb < b.levels[0].size(); ++vb)
            vertex_id(0, (int)va, (int)vb);
    for (int j = 0; j < n; ++j) {
        for (const auto& ea : a.edges[j])
            for (const auto& eb : b.edges[j]) {
                if (ea.label != eb.label) continue;
                auto it = index[j].find({ea.from, eb.from});
                if (it == index[j].end()) continue;
                int u = it->second;
                int v = vertex_id(j + 1, ea.to, eb.to);
                edges[j].push_back({u, v, ea.label});
            }
    }

    // Cleanup: keep vertices both reachable from level 0 and co-reachable
    // to level n.
    std::vector<std::vector<char>> reach(n + 1), coreach(n + 1);
    for (int j = 0; j <= n; ++j) {
        reach[j].assign(verts[j].size(), j == 0 ? 1 : 0);
        coreach[j].assign(verts[j].size(), j == n ? 1 : 0);
    }
    for (int j = 0; j < n; ++j)
        for (const auto& e : edges[j])
            if (reach[j][e.from]) reach[j + 1][e.to] = 1;
    for (int j = n - 1; j >= 0; --j)
        for (const auto& e : edges[j])
            if (coreach[j + 1][e.to]) coreach[j][e.from] = 1;

    Trellis<int> out;
    out.levels.resize(n + 1);
    out.edges.resize(n);
    std::vector<std::vector<int>> remap(n + 1);
    for (int j = 0; j <= n; ++j) {
        remap[j].assign(verts[j].size(), -1);
        for (std::size_t v = 0; v < verts[j].size(); ++v) {
            if (!reach[j][v] || !coreach[j][v]) continue;
            remap[j][v] = (int)out.levels[j].size();
            auto [va, vb] = verts[j][v];
            out.levels[j].push_back(a.levels[j][va] + "," + b.levels[j][vb]);
        }
    }
    for (int j = 0; j < n; ++j)
        for (const auto& e : edges[j]) {
            int u = remap[j][e.from], v = remap[j + 1][e.to];
            if (u >= 0 && v >= 0) out.edges[j].push_back({u, v, e.label});
        }
    return out;
}

/// Structural isomorphism check for symbol-labeled trellises, up to vertex
/// tags. Vertices are given forward signatures (sorted incoming
/// (label, parent-signature) lists) and backward signatures; a trellis is
/// accepted only when the combined signature is unique per vertex, in
/// which case the induced bijection is verified edge by edge. Sufficient
/// for the trellis families built here, where past/future determine a
/// vertex.
inline bool level_isomorphic(const Trellis<int>& a, const Trellis<int>& b) {
    if (a.length() != b.length()) return false;
    for (int j = 0; j <= a.length(); ++j)
        if (a.levels[j].size() != b.levels[j].size()) return false;

    auto signatures = [](const Trellis<int>& t) {
        int n = t.length();
        std::vector<std::vector<std::string>> fwd(n + 1), bwd(n + 1);
        fwd[0].assign(t.levels[0].size(), "r");
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<std::string>> parts(t.levels[j + 1].size());
            for (const auto& e : t.edges[j])
                parts[e.to].push_back(std::to_string(e.label) + ":" + fwd[j][e.from]);
            fwd[j + 1].resize(parts.size());
            for (std::size_t v = 0; v < parts.size(); ++v) {
                std::sort(parts[v].begin(), parts[v].end());
                std::string s = "(";
                for (auto& p : parts[v]) s += p + ";";
                fwd[j + 1][v] = s + ")";
            }
        }
        bwd[n].assign(t.levels[n].size(), "t");
        for (int j = n - 1; j >= 0; --j) {
            std::vector<std::vector<std::string>> parts(t.levels[j].size());
            for (const auto& e : t.edges[j])
                parts[e.from].push_back(std::to_string(e.label) + ":" + bwd[j + 1][e.to]);
            bwd[j].resize(parts.size());
            for (std::size_t v = 0; v < parts.size(); ++v) {
                std::sort(parts[v].begin(), parts[v].end());
                std::string s = "(";
                for (auto& p : parts[v]) s += p + ";";
                bwd[j][v] = s + ")";
            }
        }
        std::vector<std::vector<std::string>> sig(n + 1);
        for (int j = 0; j <= n; ++j) {
            sig[j].resize(t.levels[j].size());
            for (std::size_t v = 0; v < sig[j].size(); ++v)
                sig[j][v] = fwd[j][v] + "|" + bwd[j][v];
        }
        return sig;
    };

    auto sa = signatures(a);
    auto sb = signatures(b);
    std::vector<std::vector<int>> match(a.length() + 1);  // a-index -> b-index
    for (int j = 0; j <= a.length(); ++j) {
        std::map<std::string, int> where;
        for (std::size_t v = 0; v < sb[j].size(); ++v)
            if (!where.emplace(sb[j][v], (int)v).second) return false;  // ambiguous
        match[j].resize(sa[j].size());
        std::set<int> used;
        for (std::size_t v = 0; v < sa[j].size(); ++v) {
            auto it = where.find(sa[j][v]);
            if (it == where.end() || !used.insert(it->second).second) return false;
            match[j][v] = it->second;
        }
    }
    for (int j = 0; j < a.length(); ++j) {
        std::set<std::tuple<int, int, int>> ea, eb;
        for (const auto& e : a.edges[j]) ea.insert({match[j][e.from], match[j + 1][e.to], e.label});
        for (const auto& e : b.edges[j]) eb.insert({e.from, e.to, e.label});
        if (ea != eb) return false;
    }
    return true;
}

}  // namespace permatrellis
