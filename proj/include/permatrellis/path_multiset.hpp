#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "trellis.hpp"

namespace permatrellis {

using Word = std::vector<int>;

/// Formal rational-coefficient sum over label strings: an element of the
/// semigroup algebra Q[Sigma^+] restricted to fixed-length words. Zero
/// coefficients are never stored.
using PathMultiset = std::map<Word, Rational>;

inline void pm_accumulate(PathMultiset& into, const Word& w, const Rational& c) {
    if (c == 0) return;
    auto& slot = into[w];
    slot += c;
    if (slot == 0) into.erase(w);
}

inline PathMultiset pm_add(const PathMultiset& a, const PathMultiset& b) {
    PathMultiset r = a;
    for (const auto& [w, c] : b) pm_accumulate(r, w, c);
    return r;
}

/// Concatenation product in Q[Sigma^+].
inline PathMultiset pm_concat(const PathMultiset& a, const PathMultiset& b) {
    PathMultiset r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            pm_accumulate(r, w, ca * cb);
        }
    return r;
}

struct EnumerationCapExceeded : std::runtime_error {
    EnumerationCapExceeded() : std::runtime_error("path enumeration cap exceeded") {}
};

namespace detail {

inline void check_cap(std::size_t entries, std::size_t cap) {
    if (entries > cap) throw EnumerationCapExceeded();
}

}  // namespace detail

/// P(v) for every vertex: the multiset of label strings of root-to-v paths.
inline std::vector<std::vector<PathMultiset>> past_sets(const Trellis<SymbolCombo>& t,
                                                        std::size_t cap = 1000000) {
    std::vector<std::vector<PathMultiset>> past(t.levels.size());
    past[0].assign(t.levels[0].size(), {});
    std::size_t entries = 0;
    if (!t.levels[0].empty()) past[0][0] = {{Word{}, Rational(1)}};
    for (int j = 0; j < t.length(); ++j) {
        past[j + 1].assign(t.levels[j + 1].size(), {});
        for (const auto& e : t.edges[j]) {
            for (const auto& [w, c] : past[j][e.from]) {
                for (const auto& [sym, lc] : e.label) {
                    Word ext = w;
                    ext.push_back(sym);
                    pm_accumulate(past[j + 1][e.to], ext, c * lc);
                    detail::check_cap(++entries, cap);
                }
            }
        }
    }
    return past;
}

/// F(v) for every vertex: the multiset of label strings of v-to-toor paths.
inline std::vector<std::vector<PathMultiset>> future_sets(const Trellis<SymbolCombo>& t,
                                                          std::size_t cap = 1000000) {
    std::vector<std::vector<PathMultiset>> fut(t.levels.size());
    int n = t.length();
    fut[n].assign(t.levels[n].size(), {});
    std::size_t entries = 0;
    for (std::size_t v = 0; v < t.levels[n].size(); ++v)
        fut[n][v] = {{Word{}, Rational(1)}};
    for (int j = n - 1; j >= 0; --j) {
        fut[j].assign(t.levels[j].size(), {});
        for (const auto& e : t.edges[j]) {
            for (const auto& [w, c] : fut[j + 1][e.to]) {
                for (const auto& [sym, lc] : e.label) {
                    Word ext;
                    ext.reserve(w.size() + 1);
                    ext.push_back(sym);
                    ext.insert(ext.end(), w.begin(), w.end());
                    pm_accumulate(fut[j][e.from], ext, c * lc);
                    detail::check_cap(++entries, cap);
                }
            }
        }
    }
    return fut;
}

/// C(T): the multiset of root-to-toor label strings. Desk-scale oracle.
inline PathMultiset enumerate_paths(const Trellis<SymbolCombo>& t,
                                    std::size_t cap = 1000000) {
    if (t.levels.front().size() != 1)
        throw std::invalid_argument("enumerate_paths: |V_0| must be 1");
    auto past = past_sets(t, cap);
    PathMultiset r;
    for (const auto& pm : past.back())
        for (const auto& [w, c] : pm) pm_accumulate(r, w, c);
    return r;
}

inline PathMultiset enumerate_paths(const Trellis<int>& t, std::size_t cap = 1000000) {
    return enumerate_paths(to_combo_trellis(t), cap);
}

/// Rectangularity check: for every split position, ac, ad, bc in C implies
/// bd in C. Requires positive integer multiplicities.
inline bool is_rectangular(const PathMultiset& code) {
    for (const auto& [w, c] : code) {
        (void)w;
        if (c.get_den() != 1 || c <= 0)
            throw std::invalid_argument("is_rectangular: coefficients must be positive integers");
    }
    if (code.empty()) return true;
    std::size_t n = code.begin()->first.size();
    for (std::size_t split = 1; split + 1 <= n && split < n; ++split) {
        std::map<Word, std::set<Word>> suffixes_of;
        for (const auto& [w, c] : code) {
            (void)c;
            Word pre(w.begin(), w.begin() + split), suf(w.begin() + split, w.end());
            suffixes_of[pre].insert(std::move(suf));
        }
        std::vector<const std::set<Word>*> groups;
        for (const auto& [pre, sufs] : suffixes_of) {
            (void)pre;
            groups.push_back(&sufs);
        }
        for (std::size_t a = 0; a < groups.size(); ++a)
            for (std::size_t b = a + 1; b < groups.size(); ++b) {
                if (*groups[a] == *groups[b]) continue;
                // Differing suffix sets must be disjoint.
                for (const auto& s : *groups[a])
                    if (groups[b]->count(s)) return false;
            }
    }
    return true;
}

}  // namespace permatrellis
