#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "trellis.hpp"

namespace permatrellis {

/// Repeated-row matrix of type m = m_1 ... m_t: t distinct rows a_1..a_t,
/// row a_l appearing m_l times. sum(m) = n.
struct RepeatedRowSpec {
    std::vector<std::vector<Rational>> rows;  // t rows of length n
    std::vector<int> mults;                   // t positive multiplicities

    int t() const { return (int)rows.size(); }
    int n() const { return rows.empty() ? 0 : (int)rows.front().size(); }

    void validate() const {
        if (rows.empty() || rows.size() != mults.size())
            throw std::invalid_argument("repeated-row spec: rows/mults mismatch");
        int nn = n();
        long long sum = 0;
        for (const auto& r : rows)
            if ((int)r.size() != nn)
                throw std::invalid_argument("repeated-row spec: ragged rows");
        for (int m : mults) {
            if (m < 1) throw std::invalid_argument("repeated-row spec: multiplicities must be >= 1");
            sum += m;
        }
        if (sum != nn)
            throw std::invalid_argument("repeated-row spec: multiplicities must sum to n");
    }

    /// The expanded n x n matrix with each row repeated.
    RationalMatrix expand() const {
        validate();
        RationalMatrix a(n());
        int i = 1;
        for (int l = 0; l < t(); ++l)
            for (int rep = 0; rep < mults[l]; ++rep, ++i)
                for (int j = 1; j <= n(); ++j) a.at(i, j) = rows[l][j - 1];
        return a;
    }
};

namespace detail {

inline std::string tuple_tag(const std::vector<int>& lambda) {
    std::string s = "(";
    for (std::size_t i = 0; i < lambda.size(); ++i)
        s += std::to_string(lambda[i]) + (i + 1 < lambda.size() ? "," : "");
    return s + ")";
}

}  // namespace detail

/// Shared builder for tuple-vertex trellises: vertices are integer tuples
/// with 0 <= lambda_l <= caps[l] and coordinate sum <= n; level = sum.
/// Edges increment exactly one coordinate l*, labeled label(l*, j) at edge
/// layer j. Returns the trellis together with the tuple of each vertex.
template <typename LabelFn>
std::pair<Trellis<Rational>, std::vector<std::vector<std::vector<int>>>> build_tuple_trellis(
    const std::vector<int>& caps, int n, LabelFn&& label) {
    int t = (int)caps.size();
    Trellis<Rational> tr;
    tr.levels.resize(n + 1);
    tr.edges.resize(n);
    std::vector<std::vector<std::vector<int>>> tuples(n + 1);

    // Mixed-radix rank over the caps, for O(1) predecessor lookup.
    std::vector<long long> stride(t, 1);
    for (int l = 1; l < t; ++l) stride[l] = stride[l - 1] * (caps[l - 1] + 1);
    auto rank = [&](const std::vector<int>& lam) {
        long long r = 0;
        for (int l = 0; l < t; ++l) r += stride[l] * lam[l];
        return r;
    };

    std::vector<std::vector<int>> index_by_level(n + 1);  // rank -> vertex index
    long long total = stride[t - 1] * (caps[t - 1] + 1);
    for (int j = 0; j <= n; ++j) index_by_level[j].assign(total, -1);

    // Enumerate tuples in rank order, bucketed by coordinate sum.
    std::vector<int> lam(t, 0);
    for (long long r = 0; r < total; ++r) {
        int sum = std::accumulate(lam.begin(), lam.end(), 0);
        if (sum <= n) {
            index_by_level[sum][r] = (int)tuples[sum].size();
            tuples[sum].push_back(lam);
            tr.levels[sum].push_back(detail::tuple_tag(lam));
        }
        for (int l = 0; l < t; ++l) {
            if (++lam[l] <= caps[l]) break;
            lam[l] = 0;
        }
    }

    for (int j = 1; j <= n; ++j) {
        for (std::size_t v = 0; v < tuples[j].size(); ++v) {
            std::vector<int> mu = tuples[j][v];
            for (int l = 0; l < t; ++l) {
                if (mu[l] == 0) continue;
                --mu[l];
                int u = index_by_level[j - 1][rank(mu)];
                ++mu[l];
                if (u >= 0) tr.edges[j - 1].push_back({u, (int)v, label(l, j)});
            }
        }
    }
    return {std::move(tr), std::move(tuples)};
}

/// Merged trellis for a repeated-row matrix: |V| = prod(m_l + 1),
/// |E| <= t |V|.
inline Trellis<Rational> build_repeated_trellis(const RepeatedRowSpec& spec) {
    spec.validate();
    auto [tr, tuples] = build_tuple_trellis(
        spec.mults, spec.n(), [&](int l, int j) { return spec.rows[l][j - 1]; });
    return tr;
}

struct RepeatedFlow {
    Rational permanent;                          // m_1! ... m_t! * mu(toor)
    Rational toor_flow;                          // mu(toor)
    OpCounter counter;
    std::size_t vertex_count = 0, edge_count = 0, peak_width = 0;
    std::vector<std::vector<std::vector<int>>> tuples;  // per level
    std::vector<std::vector<Rational>> flows;           // mu per level/vertex
};

/// Permanent of the expanded matrix via the merged trellis; the flow at
/// every vertex is retained since per(C(lambda)) = prod(lambda_l!) mu(lambda).
inline RepeatedFlow permanent_repeated(const RepeatedRowSpec& spec) {
    spec.validate();
    auto [tr, tuples] = build_tuple_trellis(
        spec.mults, spec.n(), [&](int l, int j) { return spec.rows[l][j - 1]; });
    auto flows = viterbi_flow_all<SumProductExact>(tr);
    RepeatedFlow out;
    out.tuples = std::move(tuples);
    out.flows = std::move(flows.mu);
    out.counter = flows.counter;
    out.vertex_count = tr.vertex_count();
    out.edge_count = tr.edge_count();
    out.peak_width = tr.peak_width();
    out.toor_flow = out.flows.back().front();
    Rational scale(1);
    for (int m : spec.mults) scale *= Rational(factorial(m));
    out.permanent = out.toor_flow * scale;
    return out;
}

/// prod(lambda_l!) * mu(lambda): equals per(C(lambda)), the |lambda| x
/// |lambda| repeated-row matrix of type lambda over the column prefix.
inline Rational intermediate_flow_check(const RepeatedFlow& flow,
                                        const std::vector<int>& lambda) {
    int j = std::accumulate(lambda.begin(), lambda.end(), 0);
    if (j < 0 || j >= (int)flow.tuples.size())
        throw std::invalid_argument("intermediate_flow_check: lambda out of bounds");
    for (std::size_t v = 0; v < flow.tuples[j].size(); ++v) {
        if (flow.tuples[j][v] != lambda) continue;
        Rational scale(1);
        for (int l : lambda) scale *= Rational(factorial(l));
        return flow.flows[j][v] * scale;
    }
    throw std::invalid_argument("intermediate_flow_check: lambda is not a vertex");
}

}  // namespace permatrellis
