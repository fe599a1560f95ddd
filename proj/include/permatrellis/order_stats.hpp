#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "repeated.hpp"
#include "trellis.hpp"

namespace permatrellis {

/// Joint order-statistics query: t thresholds x_1 < ... < x_t, ranks
/// r_1 < ... < r_t, and cdf[j][l] = P(X_j <= x_l) for n independent
/// (non-identical) random variables X_1..X_n.
struct OrderStatQuery {
    int n = 0, t = 0;
    std::vector<int> ranks;                     // r_1 < ... < r_t in [n]
    std::vector<std::vector<Rational>> cdf;     // n rows of t values

    void validate() const {
        if (n < 1 || t < 1) throw std::invalid_argument("order query: need n, t >= 1");
        if ((int)ranks.size() != t) throw std::invalid_argument("order query: rank count != t");
        for (int l = 0; l < t; ++l) {
            if (ranks[l] < 1 || ranks[l] > n)
                throw std::invalid_argument("order query: rank out of [n]");
            if (l > 0 && ranks[l] <= ranks[l - 1])
                throw std::invalid_argument("order query: ranks must be strictly increasing");
        }
        if ((int)cdf.size() != n) throw std::invalid_argument("order query: cdf needs n rows");
        for (const auto& row : cdf) {
            if ((int)row.size() != t) throw std::invalid_argument("order query: cdf row width != t");
            for (int l = 0; l < t; ++l) {
                if (row[l] < 0 || row[l] > 1)
                    throw std::invalid_argument("order query: cdf value outside [0,1]");
                if (l > 0 && row[l] < row[l - 1])
                    throw std::invalid_argument("order query: cdf row not monotone");
            }
        }
    }
};

/// The (t+1) x n increment matrix: column j splits the unit mass of X_j
/// across the t+1 intervals cut by the thresholds.
struct BMatrix {
    int n = 0, t = 0;
    std::vector<std::vector<Rational>> b;  // (t+1) rows of n values

    const Rational& at(int l, int j) const { return b[l - 1][j - 1]; }  // 1-based
};

inline BMatrix build_b_matrix(const OrderStatQuery& q) {
    q.validate();
    BMatrix m;
    m.n = q.n;
    m.t = q.t;
    m.b.assign(q.t + 1, std::vector<Rational>(q.n));
    for (int j = 0; j < q.n; ++j) {
        m.b[0][j] = q.cdf[j][0];
        for (int l = 1; l < q.t; ++l) m.b[l][j] = q.cdf[j][l] - q.cdf[j][l - 1];
        m.b[q.t][j] = Rational(1) - q.cdf[j][q.t - 1];
    }
    return m;
}

struct OrderTrellis {
    Trellis<Rational> trellis;
    std::vector<std::vector<std::vector<int>>> tuples;  // per level
    std::size_t definition_vertex_count = 0;            // prod(n - r_{l-1} + 1)
};

/// Trellis over (t+1)-tuples lambda with 0 <= lambda_l <= n - r_{l-1}
/// (r_0 = 0); lambda lives on level sum(lambda), and tuples whose sum
/// exceeds n sit isolated on level n with zero flow. Edge labels are
/// b_{l* j}.
inline OrderTrellis build_order_trellis(const BMatrix& b, const std::vector<int>& ranks) {
    int n = b.n, t = b.t;
    if ((int)ranks.size() != t) throw std::invalid_argument("order trellis: rank count != t");
    std::vector<int> caps(t + 1);
    for (int l = 0; l <= t; ++l) caps[l] = n - (l == 0 ? 0 : ranks[l - 1]);
    for (int c : caps)
        if (c < 0) throw std::invalid_argument("order trellis: negative cap");

    OrderTrellis out;
    auto built = build_tuple_trellis(caps, n, [&](int l, int j) { return b.at(l + 1, j); });
    out.trellis = std::move(built.first);
    out.tuples = std::move(built.second);

    std::size_t def_count = 1;
    for (int c : caps) def_count *= std::size_t(c) + 1;
    out.definition_vertex_count = def_count;

    // Tuples with coordinate sum > n belong to the vertex set verbatim but
    // fit no earlier level; they are kept at level n, edgeless.
    std::vector<int> lam(t + 1, 0);
    for (std::size_t r = 0; r < def_count; ++r) {
        if (std::accumulate(lam.begin(), lam.end(), 0) > n) {
            out.trellis.levels[n].push_back(detail::tuple_tag(lam));
            out.tuples[n].push_back(lam);
        }
        for (int l = 0; l <= t; ++l) {
            if (++lam[l] <= caps[l]) break;
            lam[l] = 0;
        }
    }
    return out;
}

struct OrderStatResult {
    Rational probability;
    OpCounter counter;
    std::size_t vertex_count = 0, edge_count = 0;
    std::vector<std::vector<int>> final_tuples;  // level-n tuples with sum n
    std::vector<Rational> final_flows;           // F(i_1,...,i_t) per tuple
};

/// P(X_{(r_1)} <= x_1, ..., X_{(r_t)} <= x_t): Viterbi flow on the order
/// trellis, then the flows of the level-n vertices whose prefix sums
/// dominate the ranks are added up.
inline OrderStatResult joint_probability(const OrderStatQuery& q) {
    q.validate();
    BMatrix b = build_b_matrix(q);
    OrderTrellis ot = build_order_trellis(b, q.ranks);
    auto flows = viterbi_flow_all<SumProductExact>(ot.trellis);

    OrderStatResult res;
    res.counter = flows.counter;
    res.vertex_count = ot.trellis.vertex_count();
    res.edge_count = ot.trellis.edge_count();

    bool first = true;
    res.probability = Rational(0);
    for (std::size_t v = 0; v < ot.tuples[q.n].size(); ++v) {
        const auto& lam = ot.tuples[q.n][v];
        if (std::accumulate(lam.begin(), lam.end(), 0) != q.n) continue;
        res.final_tuples.push_back(lam);
        res.final_flows.push_back(flows.mu[q.n][v]);
        int prefix = 0;
        bool ok = true;
        for (int l = 0; l < q.t; ++l) {
            prefix += lam[l];
            if (prefix < q.ranks[l]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (first) {
            res.probability = flows.mu[q.n][v];
            first = false;
        } else {
            res.probability += flows.mu[q.n][v];
            ++res.counter.adds;
        }
    }
    return res;
}

/// F(i_1,...,i_t) by direct evaluation: per of the expanded repeated-row
/// matrix over the b-columns, divided by the factorial product. `m` is the
/// block-size tuple (i_1, i_2-i_1, ..., n-i_t); the permanent evaluator is
/// injected to avoid a dependency cycle.
template <typename NaivePermanent>
Rational order_F_oracle(const BMatrix& b, const std::vector<int>& m, NaivePermanent&& per) {
    if ((int)m.size() != b.t + 1)
        throw std::invalid_argument("order_F_oracle: block tuple must have t+1 entries");
    int n = 0;
    for (int v : m) {
        if (v < 0) throw std::invalid_argument("order_F_oracle: negative block size");
        n += v;
    }
    if (n != b.n) throw std::invalid_argument("order_F_oracle: block sizes must sum to n");
    RationalMatrix expanded(n);
    int row = 1;
    for (int l = 0; l <= b.t; ++l)
        for (int rep = 0; rep < m[l]; ++rep, ++row)
            for (int j = 1; j <= n; ++j) expanded.at(row, j) = b.at(l + 1, j);
    Rational denom(1);
    for (int l = 0; l <= b.t; ++l) denom *= Rational(factorial(m[l]));
    return per(expanded) / denom;
}

/// Desk-scale oracle: sum F(i_1,...,i_t) over all final index tuples with
/// i_l >= r_l and i_1 <= ... <= i_t.
template <typename NaivePermanent>
Rational joint_probability_oracle(const OrderStatQuery& q, NaivePermanent&& per) {
    q.validate();
    BMatrix b = build_b_matrix(q);
    int n = q.n, t = q.t;

    Rational total(0);
    std::vector<int> cur(t, 0);  // odometer over (i_1..i_t) in [r_l, n]
    for (int l = 0; l < t; ++l) cur[l] = q.ranks[l];
    while (true) {
        bool nondecreasing = true;
        for (int l = 1; l < t; ++l)
            if (cur[l] < cur[l - 1]) nondecreasing = false;
        if (nondecreasing) {
            std::vector<int> m(t + 1);
            int prev = 0;
            for (int l = 0; l <= t; ++l) {
                int next = (l == t) ? n : cur[l];
                m[l] = next - prev;
                prev = next;
            }
            total += order_F_oracle(b, m, per);
        }
        int l = t - 1;
        while (l >= 0 && cur[l] == n) {
            cur[l] = q.ranks[l];
            --l;
        }
        if (l < 0) break;
        ++cur[l];
    }
    return total;
}

}  // namespace permatrellis
