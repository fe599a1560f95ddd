#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "matrix.hpp"
#include "trellis.hpp"

namespace permatrellis {

/// Bernoulli sparsity model: each entry of an n x n matrix is nonzero
/// with probability p = d/n, independently.
struct SparseModel {
    int n = 0;
    Rational d;  // expected nonzeros per row/column, 0 < d < n
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("sparse model: n must be positive");
        if (d <= 0 || d >= n) throw std::invalid_argument("sparse model: need 0 < d < n");
    }
};

/// Reproducible sample from the model; nonzero values are drawn uniformly
/// from {1..16} so the support analysis is cancellation-free.
inline RationalMatrix random_sparse_matrix(const SparseModel& m) {
    m.validate();
    std::mt19937_64 rng(m.seed);
    // p = d/n as an exact rational num/den; entry nonzero iff a uniform
    // draw from [0, den) lands below num.
    Rational p = m.d / m.n;
    unsigned long num = mpz_class(p.get_num()).get_ui();
    unsigned long den = mpz_class(p.get_den()).get_ui();
    std::uniform_int_distribution<unsigned long> support(0, den - 1);
    std::uniform_int_distribution<int> value(1, 16);
    RationalMatrix a(m.n);
    for (int i = 1; i <= m.n; ++i)
        for (int j = 1; j <= m.n; ++j) {
            if (support(rng) < num) a.at(i, j) = Rational(value(rng));
        }
    return a;
}

/// Forward construction of the sparse trellis: starting from the empty
/// set, extend each level-(j-1) subset u by every row i not in u with
/// a_ij != 0. With backward_prune, vertices that cannot reach the toor
/// (non-essential ones) are removed in a reverse sweep.
template <typename V>
Trellis<V> build_sparse_trellis(const Matrix<V>& a, bool backward_prune) {
    int n = a.n;
    if (n < 1 || n > 62) throw std::invalid_argument("build_sparse_trellis: n out of range");
    std::vector<std::vector<std::uint64_t>> masks(n + 1);
    std::vector<std::unordered_map<std::uint64_t, int>> index(n + 1);
    masks[0] = {0};
    index[0][0] = 0;

    Trellis<V> t;
    t.levels.resize(n + 1);
    t.edges.resize(n);
    t.levels[0] = {detail::subset_tag(0)};
    for (int j = 1; j <= n; ++j) {
        for (std::size_t u = 0; u < masks[j - 1].size(); ++u) {
            std::uint64_t um = masks[j - 1][u];
            for (int i = 1; i <= n; ++i) {
                if (um >> (i - 1) & 1) continue;
                if (a.at(i, j) == V(0)) continue;
                std::uint64_t vm = um | (std::uint64_t(1) << (i - 1));
                auto [it, fresh] = index[j].try_emplace(vm, (int)masks[j].size());
                if (fresh) {
                    masks[j].push_back(vm);
                    t.levels[j].push_back(detail::subset_tag(vm));
                }
                t.edges[j - 1].push_back({(int)u, it->second, a.at(i, j)});
            }
        }
    }

    if (!backward_prune) return t;

    std::vector<std::vector<char>> coreach(n + 1);
    for (int j = 0; j <= n; ++j) coreach[j].assign(t.levels[j].size(), j == n ? 1 : 0);
    for (int j = n - 1; j >= 0; --j)
        for (const auto& e : t.edges[j])
            if (coreach[j + 1][e.to]) coreach[j][e.from] = 1;

    Trellis<V> out;
    out.levels.resize(n + 1);
    out.edges.resize(n);
    std::vector<std::vector<int>> remap(n + 1);
    for (int j = 0; j <= n; ++j) {
        remap[j].assign(t.levels[j].size(), -1);
        for (std::size_t v = 0; v < t.levels[j].size(); ++v) {
            if (!coreach[j][v]) continue;
            remap[j][v] = (int)out.levels[j].size();
            out.levels[j].push_back(t.levels[j][v]);
        }
    }
    for (int j = 0; j < n; ++j)
        for (const auto& e : t.edges[j]) {
            int u = remap[j][e.from], v = remap[j + 1][e.to];
            if (u >= 0 && v >= 0) out.edges[j].push_back({u, v, e.label});
        }
    return out;
}

/// per(A) on the pruned sparse trellis. An all-pruned trellis (some level
/// empty) means per(A) = 0.
template <typename V>
FlowResult<V> permanent_sparse(const Matrix<V>& a) {
    Trellis<V> t = build_sparse_trellis(a, true);
    for (const auto& lv : t.levels)
        if (lv.empty()) return {V(0), {}, 0, true, false};
    return viterbi_flow<typename SumProductFor<V>::type>(t);
}

/// U(n): exact expected-vertex upper bound for the forward sparse trellis,
///   U(n) = sum_j sum_k (-1)^k C(n,j) C(j,k) (q^k - q^j)^j,  q = 1 - d/n,
/// with 0^0 = 1 for the j = 0 term. The inner sum for each j is evaluated
/// over the common denominator den(q)^{j^2} in integers; the alternating
/// sum is hopeless in floating point.
inline Rational expected_vertices_U(int n, const Rational& d) {
    if (n < 1) throw std::invalid_argument("expected_vertices_U: n must be positive");
    if (d >= n) throw std::invalid_argument("expected_vertices_U: need d < n");
    Rational q = Rational(1) - d / n;
    BigInt qn = q.get_num(), qd = q.get_den();

    Rational total(1);  // j = 0 term: C(n,0) * C(0,0) * (q^0 - q^0)^0 = 1
    std::vector<BigInt> qn_pow(n + 1), qd_pow(n + 1);
    qn_pow[0] = 1;
    qd_pow[0] = 1;
    for (int k = 1; k <= n; ++k) {
        qn_pow[k] = qn_pow[k - 1] * qn;
        qd_pow[k] = qd_pow[k - 1] * qd;
    }
    for (int j = 1; j <= n; ++j) {
        // q^k - q^j = (qn^k qd^{j-k} - qn^j) / qd^j; the j-th power puts
        // everything over qd^{j^2}.
        BigInt inner_num = 0;
        for (int k = 0; k <= j; ++k) {
            BigInt base = qn_pow[k] * qd_pow[j - k] - qn_pow[j];
            BigInt powed;
            mpz_pow_ui(powed.get_mpz_t(), base.get_mpz_t(), j);
            BigInt term = binomial(j, k) * powed;
            if (k % 2 == 0)
                inner_num += term;
            else
                inner_num -= term;
        }
        BigInt denom;
        mpz_pow_ui(denom.get_mpz_t(), qd.get_mpz_t(), (unsigned long)j * j);
        Rational inner(inner_num, denom);
        inner.canonicalize();
        total += Rational(binomial(n, j)) * inner;
    }
    return total;
}

/// P(all rows and columns of a random j x j support are nonzero).
inline Rational prob_B(int j, const Rational& q) {
    Rational total(0);
    for (int k = 0; k <= j; ++k) {
        Rational term = Rational(binomial(j, k)) *
                        pow_rational(pow_rational(q, k) - pow_rational(q, j), j);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

/// P(all columns of a random j x j support are nonzero).
inline Rational prob_C(int j, const Rational& q) {
    return pow_rational(Rational(1) - pow_rational(q, j), j);
}

/// Exponential growth constants of the competing sparse-permanent methods
/// and of the trellis bound.
struct PhiConstants {
    double phi1, phi2, phi3, phiT;
};

inline PhiConstants phi_constants(int d) {
    if (d < 1) throw std::invalid_argument("phi_constants: d must be positive");
    double dd = d;
    PhiConstants c;
    c.phi1 = 2.0 * std::pow(1.0 - std::pow(2.0, -2.0 * dd), 1.0 / (8.0 * dd));
    c.phi2 = std::pow(std::pow(2.0, dd) - 1.0, 1.0 / dd);
    c.phi3 = std::pow(std::pow(2.0, dd) - 1.0, 1.0 / (dd * dd)) * std::pow(2.0, 1.0 - 1.0 / dd);
    c.phiT = 2.0 - std::exp(-dd);
    return c;
}

/// Root sequence U(n)^{1/n} for extrapolating phi_U = lim U(n)^{1/n}.
inline std::vector<std::pair<int, double>> estimate_phi_U(int d, int n_max, int stride = 1) {
    if (stride < 1) throw std::invalid_argument("estimate_phi_U: bad stride");
    std::vector<std::pair<int, double>> out;
    for (int n = std::max(d + 1, stride); n <= n_max; n += stride) {
        Rational u = expected_vertices_U(n, Rational(d));
        out.emplace_back(n, std::pow(u.get_d(), 1.0 / n));
    }
    return out;
}

struct SparseBenchRow {
    int n = 0;
    int trials = 0;
    double mean_vertices = 0, sd_vertices = 0;
    double mean_edges = 0;
    double mean_mults = 0;
    double curve_phi1 = 0, curve_phi2 = 0, curve_phi3 = 0, curve_phiT = 0;
    double curve_U = 0;  // d * U(n)
    Rational exact_U;
};

/// One benchmark row at the model's n: forward-construction (unpruned)
/// vertex/edge statistics over `trials` seeds, measured multiplications of
/// the pruned flow, and the comparison curves (n-1)phi^n, d phi_T^n, d U(n).
inline SparseBenchRow sparse_benchmark(const SparseModel& model, int trials) {
    model.validate();
    SparseBenchRow row;
    row.n = model.n;
    row.trials = trials;
    int n = model.n;
    int d_int = (int)mpz_class(Rational(model.d).get_num() / Rational(model.d).get_den()).get_si();
    if (d_int < 1) d_int = 1;
    PhiConstants c = phi_constants(d_int);
    double dd = model.d.get_d();
    row.curve_phi1 = (n - 1) * std::pow(c.phi1, n);
    row.curve_phi2 = (n - 1) * std::pow(c.phi2, n);
    row.curve_phi3 = (n - 1) * std::pow(c.phi3, n);
    row.curve_phiT = dd * std::pow(c.phiT, n);
    row.exact_U = expected_vertices_U(n, model.d);
    row.curve_U = dd * row.exact_U.get_d();

    if (trials < 1) return row;
    double sum_v = 0, sum_v2 = 0, sum_e = 0, sum_m = 0;
    for (int trial = 0; trial < trials; ++trial) {
        SparseModel m = model;
        m.seed = model.seed + std::uint64_t(trial) * 0x9e3779b97f4a7c15ULL;
        RationalMatrix a = random_sparse_matrix(m);
        // The Lemma bounds the forward construction, so measure unpruned.
        Trellis<Rational> fwd = build_sparse_trellis(a, false);
        double v = (double)fwd.vertex_count();
        sum_v += v;
        sum_v2 += v * v;
        sum_e += (double)fwd.edge_count();
        sum_m += (double)permanent_sparse(a).counter.mults;
    }
    row.mean_vertices = sum_v / trials;
    row.mean_edges = sum_e / trials;
    row.mean_mults = sum_m / trials;
    double var = sum_v2 / trials - row.mean_vertices * row.mean_vertices;
    row.sd_vertices = var > 0 ? std::sqrt(var) : 0.0;
    return row;
}

}  // namespace permatrellis
