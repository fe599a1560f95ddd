#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "matrix.hpp"
#include "repeated.hpp"
#include "semiring.hpp"

namespace permatrellis {

/// Reference permanent by summing over all n! permutations. Desk scale.
template <typename V>
V permanent_naive(const Matrix<V>& a) {
    if (a.n > 10) throw std::invalid_argument("permanent_naive: n > 10");
    if (a.n == 0) return V(1);
    std::vector<int> sigma(a.n);
    for (int i = 0; i < a.n; ++i) sigma[i] = i + 1;
    V sum(0);
    do {
        V prod(1);
        for (int i = 1; i <= a.n; ++i) prod = prod * a.at(i, sigma[i - 1]);
        sum = sum + prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return sum;
}

template <typename V>
struct CountedValue {
    V value;
    OpCounter counter;
};

/// Ryser's inclusion-exclusion:
///   per(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_j sum_{i in S} a_ij.
///
/// With use_gray the subsets are visited in binary-reflected Gray order and
/// the n column sums are updated with one addition each per step; otherwise
/// every column sum is recomputed from scratch. Sign handling is free.
template <typename V>
CountedValue<V> permanent_ryser(const Matrix<V>& a, bool use_gray = false) {
    int n = a.n;
    if (n < 1 || n > 62) throw std::invalid_argument("permanent_ryser: n out of range");
    OpCounter ops;
    V total(0);
    bool first_term = true;
    auto accumulate = [&](std::uint64_t mask, const std::vector<V>& sums) {
        V prod = sums[0];
        for (int j = 1; j < n; ++j) {
            prod = prod * sums[j];
            ++ops.mults;
        }
        if (std::popcount(mask) % 2 == 1) prod = -prod;
        if (first_term) {
            total = std::move(prod);
            first_term = false;
        } else {
            total = total + prod;
            ++ops.adds;
        }
    };

    if (!use_gray) {
        std::vector<V> sums(n);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
            for (int j = 0; j < n; ++j) {
                V s(0);
                bool first = true;
                for (int i = 0; i < n; ++i) {
                    if (!(mask >> i & 1)) continue;
                    if (first) {
                        s = a.at(i + 1, j + 1);
                        first = false;
                    } else {
                        s += a.at(i + 1, j + 1);
                        ++ops.adds;
                    }
                }
                sums[j] = std::move(s);
            }
            accumulate(mask, sums);
        }
    } else {
        std::vector<V> sums(n, V(0));
        std::uint64_t gray = 0;
        for (std::uint64_t k = 1; k < (std::uint64_t(1) << n); ++k) {
            std::uint64_t next = k ^ (k >> 1);
            std::uint64_t flipped = gray ^ next;
            int i = std::countr_zero(flipped);
            bool added = next & flipped;
            for (int j = 0; j < n; ++j) {
                if (added)
                    sums[j] += a.at(i + 1, j + 1);
                else
                    sums[j] -= a.at(i + 1, j + 1);
            }
            if (k > 1) ops.adds += n;  // first subset initializes the sums
            gray = next;
            accumulate(gray, sums);
        }
    }
    if (n % 2 == 1) total = -total;
    return {std::move(total), ops};
}

/// Nijenhuis-Wilf: with C_j = -1/2 sum_i a_ij,
///   per(A) = 2 (-1)^n sum_{S subset {2..n}} (-1)^{|S|}
///                prod_j (C_j + sum_{i in S} a_ij),
/// evaluated in Gray order over S. Halvings and signs are free; the setup
/// of the column sums costs n(n-1) additions.
template <typename V>
CountedValue<V> permanent_nw(const Matrix<V>& a) {
    int n = a.n;
    if (n < 1 || n > 62) throw std::invalid_argument("permanent_nw: n out of range");
    OpCounter ops;
    std::vector<V> sums(n);
    for (int j = 0; j < n; ++j) {
        V s = a.at(1, j + 1);
        for (int i = 2; i <= n; ++i) {
            s += a.at(i, j + 1);
            ++ops.adds;
        }
        sums[j] = -(s / V(2));
    }

    V total(0);
    std::uint64_t gray = 0;
    std::uint64_t count = std::uint64_t(1) << (n - 1);
    for (std::uint64_t k = 0; k < count; ++k) {
        if (k > 0) {
            std::uint64_t next = k ^ (k >> 1);
            std::uint64_t flipped = gray ^ next;
            int i = std::countr_zero(flipped) + 2;  // rows 2..n
            bool added = next & flipped;
            for (int j = 0; j < n; ++j) {
                if (added)
                    sums[j] += a.at(i, j + 1);
                else
                    sums[j] -= a.at(i, j + 1);
                ++ops.adds;
            }
            gray = next;
        }
        V prod = sums[0];
        for (int j = 1; j < n; ++j) {
            prod = prod * sums[j];
            ++ops.mults;
        }
        if (std::popcount(gray) % 2 == 1) prod = -prod;
        if (k == 0) {
            total = std::move(prod);
        } else {
            total = total + prod;
            ++ops.adds;
        }
    }
    total = total + total;  // free doubling
    if (n % 2 == 1) total = -total;
    return {std::move(total), ops};
}

/// Glynn's formula:
///   per(A) = 2^{1-n} sum_{delta, delta_1 = 1} (prod delta) prod_j sum_i delta_i a_ij,
/// with delta walked in Gray order over delta_2..delta_n. A sign flip of
/// row i updates each column sum by -+ 2 a_ij, counted as one addition per
/// column (the doubling is free). Setup costs n(n-1) additions.
template <typename V>
CountedValue<V> permanent_glynn(const Matrix<V>& a) {
    int n = a.n;
    if (n < 1 || n > 62) throw std::invalid_argument("permanent_glynn: n out of range");
    OpCounter ops;
    std::vector<V> sums(n);
    for (int j = 0; j < n; ++j) {
        V s = a.at(1, j + 1);
        for (int i = 2; i <= n; ++i) {
            s += a.at(i, j + 1);
            ++ops.adds;
        }
        sums[j] = std::move(s);
    }

    V total(0);
    std::uint64_t gray = 0;  // set bit b <=> delta_{b+2} = -1
    std::uint64_t count = std::uint64_t(1) << (n - 1);
    for (std::uint64_t k = 0; k < count; ++k) {
        if (k > 0) {
            std::uint64_t next = k ^ (k >> 1);
            std::uint64_t flipped = gray ^ next;
            int i = std::countr_zero(flipped) + 2;
            bool now_negative = next & flipped;
            for (int j = 0; j < n; ++j) {
                V twice = a.at(i, j + 1) + a.at(i, j + 1);  // free scaling
                if (now_negative)
                    sums[j] -= twice;
                else
                    sums[j] += twice;
                ++ops.adds;
            }
            gray = next;
        }
        V prod = sums[0];
        for (int j = 1; j < n; ++j) {
            prod = prod * sums[j];
            ++ops.mults;
        }
        if (std::popcount(gray) % 2 == 1) prod = -prod;
        if (k == 0) {
            total = std::move(prod);
        } else {
            total = total + prod;
            ++ops.adds;
        }
    }
    for (int i = 1; i < n; ++i) total /= V(2);  // free power-of-two scaling
    return {std::move(total), ops};
}

namespace detail {

/// Reflected mixed-radix Gray walk over {0..m_0} x ... x {0..m_{t-1}}:
/// yields (coordinate, delta) unit moves visiting every tuple once,
/// starting from all zeros.
class MixedRadixGray {
  public:
    explicit MixedRadixGray(std::vector<int> radii)
        : m_(std::move(radii)), d_(m_.size(), 0), dir_(m_.size(), 1) {}

    // Advance to the next tuple; false when exhausted.
    bool step(int& coord, int& delta) {
        for (std::size_t l = 0; l < m_.size(); ++l) {
            int next = d_[l] + dir_[l];
            if (next >= 0 && next <= m_[l]) {
                d_[l] = next;
                coord = (int)l;
                delta = dir_[l];
                return true;
            }
            dir_[l] = -dir_[l];
        }
        return false;
    }

    const std::vector<int>& digits() const { return d_; }

  private:
    std::vector<int> m_;
    std::vector<int> d_, dir_;
};

}  // namespace detail

/// Clifford-Clifford evaluation for a repeated-row matrix of type m:
///   per(A) = (-1)^n sum_{r <= m} (-1)^{|r|} prod_l binom(m_l, r_l)
///                prod_j sum_l r_l a_lj,
/// walked in reflected mixed-radix Gray order so each move updates the n
/// column sums with one addition apiece (the first move off zero is the
/// initialization and is free). Binomial coefficients and signs are free.
inline CountedValue<Rational> permanent_clifford(const RepeatedRowSpec& spec) {
    spec.validate();
    int n = spec.n(), t = spec.t();
    OpCounter ops;
    std::vector<Rational> sums(n, Rational(0));
    detail::MixedRadixGray gray(spec.mults);

    Rational total(0);
    bool first_term = true;
    int coord, delta;
    bool first_move = true;
    while (gray.step(coord, delta)) {
        for (int j = 0; j < n; ++j) {
            if (delta > 0)
                sums[j] += spec.rows[coord][j];
            else
                sums[j] -= spec.rows[coord][j];
            if (!first_move) ++ops.adds;
        }
        first_move = false;

        const auto& r = gray.digits();
        BigInt coeff(1);
        int rsum = 0;
        for (int l = 0; l < t; ++l) {
            coeff *= binomial(spec.mults[l], r[l]);
            rsum += r[l];
        }
        Rational prod = sums[0];
        for (int j = 1; j < n; ++j) {
            prod = prod * sums[j];
            ++ops.mults;
        }
        prod *= Rational(coeff);  // free: integer coefficient scaling
        if (rsum % 2 == 1) prod = -prod;
        if (first_term) {
            total = std::move(prod);
            first_term = false;
        } else {
            total = total + prod;
            ++ops.adds;
        }
    }
    if (n % 2 == 1) total = -total;
    return {std::move(total), ops};
}

/// Closed-form operation counts for the classical formulas and the trellis
/// flows, for cross-checking measured counters.
inline std::uint64_t pow2(int e) { return std::uint64_t(1) << e; }

inline std::uint64_t ryser_mults(int n) { return std::uint64_t(n - 1) * (pow2(n) - 1); }
inline std::uint64_t ryser_adds(int n) {
    return (std::uint64_t(n) * n - 2 * n + 2) * pow2(n - 1) + n - 2;
}
inline std::uint64_t ryser_gray_mults(int n) { return ryser_mults(n); }
inline std::uint64_t ryser_gray_adds(int n) { return std::uint64_t(n + 1) * (pow2(n) - 2); }
inline std::uint64_t nw_mults(int n) { return std::uint64_t(n - 1) * pow2(n - 1); }
inline std::uint64_t nw_adds(int n) {
    return std::uint64_t(n + 1) * (pow2(n - 1) - 1) + std::uint64_t(n) * (n - 1);
}
inline std::uint64_t glynn_mults(int n) { return nw_mults(n); }
inline std::uint64_t glynn_adds(int n) { return nw_adds(n); }
inline std::uint64_t trellis_mults(int n) { return std::uint64_t(n) * pow2(n - 1) - n; }
inline std::uint64_t trellis_adds(int n) {
    return n < 2 ? 0 : std::uint64_t(n - 2) * pow2(n - 1) + 1;
}
inline std::uint64_t binom_u64(int n, int k) {
    return mpz_class(binomial(n, k)).get_ui();
}
inline std::uint64_t trellis_normalized_mults(int n) {
    int t = n / 2 + 1;
    return trellis_mults(n) + n - std::uint64_t(n - t + 1) * binom_u64(n, t - 1) +
           std::uint64_t(n) * (n - 1);
}
inline std::uint64_t trellis_normalized_adds(int n) { return trellis_adds(n); }
inline std::uint64_t clifford_mults(const std::vector<int>& m) {
    std::uint64_t prod = 1;
    for (int v : m) prod *= std::uint64_t(v) + 1;
    std::uint64_t n = 0;
    for (int v : m) n += std::uint64_t(v);
    return (n - 1) * (prod - 1);
}
inline std::uint64_t clifford_adds(const std::vector<int>& m) {
    std::uint64_t prod = 1;
    for (int v : m) prod *= std::uint64_t(v) + 1;
    std::uint64_t n = 0;
    for (int v : m) n += std::uint64_t(v);
    return (n + 1) * (prod - 2);
}

struct OpcountRow {
    int n;
    std::string method;
    std::uint64_t mults_formula, mults_measured;
    std::uint64_t adds_formula, adds_measured;
};

/// Formula-vs-measured operation counts per method and n, evaluated on a
/// fixed zero-free random rational matrix per n.
inline std::vector<OpcountRow> opcount_table(int n_lo, int n_hi) {
    if (n_lo < 2 || n_hi < n_lo || n_hi > 20)
        throw std::invalid_argument("opcount_table: need 2 <= n_lo <= n_hi <= 20");
    std::vector<OpcountRow> rows;
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int n = n_lo; n <= n_hi; ++n) {
        RationalMatrix a(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) a.at(i, j) = Rational(1 + (long)(next() % 9));

        auto ryser = permanent_ryser(a, false);
        rows.push_back({n, "ryser", ryser_mults(n), ryser.counter.mults, ryser_adds(n),
                        ryser.counter.adds});
        auto ryserg = permanent_ryser(a, true);
        rows.push_back({n, "ryser-gray", ryser_gray_mults(n), ryserg.counter.mults,
                        ryser_gray_adds(n), ryserg.counter.adds});
        auto nw = permanent_nw(a);
        rows.push_back({n, "nw", nw_mults(n), nw.counter.mults, nw_adds(n), nw.counter.adds});
        auto glynn = permanent_glynn(a);
        rows.push_back(
            {n, "glynn", glynn_mults(n), glynn.counter.mults, glynn_adds(n), glynn.counter.adds});
        auto flow = permanent_trellis(a);
        rows.push_back({n, "trellis", trellis_mults(n), flow.counter.mults, trellis_adds(n),
                        flow.counter.adds});
        auto norm = permanent_trellis_normalized(a);
        rows.push_back({n, "trellis-norm", trellis_normalized_mults(n), norm.counter.mults,
                        trellis_normalized_adds(n), norm.counter.adds});
    }
    return rows;
}

}  // namespace permatrellis
