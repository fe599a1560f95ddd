#include <catch2/catch_amalgamated.hpp>

#include "permatrellis/oracles.hpp"

#include "helpers.hpp"

using namespace permatrellis;

namespace {

RationalMatrix make(std::initializer_list<std::initializer_list<int>> rows) {
    int n = (int)rows.size();
    RationalMatrix a(n);
    int i = 1;
    for (const auto& row : rows) {
        int j = 1;
        for (int v : row) a.at(i, j++) = Rational(v);
        ++i;
    }
    return a;
}

}  // namespace

TEST_CASE("naive permanent basics") {
    CHECK(permanent_naive(make({{1, 2}, {3, 4}})) == 10);
    RationalMatrix ones(3, Rational(1));
    CHECK(permanent_naive(ones) == 6);
    CHECK(permanent_naive(RationalMatrix::identity(4)) == 1);
}

TEST_CASE("ryser values and counts") {
    auto a = make({{1, 2}, {3, 4}});
    CHECK(permanent_ryser(a, false).value == 10);
    CHECK(permanent_ryser(a, true).value == 10);

    std::mt19937_64 rng(3);
    RationalMatrix r3 = test_helpers::random_matrix(3, rng);
    auto plain = permanent_ryser(r3, false);
    auto gray = permanent_ryser(r3, true);
    CHECK(plain.value == gray.value);
    CHECK(plain.counter.mults == 14);
    CHECK(gray.counter.mults == 14);
    CHECK(plain.counter.adds == 21);
    CHECK(gray.counter.adds == 24);
}

TEST_CASE("nw and glynn values and counts") {
    RationalMatrix j2(2, Rational(1));
    CHECK(permanent_nw(j2).value == 2);
    CHECK(permanent_glynn(make({{1, 2}, {3, 4}})).value == 10);
    CHECK(permanent_glynn(RationalMatrix::identity(3)).value == 1);

    std::mt19937_64 rng(4);
    RationalMatrix r3 = test_helpers::random_matrix(3, rng);
    auto nw = permanent_nw(r3);
    auto glynn = permanent_glynn(r3);
    CHECK(nw.value == glynn.value);
    CHECK(nw.counter.mults == 8);
    CHECK(nw.counter.adds == 18);
    CHECK(glynn.counter.mults == 8);
    CHECK(glynn.counter.adds == 18);
}

TEST_CASE("all formulas agree with the naive oracle") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 25; ++trial) {
            RationalMatrix a = test_helpers::random_matrix(n, rng);
            Rational expect = permanent_naive(a);
            CHECK(permanent_ryser(a, false).value == expect);
            CHECK(permanent_ryser(a, true).value == expect);
            CHECK(permanent_nw(a).value == expect);
            CHECK(permanent_glynn(a).value == expect);
        }
}

TEST_CASE("clifford evaluation for repeated-row matrices") {
    // Single distinct row: per = n! prod_j a_j.
    RepeatedRowSpec single;
    single.rows = {{Rational(2), Rational(3), Rational(5)}};
    single.mults = {3};
    auto r = permanent_clifford(single);
    CHECK(r.value == Rational(6 * 30));
    CHECK(r.value == permanent_naive(single.expand()));

    // Counts for n = 6, m = (1, 2, 3): mults 5 * 23 = 115.
    RepeatedRowSpec spec;
    spec.rows = {{Rational(1), Rational(2), Rational(1), Rational(3), Rational(1), Rational(2)},
                 {Rational(2), Rational(1), Rational(4), Rational(1), Rational(2), Rational(1)},
                 {Rational(1), Rational(1), Rational(2), Rational(2), Rational(3), Rational(3)}};
    spec.mults = {1, 2, 3};
    auto c = permanent_clifford(spec);
    CHECK(c.counter.mults == 115);
    CHECK(c.counter.mults == clifford_mults(spec.mults));
    CHECK(c.counter.adds == clifford_adds(spec.mults));
    CHECK(c.value == permanent_naive(spec.expand()));
}

TEST_CASE("clifford agrees with naive for all types with n <= 6") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> entry(1, 5);
    for (int n = 2; n <= 6; ++n) {
        // All compositions of n into positive parts.
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> m;
            int run = 1;
            for (int b = 0; b < n - 1; ++b) {
                if (mask >> b & 1) {
                    m.push_back(run);
                    run = 1;
                } else {
                    ++run;
                }
            }
            m.push_back(run);
            RepeatedRowSpec spec;
            spec.mults = m;
            for (std::size_t l = 0; l < m.size(); ++l) {
                std::vector<Rational> row(n);
                for (auto& v : row) v = Rational(entry(rng));
                spec.rows.push_back(std::move(row));
            }
            CHECK(permanent_clifford(spec).value == permanent_naive(spec.expand()));
        }
    }
}

TEST_CASE("opcount table agrees exactly") {
    for (const auto& row : opcount_table(2, 8)) {
        INFO(row.method << " n=" << row.n);
        CHECK(row.mults_formula == row.mults_measured);
        CHECK(row.adds_formula == row.adds_measured);
    }
}

TEST_CASE("table closed forms at quoted points") {
    CHECK(trellis_mults(3) == 9);
    CHECK(trellis_adds(3) == 5);
    CHECK(trellis_normalized_mults(7) == 350);
    CHECK(trellis_normalized_adds(7) == 321);
    CHECK(ryser_gray_adds(3) == 24);
}
