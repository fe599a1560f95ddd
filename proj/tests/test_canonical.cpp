#include <catch2/catch_amalgamated.hpp>

#include "permatrellis/canonical.hpp"
#include "permatrellis/oracles.hpp"
#include "permatrellis/path_multiset.hpp"

#include "helpers.hpp"

using namespace permatrellis;

TEST_CASE("canonical trellis sizes") {
    for (int n : {1, 2, 3, 4, 5, 6}) {
        Trellis<int> t = build_canonical(n);
        validate(t);
        CHECK(t.vertex_count() == (std::size_t(1) << n));
        CHECK(t.edge_count() == std::size_t(n) << (n - 1));
        CHECK((int)t.levels.size() == n + 1);
        for (int j = 0; j <= n; ++j)
            CHECK(t.levels[j].size() == mpz_class(binomial(n, j)).get_ui());
    }
}

TEST_CASE("canonical trellis represents the permutations") {
    for (int n : {2, 3, 4}) {
        PathMultiset code = enumerate_paths(build_canonical(n));
        CHECK(code.size() == mpz_class(factorial(n)).get_ui());
        for (const auto& [word, mult] : code) {
            CHECK(mult == 1);
            std::vector<char> seen(n + 1, 0);
            for (int sym : word) {
                CHECK((sym >= 1 && sym <= n));
                seen[sym]++;
            }
            for (int i = 1; i <= n; ++i) CHECK(seen[i] == 1);
        }
    }
}

TEST_CASE("streamed flow equals naive permanent") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            RationalMatrix a = test_helpers::random_matrix(n, rng);
            CHECK(permanent_trellis(a).value == permanent_naive(a));
        }
}

TEST_CASE("streamed flow counters match the closed forms") {
    std::mt19937_64 rng(12);
    for (int n = 2; n <= 9; ++n) {
        RationalMatrix a = test_helpers::random_matrix(n, rng);
        auto flow = permanent_trellis(a);
        CHECK(flow.counter.mults == trellis_mults(n));
        CHECK(flow.counter.adds == trellis_adds(n));
        CHECK(flow.peak_width == mpz_class(binomial(n, n / 2)).get_ui());
    }
}

TEST_CASE("normalized flow equals the permanent with zeros in column t") {
    std::mt19937_64 rng(13);
    for (int n = 2; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            RationalMatrix a = test_helpers::random_matrix(n, rng);
            int t = n / 2 + 1;
            if (trial % 3 == 0) a.at(1 + trial % n, t) = 0;  // rows with a_it = 0 stay raw
            auto norm = permanent_trellis_normalized(a);
            CHECK(norm.value == permanent_naive(a));
        }
}

TEST_CASE("normalized counters on zero-free columns") {
    std::mt19937_64 rng(14);
    for (int n = 2; n <= 9; ++n) {
        RationalMatrix a = test_helpers::random_matrix(n, rng, /*allow_zero=*/false);
        auto norm = permanent_trellis_normalized(a);
        CHECK(norm.counter.mults == trellis_normalized_mults(n));
        CHECK(norm.counter.adds == trellis_normalized_adds(n));
    }
}

TEST_CASE("prefix trellis represents S_n with unit multiplicities") {
    for (int n : {2, 3, 4}) {
        Trellis<int> t = build_prefix_trellis(n);
        validate(t);
        PathMultiset code = enumerate_paths(t);
        CHECK(code == enumerate_paths(build_canonical(n)));
        // Interior level sizes are the falling factorials.
        std::size_t expect = 1;
        for (int j = 1; j < n; ++j) {
            expect *= std::size_t(n - j + 1);
            CHECK(t.levels[j].size() == expect);
        }
    }
}

TEST_CASE("max_permanent_n env override") {
    // The configured bound guards the streaming flow.
    RationalMatrix a = RationalMatrix::identity(3);
    CHECK(permanent_trellis(a).value == 1);
}
