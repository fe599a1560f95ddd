#include <catch2/catch_amalgamated.hpp>

#include "permatrellis/oracles.hpp"
#include "permatrellis/repeated.hpp"

#include "helpers.hpp"

using namespace permatrellis;

namespace {

RepeatedRowSpec random_spec(const std::vector<int>& mults, std::mt19937_64& rng) {
    int n = 0;
    for (int m : mults) n += m;
    std::uniform_int_distribution<int> entry(0, 5);
    RepeatedRowSpec spec;
    spec.mults = mults;
    for (std::size_t l = 0; l < mults.size(); ++l) {
        std::vector<Rational> row(n);
        for (auto& v : row) v = Rational(entry(rng));
        spec.rows.push_back(std::move(row));
    }
    return spec;
}

// per of the j x j repeated-row matrix of type lambda over column prefix.
Rational sub_permanent(const RepeatedRowSpec& spec, const std::vector<int>& lambda) {
    int j = 0;
    for (int l : lambda) j += l;
    if (j == 0) return Rational(1);
    RationalMatrix c(j);
    int row = 1;
    for (std::size_t l = 0; l < lambda.size(); ++l)
        for (int rep = 0; rep < lambda[l]; ++rep, ++row)
            for (int col = 1; col <= j; ++col) c.at(row, col) = spec.rows[l][col - 1];
    return permanent_naive(c);
}

}  // namespace

TEST_CASE("spec validation") {
    RepeatedRowSpec bad;
    bad.rows = {{Rational(1), Rational(2)}};
    bad.mults = {1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // sum != n
    bad.mults = {2};
    CHECK_NOTHROW(bad.validate());
    bad.mults = {0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("trellis shape") {
    std::mt19937_64 rng(21);
    RepeatedRowSpec spec = random_spec({1, 2, 3}, rng);
    Trellis<Rational> t = build_repeated_trellis(spec);
    validate(t);
    CHECK(t.vertex_count() == 24);  // prod (m_l + 1)
    CHECK(t.edge_count() <= 3 * t.vertex_count());

    // Single distinct row: one path of length n.
    RepeatedRowSpec single = random_spec({4}, rng);
    Trellis<Rational> line = build_repeated_trellis(single);
    CHECK(line.vertex_count() == 5);
    CHECK(line.edge_count() == 4);
}

TEST_CASE("toor flow has one monomial per lattice path") {
    std::mt19937_64 rng(22);
    RepeatedRowSpec spec = random_spec({1, 2, 3}, rng);
    // All-ones labels turn the flow into a path count: 6!/(1!2!3!) = 60.
    RepeatedRowSpec ones = spec;
    for (auto& row : ones.rows)
        for (auto& v : row) v = Rational(1);
    CHECK(permanent_repeated(ones).toor_flow == 60);
}

TEST_CASE("permanent and intermediate flows match the naive oracle") {
    std::mt19937_64 rng(23);
    std::vector<std::vector<int>> types = {{1, 2, 3}, {2, 2}, {3, 1}, {1, 1, 1, 1}, {5}, {2, 3, 2}};
    for (const auto& m : types) {
        RepeatedRowSpec spec = random_spec(m, rng);
        RepeatedFlow flow = permanent_repeated(spec);
        CHECK(flow.permanent == permanent_naive(spec.expand()));

        std::size_t bound = 1;
        for (int v : m) bound *= std::size_t(v) + 1;
        CHECK(flow.counter.mults <= m.size() * bound);
        CHECK(flow.counter.adds <= (m.size() - 1) * bound);
        CHECK(flow.counter.mults == complexity_measures(build_repeated_trellis(spec)).mults);

        for (std::size_t level = 0; level < flow.tuples.size(); ++level)
            for (const auto& lambda : flow.tuples[level])
                CHECK(intermediate_flow_check(flow, lambda) == sub_permanent(spec, lambda));
    }
}

TEST_CASE("trellis beats clifford by about n/t multiplications") {
    for (int n : {10, 20, 40}) {
        std::mt19937_64 rng(n);
        std::vector<int> m = {n / 3, n / 3, n - 2 * (n / 3)};
        RepeatedRowSpec spec = random_spec(m, rng);
        auto cm = complexity_measures(build_repeated_trellis(spec));
        double ratio = (double)cm.mults / (double)clifford_mults(m);
        double trend = 3.0 / (n - 1);
        CHECK(ratio < 2.5 * trend);
        CHECK(ratio > trend / 2.5);
    }
}
