#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "permatrellis/intersect.hpp"
#include "permatrellis/path_multiset.hpp"
#include "permatrellis/tsp.hpp"

using namespace permatrellis;

namespace {

DistanceMatrix random_instance(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, 20);
    DistanceMatrix dm(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) dm.at(i, j) = dist(rng);
    return dm;
}

}  // namespace

TEST_CASE("walk trellis") {
    Trellis<int> w = build_walk_trellis(4);
    validate(w);
    CHECK(w.vertex_count() == 12);
    CHECK(w.length() == 5);
    PathMultiset code = enumerate_paths(w);
    CHECK(code.size() == 12);  // 3 * 2 * 2 closed walks
    for (const auto& [word, mult] : code) {
        CHECK(mult == 1);
        CHECK(word.front() == 1);
        CHECK(word.back() == 1);
        for (std::size_t i = 1; i < word.size(); ++i) CHECK(word[i] != word[i - 1]);
    }
}

TEST_CASE("circular trellis") {
    Trellis<int> c = build_circular_trellis(4);
    validate(c);
    CHECK(c.vertex_count() == 10);
    PathMultiset code = enumerate_paths(c);
    CHECK(code.size() == 6);  // (n-1)! tours
    for (const auto& [word, mult] : code) {
        CHECK(mult == 1);
        std::vector<char> seen(5, 0);
        for (std::size_t i = 1; i + 1 < word.size(); ++i) seen[word[i]] = 1;
        for (int v = 2; v <= 4; ++v) CHECK(seen[v] == 1);
    }
}

TEST_CASE("direct trellis sizes match the closed forms") {
    for (int n = 3; n <= 10; ++n) {
        Trellis<int> t = build_tsp_trellis(n);
        validate(t);
        CHECK(t.vertex_count() == tsp_vertex_count(n));
        CHECK(t.edge_count() == tsp_edge_count(n));
    }
    CHECK(tsp_vertex_count(4) == 14);
    CHECK(tsp_edge_count(4) == 18);
    CHECK(tsp_vertex_count(3) == 6);
}

TEST_CASE("direct trellis represents the tours") {
    for (int n : {3, 4, 5}) {
        PathMultiset tours = enumerate_paths(build_tsp_trellis(n));
        PathMultiset circ = enumerate_paths(build_circular_trellis(n));
        // Strip the leading 1 of the circular strings.
        PathMultiset stripped;
        for (const auto& [word, mult] : circ) {
            Word w(word.begin() + 1, word.end());
            pm_accumulate(stripped, w, mult);
        }
        CHECK(tours == stripped);
    }
}

TEST_CASE("intersection equals the direct construction") {
    for (int n : {3, 4, 5, 6}) {
        Trellis<int> prod = intersect(build_circular_trellis(n), build_walk_trellis(n));
        // Intersection of two multiset representations: same path set.
        PathMultiset pc = enumerate_paths(prod);
        PathMultiset tours = enumerate_paths(build_circular_trellis(n));
        CHECK(pc == tours);
        CHECK(level_isomorphic(fold_root(prod), build_tsp_trellis(n)));
    }
}

TEST_CASE("min-plus flow on the labeled trellis matches the formula counts") {
    std::mt19937_64 rng(55);
    for (int n : {4, 5, 6, 7}) {
        DistanceMatrix dm = random_instance(n, rng);
        Trellis<double> t = build_tsp_trellis_labeled(dm);
        auto flow = viterbi_flow<MinPlus>(t);
        CHECK(flow.value == tsp_bruteforce(dm));
        CHECK(flow.counter.adds == tsp_additions(n));
        CHECK((std::int64_t)flow.counter.comparisons == tsp_comparisons(n));
    }
}

TEST_CASE("solver matches brute force with exact counter formulas") {
    std::mt19937_64 rng(56);
    for (int n = 3; n <= 8; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            DistanceMatrix dm = random_instance(n, rng);
            TspResult r = solve_tsp(dm, true);
            CHECK(r.length == tsp_bruteforce(dm));
            CHECK(r.counter.adds == tsp_additions(n));
            CHECK((std::int64_t)r.counter.comparisons == tsp_comparisons(n));

            // The returned tour has the claimed length and visits all cities.
            REQUIRE(r.tour.size() == std::size_t(n + 1));
            CHECK(r.tour.front() == 1);
            CHECK(r.tour.back() == 1);
            double len = 0;
            std::vector<char> seen(n + 1, 0);
            for (std::size_t i = 0; i + 1 < r.tour.size(); ++i) {
                len += dm.at(r.tour[i], r.tour[i + 1]);
                seen[r.tour[i]] = 1;
            }
            for (int v = 1; v <= n; ++v) CHECK(seen[v] == 1);
            CHECK(len == r.length);
        }
}

TEST_CASE("examples") {
    DistanceMatrix dm(3);
    dm.at(1, 2) = dm.at(2, 1) = 1;
    dm.at(1, 3) = dm.at(3, 1) = 2;
    dm.at(2, 3) = dm.at(3, 2) = 3;
    CHECK(solve_tsp(dm).length == 6);
    CHECK(tsp_bruteforce(dm) == 6);

    DistanceMatrix ones(4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (i != j) ones.at(i, j) = 1;
    CHECK(solve_tsp(ones).length == 4);

    DistanceMatrix asym(3);
    asym.at(1, 2) = 1;
    asym.at(2, 3) = 1;
    asym.at(3, 1) = 1;
    asym.at(2, 1) = asym.at(3, 2) = asym.at(1, 3) = 10;
    CHECK(tsp_bruteforce(asym) == 3);
    CHECK(solve_tsp(asym).length == 3);
}
