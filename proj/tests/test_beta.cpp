#include <catch2/catch_amalgamated.hpp>

#include "zygmund/beta.hpp"

using namespace zygmund;
using Tuples = std::vector<std::vector<int64_t>>;

TEST_CASE("d=4 shells match the displayed table") {
    CHECK(beta_shell(4, 0) == Tuples{{0, 0}});
    CHECK(beta_shell(4, 1) == Tuples{{0, 0}, {1, -1}});
    CHECK(beta_shell(4, 2) == Tuples{{0, 0}, {1, -1}, {2, -2}});
}

TEST_CASE("d=5 shell 1 in lexicographic order") {
    CHECK(beta_shell(5, 1) ==
          Tuples{{0, 0, 0}, {0, 1, -1}, {1, 0, -1}, {1, 1, -2}});
}

TEST_CASE("concatenated indexing") {
    CHECK(beta_concat(4, 0) == std::vector<int64_t>{0, 0});
    CHECK(beta_concat(4, 1) == std::vector<int64_t>{0, 0});
    CHECK(beta_concat(4, 2) == std::vector<int64_t>{1, -1});
    CHECK(beta_concat(4, 5) == std::vector<int64_t>{2, -2});
    // d=5 shells have sizes 1, 4, 9, ..., so shell 2 starts at index 5
    CHECK(beta_concat(5, 4) == std::vector<int64_t>{1, 1, -2});
    CHECK(beta_concat(5, 5) == std::vector<int64_t>{0, 0, 0});
}

TEST_CASE("shell sizes, zero sums and prefix consistency") {
    for (int d : {4, 5, 6}) {
        int64_t idx = 0;
        for (int64_t n = 0; n <= 30; ++n) {
            Tuples shell = beta_shell(d, n);
            int64_t expect = 1;
            for (int i = 0; i < d - 3; ++i) expect *= n + 1;
            REQUIRE(static_cast<int64_t>(shell.size()) == expect);
            REQUIRE(beta_shell_start(d, n) == idx);
            for (const auto& tup : shell) {
                int64_t sum = 0;
                for (int64_t c : tup) sum += c;
                REQUIRE(sum == 0);
                REQUIRE(beta_concat(d, idx) == tup);
                ++idx;
            }
        }
    }
}

TEST_CASE("index find: displayed cases") {
    // (0,0) at j=1, C=4: bounds [0, 1], first occurrence n=0
    IndexFindResult r = beta_index_find(4, {0, 0}, 1, 4);
    CHECK(r.n == 0);
    CHECK(r.admissible == std::vector<int64_t>{0, 1});  // shell 0 and shell 1

    // (1,-1) at j=2, C=2: bounds [0.5, 4], occurrences at 2 and 4
    r = beta_index_find(4, {1, -1}, 2, 2);
    CHECK(r.n == 2);
    CHECK(r.admissible == std::vector<int64_t>{2, 4});

    // (2,-2) at j=1, C=4: first occurrence is 5 > 1
    CHECK_THROWS_AS(beta_index_find(4, {2, -2}, 1, 4), NotFoundError);
}

TEST_CASE("index find validates tuples") {
    CHECK_THROWS_AS(beta_index_find(4, {1, 0}, 2, 2), Error);   // sum != 0
    CHECK_THROWS_AS(beta_index_find(4, {-1, 1}, 2, 2), Error);  // negative free
    CHECK_THROWS_AS(beta_index_find(4, {1, -1}, 2, 1), Error);  // C_d <= 1
}

TEST_CASE("occurrences are strictly increasing in the shell index") {
    for (int d : {4, 5}) {
        std::vector<int64_t> tup(static_cast<size_t>(d - 3), 1);
        tup.push_back(-(d - 3));
        int64_t prev = -1;
        for (int64_t nu = 1; nu <= 40; ++nu) {
            int64_t n = beta_occurrence(d, tup, nu);
            REQUIRE(n > prev);
            REQUIRE(beta_concat(d, n) == tup);
            prev = n;
        }
    }
}
