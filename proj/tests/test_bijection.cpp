#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "zygmund/bijection.hpp"

using namespace zygmund;

TEST_CASE("psi(0) is the origin") {
    for (size_t d = 1; d <= 5; ++d) {
        LatticeBijection psi(d);
        CHECK(psi.point_at(0) == std::vector<int64_t>(d, 0));
    }
}

TEST_CASE("first (2N+1)^d indices cover exactly [-N,N]^d") {
    const size_t d = 3;
    const int64_t N = 2;
    LatticeBijection psi(d);
    int64_t count = 125;
    std::set<std::vector<int64_t>> seen;
    for (int64_t u = 0; u < count; ++u) {
        int64_t m = u % 2 == 1 ? (u + 1) / 2 : -u / 2;
        std::vector<int64_t> v = psi.point_at(m);
        for (int64_t c : v) {
            CHECK(c >= -N);
            CHECK(c <= N);
        }
        seen.insert(v);
    }
    CHECK(static_cast<int64_t>(seen.size()) == count);
}

TEST_CASE("round-trip index_of(point_at(m)) = m for |m| <= 1000") {
    for (size_t d : {1, 2, 3, 4}) {
        LatticeBijection psi(d);
        for (int64_t m = -1000; m <= 1000; ++m) {
            std::vector<int64_t> v = psi.point_at(m);
            REQUIRE(psi.index_of(v) == m);
        }
    }
}

TEST_CASE("images of distinct indices are distinct") {
    LatticeBijection psi(2);
    std::set<std::vector<int64_t>> seen;
    for (int64_t m = -500; m <= 500; ++m) {
        auto v = psi.point_at(m);
        CHECK(seen.insert(v).second);
    }
}
