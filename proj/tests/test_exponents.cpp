#include <catch2/catch_amalgamated.hpp>

#include "zygmund/exponent.hpp"
#include "zygmund/interval.hpp"
#include "zygmund/rng.hpp"

using namespace zygmund;

TEST_CASE("perfect powers reduce to integers") {
    RootExponent a(BigInt(9), 2);
    CHECK(a.is_integer());
    CHECK(a.integer_value() == 3);
    CHECK(compare(a, RootExponent(3)) == std::strong_ordering::equal);

    RootExponent cube(BigInt(-8), 3);
    CHECK(cube.is_integer());
    CHECK(cube.integer_value() == -2);

    RootExponent one(BigInt(1), 7);
    CHECK(one.is_integer());
    RootExponent zero(BigInt(0), 5);
    CHECK(zero.is_integer());
    CHECK(zero.is_zero());
}

TEST_CASE("partial reduction keeps the value") {
    // 64^(1/4) = 8^(1/2)
    RootExponent a(BigInt(64), 4);
    CHECK(a.root() == 2);
    CHECK(a.radicand() == 8);
    // 8^(1/6) = 2^(1/2)
    RootExponent b(BigInt(8), 6);
    CHECK(b.root() == 2);
    CHECK(b.radicand() == 2);
}

TEST_CASE("same-root comparison is monotone") {
    CHECK(compare(RootExponent(BigInt(2), 2), RootExponent(BigInt(3), 2)) ==
          std::strong_ordering::less);
}

TEST_CASE("cross-root comparison by integer cross-powering") {
    // sqrt(5) vs 2: 5^1 vs 2^2 = 4, so sqrt(5) > 2
    CHECK(big_pow(BigInt(5), 1) > big_pow(BigInt(2), 2));
    CHECK(compare(RootExponent(BigInt(5), 2), RootExponent(2)) ==
          std::strong_ordering::greater);
    // negatives reverse
    CHECK(compare(RootExponent(BigInt(-5), 2), RootExponent(-2)) ==
          std::strong_ordering::less);
    // mixed signs order by sign
    CHECK(compare(RootExponent(BigInt(-5), 2), RootExponent(BigInt(3), 2)) ==
          std::strong_ordering::less);
    CHECK(compare(RootExponent(BigInt(0), 1), RootExponent(BigInt(3), 2)) ==
          std::strong_ordering::less);
}

TEST_CASE("negation is exact") {
    RootExponent s(BigInt(2), 2);
    CHECK(compare(-(-s), s) == std::strong_ordering::equal);
    CHECK((-s).sign() == -1);
    CHECK((-RootExponent(BigInt(0), 3)).is_zero());
}

TEST_CASE("total order on random triples, consistent with numerics") {
    Rng rng(20240901);
    auto random_exp = [&]() {
        if (rng.next() % 2 == 0)
            return Exponent(static_cast<long>(rng.uniform(-30, 30)));
        return Exponent(BigInt(rng.uniform(-150, 150)),
                        static_cast<unsigned long>(rng.uniform(1, 4)));
    };
    for (int t = 0; t < 3000; ++t) {
        Exponent a = random_exp(), b = random_exp(), c = random_exp();
        auto ab = compare(a, b);
        auto ba = compare(b, a);
        if (ab == std::strong_ordering::less)
            CHECK(ba == std::strong_ordering::greater);
        if (ab == std::strong_ordering::equal)
            CHECK(ba == std::strong_ordering::equal);
        bool ale_b = ab != std::strong_ordering::greater;
        bool ble_c = compare(b, c) != std::strong_ordering::greater;
        if (ale_b && ble_c)
            CHECK(compare(a, c) != std::strong_ordering::greater);
        // agreement with 256-bit evaluation (well below 1e-20 here)
        double va = Interval::exp2_of(a, 256).mid();
        double vb = Interval::exp2_of(b, 256).mid();
        if (ab == std::strong_ordering::less) CHECK(va < vb);
        if (ab == std::strong_ordering::greater) CHECK(va > vb);
    }
}

TEST_CASE("exponent sums cancel exactly") {
    ExponentSum s;
    s.add(Exponent(BigInt(2), 2));   // sqrt2
    s.add(-Exponent(BigInt(2), 2));  // -sqrt2
    s.add(Exponent(1));
    s.add(Exponent(-1));
    CHECK(s.is_integer());
    CHECK(s.integer_part() == 0);
}

TEST_CASE("aliased radicals are merged") {
    // sqrt(8) = 2 sqrt(2), so sqrt(8) - sqrt(2) - sqrt(2) = 0
    ExponentSum s;
    s.add(Exponent(BigInt(8), 2));
    s.subtract(Exponent(BigInt(2), 2));
    s.subtract(Exponent(BigInt(2), 2));
    CHECK(s.is_integer());
    CHECK(s.integer_part() == 0);

    ExponentSum t;
    t.add(Exponent(BigInt(2), 2));
    t.add(Exponent(BigInt(2), 2));
    CHECK_FALSE(t.is_integer());
}
