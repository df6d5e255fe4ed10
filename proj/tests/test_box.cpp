#include <catch2/catch_amalgamated.hpp>

#include "zygmund/box.hpp"
#include "zygmund/rng.hpp"

using namespace zygmund;

namespace {
const Exponent kSqrt2(BigInt(2), 2);
}

TEST_CASE("box volume: integer exponents cancel") {
    AnchoredBox b = AnchoredBox::from_integer_exps({3, -3, 1, -1});
    MeasureValue v = box_volume(b);
    REQUIRE(v.is_exact());
    CHECK(*v.exact == DyadicRational(1));
}

TEST_CASE("box volume: radical exponents cancel exactly") {
    AnchoredBox b({kSqrt2, -kSqrt2, Exponent(1), Exponent(-1)});
    MeasureValue v = box_volume(b);
    REQUIRE(v.is_exact());
    CHECK(*v.exact == DyadicRational(1));
}

TEST_CASE("box volume: 2^2 * 2^1 = 8") {
    AnchoredBox b = AnchoredBox::from_integer_exps({2, 1});
    CHECK(*box_volume(b).exact == DyadicRational(8));
}

TEST_CASE("box volume: irrational sums get tight enclosures") {
    AnchoredBox b({kSqrt2, Exponent(0)});
    MeasureValue v = box_volume(b, 128);
    CHECK_FALSE(v.is_exact());
    CHECK(v.value() == Catch::Approx(std::pow(2.0, std::sqrt(2.0))));
    CHECK(v.error_bound() < 1e-30);
}

TEST_CASE("intersection is the per-axis minimum") {
    AnchoredBox a = AnchoredBox::from_integer_exps({2, -1});
    AnchoredBox b = AnchoredBox::from_integer_exps({0, 1});
    CHECK(intersect_anchored(a, b) == AnchoredBox::from_integer_exps({0, -1}));
    CHECK(intersect_anchored(a, a) == a);

    AnchoredBox c({kSqrt2, -kSqrt2, Exponent(1), Exponent(-1)});
    AnchoredBox d = AnchoredBox::from_integer_exps({1, 0, 0, 0});
    AnchoredBox expect({Exponent(1), -kSqrt2, Exponent(0), Exponent(-1)});
    CHECK(intersect_anchored(c, d) == expect);

    CHECK_THROWS_AS(intersect_anchored(a, c), DimensionMismatch);
}

TEST_CASE("contains_cube by exact comparison") {
    CHECK(contains_cube(AnchoredBox::cube(3, 0), 1));
    AnchoredBox b({kSqrt2, -kSqrt2, Exponent(1), Exponent(-1)});
    CHECK_FALSE(contains_cube(b, 1));  // -sqrt2 < -1
    CHECK(contains_cube(b, 2));        // -sqrt2 >= -2
}

TEST_CASE("intersection volume never exceeds either side") {
    Rng rng(99);
    for (int t = 0; t < 500; ++t) {
        size_t d = static_cast<size_t>(rng.uniform(1, 4));
        std::vector<Exponent> ea, eb;
        for (size_t i = 0; i < d; ++i) {
            ea.emplace_back(static_cast<long>(rng.uniform(-5, 5)));
            eb.emplace_back(static_cast<long>(rng.uniform(-5, 5)));
        }
        AnchoredBox a(ea), b(eb);
        DyadicRational va = *box_volume(a).exact;
        DyadicRational vb = *box_volume(b).exact;
        DyadicRational vi = *box_volume(intersect_anchored(a, b)).exact;
        CHECK(vi <= va);
        CHECK(vi <= vb);
    }
}

TEST_CASE("contains_cube iff intersecting with the cube is the identity") {
    Rng rng(123);
    for (int t = 0; t < 500; ++t) {
        size_t d = static_cast<size_t>(rng.uniform(1, 4));
        long k = static_cast<long>(rng.uniform(0, 4));
        std::vector<Exponent> e;
        for (size_t i = 0; i < d; ++i)
            e.emplace_back(static_cast<long>(rng.uniform(-5, 5)));
        AnchoredBox b(e);
        AnchoredBox cube = AnchoredBox::cube(d, -k);
        bool lhs = contains_cube(b, k);
        bool rhs = intersect_anchored(b, cube) == cube;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exact point membership") {
    AnchoredBox b({kSqrt2, -kSqrt2});
    // 2^sqrt2 ~ 2.665, 2^-sqrt2 ~ 0.375
    CHECK(box_contains_point(b, {DyadicRational(2), DyadicRational(BigInt(3), -3)}));
    CHECK_FALSE(box_contains_point(
        b, {DyadicRational(3), DyadicRational(BigInt(3), -3)}));
    CHECK_FALSE(box_contains_point(
        b, {DyadicRational(2), DyadicRational(BigInt(1), -1)}));  // 0.5 > 0.375
    CHECK(box_contains_point(b, {DyadicRational(0), DyadicRational(0)}));
    CHECK_FALSE(box_contains_point(b, {DyadicRational(-1), DyadicRational(0)}));
}
