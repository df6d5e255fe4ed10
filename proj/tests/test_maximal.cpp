#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zygmund/bases.hpp"
#include "zygmund/maximal.hpp"

using namespace zygmund;

TEST_CASE("average over a volume-1 box containing the support is exactly 1") {
    TestFunction f(4, 3);
    AnchoredBox box = AnchoredBox::from_integer_exps({3, -3, 1, -1});
    MeasureValue avg = average_over_box(box, f);
    REQUIRE(avg.is_exact());
    CHECK(*avg.exact == DyadicRational(1));
}

TEST_CASE("average with partial overlap: the worked d=4, k=1 case") {
    TestFunction f(4, 1);
    AnchoredBox box = AnchoredBox::from_integer_exps({-2, 2, 0, 0});
    // intersection (-2,-1,-1,-1): integral 2^4 * 2^-5 = 1/2, |R| = 1
    MeasureValue avg = average_over_box(box, f);
    REQUIRE(avg.is_exact());
    CHECK(*avg.exact == DyadicRational(BigInt(1), -1));
}

TEST_CASE("average over the support cube is the height 2^{dk}") {
    TestFunction f(3, 2);
    MeasureValue avg = average_over_box(f.support(), f);
    REQUIRE(avg.is_exact());
    CHECK(*avg.exact == DyadicRational::pow2(6));
}

TEST_CASE("maximal operator at sample points") {
    TestFunction f(4, 2);
    int64_t cd = auto_cd(4, 2);
    std::vector<TiedBox> fam = theorem2_family(4, 2, cd);
    std::vector<AnchoredBox> boxes;
    for (const auto& tb : fam) boxes.push_back(tb.to_box());

    // a point far outside every box
    std::vector<DyadicRational> far(4, DyadicRational(1000));
    CHECK(*maximal_eval(far, boxes, f).exact == DyadicRational(0));

    // a corner point inside all boxes: every average is exactly 1
    std::vector<DyadicRational> eps(4, DyadicRational(BigInt(1), -40));
    CHECK(*maximal_eval(eps, boxes, f).exact == DyadicRational(1));

    // singleton family
    std::vector<AnchoredBox> single = {AnchoredBox::from_integer_exps({-2, 2, 0, 0})};
    TestFunction f1(4, 1);
    CHECK(*maximal_eval(eps, single, f1).exact == DyadicRational(BigInt(1), -1));
}

TEST_CASE("superlevel lower bound") {
    TestFunction f(4, 1);
    std::vector<TiedBox> fam = theorem2_family(4, 1, 4);
    std::vector<AnchoredBox> boxes;
    for (const auto& tb : fam) boxes.push_back(tb.to_box());
    UnionMeasureResult r = superlevel_lower_bound(boxes, f);
    CHECK(*r.value.exact == DyadicRational(1));

    // level 2 excludes averages equal to 1
    r = superlevel_lower_bound(boxes, f, DyadicRational(2));
    CHECK(*r.value.exact == DyadicRational(0));

    // boundary inclusion is non-strict
    r = superlevel_lower_bound(boxes, f, DyadicRational(1));
    CHECK(r.box_count == boxes.size());
}

TEST_CASE("superlevel bound grows with the family") {
    TestFunction f(4, 6);
    int64_t cd = auto_cd(4, 6);
    std::vector<TiedBox> fam = theorem2_family(4, 6, cd);
    std::vector<AnchoredBox> boxes;
    for (const auto& tb : fam) boxes.push_back(tb.to_box());
    double prev = 0.0;
    for (size_t cut = 1; cut <= boxes.size(); ++cut) {
        std::vector<AnchoredBox> part(boxes.begin(),
                                      boxes.begin() + static_cast<long>(cut));
        UnionMeasureResult r = superlevel_lower_bound(part, f);
        double v = r.value.value();
        REQUIRE(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("orlicz right-hand side") {
    // alpha = 0: exactly 1 for every k
    for (int64_t k : {0, 1, 5}) {
        Interval v = orlicz_rhs(TestFunction(4, k), 0.0);
        CHECK(v.mid() == Catch::Approx(1.0));
        CHECK(v.err() == 0.0);
    }
    // k = 0: (log(e+1))^alpha
    long double e1 = std::log(expl(1.0L) + 1.0L);
    Interval v = orlicz_rhs(TestFunction(4, 0), 1.0);
    CHECK(v.mid() == Catch::Approx(static_cast<double>(e1)).epsilon(1e-12));
    v = orlicz_rhs(TestFunction(4, 0), 2.5);
    CHECK(v.mid() ==
          Catch::Approx(static_cast<double>(std::pow(e1, 2.5L))).epsilon(1e-12));

    // d=4, k=1, alpha=1: log(e + 16), checked against long-double evaluation
    long double expect = std::log(expl(1.0L) + 16.0L);
    v = orlicz_rhs(TestFunction(4, 1), 1.0);
    CHECK(v.mid() == Catch::Approx(static_cast<double>(expect)).epsilon(1e-14));
    CHECK(v.err() < 1e-30);

    // monotone in alpha for fixed k, and in k for fixed alpha > 0
    double prev = 0.0;
    for (double a : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        double cur = orlicz_rhs(TestFunction(4, 2), a).mid();
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    prev = 0.0;
    for (int64_t k : {0, 1, 2, 4, 8}) {
        double cur = orlicz_rhs(TestFunction(4, k), 1.5).mid();
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}
