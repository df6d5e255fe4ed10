#include <catch2/catch_amalgamated.hpp>

#include "zygmund/bases.hpp"
#include "zygmund/measure.hpp"
#include "zygmund/rng.hpp"

using namespace zygmund;

namespace {

AnchoredBox dyadic_box(std::vector<int64_t> exps) {
    return AnchoredBox::from_integer_exps(exps);
}

std::vector<AnchoredBox> random_boxes(Rng& rng, int d, int n, int64_t lo,
                                      int64_t hi) {
    std::vector<AnchoredBox> out;
    for (int i = 0; i < n; ++i) {
        ExponentVec e;
        for (int j = 0; j < d; ++j) e.push_back(rng.uniform(lo, hi));
        out.push_back(AnchoredBox::from_integer_exps(e));
    }
    return out;
}

}  // namespace

TEST_CASE("single box union is its volume") {
    UnionMeasureResult r =
        union_volume({dyadic_box({1, -1})}, MeasureMode::Exact);
    CHECK(*r.value.exact == DyadicRational(1));
    CHECK(r.box_count == 1);
}

TEST_CASE("two-box union: 1 + 1 - 1/2 = 3/2") {
    std::vector<AnchoredBox> boxes = {dyadic_box({1, -1}), dyadic_box({0, 0})};
    DyadicRational expect = DyadicRational(BigInt(3), -1);
    CHECK(*union_volume(boxes, MeasureMode::Exact).value.exact == expect);
    CHECK(*union_volume_inclusion_exclusion(boxes).exact == expect);
    GridOracleResult g = union_volume_grid(boxes, 2);
    CHECK(g.exact);
    CHECK(g.lower == expect);
}

TEST_CASE("nested boxes collapse to the largest") {
    std::vector<AnchoredBox> boxes = {dyadic_box({0, 0}), dyadic_box({2, 1}),
                                      dyadic_box({1, 1})};
    UnionMeasureResult r = union_volume(boxes, MeasureMode::Exact);
    CHECK(*r.value.exact == DyadicRational(8));
    CHECK(r.box_count == 1);  // dominance dedup
}

TEST_CASE("exact mode rejects irrational exponents") {
    AnchoredBox rooty({Exponent(BigInt(2), 2), Exponent(0)});
    CHECK_THROWS_AS(union_volume({rooty}, MeasureMode::Exact), Error);
}

TEST_CASE("union equals inclusion-exclusion on random dyadic instances") {
    Rng rng(20240903);
    for (int t = 0; t < 200; ++t) {
        int d = static_cast<int>(rng.uniform(1, 5));
        int n = static_cast<int>(rng.uniform(1, 12));
        std::vector<AnchoredBox> boxes = random_boxes(rng, d, n, -6, 6);
        DyadicRational sweep = *union_volume(boxes, MeasureMode::Exact).value.exact;
        DyadicRational ie = *union_volume_inclusion_exclusion(boxes).exact;
        REQUIRE(sweep == ie);
    }
}

TEST_CASE("union is order- and duplication-invariant") {
    Rng rng(424242);
    for (int t = 0; t < 100; ++t) {
        int d = static_cast<int>(rng.uniform(1, 4));
        std::vector<AnchoredBox> boxes =
            random_boxes(rng, d, static_cast<int>(rng.uniform(1, 8)), -5, 5);
        DyadicRational base = *union_volume(boxes, MeasureMode::Exact).value.exact;
        std::vector<AnchoredBox> mutated = boxes;
        for (size_t i = mutated.size(); i > 1; --i)
            std::swap(mutated[i - 1], mutated[rng.next() % i]);
        mutated.push_back(boxes[rng.next() % boxes.size()]);
        CHECK(*union_volume(mutated, MeasureMode::Exact).value.exact == base);
    }
}

TEST_CASE("certified mode encloses the exact value on dyadic instances") {
    Rng rng(5150);
    for (int t = 0; t < 50; ++t) {
        int d = static_cast<int>(rng.uniform(1, 4));
        std::vector<AnchoredBox> boxes =
            random_boxes(rng, d, static_cast<int>(rng.uniform(1, 8)), -5, 5);
        DyadicRational exact = *union_volume(boxes, MeasureMode::Exact).value.exact;
        Interval enc =
            union_volume(boxes, MeasureMode::Certified, 128).value.enclosure;
        REQUIRE(enc.contains(exact));
        REQUIRE(enc.err() < 1e-25);
    }
}

TEST_CASE("grid oracle brackets mixed instances") {
    AnchoredBox rooty({Exponent(BigInt(2), 2), Exponent(-1)});
    GridOracleResult g = union_volume_grid({rooty}, 4);
    CHECK_FALSE(g.exact);
    double v = std::pow(2.0, std::sqrt(2.0)) * 0.5;
    CHECK(g.lower.to_double() <= v);
    CHECK(v <= g.upper.to_double());
    CHECK((g.upper - g.lower).to_double() < 0.2);
}

TEST_CASE("witnesses: single box, duplicates, and the 3/2 pair") {
    SparsenessReport rep = sparseness_witness({dyadic_box({1, -1})});
    REQUIRE(rep.witness.size() == 1);
    CHECK(*rep.witness[0].exact == DyadicRational(1));
    CHECK(rep.c_min.mid() == Catch::Approx(1.0));
    CHECK(rep.carleson.mid() == Catch::Approx(1.0));

    // two copies of the same box: second witness is empty
    std::vector<AnchoredBox> dup = {dyadic_box({0, 0}), dyadic_box({0, 0})};
    rep = sparseness_witness(dup, std::vector<size_t>{0, 1});
    CHECK(*rep.witness[1].exact == DyadicRational(0));
    CHECK(rep.c_min.mid() == Catch::Approx(0.0));

    // listed order: E(R_2) = 3/2 - 1 = 1/2
    std::vector<AnchoredBox> pair = {dyadic_box({1, -1}), dyadic_box({0, 0})};
    rep = sparseness_witness(pair, std::vector<size_t>{0, 1});
    CHECK(*rep.witness[0].exact == DyadicRational(1));
    CHECK(*rep.witness[1].exact == DyadicRational(BigInt(1), -1));
    CHECK(rep.c_min.mid() == Catch::Approx(0.5));
}

TEST_CASE("witness measures sum to the union for every ordering") {
    Rng rng(31337);
    for (int t = 0; t < 60; ++t) {
        int d = static_cast<int>(rng.uniform(1, 4));
        std::vector<AnchoredBox> boxes =
            random_boxes(rng, d, static_cast<int>(rng.uniform(1, 7)), -4, 4);
        DyadicRational total = *union_volume(boxes, MeasureMode::Exact).value.exact;
        std::vector<size_t> order(boxes.size());
        std::iota(order.begin(), order.end(), size_t{0});
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next() % i]);
        SparsenessReport rep = sparseness_witness(boxes, order);
        DyadicRational sum;
        for (const auto& w : rep.witness) sum += *w.exact;
        REQUIRE(sum == total);
    }
}

TEST_CASE("tied peel agrees with the generic engines") {
    Rng rng(777);
    for (int t = 0; t < 150; ++t) {
        int d = rng.next() % 2 == 0 ? 4 : 5;
        std::vector<int64_t> ns;
        std::vector<TiedBox> tied;
        int n = static_cast<int>(rng.uniform(1, 9));
        for (int i = 0; i < n; ++i) {
            int64_t nv = rng.uniform(0, 40);
            bool dup = false;
            for (int64_t o : ns) dup = dup || o == nv;
            if (dup) continue;
            ns.push_back(nv);
            TiedBox tb;
            tb.s = tau_inverse(d, BigInt(nv));
            int64_t sum = 0;
            for (int j = 0; j < d - 3; ++j) {
                int64_t c = rng.uniform(0, 3);
                tb.tail.push_back(c);
                sum += c;
            }
            tb.tail.push_back(-sum);
            tied.push_back(tb);
        }
        TiedPeelResult pr = tied_peel(tied, 160);
        std::vector<AnchoredBox> boxes;
        for (const auto& tb : tied) boxes.push_back(tb.to_box());
        Interval ie = union_volume_inclusion_exclusion(boxes, 160).enclosure;
        // enclosures of the same number must overlap
        REQUIRE(mpfr_cmp(pr.total.hi(), ie.lo()) >= 0);
        REQUIRE(mpfr_cmp(ie.hi(), pr.total.lo()) >= 0);
        REQUIRE(pr.total.err() < 1e-30);

        // witnesses: against direct computation of |R_t \ union of later|
        size_t pick = rng.next() % tied.size();
        // order holds input indices in decreasing-s order
        std::vector<AnchoredBox> later;
        for (size_t i = 0; i < pick; ++i)
            later.push_back(boxes[pr.order[i]]);
        AnchoredBox self = boxes[pr.order[pick]];
        Interval expected = Interval::from_int(1, 160);
        if (!later.empty()) {
            std::vector<AnchoredBox> clipped;
            for (const auto& L : later)
                clipped.push_back(intersect_anchored(self, L));
            Interval cov =
                union_volume_inclusion_exclusion(clipped, 160).enclosure;
            expected = Interval::from_int(1, 160) - cov;
        }
        REQUIRE(mpfr_cmp(pr.witness[pick].hi(), expected.lo()) >= 0);
        REQUIRE(mpfr_cmp(expected.hi(), pr.witness[pick].lo()) >= 0);
    }
}

TEST_CASE("certified union routes large tied families through the peel") {
    std::vector<TiedBox> fam = theorem2_family(4, 30, 2);
    REQUIRE(fam.size() > 64);
    std::vector<AnchoredBox> boxes;
    for (const auto& tb : fam) boxes.push_back(tb.to_box());
    UnionMeasureResult via_union = union_volume(boxes, MeasureMode::Certified, 128);
    TiedPeelResult direct = tied_peel(fam, 128);
    REQUIRE(mpfr_cmp(via_union.value.enclosure.hi(), direct.total.lo()) >= 0);
    REQUIRE(mpfr_cmp(direct.total.hi(), via_union.value.enclosure.lo()) >= 0);
    CHECK(via_union.box_count == fam.size());
}
