#pragma once

#include <cstdint>
#include <vector>

#include "zygmund/box.hpp"
#include "zygmund/measure.hpp"

namespace zygmund {

/// f_k = 2^{dk} on the cube [0, 2^-k)^d and 0 elsewhere; the integral is
/// exactly 1 for every k.
struct TestFunction {
    int d = 1;
    int64_t k = 0;

    TestFunction(int d_, int64_t k_) : d(d_), k(k_) {
        if (d < 1 || k < 0) throw Error("TestFunction: need d >= 1, k >= 0");
    }

    AnchoredBox support() const { return AnchoredBox::cube(static_cast<size_t>(d), -k); }
    int64_t height_exp() const { return static_cast<int64_t>(d) * k; }  // f = 2^{dk}
};

struct WeakTypeConfig {
    double alpha = 0.0;
    DyadicRational level = DyadicRational(1);
};

/// (1/|R|) int_R f_k = 2^{dk} |R  cap cube| / |R|; exact whenever both
/// exponent sums are integers (box volumes are powers of two, so the division
/// is a shift).
inline MeasureValue average_over_box(const AnchoredBox& box, const TestFunction& f,
                                     mpfr_prec_t precision = 128) {
    if (box.dim() != static_cast<size_t>(f.d))
        throw DimensionMismatch("average_over_box: dimension mismatch");
    AnchoredBox inter = intersect_anchored(box, f.support());
    ExponentSum si = inter.exponent_sum();
    ExponentSum sb = box.exponent_sum();
    if (si.is_integer() && sb.is_integer()) {
        int64_t e = f.height_exp() + to_int64(si.integer_part()) -
                    to_int64(sb.integer_part());
        return MeasureValue::from_exact(DyadicRational::pow2(e), precision);
    }
    Interval vi = exp2_of_sum(si, precision);
    Interval vb = exp2_of_sum(sb, precision);
    Interval scale = Interval::exp2_of(Exponent(static_cast<long>(f.height_exp())),
                                       precision);
    return {std::nullopt, scale * vi / vb};
}

/// Restricted maximal operator at a dyadic point: max of the box averages
/// over the finite family members containing x; 0 when none does.
inline MeasureValue maximal_eval(const std::vector<DyadicRational>& x,
                                 const std::vector<AnchoredBox>& family,
                                 const TestFunction& f,
                                 mpfr_prec_t precision = 128) {
    MeasureValue best = MeasureValue::from_exact(DyadicRational(0), precision);
    for (const auto& box : family) {
        if (!box_contains_point(box, x)) continue;
        MeasureValue avg = average_over_box(box, f, precision);
        bool better;
        if (avg.exact && best.exact)
            better = *avg.exact > *best.exact;
        else
            better = avg.enclosure.mid() > best.enclosure.mid();
        if (better) best = avg;
    }
    return best;
}

/// Certified lower bound for |{Mf >= level}|: the union of the family boxes
/// whose average is provably >= level.
inline UnionMeasureResult superlevel_lower_bound(
    const std::vector<AnchoredBox>& family, const TestFunction& f,
    const DyadicRational& level = DyadicRational(1),
    mpfr_prec_t precision = 128) {
    std::vector<AnchoredBox> survivors;
    bool all_int = true;
    for (const auto& box : family) {
        MeasureValue avg = average_over_box(box, f, precision);
        bool keep;
        if (avg.exact) {
            keep = *avg.exact >= level;
        } else {
            Interval lv = Interval::from_dyadic(level, precision);
            keep = mpfr_cmp(avg.enclosure.lo(), lv.hi()) >= 0;
        }
        if (keep) {
            all_int = all_int && box.all_integer_exps();
            survivors.push_back(box);
        }
    }
    if (survivors.empty())
        return {MeasureValue::from_exact(DyadicRational(0), precision),
                MeasureMode::Exact, 0};
    return union_volume(survivors,
                        all_int ? MeasureMode::Exact : MeasureMode::Certified,
                        precision);
}

/// Orlicz functional of the test function at level alpha:
/// int f_k log(e + f_k)^alpha = (log(e + 2^{dk}))^alpha, natural log.
inline Interval orlicz_rhs(const TestFunction& f, double alpha,
                           mpfr_prec_t precision = 128) {
    if (alpha < 0) throw Error("orlicz_rhs: alpha must be >= 0");
    Interval e = Interval::euler(precision);
    Interval h = Interval::exp2_of(Exponent(static_cast<long>(f.height_exp())),
                                   precision);
    return (e + h).log_nat().pow_real(alpha);
}

}  // namespace zygmund
