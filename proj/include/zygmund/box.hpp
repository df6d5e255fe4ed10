#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zygmund/dyadic.hpp"
#include "zygmund/exponent.hpp"
#include "zygmund/interval.hpp"

namespace zygmund {

/// Integer log2 side lengths of a dyadic box.
using ExponentVec = std::vector<int64_t>;

/// Volume-like quantity: always a certified enclosure, plus the exact dyadic
/// value whenever one exists.
struct MeasureValue {
    std::optional<DyadicRational> exact;
    Interval enclosure;

    static MeasureValue from_exact(const DyadicRational& d, mpfr_prec_t prec) {
        return {d, Interval::from_dyadic(d, prec)};
    }
    bool is_exact() const { return exact.has_value(); }
    double value() const { return exact ? exact->to_double() : enclosure.mid(); }
    double error_bound() const { return exact ? 0.0 : enclosure.err(); }
};

/// Origin-anchored half-open box [0, 2^e1) x ... x [0, 2^ed).
class AnchoredBox {
public:
    AnchoredBox() = default;
    explicit AnchoredBox(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
    AnchoredBox(std::initializer_list<Exponent> exps) : exps_(exps) {}

    static AnchoredBox from_integer_exps(const ExponentVec& e) {
        std::vector<Exponent> v;
        v.reserve(e.size());
        for (int64_t x : e) v.emplace_back(static_cast<long>(x));
        return AnchoredBox(std::move(v));
    }

    /// The cube [0, 2^e)^d.
    static AnchoredBox cube(size_t d, long e) {
        return from_integer_exps(ExponentVec(d, e));
    }

    size_t dim() const { return exps_.size(); }
    const Exponent& exp(size_t i) const { return exps_[i]; }
    const std::vector<Exponent>& exps() const { return exps_; }

    bool all_integer_exps() const {
        for (const auto& e : exps_)
            if (!e.is_integer()) return false;
        return true;
    }

    ExponentSum exponent_sum() const {
        ExponentSum s;
        for (const auto& e : exps_) s.add(e);
        return s;
    }

    bool operator==(const AnchoredBox& o) const { return exps_ == o.exps_; }

private:
    std::vector<Exponent> exps_;
};

/// Per-axis minimum; anchored boxes are closed under intersection.
inline AnchoredBox intersect_anchored(const AnchoredBox& a, const AnchoredBox& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("intersect_anchored: dimension mismatch");
    std::vector<Exponent> out;
    out.reserve(a.dim());
    for (size_t i = 0; i < a.dim(); ++i) out.push_back(min_exp(a.exp(i), b.exp(i)));
    return AnchoredBox(std::move(out));
}

/// True iff the box contains [0, 2^-k)^d, i.e. every exponent is >= -k.
inline bool contains_cube(const AnchoredBox& b, long k) {
    if (k < 0) throw Error("contains_cube: k must be >= 0");
    Exponent bound(-k);
    for (size_t i = 0; i < b.dim(); ++i)
        if (compare_exponents(b.exp(i), bound) == std::strong_ordering::less)
            return false;
    return true;
}

/// Exact dyadic volume when the exponent sum is an integer, else a certified
/// enclosure at the given precision.
inline MeasureValue box_volume(const AnchoredBox& b, mpfr_prec_t precision = 128) {
    if (precision < 64) throw Error("box_volume: precision must be >= 64 bits");
    ExponentSum s = b.exponent_sum();
    if (s.is_integer()) {
        DyadicRational v = DyadicRational::pow2(to_int64(s.integer_part()));
        return MeasureValue::from_exact(v, precision);
    }
    return {std::nullopt, exp2_of_sum(s, precision)};
}

/// a is dominated by b iff a's box is contained in b's (per-axis <=).
inline bool dominated_by(const AnchoredBox& a, const AnchoredBox& b) {
    for (size_t i = 0; i < a.dim(); ++i)
        if (compare_exponents(a.exp(i), b.exp(i)) == std::strong_ordering::greater)
            return false;
    return true;
}

/// Exact membership test of a point with dyadic coordinates: x in box iff
/// 0 <= x_i < 2^{e_i} per axis. Integer exponents compare exactly as dyadic
/// rationals. A reduced root exponent is irrational, so 2^e is never dyadic
/// and interval refinement decides the strict comparison in finitely many
/// steps.
inline bool box_contains_point(const AnchoredBox& b,
                               const std::vector<DyadicRational>& x) {
    if (b.dim() != x.size())
        throw DimensionMismatch("box_contains_point: dimension mismatch");
    for (size_t i = 0; i < b.dim(); ++i) {
        const DyadicRational& c = x[i];
        if (c.sign() < 0) return false;
        const Exponent& e = b.exp(i);
        if (c.is_zero()) continue;
        if (e.is_integer()) {
            if (!(c < DyadicRational::pow2(to_int64(e.integer_value()))))
                return false;
            continue;
        }
        bool decided = false, inside = false;
        for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
            Interval side = Interval::exp2_of(e, prec);
            Interval cv = Interval::from_dyadic(c, prec);
            if (mpfr_cmp(cv.hi(), side.lo()) < 0) {
                decided = true;
                inside = true;
                break;
            }
            if (mpfr_cmp(cv.lo(), side.hi()) >= 0) {
                decided = true;
                inside = false;
                break;
            }
        }
        if (!decided)
            throw Error("box_contains_point: comparison did not resolve");
        if (!inside) return false;
    }
    return true;
}

}  // namespace zygmund
