#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "zygmund/box.hpp"
#include "zygmund/measure_tied.hpp"

namespace zygmund {

enum class MeasureMode { Exact, Certified };

struct UnionMeasureResult {
    MeasureValue value;
    MeasureMode mode = MeasureMode::Exact;
    size_t box_count = 0;  // after dedup of dominated boxes
};

namespace detail {

/// Per-axis dense ranks: exponents mapped to 0..K-1 in exact increasing
/// order, so the sweep recursion only ever touches plain ints.
struct RankedBoxes {
    size_t dim = 0;
    std::vector<std::vector<int>> ranks;             // [box][axis]
    std::vector<std::vector<Exponent>> axis_values;  // [axis][rank]
};

inline RankedBoxes rank_boxes(const std::vector<AnchoredBox>& boxes) {
    RankedBoxes rb;
    rb.dim = boxes.front().dim();
    rb.ranks.assign(boxes.size(), std::vector<int>(rb.dim, 0));
    rb.axis_values.resize(rb.dim);
    for (size_t ax = 0; ax < rb.dim; ++ax) {
        std::vector<size_t> idx(boxes.size());
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return compare(boxes[a].exp(ax), boxes[b].exp(ax)) ==
                   std::strong_ordering::less;
        });
        int rank = -1;
        for (size_t pos = 0; pos < idx.size(); ++pos) {
            if (pos == 0 || compare(boxes[idx[pos - 1]].exp(ax),
                                    boxes[idx[pos]].exp(ax)) ==
                                std::strong_ordering::less) {
                ++rank;
                rb.axis_values[ax].push_back(boxes[idx[pos]].exp(ax));
            }
            rb.ranks[idx[pos]][ax] = rank;
        }
    }
    return rb;
}

/// Remove duplicates and boxes dominated per-axis by another box.
inline std::vector<std::vector<int>> prune_dominated(
    std::vector<std::vector<int>> rows) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < rows.size(); ++i) {
        bool dom = false;
        for (size_t j = 0; j < rows.size() && !dom; ++j) {
            if (i == j) continue;
            bool le = true, strict = false;
            for (size_t ax = 0; ax < rows[i].size(); ++ax) {
                if (rows[i][ax] > rows[j][ax]) {
                    le = false;
                    break;
                }
                if (rows[i][ax] < rows[j][ax]) strict = true;
            }
            dom = le && strict;
        }
        if (!dom) out.push_back(rows[i]);
    }
    return out;
}

/// Scalar policies for the sweep recursion.
struct ExactOps {
    using Num = DyadicRational;
    std::vector<std::vector<Num>> lengths;  // [axis][rank] = 2^e
    static Num zero() { return {}; }
    static Num sub(const Num& a, const Num& b) { return a - b; }
    static Num mul(const Num& a, const Num& b) { return a * b; }
    static void add_to(Num& a, const Num& b) { a += b; }
};

struct CertOps {
    using Num = Interval;
    mpfr_prec_t prec;
    std::vector<std::vector<Num>> lengths;
    Num zero() const { return Interval(prec); }
    static Num sub(const Num& a, const Num& b) { return a - b; }
    static Num mul(const Num& a, const Num& b) { return a * b; }
    static void add_to(Num& a, const Num& b) { a += b; }
};

template <typename Ops>
class SweepEngine {
public:
    SweepEngine(const Ops& ops, size_t dim) : ops_(ops), dim_(dim) {}

    typename Ops::Num run(std::vector<std::vector<int>> rows) {
        return recurse(0, std::move(rows));
    }

private:
    typename Ops::Num recurse(size_t axis, std::vector<std::vector<int>> rows) {
        rows = prune_dominated(std::move(rows));
        if (axis == dim_ - 1) {
            int best = 0;
            for (auto& r : rows) best = std::max(best, r[0]);
            return ops_.lengths[axis][static_cast<size_t>(best)];
        }
        auto memo_key = std::make_pair(axis, rows);
        if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

        std::sort(rows.begin(), rows.end());
        std::vector<int> cuts;
        for (auto& r : rows)
            if (cuts.empty() || cuts.back() != r[0]) cuts.push_back(r[0]);

        typename Ops::Num total = ops_.zero();
        for (size_t c = 0; c < cuts.size(); ++c) {
            std::vector<std::vector<int>> alive;
            for (auto& r : rows) {
                if (r[0] >= cuts[c]) alive.emplace_back(r.begin() + 1, r.end());
            }
            typename Ops::Num slice = recurse(axis + 1, std::move(alive));
            typename Ops::Num lo =
                c == 0 ? ops_.zero()
                       : ops_.lengths[axis][static_cast<size_t>(cuts[c - 1])];
            typename Ops::Num seg =
                Ops::sub(ops_.lengths[axis][static_cast<size_t>(cuts[c])], lo);
            Ops::add_to(total, Ops::mul(seg, slice));
        }
        memo_.emplace(std::move(memo_key), total);
        return total;
    }

    const Ops& ops_;
    size_t dim_;
    std::map<std::pair<size_t, std::vector<std::vector<int>>>, typename Ops::Num>
        memo_;
};

inline void check_same_dim(const std::vector<AnchoredBox>& boxes) {
    for (const auto& b : boxes)
        if (b.dim() != boxes.front().dim())
            throw DimensionMismatch("union_volume: boxes of mixed dimension");
}

}  // namespace detail

/// Lebesgue measure of the union of origin-anchored boxes by a recursive
/// dimension sweep: sort the distinct first-axis coordinates exactly, and
/// between consecutive coordinates take the (d-1)-dimensional union of the
/// boxes still alive. Dominated boxes are removed first; repeated slice sets
/// are memoized.
inline UnionMeasureResult union_volume(const std::vector<AnchoredBox>& boxes,
                                       MeasureMode mode,
                                       mpfr_prec_t precision = 128) {
    if (boxes.empty()) {
        return {MeasureValue::from_exact(DyadicRational(0), precision), mode, 0};
    }
    detail::check_same_dim(boxes);
    bool all_int = true;
    for (const auto& b : boxes) all_int = all_int && b.all_integer_exps();
    if (mode == MeasureMode::Exact && !all_int)
        throw Error("union_volume: exact mode requires integer exponents");

    // Large families of the restricted shape go through the specialized peel;
    // the generic sweep handles everything else.
    if (mode == MeasureMode::Certified && boxes.size() > 64) {
        std::vector<TiedBox> tied;
        if (tied_shape(boxes, &tied)) {
            TiedPeelResult pr = tied_peel(tied, precision);
            return {{std::nullopt, pr.total}, MeasureMode::Certified,
                    pr.box_count};
        }
    }

    detail::RankedBoxes rb = detail::rank_boxes(boxes);
    std::vector<std::vector<int>> rows = detail::prune_dominated(rb.ranks);
    size_t count = rows.size();

    if (mode == MeasureMode::Exact) {
        detail::ExactOps ops;
        ops.lengths.resize(rb.dim);
        for (size_t ax = 0; ax < rb.dim; ++ax)
            for (const auto& e : rb.axis_values[ax])
                ops.lengths[ax].push_back(
                    DyadicRational::pow2(to_int64(e.integer_value())));
        detail::SweepEngine<detail::ExactOps> eng(ops, rb.dim);
        DyadicRational v = eng.run(std::move(rows));
        return {MeasureValue::from_exact(v, precision), MeasureMode::Exact, count};
    }

    detail::CertOps ops{precision, {}};
    ops.lengths.resize(rb.dim);
    for (size_t ax = 0; ax < rb.dim; ++ax)
        for (const auto& e : rb.axis_values[ax])
            ops.lengths[ax].push_back(Interval::exp2_of(e, precision));
    detail::SweepEngine<detail::CertOps> eng(ops, rb.dim);
    Interval v = eng.run(std::move(rows));
    std::optional<DyadicRational> exact;
    if (all_int) {
        // certified mode on a dyadic instance still has a unique enclosed value
        exact = std::nullopt;
    }
    return {{exact, v}, MeasureMode::Certified, count};
}

enum class OracleMode { InclusionExclusion, Grid };

struct GridOracleResult {
    DyadicRational lower;  // measure of cells certainly covered
    DyadicRational upper;  // measure of cells possibly touched
    bool exact = false;    // lower == upper
};

/// Independent oracle: exact alternating-sign sum over nonempty subsets.
inline MeasureValue union_volume_inclusion_exclusion(
    const std::vector<AnchoredBox>& boxes, mpfr_prec_t precision = 128) {
    if (boxes.size() > 20)
        throw Error("inclusion-exclusion oracle: more than 20 boxes");
    if (boxes.empty())
        return MeasureValue::from_exact(DyadicRational(0), precision);
    detail::check_same_dim(boxes);
    bool all_int = true;
    for (const auto& b : boxes) all_int = all_int && b.all_integer_exps();

    const uint32_t full = (uint32_t{1} << boxes.size()) - 1;
    if (all_int) {
        DyadicRational total;
        for (uint32_t mask = 1; mask <= full; ++mask) {
            AnchoredBox inter;
            bool first = true;
            for (size_t i = 0; i < boxes.size(); ++i) {
                if (!(mask >> i & 1)) continue;
                inter = first ? boxes[i] : intersect_anchored(inter, boxes[i]);
                first = false;
            }
            DyadicRational v = *box_volume(inter, precision).exact;
            if (std::popcount(mask) % 2 == 1)
                total += v;
            else
                total -= v;
        }
        return MeasureValue::from_exact(total, precision);
    }
    Interval total(precision);
    for (uint32_t mask = 1; mask <= full; ++mask) {
        AnchoredBox inter;
        bool first = true;
        for (size_t i = 0; i < boxes.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            inter = first ? boxes[i] : intersect_anchored(inter, boxes[i]);
            first = false;
        }
        Interval v = box_volume(inter, precision).enclosure;
        total += std::popcount(mask) % 2 == 1 ? v : -v;
    }
    return {std::nullopt, total};
}

/// Independent oracle: dyadic grid count at resolution 2^-g. Exact for
/// integer-exponent boxes once every side is at least one cell wide;
/// otherwise returns certified lower/upper cell counts.
inline GridOracleResult union_volume_grid(const std::vector<AnchoredBox>& boxes,
                                          long g,
                                          uint64_t max_cells = 20'000'000) {
    if (boxes.empty()) return {DyadicRational(0), DyadicRational(0), true};
    detail::check_same_dim(boxes);
    size_t d = boxes.front().dim();

    // Per box and axis: number of cells certainly covered / possibly touched.
    std::vector<std::vector<uint64_t>> lo_cells(boxes.size()),
        hi_cells(boxes.size());
    for (size_t b = 0; b < boxes.size(); ++b) {
        for (size_t ax = 0; ax < d; ++ax) {
            const Exponent& e = boxes[b].exp(ax);
            if (e.is_integer()) {
                int64_t s = to_int64(e.integer_value()) + g;
                if (s < 0)
                    throw Error("grid oracle: resolution too coarse for box side");
                if (s > 40) throw Error("grid oracle: resolution too fine");
                lo_cells[b].push_back(uint64_t{1} << s);
                hi_cells[b].push_back(uint64_t{1} << s);
            } else {
                // floor/ceil of 2^(e+g) by interval refinement; never integral
                uint64_t fl = 0;
                for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
                    Interval v = Interval::exp2_of(e, prec);
                    MpReal t(prec);
                    mpfr_mul_2si(t.get(), v.lo(), g, MPFR_RNDD);
                    double flo = std::floor(mpfr_get_d(t.get(), MPFR_RNDD));
                    mpfr_mul_2si(t.get(), v.hi(), g, MPFR_RNDU);
                    double fhi = std::floor(mpfr_get_d(t.get(), MPFR_RNDU));
                    if (flo == fhi && flo >= 0) {
                        fl = static_cast<uint64_t>(flo);
                        break;
                    }
                    if (prec == (1 << 16))
                        throw Error("grid oracle: side did not resolve");
                }
                lo_cells[b].push_back(fl);
                hi_cells[b].push_back(fl + 1);
            }
        }
    }

    std::vector<uint64_t> extent(d, 0);
    for (size_t b = 0; b < boxes.size(); ++b)
        for (size_t ax = 0; ax < d; ++ax)
            extent[ax] = std::max(extent[ax], hi_cells[b][ax]);
    uint64_t total = 1;
    for (uint64_t e : extent) {
        if (e != 0 && total > max_cells / e)
            throw Error("grid oracle: cell budget exceeded");
        total *= e;
    }

    uint64_t covered_lo = 0, covered_hi = 0;
    std::vector<uint64_t> idx(d, 0);
    for (uint64_t cell = 0; cell < total; ++cell) {
        uint64_t rest = cell;
        for (size_t ax = 0; ax < d; ++ax) {
            idx[ax] = rest % extent[ax];
            rest /= extent[ax];
        }
        bool in_lo = false, in_hi = false;
        for (size_t b = 0; b < boxes.size() && !in_lo; ++b) {
            bool lo_ok = true, hi_ok = true;
            for (size_t ax = 0; ax < d; ++ax) {
                if (idx[ax] >= lo_cells[b][ax]) lo_ok = false;
                if (idx[ax] >= hi_cells[b][ax]) hi_ok = false;
            }
            in_lo = in_lo || lo_ok;
            in_hi = in_hi || hi_ok;
        }
        covered_lo += in_lo ? 1 : 0;
        covered_hi += in_hi ? 1 : 0;
    }
    DyadicRational cellvol = DyadicRational::pow2(-g * static_cast<int64_t>(d));
    DyadicRational lo = DyadicRational(BigInt(covered_lo), 0) * cellvol;
    DyadicRational hi = DyadicRational(BigInt(covered_hi), 0) * cellvol;
    return {lo, hi, covered_lo == covered_hi};
}

struct SparsenessReport {
    std::vector<MeasureValue> witness;  // |E(R_i)| in the peel order used
    std::vector<size_t> order;          // peel order as indices into the input
    MeasureValue union_vol;
    MeasureValue sum_vol;  // sum of |R_i|
    Interval c_min;        // min |E(R_i)| / |R_i|
    Interval carleson;     // sum |R_i| / |union|
};

/// Default witness order: decreasing first-axis exponent, ties broken by
/// decreasing second axis, then the remaining axes.
inline std::vector<size_t> default_witness_order(
    const std::vector<AnchoredBox>& boxes) {
    std::vector<size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        for (size_t ax = 0; ax < boxes[a].dim(); ++ax) {
            auto c = compare(boxes[a].exp(ax), boxes[b].exp(ax));
            if (c != std::strong_ordering::equal)
                return c == std::strong_ordering::greater;
        }
        return a < b;
    });
    return order;
}

/// Greedy disjoint witnesses E(R_i) = R_i minus everything earlier in the
/// order; |E(R_i)| is computed as |union of the first i| - |union of the
/// first i-1|, so the witness measures always add up to the union measure.
inline SparsenessReport sparseness_witness(const std::vector<AnchoredBox>& boxes,
                                           const std::vector<size_t>& order,
                                           mpfr_prec_t precision = 128) {
    if (boxes.empty()) throw Error("sparseness_witness: empty family");
    detail::check_same_dim(boxes);
    if (order.size() != boxes.size())
        throw Error("sparseness_witness: order must be a permutation");
    SparsenessReport rep;
    rep.order = order;

    bool all_int = true;
    for (const auto& b : boxes) all_int = all_int && b.all_integer_exps();

    // Fast path: restricted-shape family in its default order.
    std::vector<TiedBox> tied;
    if (boxes.size() > 64 && tied_shape(boxes, &tied) &&
        order == default_witness_order(boxes)) {
        TiedPeelResult pr = tied_peel(tied, precision);
        if (pr.box_count == boxes.size()) {
            rep.union_vol = {std::nullopt, pr.total};
            DyadicRational sum;
            Interval cmin(precision);
            bool first = true;
            for (size_t i = 0; i < pr.order.size(); ++i) {
                size_t bi = pr.order[i];
                int64_t tail_sum = 0;  // s and -s cancel exactly
                for (int64_t e : tied[bi].tail) tail_sum += e;
                DyadicRational bv = DyadicRational::pow2(tail_sum);
                sum += bv;
                Interval ratio =
                    pr.witness[i] / Interval::from_dyadic(bv, precision);
                if (first || ratio.mid() < cmin.mid()) cmin = ratio;
                first = false;
                rep.witness.push_back({std::nullopt, pr.witness[i]});
            }
            rep.sum_vol = MeasureValue::from_exact(sum, precision);
            rep.c_min = cmin;
            rep.carleson = rep.sum_vol.enclosure / pr.total;
            return rep;
        }
    }

    MeasureMode mode = all_int ? MeasureMode::Exact : MeasureMode::Certified;
    std::vector<AnchoredBox> prefix;
    MeasureValue prev = MeasureValue::from_exact(DyadicRational(0), precision);
    DyadicRational sum_exact;
    Interval sum_enc(precision);
    Interval cmin(precision);
    bool first = true;
    for (size_t i = 0; i < order.size(); ++i) {
        prefix.push_back(boxes[order[i]]);
        UnionMeasureResult u = union_volume(prefix, mode, precision);
        MeasureValue w;
        if (u.value.exact && prev.exact) {
            w = MeasureValue::from_exact(*u.value.exact - *prev.exact, precision);
        } else {
            w = {std::nullopt, u.value.enclosure - prev.enclosure};
        }
        MeasureValue bv = box_volume(boxes[order[i]], precision);
        if (bv.exact) sum_exact += *bv.exact;
        sum_enc += bv.enclosure;
        Interval ratio = w.enclosure / bv.enclosure;
        if (w.exact && w.exact->is_zero())
            ratio = Interval::from_int(0, precision);
        if (first || ratio.mid() < cmin.mid()) cmin = ratio;
        first = false;
        rep.witness.push_back(w);
        prev = u.value;
    }
    rep.union_vol = prev;
    rep.sum_vol = all_int ? MeasureValue::from_exact(sum_exact, precision)
                          : MeasureValue{std::nullopt, sum_enc};
    rep.c_min = cmin;
    rep.carleson = rep.sum_vol.enclosure / rep.union_vol.enclosure;
    return rep;
}

inline SparsenessReport sparseness_witness(const std::vector<AnchoredBox>& boxes,
                                           mpfr_prec_t precision = 128) {
    return sparseness_witness(boxes, default_witness_order(boxes), precision);
}

}  // namespace zygmund
