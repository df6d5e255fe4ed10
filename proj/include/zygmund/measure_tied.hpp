#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "zygmund/box.hpp"

namespace zygmund {

/// Box of the restricted family shape: [0,2^s) x [0,2^-s) x integer tail.
struct TiedBox {
    Exponent s;
    std::vector<int64_t> tail;  // exponents of axes 3..d

    AnchoredBox to_box() const {
        std::vector<Exponent> e;
        e.reserve(tail.size() + 2);
        e.push_back(s);
        e.push_back(-s);
        for (int64_t t : tail) e.emplace_back(static_cast<long>(t));
        return AnchoredBox(std::move(e));
    }
};

struct TiedPeelResult {
    /// Boxes in peel order: decreasing first-axis exponent. witness[i] is the
    /// measure of box i minus everything peeled before it, i.e. the greedy
    /// disjoint witness set E(R_i) for that order.
    std::vector<Interval> witness;
    std::vector<size_t> order;  // indices into the input vector, peel order
    Interval total;             // |union| = sum of witnesses
    size_t box_count = 0;
};

namespace detail {

struct TailKeyLess {
    bool operator()(const std::vector<int64_t>& a,
                    const std::vector<int64_t>& b) const {
        return a < b;
    }
};

}  // namespace detail

/// Union measure and greedy witnesses for a tied family, peeled in order of
/// decreasing first-axis exponent.
///
/// For the box at position t (s ascending), everything peeled before it has a
/// strictly larger s, covers the full x1-extent of R_t and a lower slab in
/// x2. Sweeping x2 downward, the uncovered tail volume only changes when a
/// tail value makes its first appearance after t, so
///
///   |E(R_t)| = 2^{s_t} * sum over runs [ (2^{-s_a} - 2^{-s_b}) * dV(run) ]
///
/// where runs are delimited by those first appearances and dV is the measure
/// of R-bar_t not yet covered by the clipped tails seen so far. dV is an
/// exact dyadic number maintained on a small integer lattice; only the
/// 2^{+-s} factors need rounding, which is done outward at `prec` bits.
inline TiedPeelResult tied_peel(const std::vector<TiedBox>& input,
                                mpfr_prec_t prec = 128) {
    TiedPeelResult res;
    if (input.empty()) {
        res.total = Interval(prec);
        return res;
    }
    const size_t D = input[0].tail.size();
    for (const auto& b : input)
        if (b.tail.size() != D)
            throw DimensionMismatch("tied_peel: boxes of mixed dimension");

    // Sort by s ascending (exact), drop exact duplicates.
    std::vector<size_t> idx(input.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        auto c = compare(input[a].s, input[b].s);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return input[a].tail < input[b].tail;
    });
    std::vector<size_t> kept;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (!kept.empty()) {
            const TiedBox& prev = input[kept.back()];
            const TiedBox& cur = input[idx[i]];
            if (compare(prev.s, cur.s) == std::strong_ordering::equal) {
                if (prev.tail == cur.tail) continue;  // duplicate box
                throw Error("tied_peel: equal first-axis exponents");
            }
        }
        kept.push_back(idx[i]);
    }
    const size_t m = kept.size();
    const auto box = [&](size_t t) -> const TiedBox& { return input[kept[t]]; };

    // Lattice geometry over the first D-1 tail axes; last tail axis is the
    // grid value.
    const size_t G = D - 1;
    std::vector<int64_t> emin(G, INT64_MAX), emax(G, INT64_MIN);
    int64_t minlast = INT64_MAX;
    for (size_t t = 0; t < m; ++t) {
        for (size_t a = 0; a < G; ++a) {
            emin[a] = std::min(emin[a], box(t).tail[a]);
            emax[a] = std::max(emax[a], box(t).tail[a]);
        }
        minlast = std::min(minlast, box(t).tail[D - 1]);
    }
    int64_t base_exp = minlast;
    for (size_t a = 0; a < G; ++a) base_exp += emin[a];
    const int64_t S = base_exp < 0 ? -base_exp : 0;  // scale: values * 2^S

    std::vector<size_t> stride(G, 1);
    size_t cells = 1;
    for (size_t a = 0; a < G; ++a) {
        stride[a] = cells;
        cells *= static_cast<size_t>(emax[a] - emin[a] + 1);
    }
    std::vector<int64_t> H(cells, 0);
    std::vector<uint32_t> stamp(cells, 0);
    uint32_t walk_id = 0;

    // pow2 table for scaled dyadic accounting
    int64_t max_exp = S;
    for (size_t a = 0; a < G; ++a) max_exp += std::max<int64_t>(emax[a], 0);
    int64_t max_last = INT64_MIN;
    for (size_t t = 0; t < m; ++t)
        max_last = std::max(max_last, box(t).tail[D - 1]);
    max_exp += std::max<int64_t>(max_last, 0) + 4;
    std::vector<BigInt> pow2(static_cast<size_t>(max_exp) + 1);
    for (size_t e = 0; e < pow2.size(); ++e)
        mpz_ui_pow_ui(pow2[e].get_mpz_t(), 2, static_cast<unsigned long>(e));

    // prev/next occurrence of each tail value
    std::vector<int64_t> prevocc(m), nextocc(m);
    {
        std::map<std::vector<int64_t>, int64_t, detail::TailKeyLess> seen;
        for (size_t t = 0; t < m; ++t) {
            auto it = seen.find(box(t).tail);
            prevocc[t] = it == seen.end() ? -1 : it->second;
            seen[box(t).tail] = static_cast<int64_t>(t);
        }
        seen.clear();
        for (size_t t = m; t-- > 0;) {
            auto it = seen.find(box(t).tail);
            nextocc[t] = it == seen.end() ? static_cast<int64_t>(m) : it->second;
            seen[box(t).tail] = static_cast<int64_t>(t);
        }
    }

    // 2^{s} and 2^{-s} enclosures per box
    std::vector<Interval> p2s, ip2s;
    p2s.reserve(m);
    ip2s.reserve(m);
    for (size_t t = 0; t < m; ++t) {
        p2s.push_back(Interval::exp2_of(box(t).s, prec));
        ip2s.push_back(Interval::exp2_of(-box(t).s, prec));
    }

    // event list: sorted singly-linked list over indices, with predecessor
    // links for O(1) removal
    std::vector<int32_t> nxt(m + 1, -1), prv(m + 1, -1);
    int32_t head = static_cast<int32_t>(m);  // sentinel index m = end marker

    const auto list_push_front = [&](int32_t l) {
        nxt[static_cast<size_t>(l)] = head;
        prv[static_cast<size_t>(l)] = -1;
        if (head != static_cast<int32_t>(m)) prv[static_cast<size_t>(head)] = l;
        head = l;
    };
    const auto list_remove = [&](int32_t l) {
        int32_t p = prv[static_cast<size_t>(l)];
        int32_t n = nxt[static_cast<size_t>(l)];
        if (p == -1)
            head = n;
        else
            nxt[static_cast<size_t>(p)] = n;
        if (n != static_cast<int32_t>(m)) prv[static_cast<size_t>(n)] = p;
    };

    std::vector<Interval> witness(m, Interval(prec));
    Interval total(prec);
    MpReal t1(prec), t2(prec), dv_lo(prec), dv_hi(prec);
    BigInt cov_scaled, dv_scaled, vol_scaled;
    std::vector<int64_t> corner(G, 0);

    // raise all cells <= corner with H < h, accumulating the covered-volume
    // delta; axis-wise early stop relies on the stamped H field being
    // non-increasing along every axis (raise regions are downward closed)
    const auto raise = [&](const std::vector<int64_t>& cr, int64_t h) {
        const auto cell_weight_exp = [&](size_t a, int64_t tcoord) {
            return tcoord == emin[a] ? emin[a] : tcoord - 1;
        };
        // recursive lambda over axes
        auto rec = [&](auto&& self, size_t a, size_t base_idx,
                       int64_t wsum) -> void {
            if (a == G) {
                int64_t old = stamp[base_idx] == walk_id ? H[base_idx] : INT64_MIN;
                if (old >= h) return;
                int64_t e_new = S + wsum + h;
                cov_scaled += pow2[static_cast<size_t>(e_new)];
                if (old != INT64_MIN)
                    cov_scaled -= pow2[static_cast<size_t>(S + wsum + old)];
                H[base_idx] = h;
                stamp[base_idx] = walk_id;
                return;
            }
            for (int64_t tc = cr[a]; tc >= emin[a]; --tc) {
                size_t bi =
                    base_idx + static_cast<size_t>(tc - emin[a]) * stride[a];
                // early stop: if the corner cell of the remaining sub-raise is
                // already >= h, every deeper cell on this axis is too
                size_t probe = bi;
                for (size_t b = a + 1; b < G; ++b)
                    probe += static_cast<size_t>(cr[b] - emin[b]) * stride[b];
                if (stamp[probe] == walk_id && H[probe] >= h) break;
                self(self, a + 1, bi, wsum + cell_weight_exp(a, tc));
            }
        };
        rec(rec, 0, 0, 0);
    };

    for (size_t tt = m; tt-- > 0;) {
        const size_t t = tt;
        if (t + 1 < m) {
            list_push_front(static_cast<int32_t>(t + 1));
            if (nextocc[t + 1] < static_cast<int64_t>(m))
                list_remove(static_cast<int32_t>(nextocc[t + 1]));
        }
        const TiedBox& bc = box(t);
        ++walk_id;
        cov_scaled = 0;
        int64_t sumc = 0;
        for (int64_t v : bc.tail) sumc += v;
        vol_scaled = pow2[static_cast<size_t>(S + sumc)];
        dv_scaled = vol_scaled;
        mpfr_set_z(dv_lo.get(), dv_scaled.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(dv_hi.get(), dv_scaled.get_mpz_t(), MPFR_RNDU);
        mpfr_mul_2si(dv_lo.get(), dv_lo.get(), -S, MPFR_RNDD);
        mpfr_mul_2si(dv_hi.get(), dv_hi.get(), -S, MPFR_RNDU);

        Interval acc(prec);
        size_t seg = t;
        for (int32_t l = head; l != static_cast<int32_t>(m);
             l = nxt[static_cast<size_t>(l)]) {
            const TiedBox& bl = box(static_cast<size_t>(l));
            int64_t h = std::min(bl.tail[D - 1], bc.tail[D - 1]);
            for (size_t a = 0; a < G; ++a)
                corner[a] = std::min(bl.tail[a], bc.tail[a]);
            // dominated check at the corner cell
            size_t ci = 0;
            for (size_t a = 0; a < G; ++a)
                ci += static_cast<size_t>(corner[a] - emin[a]) * stride[a];
            if (G > 0 && stamp[ci] == walk_id && H[ci] >= h) continue;
            if (G == 0 && stamp[0] == walk_id && H[0] >= h) continue;

            // emit run [seg, l) at the current dv
            mpfr_sub(t1.get(), ip2s[seg].lo(), ip2s[static_cast<size_t>(l)].hi(),
                     MPFR_RNDD);
            if (mpfr_sgn(t1.get()) < 0) mpfr_set_zero(t1.get(), 1);
            mpfr_mul(t1.get(), t1.get(), dv_lo.get(), MPFR_RNDD);
            mpfr_add(acc.lo_raw(), acc.lo(), t1.get(), MPFR_RNDD);
            mpfr_sub(t2.get(), ip2s[seg].hi(), ip2s[static_cast<size_t>(l)].lo(),
                     MPFR_RNDU);
            mpfr_mul(t2.get(), t2.get(), dv_hi.get(), MPFR_RNDU);
            mpfr_add(acc.hi_raw(), acc.hi(), t2.get(), MPFR_RNDU);

            raise(corner, h);
            dv_scaled = vol_scaled - cov_scaled;
            mpfr_set_z(dv_lo.get(), dv_scaled.get_mpz_t(), MPFR_RNDD);
            mpfr_set_z(dv_hi.get(), dv_scaled.get_mpz_t(), MPFR_RNDU);
            mpfr_mul_2si(dv_lo.get(), dv_lo.get(), -S, MPFR_RNDD);
            mpfr_mul_2si(dv_hi.get(), dv_hi.get(), -S, MPFR_RNDU);
            seg = static_cast<size_t>(l);
        }
        // tail run [seg, infinity): x2 all the way down to 0
        mpfr_mul(t1.get(), ip2s[seg].lo(), dv_lo.get(), MPFR_RNDD);
        mpfr_add(acc.lo_raw(), acc.lo(), t1.get(), MPFR_RNDD);
        mpfr_mul(t2.get(), ip2s[seg].hi(), dv_hi.get(), MPFR_RNDU);
        mpfr_add(acc.hi_raw(), acc.hi(), t2.get(), MPFR_RNDU);

        // E_t = 2^{s_t} * acc
        Interval et(prec);
        if (mpfr_sgn(acc.lo()) < 0) mpfr_set_zero(acc.lo_raw(), 1);
        mpfr_mul(et.lo_raw(), p2s[t].lo(), acc.lo(), MPFR_RNDD);
        mpfr_mul(et.hi_raw(), p2s[t].hi(), acc.hi(), MPFR_RNDU);
        witness[t] = et;
        total += et;
    }

    // peel order: decreasing s = reversed sorted order
    res.box_count = m;
    res.total = total;
    res.order.reserve(m);
    res.witness.reserve(m);
    for (size_t t = m; t-- > 0;) {
        res.order.push_back(kept[t]);
        res.witness.push_back(witness[t]);
    }
    return res;
}

/// Matches boxes of the shape handled by tied_peel: first two exponents exact
/// negations, all remaining exponents integers, first-axis values pairwise
/// distinct (up to exact duplicates).
inline bool tied_shape(const std::vector<AnchoredBox>& boxes,
                       std::vector<TiedBox>* out = nullptr) {
    if (boxes.empty() || boxes.front().dim() < 3) return false;
    std::vector<TiedBox> tied;
    tied.reserve(boxes.size());
    for (const auto& b : boxes) {
        if (b.dim() != boxes.front().dim()) return false;
        if (compare(b.exp(1), -b.exp(0)) != std::strong_ordering::equal)
            return false;
        TiedBox tb;
        tb.s = b.exp(0);
        for (size_t i = 2; i < b.dim(); ++i) {
            if (!b.exp(i).is_integer()) return false;
            tb.tail.push_back(to_int64(b.exp(i).integer_value()));
        }
        tied.push_back(std::move(tb));
    }
    // equal s with different tails defeats the peel ordering
    std::vector<size_t> idx(tied.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return compare(tied[a].s, tied[b].s) == std::strong_ordering::less;
    });
    for (size_t i = 1; i < idx.size(); ++i) {
        if (compare(tied[idx[i - 1]].s, tied[idx[i]].s) ==
                std::strong_ordering::equal &&
            tied[idx[i - 1]].tail != tied[idx[i]].tail)
            return false;
    }
    if (out) *out = std::move(tied);
    return true;
}

}  // namespace zygmund
