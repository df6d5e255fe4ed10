#pragma once

#include <cstdint>
#include <vector>

#include "zygmund/bigint.hpp"

namespace zygmund {

/// Bijection psi: Z -> Z^d. Z is folded onto N by the zigzag
/// 0, 1, -1, 2, -2, ...; N is split into max-norm shells (all points with
/// max|v_i| = r), lexicographically ordered within each shell. psi(0) is the
/// origin and the first (2N+1)^d indices cover exactly [-N, N]^d.
class LatticeBijection {
public:
    explicit LatticeBijection(size_t d) : d_(d) {
        if (d_ < 1) throw Error("LatticeBijection: dimension must be >= 1");
    }

    size_t dim() const { return d_; }

    std::vector<int64_t> point_at(int64_t m) const {
        BigInt u = fold(m);
        // shell radius: smallest r with (2r+1)^d > u
        int64_t r = 0;
        while (big_pow(BigInt(2 * r + 1), static_cast<unsigned long>(d_)) <= u)
            ++r;
        BigInt offset = u;
        if (r > 0)
            offset -= big_pow(BigInt(2 * r - 1), static_cast<unsigned long>(d_));
        std::vector<int64_t> v(d_, 0);
        unrank_shell(offset, r, 0, true, v);
        return v;
    }

    int64_t index_of(const std::vector<int64_t>& v) const {
        if (v.size() != d_) throw DimensionMismatch("index_of: wrong dimension");
        int64_t r = 0;
        for (int64_t c : v) r = std::max(r, c < 0 ? -c : c);
        BigInt u = 0;
        if (r > 0) u = big_pow(BigInt(2 * r - 1), static_cast<unsigned long>(d_));
        bool must_touch = r > 0;
        for (size_t i = 0; i < d_; ++i) {
            size_t rem = d_ - 1 - i;
            int64_t c = v[i];
            if (must_touch) {
                if (c == -r) {
                    must_touch = false;
                } else if (c < r) {
                    u += free_count(rem, r);
                    u += BigInt(c + r - 1) * touch_count(rem, r);
                } else {
                    u += free_count(rem, r);
                    u += BigInt(2 * r - 1) * touch_count(rem, r);
                    must_touch = false;
                }
            } else {
                u += BigInt(c + r) * free_count(rem, r);
            }
        }
        return unfold(u);
    }

private:
    static BigInt fold(int64_t m) {
        return m > 0 ? BigInt(2 * m - 1) : BigInt(-2 * m);
    }
    static int64_t unfold(const BigInt& u) {
        BigInt m = mpz_odd_p(u.get_mpz_t()) ? BigInt((u + 1) / 2) : BigInt(-u / 2);
        return to_int64(m);
    }

    // count of rem-tuples in [-r, r]^rem
    static BigInt free_count(size_t rem, int64_t r) {
        return big_pow(BigInt(2 * r + 1), static_cast<unsigned long>(rem));
    }
    // count of rem-tuples with max-norm exactly r
    static BigInt touch_count(size_t rem, int64_t r) {
        if (r == 0) return rem == 0 ? BigInt(1) : BigInt(0);
        return free_count(rem, r) -
               big_pow(BigInt(2 * r - 1), static_cast<unsigned long>(rem));
    }

    void unrank_shell(BigInt offset, int64_t r, size_t i, bool must_touch,
                      std::vector<int64_t>& v) const {
        if (i == d_) return;
        size_t rem = d_ - 1 - i;
        if (r == 0) {
            v[i] = 0;
            unrank_shell(offset, r, i + 1, false, v);
            return;
        }
        if (!must_touch) {
            BigInt block = free_count(rem, r);
            BigInt digit = offset / block;
            v[i] = to_int64(digit) - r;
            unrank_shell(offset % block, r, i + 1, false, v);
            return;
        }
        BigInt fc = free_count(rem, r);
        if (offset < fc) {
            v[i] = -r;
            unrank_shell(offset, r, i + 1, false, v);
            return;
        }
        offset -= fc;
        BigInt tc = touch_count(rem, r);
        if (tc > 0 && offset < BigInt(2 * r - 1) * tc) {
            v[i] = -r + 1 + to_int64(offset / tc);
            unrank_shell(offset % tc, r, i + 1, true, v);
            return;
        }
        if (tc > 0) offset -= BigInt(2 * r - 1) * tc;
        v[i] = r;
        unrank_shell(offset, r, i + 1, false, v);
    }

    size_t d_;
};

}  // namespace zygmund
