#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "zygmund/bigint.hpp"

namespace zygmund {

/// Total integer seed: explicit values on a window, clamped to the nearest
/// endpoint value outside it.
class SeedFunction {
public:
    SeedFunction(int64_t window_lo, std::vector<int64_t> values)
        : lo_(window_lo), vals_(std::move(values)) {
        if (vals_.empty()) throw Error("SeedFunction: empty window");
    }

    static SeedFunction from_function(int64_t lo, int64_t hi,
                                      const std::function<int64_t(int64_t)>& f) {
        if (hi < lo) throw Error("SeedFunction: bad window");
        std::vector<int64_t> v;
        v.reserve(static_cast<size_t>(hi - lo + 1));
        for (int64_t m = lo; m <= hi; ++m) v.push_back(f(m));
        return SeedFunction(lo, std::move(v));
    }

    int64_t operator()(int64_t m) const {
        if (m < lo_) return vals_.front();
        int64_t i = m - lo_;
        if (i >= static_cast<int64_t>(vals_.size())) return vals_.back();
        return vals_[static_cast<size_t>(i)];
    }

    int64_t window_lo() const { return lo_; }
    int64_t window_hi() const { return lo_ + static_cast<int64_t>(vals_.size()) - 1; }

private:
    int64_t lo_;
    std::vector<int64_t> vals_;
};

struct MonotoneReport {
    bool ok = true;
    int64_t m1 = 0, m2 = 0;  // first violation, if any
    int axis = 0;            // 1 or 2
};

/// Extension of a seed phi: Z -> Z to Phi: Z^2 -> Z with
///   Phi(m, -m) = phi(m)  and  Phi non-decreasing in each variable:
///   Phi(m1, m2) = max{phi(m) : -m2 <= m <= m1}   for m1 >= -m2,
///   Phi(m1, m2) = min{phi(m) : m1 <= m <= -m2}   for m1 <= -m2.
/// Range extrema over the seed window are answered in O(1) from sparse
/// tables built eagerly at construction.
class MonotoneExtension {
public:
    explicit MonotoneExtension(SeedFunction seed) : seed_(std::move(seed)) {
        build_tables();
    }

    const SeedFunction& seed() const { return seed_; }

    int64_t eval(int64_t m1, int64_t m2) const {
        if (m1 >= -m2) return range_max(-m2, m1);
        return range_min(m1, -m2);
    }

    int64_t range_max(int64_t a, int64_t b) const {
        int64_t best = INT64_MIN;
        if (a < seed_.window_lo()) best = std::max(best, seed_(a));
        if (b > seed_.window_hi()) best = std::max(best, seed_(b));
        int64_t ia = std::max(a, seed_.window_lo());
        int64_t ib = std::min(b, seed_.window_hi());
        if (ia <= ib) best = std::max(best, table_query(max_, ia, ib, true));
        return best;
    }

    int64_t range_min(int64_t a, int64_t b) const {
        int64_t best = INT64_MAX;
        if (a < seed_.window_lo()) best = std::min(best, seed_(a));
        if (b > seed_.window_hi()) best = std::min(best, seed_(b));
        int64_t ia = std::max(a, seed_.window_lo());
        int64_t ib = std::min(b, seed_.window_hi());
        if (ia <= ib) best = std::min(best, table_query(min_, ia, ib, false));
        return best;
    }

private:
    void build_tables() {
        size_t n =
            static_cast<size_t>(seed_.window_hi() - seed_.window_lo() + 1);
        size_t levels = static_cast<size_t>(std::bit_width(n));
        max_.assign(levels, {});
        min_.assign(levels, {});
        max_[0].resize(n);
        min_[0].resize(n);
        for (size_t i = 0; i < n; ++i)
            max_[0][i] = min_[0][i] =
                seed_(seed_.window_lo() + static_cast<int64_t>(i));
        for (size_t l = 1; l < levels; ++l) {
            size_t len = size_t{1} << l;
            max_[l].resize(n - len + 1);
            min_[l].resize(n - len + 1);
            for (size_t i = 0; i + len <= n; ++i) {
                max_[l][i] = std::max(max_[l - 1][i], max_[l - 1][i + len / 2]);
                min_[l][i] = std::min(min_[l - 1][i], min_[l - 1][i + len / 2]);
            }
        }
    }

    int64_t table_query(const std::vector<std::vector<int64_t>>& t, int64_t a,
                        int64_t b, bool want_max) const {
        size_t ia = static_cast<size_t>(a - seed_.window_lo());
        size_t ib = static_cast<size_t>(b - seed_.window_lo());
        size_t len = ib - ia + 1;
        size_t l = static_cast<size_t>(std::bit_width(len)) - 1;
        int64_t x = t[l][ia];
        int64_t y = t[l][ib + 1 - (size_t{1} << l)];
        return want_max ? std::max(x, y) : std::min(x, y);
    }

    SeedFunction seed_;
    std::vector<std::vector<int64_t>> max_, min_;
};

inline int64_t extend_eval(const MonotoneExtension& ext, int64_t m1, int64_t m2) {
    return ext.eval(m1, m2);
}

/// Checks Phi(m1+1, m2) >= Phi(m1, m2) and Phi(m1, m2+1) >= Phi(m1, m2)
/// over [-N, N]^2.
inline MonotoneReport verify_monotone(const MonotoneExtension& ext, int64_t N) {
    if (N < 1) throw Error("verify_monotone: N must be >= 1");
    for (int64_t m1 = -N; m1 <= N; ++m1) {
        for (int64_t m2 = -N; m2 <= N; ++m2) {
            int64_t v = ext.eval(m1, m2);
            if (ext.eval(m1 + 1, m2) < v) return {false, m1, m2, 1};
            if (ext.eval(m1, m2 + 1) < v) return {false, m1, m2, 2};
        }
    }
    return {};
}

}  // namespace zygmund
