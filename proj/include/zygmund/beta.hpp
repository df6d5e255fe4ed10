#pragma once

#include <cstdint>
#include <vector>

#include "zygmund/bigint.hpp"

namespace zygmund {

/// The beta sequence in dimension d >= 4: shell n lists all (d-2)-tuples with
/// zero sum and 0 <= m_j <= n for the first d-3 coordinates, in lexicographic
/// order of those free coordinates; the last coordinate is forced. The
/// one-index sequence concatenates the shells.

inline void check_beta_dim(int d) {
    if (d < 4) throw Error("beta sequence requires dimension >= 4");
}

inline int64_t beta_shell_size(int d, int64_t n) {
    check_beta_dim(d);
    int64_t s = 1;
    for (int i = 0; i < d - 3; ++i) s *= n + 1;
    return s;
}

/// Concatenated index where shell n starts: sum_{v < n} (v+1)^(d-3).
inline int64_t beta_shell_start(int d, int64_t n) {
    check_beta_dim(d);
    switch (d) {
        case 4:
            return n * (n + 1) / 2;
        case 5:
            return n * (n + 1) * (2 * n + 1) / 6;
        case 6: {
            int64_t t = n * (n + 1) / 2;
            return t * t;
        }
        default: {
            int64_t s = 0;
            for (int64_t v = 1; v <= n; ++v) s += beta_shell_size(d, v - 1);
            return s;
        }
    }
}

inline std::vector<std::vector<int64_t>> beta_shell(int d, int64_t n) {
    check_beta_dim(d);
    if (n < 0) throw Error("beta_shell: n must be >= 0");
    int free = d - 3;
    std::vector<std::vector<int64_t>> out;
    out.reserve(static_cast<size_t>(beta_shell_size(d, n)));
    std::vector<int64_t> cur(static_cast<size_t>(free), 0);
    while (true) {
        int64_t sum = 0;
        for (int64_t c : cur) sum += c;
        std::vector<int64_t> tup = cur;
        tup.push_back(-sum);
        out.push_back(std::move(tup));
        int i = free - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == n) {
            cur[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
    }
    return out;
}

/// Tuple at concatenated index m >= 0.
inline std::vector<int64_t> beta_concat(int d, int64_t m) {
    check_beta_dim(d);
    if (m < 0) throw Error("beta_concat: m must be >= 0");
    int64_t n = 0;
    while (beta_shell_start(d, n + 1) <= m) ++n;
    int64_t off = m - beta_shell_start(d, n);
    int free = d - 3;
    std::vector<int64_t> tup(static_cast<size_t>(free), 0);
    for (int i = free - 1; i >= 0; --i) {
        tup[static_cast<size_t>(i)] = off % (n + 1);
        off /= n + 1;
    }
    int64_t sum = 0;
    for (int64_t c : tup) sum += c;
    tup.push_back(-sum);
    return tup;
}

/// Concatenated index of `tuple` inside shell nu (requires every free
/// coordinate <= nu).
inline int64_t beta_occurrence(int d, const std::vector<int64_t>& tuple,
                               int64_t nu) {
    check_beta_dim(d);
    int64_t rank = 0;
    for (int i = 0; i < d - 3; ++i)
        rank = rank * (nu + 1) + tuple[static_cast<size_t>(i)];
    return beta_shell_start(d, nu) + rank;
}

inline void check_beta_tuple(int d, const std::vector<int64_t>& tuple) {
    check_beta_dim(d);
    if (tuple.size() != static_cast<size_t>(d - 2))
        throw Error("beta tuple must have d-2 entries");
    int64_t sum = 0;
    for (int i = 0; i < d - 3; ++i) {
        if (tuple[static_cast<size_t>(i)] < 0)
            throw Error("beta tuple: free coordinates must be >= 0");
        sum += tuple[static_cast<size_t>(i)];
    }
    if (tuple.back() != -sum) throw Error("beta tuple: sum must be 0");
}

struct IndexFindResult {
    int64_t n = 0;                    // smallest admissible concatenated index
    std::vector<int64_t> admissible;  // all admissible indices in the bounds
};

/// Smallest concatenated index n with beta_n = tuple and
/// (j-1)^(d-2) <= C_d * n, n <= j^(d-2); also reports every admissible index
/// in that window. Throws NotFoundError when the window is empty, which
/// signals that C_d is too small for this d and j.
inline IndexFindResult beta_index_find(int d, const std::vector<int64_t>& tuple,
                                       int64_t j, int64_t cd) {
    check_beta_tuple(d, tuple);
    if (j < 1) throw Error("beta_index_find: j must be >= 1");
    if (cd <= 1) throw Error("beta_index_find: C_d must be > 1");
    int64_t h = 0;
    for (int i = 0; i < d - 3; ++i) h = std::max(h, tuple[static_cast<size_t>(i)]);

    int64_t lo_num = 1;  // (j-1)^(d-2); admissible iff cd * n >= lo_num
    for (int i = 0; i < d - 2; ++i) lo_num *= j - 1;
    int64_t hi = 1;
    for (int i = 0; i < d - 2; ++i) hi *= j;

    IndexFindResult res;
    bool found = false;
    for (int64_t nu = h;; ++nu) {
        int64_t n = beta_occurrence(d, tuple, nu);
        if (n > hi) break;
        if (cd * n >= lo_num) {
            if (!found) res.n = n;
            found = true;
            res.admissible.push_back(n);
        }
    }
    if (!found)
        throw NotFoundError("beta_index_find: no admissible index for j=" +
                            std::to_string(j) + ", C_d=" + std::to_string(cd));
    return res;
}

}  // namespace zygmund
