#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "zygmund/beta.hpp"
#include "zygmund/bijection.hpp"
#include "zygmund/exponent.hpp"
#include "zygmund/measure_tied.hpp"
#include "zygmund/monotone.hpp"

namespace zygmund {

/// tau(s) = s^(d-2) sign(s); exact on root exponents.
inline Exponent tau_forward(int d, const Exponent& s) {
    if (d < 3) throw Error("tau: dimension must be >= 3");
    Exponent mag = s.abs_value().pow(static_cast<unsigned long>(d - 2));
    return s.sign() < 0 ? -mag : mag;
}

/// tau^{-1}(n) = sign(n) |n|^{1/(d-2)}.
inline Exponent tau_inverse(int d, const BigInt& n) {
    if (d < 3) throw Error("tau: dimension must be >= 3");
    return Exponent(n, static_cast<unsigned long>(d - 2));
}

/// Shape functions of a dyadic Zygmund basis: d monotone extensions sampled
/// at a k-dimensional parameter (coordinates beyond the first two are
/// ignored, which is the lift that preserves monotonicity).
struct ZygmundBasisSpec {
    int d = 0;
    int arity = 2;
    std::vector<MonotoneExtension> phis;

    std::vector<int64_t> shape(const std::vector<int64_t>& m) const {
        if (m.size() != static_cast<size_t>(arity))
            throw DimensionMismatch("shape: wrong parameter arity");
        std::vector<int64_t> out;
        out.reserve(phis.size());
        for (const auto& phi : phis) out.push_back(phi.eval(m[0], m[1]));
        return out;
    }

    std::vector<int64_t> shape2(int64_t m1, int64_t m2) const {
        std::vector<int64_t> out;
        out.reserve(phis.size());
        for (const auto& phi : phis) out.push_back(phi.eval(m1, m2));
        return out;
    }
};

/// Raising the parameter arity: the new coordinates are ignored, so the
/// extension stays monotone in every variable.
inline ZygmundBasisSpec lift_extension(ZygmundBasisSpec spec, int k) {
    if (k < 2) throw Error("lift_extension: arity must be >= 2");
    spec.arity = k;
    return spec;
}

struct CoverageReport {
    bool all_covered = false;
    int64_t window = 0;        // seed window half-width actually used
    int64_t targets = 0;       // (2N+1)^d
    int64_t attained = 0;      // distinct targets hit on the antidiagonal
    bool monotone_ok = false;  // every Phi_i passed verify_monotone
};

/// The basis whose antidiagonal sweeps all of Z^d: seeds phi_i = psi_i from
/// the lattice bijection, extended to Z^2. The report certifies that every
/// vector of [-N, N]^d is attained as (Phi_1(m,-m), ..., Phi_d(m,-m)) and
/// that each Phi_i is monotone on the index window used.
inline ZygmundBasisSpec theorem1_basis(int d, int64_t N, CoverageReport* report) {
    if (d < 2) throw Error("theorem1_basis: dimension must be >= 2");
    if (N < 1) throw Error("theorem1_basis: window must be >= 1");
    LatticeBijection psi(static_cast<size_t>(d));

    BigInt cube_count = big_pow(BigInt(2 * N + 1), static_cast<unsigned long>(d));
    int64_t count = to_int64(cube_count);
    int64_t window = count / 2 + 1;

    // one pass over the index window, caching psi
    std::vector<std::vector<int64_t>> points;
    points.reserve(static_cast<size_t>(2 * window + 1));
    for (int64_t m = -window; m <= window; ++m) points.push_back(psi.point_at(m));

    ZygmundBasisSpec spec;
    spec.d = d;
    spec.arity = 2;
    for (int i = 0; i < d; ++i) {
        std::vector<int64_t> vals;
        vals.reserve(points.size());
        for (const auto& p : points) vals.push_back(p[static_cast<size_t>(i)]);
        spec.phis.emplace_back(SeedFunction(-window, std::move(vals)));
    }

    if (report) {
        report->window = window;
        report->targets = count;
        std::map<std::vector<int64_t>, bool> hit;
        for (int64_t m = -window; m <= window; ++m) {
            std::vector<int64_t> v = spec.shape2(m, -m);
            bool in_cube = true;
            for (int64_t c : v) in_cube = in_cube && c >= -N && c <= N;
            if (in_cube) hit[v] = true;
        }
        report->attained = static_cast<int64_t>(hit.size());
        report->all_covered = report->attained == count;
        report->monotone_ok = true;
        for (const auto& phi : spec.phis)
            report->monotone_ok =
                report->monotone_ok && verify_monotone(phi, window).ok;
        if (!report->all_covered)
            throw Error("theorem1_basis: coverage failure (bug)");
    }
    return spec;
}

/// Monotone extensions seeded by the beta sequence: phi_i(m) = pi_i(beta_m)
/// for m >= 0 and 0 for m < 0 (the clamp at index -1 supplies the zeros).
inline std::vector<MonotoneExtension> beta_extensions(int d, int64_t hi) {
    check_beta_dim(d);
    std::vector<std::vector<int64_t>> vals(static_cast<size_t>(d - 2));
    for (auto& v : vals) v.reserve(static_cast<size_t>(hi + 2));
    for (auto& v : vals) v.push_back(0);  // m = -1
    for (int64_t m = 0; m <= hi; ++m) {
        std::vector<int64_t> tup = beta_concat(d, m);
        for (int i = 0; i < d - 2; ++i)
            vals[static_cast<size_t>(i)].push_back(tup[static_cast<size_t>(i)]);
    }
    std::vector<MonotoneExtension> out;
    out.reserve(static_cast<size_t>(d - 2));
    for (auto& v : vals) out.emplace_back(SeedFunction(-1, std::move(v)));
    return out;
}

/// Element of the collection A: the full exponent tuple
/// (s, t, Phi_1(tau s, tau t), ..., Phi_{d-2}(tau s, tau t)).
inline std::vector<Exponent> basis_A_interval(int d, const Exponent& s,
                                              const Exponent& t) {
    Exponent ts = tau_forward(d, s);
    Exponent tt = tau_forward(d, t);
    if (!ts.is_integer() || !tt.is_integer())
        throw Error("basis_A_interval: s, t must lie in tau^{-1}(Z)");
    int64_t m1 = to_int64(ts.integer_value());
    int64_t m2 = to_int64(tt.integer_value());
    int64_t hi = std::max<int64_t>({m1, -m2, 0});
    std::vector<MonotoneExtension> phis = beta_extensions(d, hi);
    std::vector<Exponent> shape;
    shape.reserve(static_cast<size_t>(d));
    shape.push_back(s);
    shape.push_back(t);
    for (const auto& phi : phis)
        shape.push_back(Exponent(static_cast<long>(phi.eval(m1, m2))));
    return shape;
}

/// E' membership: the first two side lengths multiply to 1, i.e. s + t = 0.
inline bool is_E_prime(const std::vector<Exponent>& shape) {
    if (shape.size() < 2) throw Error("is_E_prime: shape too short");
    return compare(shape[1], -shape[0]) == std::strong_ordering::equal;
}

/// The Theorem-2 test family at scale k: for each j <= k and each admissible
/// R-bar, the box [0, 2^{tau^{-1}(n)}) x [0, 2^{-tau^{-1}(n)}) x R-bar with n
/// located by beta_index_find (smallest admissible). Identical boxes arising
/// from different j are merged; the result is sorted by n.
inline std::vector<TiedBox> theorem2_family(int d, int64_t k, int64_t cd) {
    check_beta_dim(d);
    if (k < 1) throw Error("theorem2_family: k must be >= 1");
    if (cd < d - 3) throw Error("theorem2_family: C_d must be >= d-3");
    int free = d - 3;
    std::map<int64_t, std::vector<int64_t>> chosen;  // n -> free coords
    for (int64_t j = 1; j <= k; ++j) {
        int64_t M = j / cd;
        std::vector<int64_t> mu(static_cast<size_t>(free), 0);
        while (true) {
            int64_t sum = 0;
            for (int64_t c : mu) sum += c;
            std::vector<int64_t> tup = mu;
            tup.push_back(-sum);
            IndexFindResult f = beta_index_find(d, tup, j, cd);
            chosen.emplace(f.n, mu);
            int i = free - 1;
            while (i >= 0 && mu[static_cast<size_t>(i)] == M) {
                mu[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++mu[static_cast<size_t>(i)];
        }
    }
    std::vector<TiedBox> out;
    out.reserve(chosen.size());
    for (const auto& [n, mu] : chosen) {
        TiedBox b;
        b.s = tau_inverse(d, BigInt(n));
        b.tail = mu;
        int64_t sum = 0;
        for (int64_t c : mu) sum += c;
        b.tail.push_back(-sum);
        out.push_back(std::move(b));
    }
    return out;
}

/// Smallest integer C_d > 1 with C_d >= d-3 for which every admissible tuple
/// has an index inside the Theorem-2 window for all j <= k.
inline int64_t auto_cd(int d, int64_t k, int64_t max_cd = 64) {
    for (int64_t cd = std::max<int64_t>(2, d - 3); cd <= max_cd; ++cd) {
        try {
            theorem2_family(d, k, cd);
            return cd;
        } catch (const NotFoundError&) {
            continue;
        }
    }
    throw NotFoundError("auto_cd: no working C_d up to the search bound");
}

}  // namespace zygmund
