#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "zygmund/bases.hpp"
#include "zygmund/experiment.hpp"
#include "zygmund/maximal.hpp"
#include "zygmund/measure.hpp"
#include "zygmund/rng.hpp"

namespace zygmund {

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteConfig {
    uint64_t seed = 1;
    long precision = 128;
    int oracle_trials = 500;
    int oracle_max_boxes = 12;
};

namespace suite_detail {

inline SeedFunction random_seed_fn(Rng& rng, int64_t lo, int64_t hi,
                                   int64_t vmin, int64_t vmax) {
    std::vector<int64_t> vals;
    for (int64_t m = lo; m <= hi; ++m) vals.push_back(rng.uniform(vmin, vmax));
    return SeedFunction(lo, std::move(vals));
}

inline AnchoredBox random_dyadic_box(Rng& rng, int d, int64_t emin, int64_t emax) {
    ExponentVec e;
    for (int i = 0; i < d; ++i) e.push_back(rng.uniform(emin, emax));
    return AnchoredBox::from_integer_exps(e);
}

}  // namespace suite_detail

/// Lemma-level property checks: random seeds on [-64, 64], antidiagonal
/// identity and per-variable monotonicity, plus branch agreement on the
/// antidiagonal itself.
inline SuiteCheck check_extension_properties(uint64_t seed, int trials = 200,
                                             int64_t window = 64,
                                             int64_t verify_window = 64) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        SeedFunction phi =
            suite_detail::random_seed_fn(rng, -window, window, -1000, 1000);
        MonotoneExtension ext(phi);
        for (int64_t m = -window; m <= window; ++m) {
            if (ext.eval(m, -m) != phi(m))
                return {"extension-properties", false,
                        "antidiagonal mismatch at trial " + std::to_string(t) +
                            ", m=" + std::to_string(m)};
            int64_t from_max = ext.range_max(m, m);
            int64_t from_min = ext.range_min(m, m);
            if (from_max != from_min)
                return {"extension-properties", false, "branch disagreement"};
        }
        MonotoneReport rep = verify_monotone(ext, verify_window);
        if (!rep.ok)
            return {"extension-properties", false,
                    "monotonicity violated at (" + std::to_string(rep.m1) + "," +
                        std::to_string(rep.m2) + ")"};
    }
    return {"extension-properties", true,
            std::to_string(trials) + " random seeds, window [-" +
                std::to_string(window) + "," + std::to_string(window) + "]"};
}

/// Coverage of [-N, N]^d by the antidiagonal of the swept basis.
inline SuiteCheck check_theorem1_coverage(
    const std::vector<std::pair<int, int64_t>>& cases = {{2, 3}, {3, 2}, {4, 2}}) {
    std::ostringstream detail;
    for (auto [d, N] : cases) {
        CoverageReport rep;
        try {
            theorem1_basis(d, N, &rep);
        } catch (const Error& e) {
            return {"coverage", false, e.what()};
        }
        if (!rep.all_covered || !rep.monotone_ok)
            return {"coverage", false,
                    "d=" + std::to_string(d) + " N=" + std::to_string(N) +
                        ": attained " + std::to_string(rep.attained) + "/" +
                        std::to_string(rep.targets)};
        detail << "d=" << d << " N=" << N << ": " << rep.attained << "/"
               << rep.targets << "  ";
    }
    return {"coverage", true, detail.str()};
}

/// The displayed beta prefix for d=4 is pinned: shells 0..2 and the first six
/// concatenated terms.
inline bool beta_prefix_matches(
    const std::vector<std::vector<int64_t>>& concat_prefix) {
    const std::vector<std::vector<int64_t>> expected = {
        {0, 0}, {0, 0}, {1, -1}, {0, 0}, {1, -1}, {2, -2}};
    return concat_prefix == expected;
}

inline SuiteCheck check_beta_prefix() {
    if (beta_shell(4, 0) != std::vector<std::vector<int64_t>>{{0, 0}})
        return {"beta-prefix", false, "shell 0"};
    if (beta_shell(4, 1) != std::vector<std::vector<int64_t>>{{0, 0}, {1, -1}})
        return {"beta-prefix", false, "shell 1"};
    if (beta_shell(4, 2) !=
        std::vector<std::vector<int64_t>>{{0, 0}, {1, -1}, {2, -2}})
        return {"beta-prefix", false, "shell 2"};
    std::vector<std::vector<int64_t>> prefix;
    for (int64_t m = 0; m < 6; ++m) prefix.push_back(beta_concat(4, m));
    if (!beta_prefix_matches(prefix))
        return {"beta-prefix", false, "concatenated prefix of length 6"};
    return {"beta-prefix", true, "shells 0..2 and prefix of length 6"};
}

/// Shell sizes, zero sums and shell/concat consistency for d in {4,5,6}.
inline SuiteCheck check_beta_shells(int64_t max_n = 30) {
    for (int d : {4, 5, 6}) {
        int64_t concat_idx = 0;
        for (int64_t n = 0; n <= max_n; ++n) {
            auto shell = beta_shell(d, n);
            if (static_cast<int64_t>(shell.size()) != beta_shell_size(d, n))
                return {"beta-shells", false,
                        "size mismatch d=" + std::to_string(d) +
                            " n=" + std::to_string(n)};
            if (beta_shell_start(d, n) != concat_idx)
                return {"beta-shells", false, "start mismatch"};
            for (const auto& tup : shell) {
                int64_t sum = 0;
                for (int64_t c : tup) sum += c;
                if (sum != 0) return {"beta-shells", false, "nonzero sum"};
                if (beta_concat(d, concat_idx) != tup)
                    return {"beta-shells", false,
                            "concat mismatch at " + std::to_string(concat_idx)};
                ++concat_idx;
            }
        }
    }
    return {"beta-shells", true, "d in {4,5,6}, n <= " + std::to_string(max_n)};
}

/// Index-bound verification: with the auto-selected C_d every admissible
/// tuple for every j <= jmax has an occurrence inside the window.
inline SuiteCheck check_index_bounds(int64_t jmax = 60) {
    std::ostringstream detail;
    for (int d : {4, 5}) {
        int64_t cd;
        try {
            cd = auto_cd(d, jmax);
        } catch (const NotFoundError& e) {
            return {"index-bounds", false, e.what()};
        }
        // re-verify the bounds as plain integer inequalities
        for (int64_t j = 1; j <= jmax; ++j) {
            int64_t M = j / cd;
            std::vector<int64_t> mu(static_cast<size_t>(d - 3), 0);
            while (true) {
                int64_t sum = 0;
                for (int64_t c : mu) sum += c;
                std::vector<int64_t> tup = mu;
                tup.push_back(-sum);
                IndexFindResult f = beta_index_find(d, tup, j, cd);
                int64_t lo_num = 1, hi = 1;
                for (int i = 0; i < d - 2; ++i) lo_num *= j - 1;
                for (int i = 0; i < d - 2; ++i) hi *= j;
                if (cd * f.n < lo_num || f.n > hi)
                    return {"index-bounds", false, "bound violated"};
                if (beta_concat(d, f.n) != tup)
                    return {"index-bounds", false, "wrong tuple at index"};
                int i = d - 4;
                while (i >= 0 && mu[static_cast<size_t>(i)] == M) {
                    mu[static_cast<size_t>(i)] = 0;
                    --i;
                }
                if (i < 0) break;
                ++mu[static_cast<size_t>(i)];
            }
        }
        detail << "d=" << d << ": C_d=" << cd << "  ";
    }
    return {"index-bounds", true, detail.str()};
}

/// union_volume(exact) against the inclusion-exclusion oracle on random
/// dyadic instances; exact rational equality.
inline SuiteCheck check_oracle_equivalence(uint64_t seed, int trials = 500,
                                           int max_boxes = 12) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        int d = static_cast<int>(rng.uniform(1, 5));
        int n = static_cast<int>(rng.uniform(1, max_boxes));
        std::vector<AnchoredBox> boxes;
        for (int i = 0; i < n; ++i)
            boxes.push_back(suite_detail::random_dyadic_box(rng, d, -6, 6));
        DyadicRational sweep =
            *union_volume(boxes, MeasureMode::Exact).value.exact;
        DyadicRational ie =
            *union_volume_inclusion_exclusion(boxes).exact;
        if (!(sweep == ie))
            return {"oracle-equivalence", false,
                    "mismatch at trial " + std::to_string(t) + ": " +
                        sweep.to_string() + " vs " + ie.to_string()};
    }
    return {"oracle-equivalence", true,
            std::to_string(trials) + " random instances, exact equality"};
}

/// Total order sanity for exponent comparison plus consistency with a
/// high-precision numeric evaluation.
inline SuiteCheck check_exponent_order(uint64_t seed, int trials = 2000) {
    Rng rng(seed);
    auto random_exp = [&](Rng& r) {
        if (r.next() % 2 == 0) return Exponent(static_cast<long>(r.uniform(-40, 40)));
        return Exponent(BigInt(r.uniform(-200, 200)),
                        static_cast<unsigned long>(r.uniform(1, 4)));
    };
    for (int t = 0; t < trials; ++t) {
        Exponent a = random_exp(rng), b = random_exp(rng), c = random_exp(rng);
        auto ab = compare(a, b), ba = compare(b, a);
        if ((ab == std::strong_ordering::less) !=
            (ba == std::strong_ordering::greater))
            return {"exponent-order", false, "antisymmetry"};
        if (compare(a, b) != std::strong_ordering::greater &&
            compare(b, c) != std::strong_ordering::greater) {
            if (compare(a, c) == std::strong_ordering::greater)
                return {"exponent-order", false, "transitivity"};
        }
        // numeric consistency at 256 bits
        Interval ia = Interval::exp2_of(a, 256), ib = Interval::exp2_of(b, 256);
        if (ab == std::strong_ordering::less && !(ia.mid() < ib.mid()))
            return {"exponent-order", false, "numeric disagreement"};
        if (ab == std::strong_ordering::greater && !(ia.mid() > ib.mid()))
            return {"exponent-order", false, "numeric disagreement"};
    }
    return {"exponent-order", true, std::to_string(trials) + " random triples"};
}

/// Union measure is order- and duplication-invariant; witness measures sum
/// to the union measure for every ordering.
inline SuiteCheck check_union_invariants(uint64_t seed, int trials = 100) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        int d = static_cast<int>(rng.uniform(1, 4));
        int n = static_cast<int>(rng.uniform(1, 8));
        std::vector<AnchoredBox> boxes;
        for (int i = 0; i < n; ++i)
            boxes.push_back(suite_detail::random_dyadic_box(rng, d, -5, 5));
        DyadicRational base = *union_volume(boxes, MeasureMode::Exact).value.exact;
        // shuffled copy plus a duplicated box
        std::vector<AnchoredBox> shuffled = boxes;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1],
                      shuffled[static_cast<size_t>(rng.next() % i)]);
        shuffled.push_back(shuffled.front());
        DyadicRational perm =
            *union_volume(shuffled, MeasureMode::Exact).value.exact;
        if (!(base == perm))
            return {"union-invariants", false, "permutation/dup variance"};
        // max |R_i| <= |U| <= sum |R_i|
        DyadicRational maxv, sumv;
        for (const auto& b : boxes) {
            DyadicRational v = *box_volume(b).exact;
            sumv += v;
            if (v > maxv) maxv = v;
        }
        if (base < maxv || sumv < base)
            return {"union-invariants", false, "bounds violated"};
        // witness sums, random order
        std::vector<size_t> order(boxes.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<size_t>(rng.next() % i)]);
        SparsenessReport rep = sparseness_witness(boxes, order);
        DyadicRational wsum;
        for (const auto& w : rep.witness) wsum += *w.exact;
        if (!(wsum == base))
            return {"union-invariants", false, "witness sum mismatch"};
    }
    return {"union-invariants", true, std::to_string(trials) + " random instances"};
}

/// The specialized tied-family peel agrees with the generic engines.
inline SuiteCheck check_tied_peel(uint64_t seed, int trials = 200) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        int d = static_cast<int>(rng.uniform(4, 5));
        int n = static_cast<int>(rng.uniform(1, 9));
        std::vector<int64_t> ns;
        std::vector<TiedBox> tied;
        for (int i = 0; i < n; ++i) {
            int64_t nv = rng.uniform(0, 40);
            bool dup = false;
            for (int64_t o : ns) dup = dup || o == nv;
            if (dup) continue;
            ns.push_back(nv);
            TiedBox tb;
            tb.s = tau_inverse(d, BigInt(nv));
            int64_t sum = 0;
            for (int i2 = 0; i2 < d - 3; ++i2) {
                int64_t c = rng.uniform(0, 3);
                tb.tail.push_back(c);
                sum += c;
            }
            tb.tail.push_back(-sum);
            tied.push_back(std::move(tb));
        }
        TiedPeelResult pr = tied_peel(tied, 128);
        std::vector<AnchoredBox> boxes;
        for (const auto& tb : tied) boxes.push_back(tb.to_box());
        Interval gen = union_volume(boxes, MeasureMode::Certified, 192)
                           .value.enclosure;
        // the two certified enclosures must overlap
        if (mpfr_cmp(pr.total.hi(), gen.lo()) < 0 ||
            mpfr_cmp(gen.hi(), pr.total.lo()) < 0)
            return {"tied-peel", false, "disjoint enclosures at trial " +
                                            std::to_string(t)};
        if (boxes.size() <= 12) {
            Interval ie = union_volume_inclusion_exclusion(boxes, 192).enclosure;
            if (mpfr_cmp(pr.total.hi(), ie.lo()) < 0 ||
                mpfr_cmp(ie.hi(), pr.total.lo()) < 0)
                return {"tied-peel", false, "peel vs inclusion-exclusion"};
        }
    }
    return {"tied-peel", true, std::to_string(trials) + " random tied families"};
}

/// Structural checks of the Theorem-2 family: unit volumes, E' membership,
/// support containment.
inline SuiteCheck check_family_structure(int d = 4, int64_t k = 20) {
    int64_t cd = auto_cd(d, k);
    std::vector<TiedBox> family = theorem2_family(d, k, cd);
    TestFunction f(d, k);
    for (const auto& tb : family) {
        AnchoredBox b = tb.to_box();
        ExponentSum s = b.exponent_sum();
        if (!s.is_integer() || s.integer_part() != 0)
            return {"family-structure", false, "volume not 1"};
        if (!is_E_prime(b.exps()))
            return {"family-structure", false, "box outside E'"};
        if (!contains_cube(b, k))
            return {"family-structure", false, "support cube not contained"};
        MeasureValue avg = average_over_box(b, f);
        if (!avg.exact || !(*avg.exact == DyadicRational(1)))
            return {"family-structure", false, "average not exactly 1"};
    }
    return {"family-structure", true,
            "d=" + std::to_string(d) + " k=" + std::to_string(k) + ": " +
                std::to_string(family.size()) + " boxes"};
}

/// The full deterministic check battery.
inline std::vector<SuiteCheck> run_suite(const SuiteConfig& cfg) {
    std::vector<SuiteCheck> checks;
    auto push = [&](SuiteCheck c) { checks.push_back(std::move(c)); };
    push(check_exponent_order(cfg.seed + 1));
    push(check_extension_properties(cfg.seed + 2));
    push(check_theorem1_coverage());
    push(check_beta_prefix());
    push(check_beta_shells());
    push(check_index_bounds());
    push(check_oracle_equivalence(cfg.seed + 3, cfg.oracle_trials,
                                  cfg.oracle_max_boxes));
    push(check_union_invariants(cfg.seed + 4));
    push(check_tied_peel(cfg.seed + 5));
    push(check_family_structure());
    return checks;
}

inline std::string suite_report(const std::vector<SuiteCheck>& checks) {
    std::ostringstream os;
    bool all = true;
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
        all = all && c.pass;
    }
    os << (all ? "suite: all checks passed\n" : "suite: FAILURES present\n");
    return os.str();
}

inline bool suite_ok(const std::vector<SuiteCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace zygmund
