#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "zygmund/bases.hpp"
#include "zygmund/maximal.hpp"
#include "zygmund/measure.hpp"
#include "zygmund/slope.hpp"
#include "zygmund/version.hpp"

namespace zygmund {

struct ExperimentConfig {
    int d = 4;
    int64_t kmin = 1;
    int64_t kmax = 1;
    std::optional<int64_t> cd;  // unset = auto
    std::vector<double> alphas{0.0, 1.0, 2.0};
    long precision = 128;
    int samples = 10;
    int threads = 0;  // 0 = hardware concurrency
    uint64_t seed = 1;
    std::string out_csv;
    std::string out_json;

    void validate_lowerbound() const {
        if (d < 4) throw Error("config: lower-bound experiments need dim >= 4");
        if (kmin < 1 || kmax < kmin) throw Error("config: bad k range");
        if (precision < 64) throw Error("config: precision must be >= 64");
        if (samples < 1) throw Error("config: samples must be >= 1");
        for (double a : alphas)
            if (a < 0) throw Error("config: alpha must be >= 0");
    }
};

struct LowerBoundRow {
    int64_t k = 0;
    size_t family_size = 0;
    Interval union_vol;
    DyadicRational sum_vol;       // = family size for this family
    Interval c_min;
    Interval carleson;
    std::vector<Interval> rhs;    // per alpha
    std::vector<Interval> ratio;  // per alpha
};

struct LowerBoundResult {
    std::vector<LowerBoundRow> rows;
    std::vector<int64_t> ks;
    int64_t cd_used = 0;
    bool cd_auto = false;
    SlopeFit union_slope;
    std::vector<SlopeFit> ratio_slopes;  // per alpha
    std::vector<int64_t> fit_window;     // the ks used for the fits
    std::optional<double> alpha_threshold;
    double threshold_tolerance = 0.15;
};

/// Sample points spanning [kmin, kmax], geometrically spaced, endpoints
/// included.
inline std::vector<int64_t> sample_ks(int64_t kmin, int64_t kmax, int samples) {
    std::vector<int64_t> ks;
    if (kmax - kmin + 1 <= samples) {
        for (int64_t k = kmin; k <= kmax; ++k) ks.push_back(k);
        return ks;
    }
    double la = std::log(static_cast<double>(kmin));
    double lb = std::log(static_cast<double>(kmax));
    for (int i = 0; i < samples; ++i) {
        double t = samples == 1 ? 0.0
                                : static_cast<double>(i) /
                                      static_cast<double>(samples - 1);
        int64_t k = std::llround(std::exp(la + t * (lb - la)));
        k = std::clamp(k, kmin, kmax);
        if (ks.empty() || k > ks.back()) ks.push_back(k);
    }
    if (ks.back() != kmax) ks.push_back(kmax);
    return ks;
}

inline LowerBoundRow lowerbound_row(const ExperimentConfig& cfg, int64_t cd,
                                    int64_t k) {
    const mpfr_prec_t prec = cfg.precision;
    LowerBoundRow row;
    row.k = k;
    std::vector<TiedBox> family = theorem2_family(cfg.d, k, cd);
    row.family_size = family.size();

    // Every family box must average f_k to exactly 1 and contain its support.
    TestFunction f(cfg.d, k);
    for (const auto& tb : family) {
        AnchoredBox b = tb.to_box();
        if (!contains_cube(b, k))
            throw Error("lowerbound: family box misses the support cube");
        MeasureValue avg = average_over_box(b, f, prec);
        if (!avg.exact || !(*avg.exact == DyadicRational(1)))
            throw Error("lowerbound: box average is not exactly 1");
    }

    TiedPeelResult peel = tied_peel(family, prec);
    row.union_vol = peel.total;
    row.sum_vol = DyadicRational(static_cast<long>(family.size()));

    bool first = true;
    Interval cmin(prec);
    for (const auto& w : peel.witness) {  // |R| = 1, so the ratio is w itself
        if (first || w.mid() < cmin.mid()) cmin = w;
        first = false;
    }
    row.c_min = cmin;
    row.carleson =
        Interval::from_dyadic(row.sum_vol, prec) / row.union_vol;

    for (double a : cfg.alphas) {
        Interval r = orlicz_rhs(f, a, prec);
        row.rhs.push_back(r);
        row.ratio.push_back(row.union_vol / r);
    }
    return row;
}

/// One row per sampled k: family size, certified union measure, witness
/// minimum, Orlicz right-hand sides and ratios; then log-log slope fits over
/// the upper half of the k range. Rows are computed in parallel and assembled
/// in k order, so the output is deterministic for a given config.
inline LowerBoundResult run_lowerbound(const ExperimentConfig& cfg) {
    cfg.validate_lowerbound();
    LowerBoundResult res;
    res.cd_auto = !cfg.cd.has_value();
    res.cd_used = cfg.cd ? *cfg.cd : auto_cd(cfg.d, cfg.kmax);
    if (res.cd_used < cfg.d - 3 || res.cd_used < 2)
        throw Error("config: C_d must be > 1 and >= d-3");
    res.ks = sample_ks(cfg.kmin, cfg.kmax, cfg.samples);

    unsigned hw = cfg.threads > 0
                      ? static_cast<unsigned>(cfg.threads)
                      : std::max(1u, std::thread::hardware_concurrency());
    // largest k first so the long row does not trail the batch
    std::vector<int64_t> order(res.ks.rbegin(), res.ks.rend());
    std::vector<LowerBoundRow> rows(res.ks.size());
    size_t next = 0;
    std::mutex mu;
    std::exception_ptr first_error;
    auto worker = [&]() {
        while (true) {
            size_t i;
            {
                std::lock_guard<std::mutex> lk(mu);
                if (next >= order.size() || first_error) return;
                i = next++;
            }
            try {
                LowerBoundRow r = lowerbound_row(cfg, res.cd_used, order[i]);
                size_t pos = static_cast<size_t>(
                    std::find(res.ks.begin(), res.ks.end(), order[i]) -
                    res.ks.begin());
                rows[pos] = std::move(r);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<size_t>(hw, order.size()); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    res.rows = std::move(rows);

    // slope fits over the upper half of the k range
    int64_t mid = (cfg.kmin + cfg.kmax) / 2;
    std::vector<size_t> win;
    for (size_t i = 0; i < res.rows.size(); ++i)
        if (res.rows[i].k >= mid) win.push_back(i);
    while (win.size() < 3 && win.size() < res.rows.size()) {
        size_t lo = win.empty() ? res.rows.size() : win.front();
        if (lo == 0) break;
        win.insert(win.begin(), lo - 1);
    }
    for (size_t i : win) res.fit_window.push_back(res.rows[i].k);

    if (win.size() >= 3) {
        std::vector<std::pair<double, double>> pts;
        for (size_t i : win)
            pts.emplace_back(static_cast<double>(res.rows[i].k),
                             res.rows[i].union_vol.mid());
        res.union_slope = fit_loglog_slope(pts);
        for (size_t a = 0; a < cfg.alphas.size(); ++a) {
            pts.clear();
            for (size_t i : win)
                pts.emplace_back(static_cast<double>(res.rows[i].k),
                                 res.rows[i].ratio[a].mid());
            res.ratio_slopes.push_back(fit_loglog_slope(pts));
        }
        for (size_t a = 0; a < cfg.alphas.size(); ++a) {
            if (std::abs(res.ratio_slopes[a].slope) <= res.threshold_tolerance) {
                res.alpha_threshold = cfg.alphas[a];
                break;
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// deterministic rendering

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline std::string format_alpha(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", a);
    return buf;
}

inline std::string lowerbound_csv(const ExperimentConfig& cfg,
                                  const LowerBoundResult& res) {
    std::ostringstream os;
    os << "k,family_size,union_value,union_err,sum_volumes,c_min,carleson";
    for (double a : cfg.alphas)
        os << ",rhs_a" << format_alpha(a) << ",ratio_a" << format_alpha(a);
    os << "\n";
    for (const auto& row : res.rows) {
        os << row.k << "," << row.family_size << ","
           << format_double(row.union_vol.mid()) << ","
           << format_double(row.union_vol.err()) << ","
           << row.sum_vol.to_decimal_string() << ","
           << format_double(row.c_min.mid()) << ","
           << format_double(row.carleson.mid());
        for (size_t a = 0; a < cfg.alphas.size(); ++a)
            os << "," << format_double(row.rhs[a].mid()) << ","
               << format_double(row.ratio[a].mid());
        os << "\n";
    }
    return os.str();
}

inline std::string lowerbound_json(const ExperimentConfig& cfg,
                                   const LowerBoundResult& res) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["dimension"] = cfg.d;
    j["kmin"] = cfg.kmin;
    j["kmax"] = cfg.kmax;
    j["sampled_k"] = res.ks;
    j["cd"] = res.cd_used;
    j["cd_mode"] = res.cd_auto ? "auto" : "fixed";
    j["precision"] = cfg.precision;
    j["alphas"] = cfg.alphas;
    j["fit_window"] = res.fit_window;
    j["union_slope"] = {{"slope", res.union_slope.slope},
                        {"residual", res.union_slope.residual}};
    nlohmann::ordered_json rs = nlohmann::ordered_json::object();
    for (size_t a = 0; a < cfg.alphas.size() && a < res.ratio_slopes.size(); ++a)
        rs[format_alpha(cfg.alphas[a])] = {
            {"slope", res.ratio_slopes[a].slope},
            {"residual", res.ratio_slopes[a].residual}};
    j["ratio_slopes"] = rs;
    j["threshold_tolerance"] = res.threshold_tolerance;
    if (res.alpha_threshold)
        j["alpha_threshold"] = *res.alpha_threshold;
    else
        j["alpha_threshold"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace zygmund
