#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zygmund/experiment.hpp"
#include "zygmund/suite.hpp"

using namespace zygmund;

TEST_CASE("log-log slope fits") {
    std::vector<std::pair<double, double>> pts;
    for (double x = 2; x <= 64; x *= 2) pts.emplace_back(x, x * x);
    SlopeFit f = fit_loglog_slope(pts);
    CHECK(f.slope == Catch::Approx(2.0).margin(1e-12));
    CHECK(f.residual < 1e-12);

    pts.clear();
    for (double x = 2; x <= 64; x *= 2) pts.emplace_back(x, 5 * x * x * x);
    f = fit_loglog_slope(pts);
    CHECK(f.slope == Catch::Approx(3.0).margin(1e-12));

    pts.clear();
    for (double x = 2; x <= 64; x += 3)
        pts.emplace_back(x, x * x * (1 + 0.1 * std::sin(x)));
    f = fit_loglog_slope(pts);
    CHECK(std::abs(f.slope - 2.0) < 0.1);

    CHECK_THROWS_AS(fit_loglog_slope({{1, 1}, {2, 2}}), Error);
    CHECK_THROWS_AS(fit_loglog_slope({{1, 1}, {1, 2}, {2, 2}}), Error);
    CHECK_THROWS_AS(fit_loglog_slope({{1, 1}, {2, -2}, {3, 2}}), Error);
}

TEST_CASE("k sampling covers the range deterministically") {
    std::vector<int64_t> ks = sample_ks(50, 400, 10);
    CHECK(ks.front() == 50);
    CHECK(ks.back() == 400);
    CHECK(ks.size() >= 8);
    for (size_t i = 1; i < ks.size(); ++i) CHECK(ks[i] > ks[i - 1]);
    CHECK(sample_ks(1, 5, 10) == std::vector<int64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("degenerate lower-bound run: single unit cube") {
    ExperimentConfig cfg;
    cfg.d = 4;
    cfg.kmin = cfg.kmax = 1;
    cfg.cd = 4;
    cfg.alphas = {0.0, 1.0};
    LowerBoundResult res = run_lowerbound(cfg);
    REQUIRE(res.rows.size() == 1);
    const LowerBoundRow& row = res.rows[0];
    CHECK(row.family_size == 1);
    CHECK(row.union_vol.mid() == Catch::Approx(1.0));
    CHECK(row.sum_vol == DyadicRational(1));
    // alpha = 0: rhs == 1, ratio == |union|
    CHECK(row.rhs[0].mid() == Catch::Approx(1.0));
    CHECK(row.ratio[0].mid() == Catch::Approx(row.union_vol.mid()));
}

TEST_CASE("row invariants and alpha-0 ratio growth") {
    ExperimentConfig cfg;
    cfg.d = 4;
    cfg.kmin = 2;
    cfg.kmax = 10;
    cfg.samples = 9;
    cfg.alphas = {0.0};
    LowerBoundResult res = run_lowerbound(cfg);
    REQUIRE(res.rows.size() == 9);
    double prev_ratio = 0.0;
    size_t prev_size = 0;
    for (const auto& row : res.rows) {
        CHECK(row.union_vol.mid() >= 1.0 - 1e-12);
        CHECK(row.union_vol.mid() <=
              static_cast<double>(row.family_size) + 1e-9);
        CHECK(row.sum_vol ==
              DyadicRational(static_cast<long>(row.family_size)));
        if (prev_size > 1) CHECK(row.ratio[0].mid() > prev_ratio);
        prev_ratio = row.ratio[0].mid();
        prev_size = row.family_size;
    }
}

TEST_CASE("lower-bound outputs are byte-identical across reruns") {
    ExperimentConfig cfg;
    cfg.d = 4;
    cfg.kmin = 1;
    cfg.kmax = 12;
    cfg.samples = 6;
    cfg.threads = 3;
    LowerBoundResult a = run_lowerbound(cfg);
    LowerBoundResult b = run_lowerbound(cfg);
    CHECK(lowerbound_csv(cfg, a) == lowerbound_csv(cfg, b));
    CHECK(lowerbound_json(cfg, a) == lowerbound_json(cfg, b));
}

TEST_CASE("suite is deterministic and passes on the default seed") {
    SuiteConfig cfg;
    cfg.seed = 1;
    cfg.oracle_trials = 60;  // the full 500 runs in the acceptance suite
    std::vector<SuiteCheck> a = run_suite(cfg);
    std::vector<SuiteCheck> b = run_suite(cfg);
    CHECK(suite_ok(a));
    CHECK(suite_report(a) == suite_report(b));
}

TEST_CASE("beta prefix guard rejects a mutated sequence") {
    std::vector<std::vector<int64_t>> good;
    for (int64_t m = 0; m < 6; ++m) good.push_back(beta_concat(4, m));
    CHECK(beta_prefix_matches(good));
    std::vector<std::vector<int64_t>> mutated = good;
    std::swap(mutated[2], mutated[3]);  // reorder shell interior
    CHECK_FALSE(beta_prefix_matches(mutated));
}

TEST_CASE("misconfigured C_d surfaces as NotFound") {
    ExperimentConfig cfg;
    cfg.d = 5;
    cfg.kmin = 1;
    cfg.kmax = 30;
    cfg.cd = 2;  // fine
    CHECK_NOTHROW(run_lowerbound(cfg));
    cfg.d = 6;
    cfg.cd = 3;
    cfg.kmax = 8;
    CHECK_NOTHROW(run_lowerbound(cfg));
    ExperimentConfig bad = cfg;
    bad.cd = 1;
    CHECK_THROWS_AS(run_lowerbound(bad), Error);
}
