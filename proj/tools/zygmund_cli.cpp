// Command-line driver: coverage checks, beta tables, the lower-bound sweep
// with slope fitting, sparseness certification and oracle cross-checks.
// Exit status: 0 = success, 1 = check failure, 2 = usage/config error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zygmund/experiment.hpp"
#include "zygmund/suite.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kConfigError = 2;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw zygmund::Error("cannot open output file: " + path);
    os << content;
}

int run_lowerbound_cmd(zygmund::ExperimentConfig cfg) {
    using namespace zygmund;
    try {
        LowerBoundResult res = run_lowerbound(cfg);
        std::string csv = lowerbound_csv(cfg, res);
        std::string json = lowerbound_json(cfg, res);
        if (!cfg.out_csv.empty())
            write_file(cfg.out_csv, csv);
        else
            std::cout << csv;
        if (!cfg.out_json.empty())
            write_file(cfg.out_json, json);
        else
            std::cout << json;
        return kOk;
    } catch (const NotFoundError& e) {
        // C_d too small: recompute sequentially so finished rows are flushed
        std::cerr << "error: " << e.what() << "\n";
        int64_t cd = cfg.cd ? *cfg.cd : 0;
        if (cd >= 2) {
            LowerBoundResult partial;
            partial.cd_used = cd;
            for (int64_t k : zygmund::sample_ks(cfg.kmin, cfg.kmax, cfg.samples)) {
                try {
                    partial.rows.push_back(lowerbound_row(cfg, cd, k));
                } catch (const NotFoundError&) {
                    break;
                }
            }
            std::string csv = lowerbound_csv(cfg, partial);
            if (!cfg.out_csv.empty())
                write_file(cfg.out_csv, csv);
            else
                std::cout << csv;
            std::cerr << "partial results: " << partial.rows.size()
                      << " rows flushed\n";
        }
        return kConfigError;
    }
}

int run_coverage_cmd(int dim, int64_t window) {
    zygmund::CoverageReport rep;
    try {
        zygmund::theorem1_basis(dim, window, &rep);
    } catch (const zygmund::Error& e) {
        std::cerr << "coverage failure: " << e.what() << "\n";
        return kCheckFailure;
    }
    std::cout << "coverage d=" << dim << " N=" << window << ": attained "
              << rep.attained << "/" << rep.targets
              << (rep.all_covered ? " (complete)" : " (INCOMPLETE)")
              << ", monotone " << (rep.monotone_ok ? "ok" : "VIOLATED")
              << ", index window +-" << rep.window << "\n";
    return rep.all_covered && rep.monotone_ok ? kOk : kCheckFailure;
}

int run_beta_cmd(int dim, int64_t count) {
    for (int64_t m = 0; m < count; ++m) {
        std::vector<int64_t> tup = zygmund::beta_concat(dim, m);
        std::cout << m << ":";
        for (size_t i = 0; i < tup.size(); ++i)
            std::cout << (i == 0 ? " (" : ", ") << tup[i];
        std::cout << ")\n";
    }
    return kOk;
}

int run_check_extension_cmd(uint64_t seed, int64_t window, int trials) {
    zygmund::SuiteCheck c =
        zygmund::check_extension_properties(seed, trials, window, window);
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
              << "\n";
    return c.pass ? kOk : kCheckFailure;
}

int run_sparseness_cmd(int dim, int64_t k, const std::string& cd_arg,
                       long precision) {
    using namespace zygmund;
    int64_t cd = cd_arg == "auto" ? auto_cd(dim, k) : std::stoll(cd_arg);
    std::vector<TiedBox> family = theorem2_family(dim, k, cd);
    std::vector<AnchoredBox> boxes;
    boxes.reserve(family.size());
    for (const auto& tb : family) boxes.push_back(tb.to_box());
    SparsenessReport rep = sparseness_witness(boxes, precision);
    std::cout << "sparseness d=" << dim << " k=" << k << " cd=" << cd << ": "
              << family.size() << " boxes\n"
              << "  union    = " << format_double(rep.union_vol.value())
              << " (err <= " << format_double(rep.union_vol.error_bound())
              << ")\n"
              << "  sum|R|   = " << rep.sum_vol.value() << "\n"
              << "  c_min    = " << format_double(rep.c_min.mid()) << "\n"
              << "  carleson = " << format_double(rep.carleson.mid()) << "\n";
    return kOk;
}

int run_oracle_check_cmd(uint64_t seed, int trials, int max_boxes) {
    zygmund::SuiteCheck c =
        zygmund::check_oracle_equivalence(seed, trials, max_boxes);
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
              << "\n";
    return c.pass ? kOk : kCheckFailure;
}

int run_suite_cmd(const zygmund::SuiteConfig& cfg, const std::string& json_out) {
    std::vector<zygmund::SuiteCheck> checks = zygmund::run_suite(cfg);
    std::cout << zygmund::suite_report(checks);
    if (!json_out.empty()) {
        nlohmann::ordered_json j;
        j["version"] = zygmund::kVersion;
        j["seed"] = cfg.seed;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = arr;
        j["ok"] = zygmund::suite_ok(checks);
        write_file(json_out, j.dump(2) + "\n");
    }
    return zygmund::suite_ok(checks) ? kOk : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic Zygmund bases: constructions, measures, experiments"};
    app.require_subcommand(1);
    std::function<int()> action;

    // lowerbound
    auto* lb = app.add_subcommand("lowerbound",
                                  "superlevel-measure sweep with slope fits");
    zygmund::ExperimentConfig cfg;
    std::string cd_arg = "auto";
    lb->add_option("--dim", cfg.d, "dimension (>= 4)")->required();
    lb->add_option("--kmin", cfg.kmin, "smallest k")->required();
    lb->add_option("--kmax", cfg.kmax, "largest k")->required();
    lb->add_option("--cd", cd_arg, "C_d constant, integer or 'auto'");
    lb->add_option("--alpha", cfg.alphas, "Orlicz exponents")
        ->delimiter(',');
    lb->add_option("--precision", cfg.precision, "mantissa bits (>= 64)");
    lb->add_option("--samples", cfg.samples, "number of sampled k values");
    lb->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    lb->add_option("--out", cfg.out_csv, "CSV output path");
    lb->add_option("--summary", cfg.out_json, "JSON summary path");
    lb->callback([&]() {
        action = [&, cd_arg]() {
            zygmund::ExperimentConfig c = cfg;
            if (cd_arg != "auto") c.cd = std::stoll(cd_arg);
            return run_lowerbound_cmd(c);
        };
    });

    // coverage
    auto* cov = app.add_subcommand("coverage", "antidiagonal coverage check");
    int cov_dim = 3;
    int64_t cov_window = 2;
    cov->add_option("--dim", cov_dim, "dimension (>= 2)")->required();
    cov->add_option("--window", cov_window, "half-width N of the target cube")
        ->required();
    cov->callback([&]() {
        action = [&]() { return run_coverage_cmd(cov_dim, cov_window); };
    });

    // beta
    auto* beta = app.add_subcommand("beta", "print the concatenated sequence");
    int beta_dim = 4;
    int64_t beta_count = 10;
    beta->add_option("--dim", beta_dim, "dimension (>= 4)")->required();
    beta->add_option("--count", beta_count, "number of terms")->required();
    beta->callback([&]() {
        action = [&]() { return run_beta_cmd(beta_dim, beta_count); };
    });

    // check-extension
    auto* ce = app.add_subcommand("check-extension",
                                  "monotone-extension property run");
    uint64_t ce_seed = 1;
    int64_t ce_window = 64;
    int ce_trials = 200;
    ce->add_option("--seed", ce_seed, "RNG seed");
    ce->add_option("--window", ce_window, "seed window half-width");
    ce->add_option("--trials", ce_trials, "number of random seeds");
    ce->callback([&]() {
        action = [&]() {
            return run_check_extension_cmd(ce_seed, ce_window, ce_trials);
        };
    });

    // sparseness
    auto* sp = app.add_subcommand("sparseness",
                                  "witness certification for one family");
    int sp_dim = 4;
    int64_t sp_k = 25;
    std::string sp_cd = "auto";
    long sp_prec = 128;
    sp->add_option("--dim", sp_dim, "dimension (>= 4)")->required();
    sp->add_option("--k", sp_k, "scale k")->required();
    sp->add_option("--cd", sp_cd, "C_d constant, integer or 'auto'");
    sp->add_option("--precision", sp_prec, "mantissa bits");
    sp->callback([&]() {
        action = [&]() { return run_sparseness_cmd(sp_dim, sp_k, sp_cd, sp_prec); };
    });

    // oracle-check
    auto* oc = app.add_subcommand("oracle-check",
                                  "union measure vs inclusion-exclusion");
    uint64_t oc_seed = 1;
    int oc_trials = 500;
    int oc_max_boxes = 12;
    oc->add_option("--trials", oc_trials, "number of random instances");
    oc->add_option("--max-boxes", oc_max_boxes, "boxes per instance (<= 20)");
    oc->add_option("--seed", oc_seed, "RNG seed");
    oc->callback([&]() {
        action = [&]() {
            return run_oracle_check_cmd(oc_seed, oc_trials, oc_max_boxes);
        };
    });

    // suite
    auto* su = app.add_subcommand("suite", "run every invariant check");
    zygmund::SuiteConfig suite_cfg;
    std::string suite_json;
    su->add_option("--seed", suite_cfg.seed, "RNG seed");
    su->add_option("--precision", suite_cfg.precision, "mantissa bits");
    su->add_option("--trials", suite_cfg.oracle_trials,
                   "oracle-equivalence instances");
    su->add_option("--json", suite_json, "machine-readable report path");
    su->set_config("--config", "", "flat key=value config file");
    su->callback([&]() {
        action = [&]() { return run_suite_cmd(suite_cfg, suite_json); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        return action ? action() : kConfigError;
    } catch (const zygmund::NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const zygmund::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
