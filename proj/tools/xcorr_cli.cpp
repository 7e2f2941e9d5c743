// Copyright 2026 xcorr contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end over the C API.
//
//   xcorr run    --config FILE [overrides] --out DIR     one (L, p, chi) point
//   xcorr sweep  --config FILE [overrides] --out DIR     full grid
//   xcorr oracle [--kind shadow|moment|variance|all]
//   xcorr fit    --input aggregate.csv --kind power_law|collapse --p P
//
// Exit codes: 0 success, 2 configuration or I/O error, 3 numerical failure.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xcorr/xcorr.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(xcorr_status s) {
    switch (s) {
    case XCORR_OK:
        return 0;
    case XCORR_E_NUMERICAL:
        return kExitNumerical;
    default:
        return kExitConfig;
    }
}

int report(xcorr_status s) {
    if (s != XCORR_OK) {
        std::fprintf(stderr, "xcorr: %s\n", xcorr_last_error());
    }
    return exit_code(s);
}

struct ConfigDeleter {
    void operator()(xcorr_config *c) const { xcorr_config_destroy(c); }
};
struct ResultDeleter {
    void operator()(xcorr_result *r) const { xcorr_result_destroy(r); }
};

struct RunOptions {
    std::string config;
    std::string out = "xcorr_out";
    std::map<std::string, std::string> flags;
    std::vector<std::string> sets;
};

void add_run_options(CLI::App *cmd, RunOptions &o) {
    cmd->add_option("-c,--config", o.config, "key = value configuration file")
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", o.out, "output directory");
    for (const char *key : {"L", "p", "chi", "depth_factor", "runs", "seed", "ensemble",
                            "floor", "floor_rule", "depolarize", "probe", "modes",
                            "fixed_circuit", "threads"}) {
        cmd->add_option(std::string("--") + key, o.flags[key],
                        std::string("override configuration key ") + key);
    }
    cmd->add_option("--set", o.sets, "override as key=value (repeatable)");
}

int print_rows(const xcorr_result *r) {
    size_t rows = 0;
    xcorr_result_row_count(r, &rows);
    std::printf("%4s %6s %4s %6s %10s %10s %10s %10s %10s\n", "L", "p", "chi", "runs", "E[S]",
                "E[S_QC]", "E[S_CC]", "E[S_SC]", "se[S_SC]");
    for (size_t i = 0; i < rows; ++i) {
        double v[9];
        const char *cols[] = {"L", "p", "chi", "runs", "mean_S", "mean_S_QC", "mean_S_CC",
                              "mean_S_SC", "stderr_S_SC"};
        for (int k = 0; k < 9; ++k) {
            xcorr_result_value(r, i, cols[k], &v[k]);
        }
        std::printf("%4.0f %6.3f %4.0f %6.0f %10.5f %10.5f %10.5f %10.5f %10.5f\n", v[0], v[1],
                    v[2], v[3], v[4], v[5], v[6], v[7], v[8]);
    }
    return 0;
}

int do_run(const RunOptions &o, bool single_point) {
    xcorr_config *raw = nullptr;
    if (auto s = xcorr_config_create(&raw); s != XCORR_OK) {
        return report(s);
    }
    std::unique_ptr<xcorr_config, ConfigDeleter> cfg(raw);
    if (!o.config.empty()) {
        if (auto s = xcorr_config_load(cfg.get(), o.config.c_str()); s != XCORR_OK) {
            return report(s);
        }
    }
    for (const auto &[key, value] : o.flags) {
        if (value.empty()) {
            continue;
        }
        if (auto s = xcorr_config_set(cfg.get(), key.c_str(), value.c_str()); s != XCORR_OK) {
            return report(s);
        }
    }
    for (const auto &kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "xcorr: --set expects key=value, got '%s'\n", kv.c_str());
            return kExitConfig;
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (auto s = xcorr_config_set(cfg.get(), key.c_str(), value.c_str()); s != XCORR_OK) {
            return report(s);
        }
    }
    size_t points = 0;
    xcorr_config_grid_size(cfg.get(), &points);
    if (single_point && points != 1) {
        std::fprintf(stderr, "xcorr: run expects a single (L, p, chi) point, got %zu; use sweep\n",
                     points);
        return kExitConfig;
    }
    xcorr_result *res_raw = nullptr;
    if (auto s = xcorr_run(cfg.get(), &res_raw); s != XCORR_OK) {
        return report(s);
    }
    std::unique_ptr<xcorr_result, ResultDeleter> res(res_raw);
    if (auto s = xcorr_result_write(res.get(), o.out.c_str()); s != XCORR_OK) {
        return report(s);
    }
    print_rows(res.get());
    std::printf("wrote %s/aggregate.csv, runs.jsonl, config.txt\n", o.out.c_str());
    return 0;
}

int do_oracle(const std::string &kind) {
    struct Check {
        const char *name;
        xcorr_oracle_kind kind;
        double tolerance;
    };
    const Check checks[] = {{"shadow", XCORR_ORACLE_SHADOW, 1e-13},
                            {"moment", XCORR_ORACLE_MOMENT, 1e-12},
                            {"variance", XCORR_ORACLE_VARIANCE, 1e-10}};
    int code = 0;
    bool any = false;
    for (const auto &c : checks) {
        if (kind != "all" && kind != c.name) {
            continue;
        }
        any = true;
        double dev = 0.0;
        if (auto s = xcorr_oracle(c.kind, &dev); s != XCORR_OK) {
            return report(s);
        }
        const bool ok = dev <= c.tolerance;
        std::printf("%-9s max deviation %.3e (tolerance %.0e) %s\n", c.name, dev, c.tolerance,
                    ok ? "ok" : "FAILED");
        if (!ok) {
            code = kExitNumerical;
        }
    }
    if (!any) {
        std::fprintf(stderr, "xcorr: unknown oracle '%s'\n", kind.c_str());
        return kExitConfig;
    }
    return code;
}

int do_fit(const std::string &input, const std::string &kind, double p) {
    xcorr_fit_kind k;
    if (kind == "power_law") {
        k = XCORR_FIT_POWER_LAW;
    } else if (kind == "collapse") {
        k = XCORR_FIT_COLLAPSE;
    } else {
        std::fprintf(stderr, "xcorr: unknown fit kind '%s'\n", kind.c_str());
        return kExitConfig;
    }
    size_t needed = 0;
    if (auto s = xcorr_fit_csv(input.c_str(), k, p, nullptr, 0, &needed); s != XCORR_OK) {
        return report(s);
    }
    std::string buf(needed, '\0');
    if (auto s = xcorr_fit_csv(input.c_str(), k, p, buf.data(), buf.size(), &needed);
        s != XCORR_OK) {
        return report(s);
    }
    std::printf("%s\n", buf.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entropy cross-correlations of monitored circuits"};
    app.set_version_flag("--version", std::string(xcorr_version()));
    app.require_subcommand(1);

    RunOptions run_opts;
    auto *run = app.add_subcommand("run", "simulate one (L, p, chi) point");
    add_run_options(run, run_opts);

    RunOptions sweep_opts;
    auto *sweep = app.add_subcommand("sweep", "simulate a grid over L, p and chi");
    add_run_options(sweep, sweep_opts);

    std::string oracle_kind = "all";
    auto *oracle = app.add_subcommand("oracle", "exact-enumeration self-checks");
    oracle->add_option("--kind", oracle_kind, "shadow, moment, variance or all");

    std::string fit_input;
    std::string fit_kind = "collapse";
    double fit_p = 0.16;
    auto *fit = app.add_subcommand("fit", "fit scaling forms to an aggregate CSV");
    fit->add_option("-i,--input", fit_input, "aggregate.csv")->required();
    fit->add_option("--kind", fit_kind, "power_law or collapse");
    fit->add_option("--p", fit_p, "measurement rate to select");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run) {
        return do_run(run_opts, true);
    }
    if (*sweep) {
        return do_run(sweep_opts, false);
    }
    if (*oracle) {
        return do_oracle(oracle_kind);
    }
    return do_fit(fit_input, fit_kind, fit_p);
}
