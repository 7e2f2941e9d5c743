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


#include "xcorr/xcorr.h"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "xcorr/error.hpp"
#include "xcorr/fit.hpp"
#include "xcorr/harness.hpp"
#include "xcorr/io.hpp"
#include "xcorr/oracle.hpp"

struct xcorr_config {
    xcorr::SweepConfig sweep = xcorr::SweepConfig::from(xcorr::ExperimentConfig{});
};

struct xcorr_result {
    xcorr::SweepConfig sweep;
    std::vector<xcorr::PointResult> points;
    std::vector<xcorr::AggregateRow> rows;
};

namespace {

thread_local std::string last_error;

xcorr_status fail(xcorr_status status, const std::string &message) {
    last_error = message;
    return status;
}

/// Maps exceptions escaping `body` onto status codes.
template <class F> xcorr_status guarded(F body) {
    try {
        return body();
    } catch (const xcorr::ConfigError &e) {
        return fail(XCORR_E_CONFIG, e.what());
    } catch (const xcorr::NumericalError &e) {
        return fail(XCORR_E_NUMERICAL, e.what());
    } catch (const xcorr::IoError &e) {
        return fail(XCORR_E_IO, e.what());
    } catch (const std::exception &e) {
        return fail(XCORR_E_NUMERICAL, e.what());
    } catch (...) {
        return fail(XCORR_E_NUMERICAL, "unknown error");
    }
}

void refresh_rows(xcorr_result &r) {
    r.rows.clear();
    for (const auto &pt : r.points) {
        r.rows.push_back(xcorr::to_row(pt.stats));
    }
}

nlohmann::json fit_rows(const std::vector<xcorr::AggregateRow> &all, xcorr_fit_kind kind,
                        double p) {
    std::vector<xcorr::AggregateRow> rows;
    for (const auto &row : all) {
        if (std::abs(row.p - p) < 1e-12) {
            rows.push_back(row);
        }
    }
    if (rows.empty()) {
        throw xcorr::ConfigError("no rows at p = " + std::to_string(p));
    }
    nlohmann::json j;
    if (kind == XCORR_FIT_POWER_LAW) {
        // E[S] does not depend on chi; use the largest chi per size.
        std::map<int, const xcorr::AggregateRow *> best;
        for (const auto &row : rows) {
            auto &slot = best[row.L];
            if (slot == nullptr || row.chi > slot->chi) {
                slot = &row;
            }
        }
        std::vector<double> sizes;
        std::vector<double> means;
        for (const auto &[l, row] : best) {
            sizes.push_back(l);
            means.push_back(row->value("mean_S"));
        }
        const auto f = xcorr::fit_power_law(sizes, means);
        j = {{"kind", "power_law"},       {"p", p},
             {"alpha", f.alpha},          {"alpha_stderr", f.alpha_stderr},
             {"prefactor", f.prefactor},  {"prefactor_stderr", f.prefactor_stderr},
             {"residual_norm", f.residual_norm}};
        return j;
    }
    std::vector<xcorr::CollapsePoint> pts;
    for (const auto &row : rows) {
        pts.push_back({static_cast<double>(row.L), static_cast<double>(row.chi),
                       row.value("mean_S_QC") / row.value("mean_S")});
    }
    const auto f = xcorr::fit_collapse(pts);
    nlohmann::json per = nlohmann::json::array();
    for (const auto &s : f.per_size) {
        per.push_back({{"L", s.L},
                       {"decay_rate", s.decay_rate},
                       {"chi_qc", std::isnan(s.chi_qc) ? nlohmann::json(nullptr)
                                                       : nlohmann::json(s.chi_qc)},
                       {"points", s.points}});
    }
    j = {{"kind", "collapse"}, {"p", p},       {"lambda", f.lambda},
         {"B", f.B},           {"x0", f.x0},    {"residual_norm", f.residual_norm},
         {"evaluations", f.evaluations}, {"per_size", per}};
    return j;
}

} // namespace

extern "C" {

const char *xcorr_version(void) { return "1.0.0"; }

const char *xcorr_last_error(void) { return last_error.c_str(); }

xcorr_status xcorr_config_create(xcorr_config **out) {
    if (out == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null output pointer");
    }
    return guarded([&] {
        *out = new xcorr_config;
        return XCORR_OK;
    });
}

void xcorr_config_destroy(xcorr_config *config) { delete config; }

xcorr_status xcorr_config_load(xcorr_config *config, const char *path) {
    if (config == nullptr || path == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        config->sweep = xcorr::load_config(path);
        return XCORR_OK;
    });
}

xcorr_status xcorr_config_set(xcorr_config *config, const char *key, const char *value) {
    if (config == nullptr || key == nullptr || value == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        xcorr::SweepConfig updated = config->sweep;
        xcorr::apply_setting(updated, key, value);
        config->sweep = std::move(updated);
        return XCORR_OK;
    });
}

xcorr_status xcorr_config_grid_size(const xcorr_config *config, size_t *points) {
    if (config == nullptr || points == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    *points = config->sweep.L.size() * config->sweep.p.size() * config->sweep.chi.size();
    return XCORR_OK;
}

xcorr_status xcorr_run_shard(const xcorr_config *config, int index, int count,
                             xcorr_result **out) {
    if (config == nullptr || out == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto result = std::make_unique<xcorr_result>();
        result->sweep = config->sweep;
        result->points = xcorr::run_sweep(config->sweep, {index, count});
        refresh_rows(*result);
        *out = result.release();
        return XCORR_OK;
    });
}

xcorr_status xcorr_run(const xcorr_config *config, xcorr_result **out) {
    return xcorr_run_shard(config, 0, 1, out);
}

xcorr_status xcorr_result_merge(xcorr_result *into, const xcorr_result *other) {
    if (into == nullptr || other == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        into->points = xcorr::merge_shards({into->points, other->points});
        refresh_rows(*into);
        return XCORR_OK;
    });
}

void xcorr_result_destroy(xcorr_result *result) { delete result; }

xcorr_status xcorr_result_row_count(const xcorr_result *result, size_t *rows) {
    if (result == nullptr || rows == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    *rows = result->rows.size();
    return XCORR_OK;
}

xcorr_status xcorr_result_record_count(const xcorr_result *result, size_t *records) {
    if (result == nullptr || records == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    size_t n = 0;
    for (const auto &pt : result->points) {
        n += pt.records.size();
    }
    *records = n;
    return XCORR_OK;
}

xcorr_status xcorr_result_value(const xcorr_result *result, size_t row, const char *column,
                                double *value) {
    if (result == nullptr || column == nullptr || value == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    if (row >= result->rows.size()) {
        return fail(XCORR_E_ARGUMENT, "row " + std::to_string(row) + " out of range");
    }
    const auto &r = result->rows[row];
    const std::string col = column;
    if (col == "L") {
        *value = r.L;
    } else if (col == "p") {
        *value = r.p;
    } else if (col == "chi") {
        *value = r.chi;
    } else if (col == "runs") {
        *value = static_cast<double>(r.runs);
    } else if (col == "schema_version") {
        *value = r.schema_version;
    } else {
        const auto it = r.values.find(col);
        if (it == r.values.end()) {
            return fail(XCORR_E_ARGUMENT, "unknown column '" + col + "'");
        }
        *value = it->second;
    }
    return XCORR_OK;
}

xcorr_status xcorr_result_write(const xcorr_result *result, const char *dir) {
    if (result == nullptr || dir == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        xcorr::emit_results(dir, result->sweep, result->points);
        return XCORR_OK;
    });
}

xcorr_status xcorr_oracle(xcorr_oracle_kind kind, double *max_deviation) {
    if (max_deviation == nullptr) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    return guarded([&] {
        switch (kind) {
        case XCORR_ORACLE_SHADOW:
            *max_deviation = xcorr::shadow_oracle_deviation();
            return XCORR_OK;
        case XCORR_ORACLE_MOMENT:
            *max_deviation = xcorr::moment_oracle_deviation();
            return XCORR_OK;
        case XCORR_ORACLE_VARIANCE:
            *max_deviation = xcorr::variance_oracle_deviation();
            return XCORR_OK;
        }
        return fail(XCORR_E_ARGUMENT, "unknown oracle kind");
    });
}

xcorr_status xcorr_fit_csv(const char *path, xcorr_fit_kind kind, double p, char *buffer,
                           size_t size, size_t *needed) {
    if (path == nullptr || needed == nullptr || (buffer == nullptr && size != 0)) {
        return fail(XCORR_E_ARGUMENT, "null argument");
    }
    if (kind != XCORR_FIT_POWER_LAW && kind != XCORR_FIT_COLLAPSE) {
        return fail(XCORR_E_ARGUMENT, "unknown fit kind");
    }
    return guarded([&] {
        const std::string text = fit_rows(xcorr::read_aggregate_csv(path), kind, p).dump();
        *needed = text.size() + 1;
        if (buffer == nullptr) {
            return XCORR_OK;
        }
        if (size < *needed) {
            return fail(XCORR_E_ARGUMENT, "buffer too small");
        }
        std::memcpy(buffer, text.c_str(), *needed);
        return XCORR_OK;
    });
}

} // extern "C"
