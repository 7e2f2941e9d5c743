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


#include "xcorr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

template <class T> T parse_number(const std::string &key, const std::string &text) {
    T v{};
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError("invalid value '" + text + "' for " + key);
    }
    return v;
}

bool parse_bool(const std::string &key, const std::string &text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("invalid boolean '" + text + "' for " + key);
}

template <class T> std::vector<T> parse_list(const std::string &key, const std::string &text) {
    std::vector<T> out;
    for (const auto &item : split(text, ',')) {
        out.push_back(parse_number<T>(key, item));
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T> std::string join(const std::vector<T> &xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(xs[i]);
        } else {
            out += std::to_string(xs[i]);
        }
    }
    return out;
}

} // namespace

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys = {
        "L",     "p",          "chi",   "depth_factor", "runs",  "seed",
        "ensemble", "floor",   "floor_rule", "depolarize", "probe", "modes",
        "fixed_circuit", "threads"};
    return keys;
}

void apply_setting(SweepConfig &c, const std::string &key, const std::string &value) {
    auto &b = c.base;
    if (key == "L") {
        c.L = parse_list<int>(key, value);
        b.L = c.L.front();
    } else if (key == "p") {
        c.p = parse_list<double>(key, value);
        b.p = c.p.front();
    } else if (key == "chi") {
        c.chi = parse_list<int>(key, value);
        b.chi = c.chi.front();
    } else if (key == "depth_factor") {
        b.depth_factor = parse_number<int>(key, value);
    } else if (key == "runs") {
        b.runs = parse_number<int>(key, value);
    } else if (key == "seed") {
        b.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "ensemble") {
        b.ensemble = parse_ensemble_kind(value);
    } else if (key == "floor") {
        b.floor = parse_number<double>(key, value);
    } else if (key == "floor_rule") {
        b.floor_rule = parse_floor_rule(value);
    } else if (key == "depolarize") {
        b.depolarize = parse_number<double>(key, value);
    } else if (key == "probe") {
        b.probe = parse_probe(value);
    } else if (key == "modes") {
        Modes m{false, false, false};
        for (const auto &item : split(value, ',')) {
            if (item == "shadow") {
                m.shadow = true;
            } else if (item == "direct_qc") {
                m.direct_qc = true;
            } else if (item == "decoder") {
                m.decoder = true;
            } else if (item != "none") {
                throw ConfigError("unknown mode '" + item + "'");
            }
        }
        b.modes = m;
    } else if (key == "fixed_circuit") {
        b.fixed_circuit = parse_bool(key, value);
    } else if (key == "threads") {
        b.threads = parse_number<int>(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

SweepConfig parse_config(std::string_view text, const std::string &origin) {
    SweepConfig c = SweepConfig::from(ExperimentConfig{});
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_setting(c, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
        } catch (const ConfigError &e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

SweepConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string config_to_text(const SweepConfig &c) {
    const auto &b = c.base;
    std::string modes;
    auto add = [&](bool on, const char *name) {
        if (on) {
            modes += modes.empty() ? name : std::string(",") + name;
        }
    };
    add(b.modes.shadow, "shadow");
    add(b.modes.direct_qc, "direct_qc");
    add(b.modes.decoder, "decoder");
    std::ostringstream os;
    os << "L = " << join(c.L) << "\n"
       << "p = " << join(c.p) << "\n"
       << "chi = " << join(c.chi) << "\n"
       << "depth_factor = " << b.depth_factor << "\n"
       << "runs = " << b.runs << "\n"
       << "seed = " << b.seed << "\n"
       << "ensemble = " << to_string(b.ensemble) << "\n"
       << "floor = " << format_double(b.floor) << "\n"
       << "floor_rule = " << to_string(b.floor_rule) << "\n"
       << "depolarize = " << format_double(b.depolarize) << "\n"
       << "probe = " << to_string(b.probe) << "\n"
       << "modes = " << (modes.empty() ? "none" : modes) << "\n"
       << "fixed_circuit = " << (b.fixed_circuit ? "true" : "false") << "\n"
       << "threads = " << b.threads << "\n";
    return os.str();
}

std::vector<std::string> csv_header() {
    std::vector<std::string> h = {"L", "p", "chi", "runs", "schema_version"};
    for (const char *stat : {"mean_", "stderr_", "var_"}) {
        for (Quantity q : all_quantities()) {
            h.push_back(stat + std::string(quantity_name(q)));
        }
    }
    return h;
}

double AggregateRow::value(std::string_view column) const {
    const auto it = values.find(column);
    if (it == values.end()) {
        throw ConfigError("no column '" + std::string(column) + "'");
    }
    return it->second;
}

AggregateRow to_row(const AggregateStats &s) {
    AggregateRow row;
    row.L = s.L;
    row.p = s.p;
    row.chi = s.chi;
    row.runs = s.runs();
    for (Quantity q : all_quantities()) {
        const std::string name(quantity_name(q));
        row.values["mean_" + name] = s[q].mean();
        row.values["stderr_" + name] = s[q].stderr_mean();
        row.values["var_" + name] = s[q].variance();
    }
    return row;
}

void write_aggregate_csv(std::ostream &out, std::span<const PointResult> results) {
    const auto header = csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const auto &pr : results) {
        const AggregateRow row = to_row(pr.stats);
        out << row.L << "," << format_double(row.p) << "," << row.chi << "," << row.runs << ","
            << row.schema_version;
        for (std::size_t i = 5; i < header.size(); ++i) {
            out << "," << format_double(row.values.at(header[i]));
        }
        out << "\n";
    }
}

std::vector<AggregateRow> read_aggregate_csv(std::istream &in, const std::string &origin) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(origin + ": empty CSV");
    }
    const auto header = split(line, ',');
    for (const char *required : {"L", "p", "chi", "runs", "schema_version"}) {
        if (std::find(header.begin(), header.end(), required) == header.end()) {
            throw IoError(origin + ": missing column " + required);
        }
    }
    std::vector<AggregateRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw IoError(origin + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(header.size()) + " cells");
        }
        AggregateRow row;
        try {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const std::string &col = header[i];
                if (col == "L") {
                    row.L = parse_number<int>(col, cells[i]);
                } else if (col == "p") {
                    row.p = parse_number<double>(col, cells[i]);
                } else if (col == "chi") {
                    row.chi = parse_number<int>(col, cells[i]);
                } else if (col == "runs") {
                    row.runs = parse_number<std::uint64_t>(col, cells[i]);
                } else if (col == "schema_version") {
                    row.schema_version = parse_number<int>(col, cells[i]);
                } else {
                    row.values[col] = parse_number<double>(col, cells[i]);
                }
            }
        } catch (const ConfigError &e) {
            throw IoError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (row.schema_version != kCsvSchemaVersion) {
            throw IoError(origin + ": unsupported schema version " +
                          std::to_string(row.schema_version));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return read_aggregate_csv(in, path.string());
}

std::string run_record_json(const RunRecord &r) {
    using nlohmann::json;
    json j;
    j["schema"] = kRunSchema;
    j["run"] = r.run;
    j["L"] = r.L;
    j["p"] = r.p;
    j["chi"] = r.chi;
    j["log_prob"] = r.log_prob;
    json outcomes = json::array();
    for (const auto &e : r.outcomes) {
        outcomes.push_back({e.step, e.site, e.outcome});
    }
    j["outcomes"] = std::move(outcomes);
    if (!r.shadow.sites.empty()) {
        json ids = json::array();
        json zs = json::array();
        for (const auto &m : r.shadow.measurements) {
            ids.push_back(m.basis_id);
            zs.push_back(m.outcome);
        }
        j["shadow"] = {{"sites", r.shadow.sites}, {"basis_ids", ids}, {"outcomes", zs}};
    } else {
        j["shadow"] = nullptr;
    }
    j["discarded_weight"] = r.discarded_weight;
    j["degenerate_forcings"] = r.degenerate_forcings;
    json values = json::object();
    for (Quantity q : all_quantities()) {
        const double v = r[q];
        values[std::string(quantity_name(q))] = std::isnan(v) ? json(nullptr) : json(v);
    }
    j["values"] = std::move(values);
    return j.dump();
}

void emit_results(const std::filesystem::path &dir, const SweepConfig &config,
                  std::span<const PointResult> results) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    auto open = [](const std::filesystem::path &path) {
        std::ofstream out(path);
        if (!out) {
            throw IoError("cannot write " + path.string());
        }
        return out;
    };
    auto finish = [](std::ofstream &out, const std::filesystem::path &path) {
        out.flush();
        if (!out) {
            throw IoError("write failed for " + path.string());
        }
    };
    const auto csv_path = dir / "aggregate.csv";
    auto csv = open(csv_path);
    write_aggregate_csv(csv, results);
    finish(csv, csv_path);

    const auto jsonl_path = dir / "runs.jsonl";
    auto jsonl = open(jsonl_path);
    for (const auto &pr : results) {
        for (const auto &rec : pr.records) {
            jsonl << run_record_json(rec) << "\n";
        }
    }
    finish(jsonl, jsonl_path);

    const auto cfg_path = dir / "config.txt";
    auto cfg = open(cfg_path);
    cfg << config_to_text(config);
    finish(cfg, cfg_path);
}

} // namespace xcorr
