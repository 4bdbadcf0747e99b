// Copyright 2026 The excitonfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "excitonfb/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "excitonfb/experiments.hpp"

namespace excitonfb {

namespace {

struct Value {
    std::string text;
    std::size_t line;
    std::string key;  // qualified "section.key"
};

[[noreturn]] void fail(const Value& v, const std::string& message) {
    throw ConfigError(message, v.key, v.line);
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return parts;
}

double parse_double_text(const Value& v, std::string_view text) {
    double out = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        fail(v, "expected a number, got '" + std::string(text) + "'");
    }
    return out;
}

double as_double(const Value& v) { return parse_double_text(v, v.text); }

double as_positive(const Value& v) {
    const double d = as_double(v);
    if (!(d > 0.0)) fail(v, "must be > 0, got " + v.text);
    return d;
}

double as_nonnegative(const Value& v) {
    const double d = as_double(v);
    if (!(d >= 0.0)) fail(v, "must be >= 0, got " + v.text);
    return d;
}

std::uint64_t as_uint(const Value& v) {
    std::uint64_t out = 0;
    const auto* last = v.text.data() + v.text.size();
    const auto [ptr, ec] = std::from_chars(v.text.data(), last, out);
    if (ec != std::errc() || ptr != last) fail(v, "expected a non-negative integer, got '" + v.text + "'");
    return out;
}

bool as_bool(const Value& v) {
    if (v.text == "true") return true;
    if (v.text == "false") return false;
    fail(v, "expected true or false, got '" + v.text + "'");
}

std::string as_string(const Value& v) {
    std::string s = v.text;
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    if (s.empty()) fail(v, "expected a non-empty string");
    return s;
}

// "a, b, c" or "linspace(first, last, count)"
std::vector<double> as_list(const Value& v) {
    const std::string& t = v.text;
    if (t.rfind("linspace(", 0) == 0) {
        if (t.back() != ')') fail(v, "unterminated linspace(...)");
        const auto args = split(std::string_view(t).substr(9, t.size() - 10), ',');
        if (args.size() != 3) fail(v, "linspace needs (first, last, count)");
        const double first = parse_double_text(v, args[0]);
        const double last = parse_double_text(v, args[1]);
        const double count = parse_double_text(v, args[2]);
        if (count < 1 || count != std::floor(count)) fail(v, "linspace count must be a positive integer");
        return linspace(first, last, static_cast<std::size_t>(count));
    }
    std::vector<double> out;
    for (const std::string& part : split(t, ',')) {
        if (part.empty()) fail(v, "empty list element");
        out.push_back(parse_double_text(v, part));
    }
    return out;
}

std::vector<double> as_grid(const Value& v) {
    std::vector<double> g = as_list(v);
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (!(g[i] > g[i - 1])) fail(v, "grid must be strictly increasing");
    }
    return g;
}

std::vector<double> as_index_list(const Value& v) {
    std::vector<double> g = as_grid(v);
    for (double x : g) {
        if (x < 1 || x != std::floor(x)) fail(v, "expected positive integers");
    }
    return g;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(xs[i]);
    }
    return out;
}

ExperimentKind parse_kind(const Value& v) {
    for (auto k : {ExperimentKind::OmegaSweep, ExperimentKind::NSweep, ExperimentKind::Crossover,
                   ExperimentKind::Disorder, ExperimentKind::Feedback, ExperimentKind::SinglePoint,
                   ExperimentKind::Verify}) {
        if (experiment_name(k) == v.text) return k;
    }
    fail(v, "unknown experiment '" + v.text + "'");
}

// Builder state: scalar model settings that are applied after all keys are read.
struct Pending {
    std::size_t n_molecules = 10;
    double omega_molecule = defaults::omega_molecule;
};

using Setter = std::function<void(const Value&, RunConfig&, Pending&)>;

const std::vector<std::pair<std::string, Setter>>& key_table() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"experiment", [](const Value& v, RunConfig& c, Pending&) { c.experiment = parse_kind(v); }},
        {"seed", [](const Value& v, RunConfig& c, Pending&) { c.seed = as_uint(v); }},
        {"output_dir", [](const Value& v, RunConfig& c, Pending&) { c.output_dir = as_string(v); }},
        {"plot", [](const Value& v, RunConfig& c, Pending&) { c.plot = as_bool(v); }},
        {"log_y", [](const Value& v, RunConfig& c, Pending&) { c.log_y = as_bool(v); }},
        {"workers", [](const Value& v, RunConfig& c, Pending&) { c.workers = as_uint(v); }},
        {"channels",
         [](const Value& v, RunConfig& c, Pending&) {
             c.channels.clear();
             for (const std::string& name : split(v.text, ',')) {
                 try {
                     c.channels.push_back(parse_channel(name));
                 } catch (const std::invalid_argument& e) {
                     fail(v, e.what());
                 }
             }
         }},

        {"model.n_molecules",
         [](const Value& v, RunConfig&, Pending& p) {
             p.n_molecules = as_uint(v);
             if (p.n_molecules < 1) fail(v, "must be >= 1");
         }},
        {"model.omega_rabi", [](const Value& v, RunConfig& c, Pending&) { c.omega_rabi = as_nonnegative(v); }},
        {"model.omega_molecule", [](const Value& v, RunConfig&, Pending& p) { p.omega_molecule = as_positive(v); }},
        {"model.omega_cavity", [](const Value& v, RunConfig& c, Pending&) { c.model.omega_cavity = as_positive(v); }},
        {"model.zero_detuning", [](const Value& v, RunConfig& c, Pending&) { c.model.zero_detuning = as_bool(v); }},
        {"model.delta_override",
         [](const Value& v, RunConfig& c, Pending&) { c.model.delta_override = as_double(v); }},
        {"model.spacing_nm", [](const Value& v, RunConfig& c, Pending&) { c.model.spacing_nm = as_positive(v); }},
        {"model.dipole_debye", [](const Value& v, RunConfig& c, Pending&) { c.model.dipole_debye = as_positive(v); }},
        {"model.dipole_orientation",
         [](const Value& v, RunConfig& c, Pending&) {
             const auto xs = as_list(v);
             if (xs.size() != 3) fail(v, "expected three components");
             const Eigen::Vector3d u(xs[0], xs[1], xs[2]);
             if (!(u.norm() > 0.0)) fail(v, "orientation must be non-zero");
             c.model.dipole_orientation = u.normalized();
         }},
        {"model.gamma_r", [](const Value& v, RunConfig& c, Pending&) { c.model.gamma_r = as_positive(v); }},
        {"model.gamma_nr", [](const Value& v, RunConfig& c, Pending&) { c.model.gamma_nr = as_positive(v); }},
        {"model.gamma_phi", [](const Value& v, RunConfig& c, Pending&) { c.model.gamma_phi = as_positive(v); }},
        {"model.kappa", [](const Value& v, RunConfig& c, Pending&) { c.model.kappa = as_positive(v); }},
        {"model.gamma_p", [](const Value& v, RunConfig& c, Pending&) { c.model.gamma_p = as_positive(v); }},
        {"model.hopping", [](const Value& v, RunConfig& c, Pending&) { c.model.hopping_enabled = as_bool(v); }},
        {"model.cavity_coupling",
         [](const Value& v, RunConfig& c, Pending&) { c.model.cavity_coupling_enabled = as_bool(v); }},
        {"model.nearest_neighbor_only",
         [](const Value& v, RunConfig& c, Pending&) { c.model.nearest_neighbor_only = as_bool(v); }},

        {"feedback.enabled", [](const Value& v, RunConfig& c, Pending&) { c.model.feedback.enabled = as_bool(v); }},
        {"feedback.target", [](const Value& v, RunConfig& c, Pending&) { c.model.feedback.target = as_uint(v); }},
        {"feedback.lambda",
         [](const Value& v, RunConfig& c, Pending&) { c.model.feedback.lambda = as_nonnegative(v); }},
        {"feedback.eta",
         [](const Value& v, RunConfig& c, Pending&) {
             const double eta = as_double(v);
             if (!(eta >= 0.0 && eta <= 1.0)) fail(v, "must lie in [0, 1], got " + v.text);
             c.model.feedback.eta = eta;
         }},

        {"omega_sweep.grid", [](const Value& v, RunConfig& c, Pending&) { c.omega_grid = as_grid(v); }},
        {"omega_sweep.n_series", [](const Value& v, RunConfig& c, Pending&) { c.n_series = as_index_list(v); }},
        {"n_sweep.grid", [](const Value& v, RunConfig& c, Pending&) { c.n_grid = as_index_list(v); }},
        {"crossover.n_min", [](const Value& v, RunConfig& c, Pending&) { c.crossover_n_min = as_uint(v); }},
        {"crossover.n_max", [](const Value& v, RunConfig& c, Pending&) { c.crossover_n_max = as_uint(v); }},
        {"crossover.omega_rabi",
         [](const Value& v, RunConfig& c, Pending&) { c.crossover_omega_rabi = as_nonnegative(v); }},
        {"disorder.q", [](const Value& v, RunConfig& c, Pending&) { c.disorder_q = as_nonnegative(v); }},
        {"disorder.ensemble",
         [](const Value& v, RunConfig& c, Pending&) {
             c.ensemble = as_uint(v);
             if (c.ensemble < 1) fail(v, "must be >= 1");
         }},
        {"disorder.fix_ends", [](const Value& v, RunConfig& c, Pending&) { c.fix_ends = as_bool(v); }},
        {"disorder.grid", [](const Value& v, RunConfig& c, Pending&) { c.omega_grid = as_grid(v); }},
        {"feedback_study.targets", [](const Value& v, RunConfig& c, Pending&) { c.targets = as_index_list(v); }},
        {"feedback_study.lambda_grid", [](const Value& v, RunConfig& c, Pending&) { c.lambda_grid = as_grid(v); }},
        {"feedback_study.eta_grid",
         [](const Value& v, RunConfig& c, Pending&) {
             c.eta_grid = as_grid(v);
             for (double e : c.eta_grid) {
                 if (!(e >= 0.0 && e <= 1.0)) fail(v, "eta values must lie in [0, 1]");
             }
         }},
    };
    return table;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string key, std::size_t line)
    : std::invalid_argument((line ? "line " + std::to_string(line) + ": " : std::string()) +
                            (key.empty() ? std::string() : "'" + key + "': ") + message),
      key_(std::move(key)),
      line_(line) {}

std::string_view experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::OmegaSweep:
            return "omega_sweep";
        case ExperimentKind::NSweep:
            return "n_sweep";
        case ExperimentKind::Crossover:
            return "crossover";
        case ExperimentKind::Disorder:
            return "disorder";
        case ExperimentKind::Feedback:
            return "feedback";
        case ExperimentKind::SinglePoint:
            return "single_point";
        case ExperimentKind::Verify:
            return "verify";
    }
    return "?";
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Value> values;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", line, line_no);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line, line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const std::string qualified = section.empty() ? key : section + "." + key;
        const auto& table = key_table();
        const bool known = std::any_of(table.begin(), table.end(), [&](const auto& e) { return e.first == qualified; });
        if (!known) throw ConfigError("unknown key", qualified, line_no);
        if (value.empty()) throw ConfigError("missing value", qualified, line_no);
        if (values.contains(qualified)) throw ConfigError("duplicate key", qualified, line_no);
        values.emplace(qualified, Value{value, line_no, qualified});
    }

    if (!values.contains("experiment")) throw ConfigError("required key is missing", "experiment", 0);

    RunConfig config;
    Pending pending;
    for (const auto& [key, setter] : key_table()) {
        if (const auto it = values.find(key); it != values.end()) setter(it->second, config, pending);
    }

    const auto at = [&](const char* key) -> std::size_t {
        const auto it = values.find(key);
        return it == values.end() ? 0 : it->second.line;
    };
    if (config.model.feedback.target > pending.n_molecules) {
        throw ConfigError("target exceeds n_molecules", "feedback.target", at("feedback.target"));
    }
    ChainModel model = config.model;
    model.omega_reference = pending.omega_molecule;
    config.model = resized(model, pending.n_molecules, config.omega_rabi);
    try {
        config.model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), "model", 0);
    }

    if (config.omega_grid.empty()) config.omega_grid = linspace(0.0, 1.0, 21);
    if (config.n_series.empty()) config.n_series = {static_cast<double>(config.model.n_molecules)};
    if (config.n_grid.empty()) {
        for (std::size_t n = 5; n <= 40; n += 5) config.n_grid.push_back(static_cast<double>(n));
    }
    if (config.crossover_n_min < 1 || config.crossover_n_max < config.crossover_n_min) {
        throw ConfigError("n_max must be >= n_min >= 1", "crossover.n_max", at("crossover.n_max"));
    }
    const auto n = static_cast<double>(config.model.n_molecules);
    if (config.targets.empty()) {
        for (double t : {1.0, 30.0, 50.0, 60.0}) {
            if (t <= n) config.targets.push_back(t);
        }
        if (config.targets.back() != n) config.targets.push_back(n);
    }
    for (double t : config.targets) {
        if (t > n) throw ConfigError("target exceeds n_molecules", "feedback_study.targets", at("feedback_study.targets"));
    }
    if (config.lambda_grid.empty()) config.lambda_grid = linspace(0.0, 1.0, 11);
    if (config.eta_grid.empty()) config.eta_grid = linspace(0.0, 1.0, 5);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", "", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
    const ChainModel& m = c.model;
    const auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    std::string channels;
    for (std::size_t i = 0; i < c.channels.size(); ++i) {
        if (i) channels += ", ";
        channels += channel_name(c.channels[i]);
    }
    std::vector<std::pair<std::string, std::string>> out = {
        {"experiment", std::string(experiment_name(c.experiment))},
        {"seed", std::to_string(c.seed)},
        {"output_dir", c.output_dir},
        {"plot", b(c.plot)},
        {"log_y", b(c.log_y)},
        {"workers", std::to_string(c.workers)},
        {"channels", channels},
        {"model.n_molecules", std::to_string(m.n_molecules)},
        {"model.omega_rabi", format_double(c.omega_rabi)},
        {"model.omega_molecule", format_double(m.omega_reference)},
        {"model.omega_cavity", format_double(m.omega_cavity)},
        {"model.zero_detuning", b(m.zero_detuning)},
        {"model.delta_override", m.delta_override ? format_double(*m.delta_override) : "none"},
        {"model.resolved_cavity_energy", format_double(cavity_energy(m))},
        {"model.spacing_nm", format_double(m.spacing_nm)},
        {"model.dipole_debye", format_double(m.dipole_debye)},
        {"model.dipole_orientation", format_list({m.dipole_orientation.x(), m.dipole_orientation.y(),
                                                  m.dipole_orientation.z()})},
        {"model.gamma_r", format_double(m.gamma_r)},
        {"model.gamma_nr", format_double(m.gamma_nr)},
        {"model.gamma_d", format_double(m.gamma_d())},
        {"model.gamma_phi", format_double(m.gamma_phi)},
        {"model.kappa", format_double(m.kappa)},
        {"model.gamma_p", format_double(m.gamma_p)},
        {"model.hopping", b(m.hopping_enabled)},
        {"model.cavity_coupling", b(m.cavity_coupling_enabled)},
        {"model.nearest_neighbor_only", b(m.nearest_neighbor_only)},
        {"feedback.enabled", b(m.feedback.enabled)},
        {"feedback.target", std::to_string(m.feedback_target())},
        {"feedback.lambda", format_double(m.feedback.lambda)},
        {"feedback.eta", format_double(m.feedback.eta)},
    };
    switch (c.experiment) {
        case ExperimentKind::OmegaSweep:
            out.push_back({"omega_sweep.grid", format_list(c.omega_grid)});
            out.push_back({"omega_sweep.n_series", format_list(c.n_series)});
            break;
        case ExperimentKind::NSweep:
            out.push_back({"n_sweep.grid", format_list(c.n_grid)});
            break;
        case ExperimentKind::Crossover:
            out.push_back({"crossover.n_min", std::to_string(c.crossover_n_min)});
            out.push_back({"crossover.n_max", std::to_string(c.crossover_n_max)});
            out.push_back({"crossover.omega_rabi", format_double(c.crossover_omega_rabi)});
            break;
        case ExperimentKind::Disorder:
            out.push_back({"disorder.q", format_double(c.disorder_q)});
            out.push_back({"disorder.ensemble", std::to_string(c.ensemble)});
            out.push_back({"disorder.fix_ends", b(c.fix_ends)});
            out.push_back({"disorder.grid", format_list(c.omega_grid)});
            break;
        case ExperimentKind::Feedback:
            out.push_back({"feedback_study.targets", format_list(c.targets)});
            out.push_back({"feedback_study.lambda_grid", format_list(c.lambda_grid)});
            out.push_back({"feedback_study.eta_grid", format_list(c.eta_grid)});
            break;
        default:
            break;
    }
    return out;
}

}  // namespace excitonfb
