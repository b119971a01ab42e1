#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "citrank/errors.hpp"
#include "citrank/metrics.hpp"
#include "citrank/registry.hpp"
#include "citrank/synth.hpp"

namespace citrank {

// Flat key-value config with optional [section] blocks; per-metric parameters
// live in sections like [metric.T]. CLI flags override file values.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in) {
        KeyValueConfig cfg;
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            if (line[first] == '[') {
                const auto close = line.find(']', first);
                if (close == std::string::npos)
                    throw UsageError("config line " + std::to_string(lineno) + ": unclosed section");
                section = line.substr(first + 1, close - first - 1);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
            cfg.values_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config file: " + path);
        return parse(in);
    }

    bool has(const std::string& section, const std::string& key) const {
        auto s = values_.find(section);
        return s != values_.end() && s->second.count(key);
    }
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const {
        auto s = values_.find(section);
        if (s == values_.end()) return fallback;
        auto k = s->second.find(key);
        return k == s->second.end() ? fallback : k->second;
    }
    double get_double(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        return std::stod(get(section, key));
    }
    long get_long(const std::string& section, const std::string& key, long fallback) const {
        if (!has(section, key)) return fallback;
        return std::stol(get(section, key));
    }
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const std::string v = get(section, key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw UsageError("config: boolean expected for " + key);
    }
    const std::map<std::string, std::map<std::string, std::string>>& raw() const { return values_; }

private:
    static std::string trim(std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? "" : s.substr(a, b - a + 1);
    }
    std::map<std::string, std::map<std::string, std::string>> values_;
};

inline std::vector<std::string> split_list(const std::string& s, char delim = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, delim))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct RunConfig {
    std::string nodes_path, edges_path, seminal_path, out_dir = ".";
    std::vector<std::string> metrics;
    std::vector<double> z_list = {0.01};
    std::size_t groups = 40;
    std::size_t window = 0;  // 0 = default_window(N)
    std::size_t workers = 1;
    std::uint64_t seed = 12345;
    bool snapshots = false;
    MetricConfig metric_cfg;
    SynthParams synth;
    // CiteRank tuning grids
    std::vector<double> tune_alpha_grid;
    std::vector<double> tune_tau_years_grid;
    double recent_window_years = 2.0;

    static RunConfig from(const KeyValueConfig& kv) {
        RunConfig rc;
        rc.nodes_path = kv.get("", "nodes");
        rc.edges_path = kv.get("", "edges");
        rc.seminal_path = kv.get("", "seminal");
        rc.out_dir = kv.get("", "out", rc.out_dir);
        if (kv.has("", "metrics")) rc.metrics = split_list(kv.get("", "metrics"));
        if (kv.has("", "z")) {
            rc.z_list.clear();
            for (const auto& item : split_list(kv.get("", "z"))) rc.z_list.push_back(std::stod(item));
        }
        rc.groups = std::size_t(kv.get_long("", "groups", long(rc.groups)));
        rc.window = std::size_t(kv.get_long("", "window", long(rc.window)));
        rc.workers = std::size_t(kv.get_long("", "workers", long(rc.workers)));
        rc.seed = std::uint64_t(kv.get_long("", "seed", long(rc.seed)));
        rc.snapshots = kv.get_bool("", "snapshots", rc.snapshots);

        rc.metric_cfg.alpha = kv.get_double("metric", "alpha", rc.metric_cfg.alpha);
        rc.metric_cfg.citerank_tau_days =
            kv.get_double("metric.T", "tau_years", rc.metric_cfg.citerank_tau_days / kDaysPerYear) *
            kDaysPerYear;
        rc.metric_cfg.alpha = kv.get_double("metric.T", "alpha", rc.metric_cfg.alpha);
        rc.metric_cfg.epsilon = kv.get_double("metric", "epsilon", rc.metric_cfg.epsilon);
        rc.metric_cfg.max_iterations =
            std::size_t(kv.get_long("metric", "max_iterations", long(rc.metric_cfg.max_iterations)));
        rc.metric_cfg.ci_level = int(kv.get_long("metric.CI", "level", rc.metric_cfg.ci_level));

        rc.synth.n_nodes = std::size_t(kv.get_long("synth", "n_nodes", long(rc.synth.n_nodes)));
        rc.synth.growth_factor = kv.get_double("synth", "growth_factor", rc.synth.growth_factor);
        rc.synth.attachment_offset =
            kv.get_double("synth", "attachment_offset", rc.synth.attachment_offset);
        rc.synth.references_per_node = std::size_t(
            kv.get_long("synth", "references_per_node", long(rc.synth.references_per_node)));
        rc.synth.aging_timescale_days =
            kv.get_double("synth", "aging_timescale_years",
                          rc.synth.aging_timescale_days / kDaysPerYear) *
            kDaysPerYear;
        rc.synth.span_years = int(kv.get_long("synth", "span_years", rc.synth.span_years));
        rc.synth.start_year = int(kv.get_long("synth", "start_year", rc.synth.start_year));
        rc.synth.seminal_size =
            std::size_t(kv.get_long("synth", "seminal_size", long(rc.synth.seminal_size)));
        rc.synth.seminal_age_skew =
            kv.get_double("synth", "seminal_age_skew", rc.synth.seminal_age_skew);
        rc.synth.quality_sigma = kv.get_double("synth", "quality_sigma", rc.synth.quality_sigma);
        rc.synth.seminal_quality_quantile = kv.get_double("synth", "seminal_quality_quantile",
                                                          rc.synth.seminal_quality_quantile);
        rc.synth.seed = rc.seed;

        if (kv.has("tune", "alpha_grid"))
            for (const auto& a : split_list(kv.get("tune", "alpha_grid")))
                rc.tune_alpha_grid.push_back(std::stod(a));
        if (kv.has("tune", "tau_years_grid"))
            for (const auto& t : split_list(kv.get("tune", "tau_years_grid")))
                rc.tune_tau_years_grid.push_back(std::stod(t));
        rc.recent_window_years =
            kv.get_double("tune", "recent_window_years", rc.recent_window_years);
        return rc;
    }

    void validate_metrics() const {
        for (const auto& m : metrics) {
            if (!is_metric_name(m)) throw UsageError("unknown metric name: " + m);
        }
        for (double z : z_list) {
            if (!(z > 0.0 && z < 1.0)) throw UsageError("z must be in (0, 1)");
        }
    }
};

}  // namespace citrank
