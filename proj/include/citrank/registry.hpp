#pragma once

#include <string>
#include <vector>

#include "citrank/metrics.hpp"
#include "citrank/rescale.hpp"

namespace citrank {

inline const std::vector<std::string>& base_metric_names() {
    static const std::vector<std::string> names = {"C",  "P",   "T",    "L",   "H",
                                                   "CI", "SLC", "HITS", "YCCP", "AgeR"};
    return names;
}

// YCCP is already age-normalized and AgeR carries no score signal, so neither
// has a rescaled variant.
inline bool is_rescalable(const std::string& base) { return base != "YCCP" && base != "AgeR"; }

inline bool is_metric_name(const std::string& name) {
    for (const auto& b : base_metric_names()) {
        if (name == b) return true;
        if (name == "R" + b && is_rescalable(b)) return true;
    }
    return false;
}

// All 18 registered labels: the ten base metrics plus eight rescaled variants.
inline std::vector<std::string> all_metric_names() {
    std::vector<std::string> out;
    for (const auto& b : base_metric_names()) {
        out.push_back(b);
        if (is_rescalable(b)) out.push_back("R" + b);
    }
    return out;
}

inline ScoreVector compute_base_metric(const std::string& name, const CitationNetwork& net,
                                       const MetricConfig& cfg, SolveInfo* info = nullptr) {
    if (name == "C") return citation_count(net);
    if (name == "P") return pagerank(net, cfg, info);
    if (name == "T") return citerank(net, cfg, info);
    if (name == "L") return leaderrank(net, cfg, info);
    if (name == "H") return h_index(net);
    if (name == "CI") return collective_influence(net, cfg);
    if (name == "SLC") return semi_local_centrality(net);
    if (name == "HITS") {
        auto result = hits(net, cfg);
        if (info) *info = result.info;
        return std::move(result.authority);
    }
    if (name == "YCCP") return yccp(net);
    if (name == "AgeR") return age_rank(net);
    throw UsageError("unknown metric: " + name);
}

inline ScoreVector compute_metric(const std::string& name, const CitationNetwork& net,
                                  const MetricConfig& cfg = {}, RescaleConfig rescale_cfg = {},
                                  SolveInfo* info = nullptr) {
    if (name.size() > 1 && name[0] == 'R') {
        const std::string base = name.substr(1);
        if (!is_metric_name(base)) throw UsageError("unknown metric: " + name);
        if (!is_rescalable(base)) throw UsageError("metric has no rescaled variant: " + name);
        return rescale(compute_base_metric(base, net, cfg, info), net, rescale_cfg);
    }
    return compute_base_metric(name, net, cfg, info);
}

}  // namespace citrank
