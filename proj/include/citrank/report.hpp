#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "citrank/evaluation.hpp"

namespace citrank {

struct MetricEval {
    std::map<double, double> ir;   // z -> IR
    std::map<double, double> nir;  // z -> NIR
    BiasProfile bias;              // at the primary z
    std::vector<AgeCurvePoint> age_curve;
};

struct EvalReport {
    std::vector<std::string> metric_names;
    std::map<std::string, MetricEval> metrics;
    std::vector<std::vector<double>> spearman;  // aligned to metric_names
    double primary_z = 0.01;
    std::size_t groups = 40;
};

namespace detail {

inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

// metric, z, IR, NIR, sigma_ratio (sigma_ratio reported at the primary z).
inline void write_ir_csv(const EvalReport& r, std::ostream& out) {
    out << "metric\tz\tir\tnir\tsigma_ratio\n";
    for (const auto& name : r.metric_names) {
        const auto& ev = r.metrics.at(name);
        for (const auto& [z, ir] : ev.ir) {
            out << name << '\t' << detail::num(z) << '\t' << detail::num(ir) << '\t'
                << detail::num(ev.nir.at(z)) << '\t'
                << (z == r.primary_z ? detail::num(ev.bias.ratio) : "") << '\n';
        }
    }
}

inline void write_bias_hist_csv(const EvalReport& r, std::ostream& out) {
    out << "metric\tgroup\tcount\n";
    for (const auto& name : r.metric_names) {
        const auto& hist = r.metrics.at(name).bias.histogram;
        for (std::size_t g = 0; g < hist.size(); ++g)
            out << name << '\t' << (g + 1) << '\t' << hist[g] << '\n';
    }
}

inline void write_age_curves_csv(const EvalReport& r, std::ostream& out) {
    out << "metric\tdt_years\tir\tnir\n";
    for (const auto& name : r.metric_names) {
        for (const auto& pt : r.metrics.at(name).age_curve)
            out << name << '\t' << pt.dt_years << '\t' << detail::num(pt.ir) << '\t'
                << detail::num(pt.nir) << '\n';
    }
}

inline void write_spearman_csv(const EvalReport& r, std::ostream& out) {
    out << "metric_a\tmetric_b\trho\n";
    for (std::size_t i = 0; i < r.metric_names.size(); ++i)
        for (std::size_t j = 0; j < r.metric_names.size(); ++j)
            out << r.metric_names[i] << '\t' << r.metric_names[j] << '\t'
                << detail::num(r.spearman[i][j]) << '\n';
}

inline nlohmann::json to_json(const EvalReport& r) {
    nlohmann::json j;
    j["primary_z"] = r.primary_z;
    j["groups"] = r.groups;
    j["metrics"] = nlohmann::json::object();
    for (const auto& name : r.metric_names) {
        const auto& ev = r.metrics.at(name);
        nlohmann::json m;
        for (const auto& [z, ir] : ev.ir) {
            m["ir"][detail::num(z)] = ir;
            m["nir"][detail::num(z)] = ev.nir.at(z);
        }
        m["bias"] = {{"histogram", ev.bias.histogram},
                     {"uniform_count", ev.bias.uniform_count},
                     {"sigma", ev.bias.sigma},
                     {"sigma0", ev.bias.sigma0},
                     {"sigma0_analytic", ev.bias.sigma0_analytic},
                     {"ratio", ev.bias.ratio}};
        if (!ev.age_curve.empty()) {
            nlohmann::json curve = nlohmann::json::array();
            for (const auto& pt : ev.age_curve)
                curve.push_back({{"dt_years", pt.dt_years},
                                 {"ir", pt.ir},
                                 {"nir", pt.nir},
                                 {"eligible", pt.eligible}});
            m["age_curve"] = std::move(curve);
        }
        j["metrics"][name] = std::move(m);
    }
    nlohmann::json rho = nlohmann::json::array();
    for (std::size_t i = 0; i < r.metric_names.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (double v : r.spearman[i]) {
            if (std::isnan(v))
                row.push_back(nullptr);
            else
                row.push_back(v);
        }
        rho.push_back(std::move(row));
    }
    j["spearman"] = {{"metrics", r.metric_names}, {"rho", std::move(rho)}};
    return j;
}

}  // namespace citrank
