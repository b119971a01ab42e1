#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "citrank/network.hpp"
#include "citrank/score.hpp"
#include "citrank/stats.hpp"

namespace citrank {

// Partition of the date-sorted node order into G contiguous groups of (near)
// equal size; group 0 holds the oldest nodes and any remainder goes to the
// earliest groups.
struct AgeGrouping {
    std::size_t groups = 0;
    std::vector<std::uint32_t> assignment;  // node index -> group in [0, G)
    std::vector<std::size_t> sizes;

    static AgeGrouping make(std::size_t n, std::size_t g) {
        if (g == 0 || g > n) throw UsageError("age grouping: need 1 <= G <= N");
        AgeGrouping ag;
        ag.groups = g;
        ag.assignment.resize(n);
        ag.sizes.assign(g, n / g);
        for (std::size_t i = 0; i < n % g; ++i) ++ag.sizes[i];
        std::size_t node = 0;
        for (std::size_t grp = 0; grp < g; ++grp)
            for (std::size_t k = 0; k < ag.sizes[grp]; ++k) ag.assignment[node++] = std::uint32_t(grp);
        return ag;
    }
};

inline std::size_t top_count(std::size_t n, double z) {
    if (!(z > 0.0 && z < 1.0)) throw UsageError("top fraction z must be in (0, 1)");
    const auto k = std::size_t(z * double(n));
    if (k < 1) throw UsageError("top fraction too small: zN < 1");
    return k;
}

// The first floor(zN) entries of the deterministic ranking.
inline std::vector<std::uint32_t> top_fraction(const ScoreVector& sv, double z) {
    const std::size_t k = top_count(sv.ranking.size(), z);
    return {sv.ranking.begin(), sv.ranking.begin() + k};
}

inline double identification_rate(const ScoreVector& sv, const SeminalSet& seminal, double z) {
    if (seminal.size() == 0) throw UsageError("identification rate: empty seminal set");
    const std::size_t k = top_count(sv.ranking.size(), z);
    std::vector<char> in_top(sv.ranking.size(), 0);
    for (std::size_t r = 0; r < k; ++r) in_top[sv.ranking[r]] = 1;
    std::size_t hits = 0;
    for (std::uint32_t s : seminal.indices) hits += in_top[s];
    return double(hits) / double(seminal.size());
}

struct BiasProfile {
    std::vector<std::size_t> histogram;  // N_z(g)
    double uniform_count = 0.0;          // N_U = zN/G
    double sigma = 0.0;
    double sigma0 = 0.0;                 // Monte-Carlo null
    double sigma0_analytic = 0.0;        // sqrt(n p (1-p)) cross-check
    double ratio = 0.0;                  // sigma / sigma0
};

// Observed age histogram of the top-z nodes versus the randomized null.
// sigma0 is the mean per-replicate sigma over R seeded draws of floor(zN)
// nodes without replacement.
inline BiasProfile bias_profile(const ScoreVector& sv, const AgeGrouping& grouping, double z,
                                std::size_t replicates = 1000, std::uint64_t seed = 12345) {
    const std::size_t n = sv.ranking.size();
    const std::size_t g = grouping.groups;
    const std::size_t k = top_count(n, z);
    BiasProfile bp;
    bp.histogram.assign(g, 0);
    for (std::size_t r = 0; r < k; ++r) ++bp.histogram[grouping.assignment[sv.ranking[r]]];
    bp.uniform_count = z * double(n) / double(g);

    auto hist_sigma = [&](const std::vector<std::size_t>& hist) {
        double s = 0.0;
        for (std::size_t c : hist) {
            const double d = double(c) - bp.uniform_count;
            s += d * d;
        }
        return std::sqrt(s / double(g));
    };
    bp.sigma = hist_sigma(bp.histogram);

    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    std::vector<std::size_t> hist(g);
    double total = 0.0;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {  // partial Fisher-Yates
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(pool[i], pool[pick(rng)]);
            ++hist[grouping.assignment[pool[i]]];
        }
        total += hist_sigma(hist);
    }
    bp.sigma0 = total / double(replicates);
    const double p = 1.0 / double(g);
    bp.sigma0_analytic = std::sqrt(double(k) * p * (1.0 - p));
    bp.ratio = bp.sigma0 > 0 ? bp.sigma / bp.sigma0 : 0.0;
    return bp;
}

// IR with each identified seminal node down-weighted by N_U/N_z(g) when its
// age group is over-represented at the top; under-represented groups keep
// weight 1.
inline double normalized_identification_rate(const ScoreVector& sv, const SeminalSet& seminal,
                                             const AgeGrouping& grouping, double z) {
    if (seminal.size() == 0) throw UsageError("normalized identification rate: empty seminal set");
    const std::size_t n = sv.ranking.size();
    const std::size_t k = top_count(n, z);
    std::vector<char> in_top(n, 0);
    std::vector<std::size_t> hist(grouping.groups, 0);
    for (std::size_t r = 0; r < k; ++r) {
        in_top[sv.ranking[r]] = 1;
        ++hist[grouping.assignment[sv.ranking[r]]];
    }
    const double uniform = z * double(n) / double(grouping.groups);
    double total = 0.0;
    for (std::uint32_t s : seminal.indices) {
        if (!in_top[s]) continue;
        const double count = double(hist[grouping.assignment[s]]);
        total += std::min(1.0, uniform / count);
    }
    return total / double(seminal.size());
}

// f_z(m, dt) and NIR(m, dt) on whole-year ages. For each seminal node and age
// dt, the node contributes if it is in the top z of the ranking on the first
// year-end snapshot at least dt years after its publication; younger nodes are
// excluded from the average. NIR regroups ages within each snapshot.
struct AgeCurvePoint {
    int dt_years = 0;
    double ir = 0.0;
    double nir = 0.0;
    std::size_t eligible = 0;
};

using MetricFn = std::function<ScoreVector(const CitationNetwork&)>;

inline std::vector<AgeCurvePoint> identification_curve(
    const std::vector<std::pair<Date, CitationNetwork>>& snapshots, const MetricFn& metric,
    const std::vector<std::string>& seminal_ids, double z, std::size_t groups) {
    if (snapshots.empty()) throw UsageError("identification_curve: no snapshots");
    struct SnapEval {
        Date cutoff;
        std::unordered_set<std::string> top;
        std::map<std::string, double> weight;  // per seminal id in top
    };
    std::vector<SnapEval> evals;
    evals.reserve(snapshots.size());
    for (const auto& [cutoff, net] : snapshots) {
        SnapEval ev;
        ev.cutoff = cutoff;
        ScoreVector sv;
        try {
            sv = metric(net);
        } catch (const DataError&) {
            continue;  // e.g. HITS on an edgeless early snapshot
        }
        std::size_t k;
        try {
            k = top_count(net.node_count(), z);
        } catch (const UsageError&) {
            continue;  // snapshot too small for this z
        }
        const auto grouping = AgeGrouping::make(net.node_count(), std::min(groups, net.node_count()));
        std::vector<std::size_t> hist(grouping.groups, 0);
        for (std::size_t r = 0; r < k; ++r) ++hist[grouping.assignment[sv.ranking[r]]];
        const double uniform = z * double(net.node_count()) / double(grouping.groups);
        std::unordered_set<std::string> seminal_set(seminal_ids.begin(), seminal_ids.end());
        for (std::size_t r = 0; r < k; ++r) {
            const std::string& id = net.node(sv.ranking[r]).id;
            ev.top.insert(id);
            if (seminal_set.count(id)) {
                const double c = double(hist[grouping.assignment[sv.ranking[r]]]);
                ev.weight[id] = std::min(1.0, uniform / c);
            }
        }
        evals.push_back(std::move(ev));
    }
    if (evals.empty()) return {};

    const Date final_date = snapshots.back().first;
    const auto& final_net = snapshots.back().second;
    std::vector<AgeCurvePoint> curve;
    for (int dt = 0;; ++dt) {
        AgeCurvePoint pt;
        pt.dt_years = dt;
        double ir_sum = 0.0, nir_sum = 0.0;
        for (const auto& id : seminal_ids) {
            auto idx = final_net.find(id);
            if (!idx) continue;
            const Date pub = final_net.node(*idx).date;
            const Date due = add_years(pub, dt);
            if (due > final_date) continue;  // node younger than dt
            const SnapEval* ev = nullptr;
            for (const auto& e : evals) {
                if (e.cutoff >= due) {
                    ev = &e;
                    break;
                }
            }
            if (!ev) continue;
            ++pt.eligible;
            if (ev->top.count(id)) {
                ir_sum += 1.0;
                auto w = ev->weight.find(id);
                nir_sum += w != ev->weight.end() ? w->second : 0.0;
            }
        }
        if (pt.eligible == 0) break;
        pt.ir = ir_sum / double(pt.eligible);
        pt.nir = nir_sum / double(pt.eligible);
        curve.push_back(pt);
    }
    return curve;
}

// Entry(m, dt) = f(m, dt) / max_n f(n, dt); all-zero bins emit 0 everywhere.
inline std::map<std::string, std::vector<double>> relative_performance(
    const std::map<std::string, std::vector<double>>& curves) {
    std::size_t len = 0;
    for (const auto& [name, c] : curves) len = std::max(len, c.size());
    std::vector<double> best(len, 0.0);
    for (const auto& [name, c] : curves)
        for (std::size_t i = 0; i < c.size(); ++i) best[i] = std::max(best[i], c[i]);
    std::map<std::string, std::vector<double>> out;
    for (const auto& [name, c] : curves) {
        std::vector<double> rel(c.size(), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i)
            rel[i] = best[i] > 0 ? c[i] / best[i] : 0.0;
        out.emplace(name, std::move(rel));
    }
    return out;
}

// Pairwise Spearman on fractional ranks of the raw scores; a constant vector
// yields NaN against everything (undefined), 1 on the diagonal.
inline std::vector<std::vector<double>> spearman_matrix(const std::vector<ScoreVector>& metrics) {
    const std::size_t m = metrics.size();
    std::vector<std::vector<double>> ranks(m);
    for (std::size_t i = 0; i < m; ++i) ranks[i] = fractional_ranks(metrics[i].scores);
    std::vector<std::vector<double>> rho(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            rho[i][j] = rho[j][i] = pearson(ranks[i], ranks[j]);
    return rho;
}

}  // namespace citrank
