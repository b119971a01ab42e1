#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "citrank/network.hpp"
#include "citrank/score.hpp"
#include "citrank/stats.hpp"

namespace citrank {

struct MetricConfig {
    double alpha = 0.5;                  // damping, citation-data convention
    double citerank_tau_days = 2.6 * kDaysPerYear;
    double epsilon = 1e-9;               // mean absolute score change
    std::size_t max_iterations = 10000;
    int ci_level = 2;
    double recent_window_days = 2.0 * kDaysPerYear;  // CiteRank tuning target
};

struct SolveInfo {
    std::size_t iterations = 0;
    double residual = 0.0;
};

inline ScoreVector citation_count(const CitationNetwork& net) {
    std::vector<double> c(net.node_count());
    for (std::uint32_t i = 0; i < c.size(); ++i) c[i] = double(net.indegree(i));
    return make_score_vector("C", std::move(c));
}

namespace detail {

// Damped random walk with uniform dangling redistribution and an arbitrary
// teleport vector (summing to 1). Jacobi-style synchronous updates from the
// uniform start; stops when the mean absolute change drops below epsilon.
inline std::vector<double> damped_walk(const CitationNetwork& net,
                                       const std::vector<double>& teleport,
                                       const MetricConfig& cfg, SolveInfo* info) {
    const std::size_t n = net.node_count();
    std::vector<double> p(n, 1.0 / double(n)), next(n);
    double residual = 0.0;
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::uint32_t j = 0; j < n; ++j)
            if (net.outdegree(j) == 0) dangling += p[j];
        const double dangling_share = cfg.alpha * dangling / double(n);
        for (std::uint32_t i = 0; i < n; ++i)
            next[i] = (1.0 - cfg.alpha) * teleport[i] + dangling_share;
        for (std::uint32_t j = 0; j < n; ++j) {
            const auto refs = net.out_neighbors(j);
            if (refs.empty()) continue;
            const double share = cfg.alpha * p[j] / double(refs.size());
            for (std::uint32_t i : refs) next[i] += share;
        }
        residual = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) residual += std::abs(next[i] - p[i]);
        residual /= double(n);
        p.swap(next);
        if (residual < cfg.epsilon) {
            if (info) *info = {iter, residual};
            return p;
        }
    }
    throw ConvergenceError("damped walk did not converge within " +
                               std::to_string(cfg.max_iterations) + " iterations",
                           residual);
}

}  // namespace detail

inline ScoreVector pagerank(const CitationNetwork& net, const MetricConfig& cfg = {},
                            SolveInfo* info = nullptr) {
    if (net.node_count() == 0) throw DataError("pagerank: empty network");
    std::vector<double> teleport(net.node_count(), 1.0 / double(net.node_count()));
    return make_score_vector("P", detail::damped_walk(net, teleport, cfg, info));
}

inline ScoreVector citerank(const CitationNetwork& net, const MetricConfig& cfg = {},
                            SolveInfo* info = nullptr) {
    if (net.node_count() == 0) throw DataError("citerank: empty network");
    if (cfg.citerank_tau_days <= 0) throw UsageError("citerank: tau must be positive");
    std::vector<double> teleport(net.node_count());
    double z = 0.0;
    for (std::uint32_t i = 0; i < teleport.size(); ++i) {
        const double age = double(days_between(net.node(i).date, net.as_of()));
        teleport[i] = std::exp(-age / cfg.citerank_tau_days);
        z += teleport[i];
    }
    for (double& t : teleport) t /= z;
    return make_score_vector("T", detail::damped_walk(net, teleport, cfg, info));
}

// Walk on the graph augmented with a ground node linked bidirectionally to
// every real node, all-ones start; the ground score is then spread evenly over
// the real nodes. Real-node scores sum to N+1.
inline ScoreVector leaderrank(const CitationNetwork& net, const MetricConfig& cfg = {},
                              SolveInfo* info = nullptr) {
    const std::size_t n = net.node_count();
    if (n == 0) throw DataError("leaderrank: empty network");
    std::vector<double> l(n + 1, 1.0), next(n + 1), prev(n + 1, 1.0);
    std::vector<double> inv_kout(n);
    for (std::uint32_t i = 0; i < n; ++i) inv_kout[i] = 1.0 / double(net.outdegree(i) + 1);
    double residual = 0.0;
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        const double from_ground = l[n] / double(n);
        double to_ground = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            double s = from_ground;
            for (std::uint32_t j : net.in_neighbors(i)) s += l[j] * inv_kout[j];
            next[i] = s;
            to_ground += l[i] * inv_kout[i];
        }
        next[n] = to_ground;
        residual = 0.0;
        double residual2 = 0.0;  // against two iterations ago
        for (std::size_t i = 0; i <= n; ++i) {
            residual += std::abs(next[i] - l[i]);
            residual2 += std::abs(next[i] - prev[i]);
        }
        residual /= double(n + 1);
        residual2 /= double(n + 1);
        prev.swap(l);
        l.swap(next);
        // Every node sits on a 2-cycle through the ground node, so the walk's
        // period divides 2; a period-2 limit cycle averages to the stationary
        // state (this happens on near-bipartite graphs such as edgeless ones).
        const bool oscillating = residual >= cfg.epsilon && residual2 < cfg.epsilon && iter > 1;
        if (residual < cfg.epsilon || oscillating) {
            if (info) *info = {iter, std::min(residual, residual2)};
            if (oscillating)
                for (std::size_t i = 0; i <= n; ++i) l[i] = 0.5 * (l[i] + prev[i]);
            const double ground_share = l[n] / double(n);
            std::vector<double> out(n);
            for (std::uint32_t i = 0; i < n; ++i) out[i] = l[i] + ground_share;
            return make_score_vector("L", std::move(out));
        }
    }
    throw ConvergenceError("leaderrank did not converge", residual);
}

// Largest h such that the node has >= h citers each with >= h citations.
inline ScoreVector h_index(const CitationNetwork& net) {
    std::vector<double> h(net.node_count());
    std::vector<std::size_t> citer_deg;
    for (std::uint32_t i = 0; i < h.size(); ++i) {
        citer_deg.clear();
        for (std::uint32_t j : net.in_neighbors(i)) citer_deg.push_back(net.indegree(j));
        std::sort(citer_deg.begin(), citer_deg.end(), std::greater<>());
        std::size_t val = 0;
        while (val < citer_deg.size() && citer_deg[val] >= val + 1) ++val;
        h[i] = double(val);
    }
    return make_score_vector("H", std::move(h));
}

// CI at level l with k = indegree; the (k-1) factors are clamped at zero and
// distance follows outgoing edges (the reference chain).
inline ScoreVector collective_influence(const CitationNetwork& net, const MetricConfig& cfg = {}) {
    if (cfg.ci_level < 1) throw UsageError("collective_influence: level must be >= 1");
    const std::size_t n = net.node_count();
    std::vector<double> ci(n, 0.0);
    std::vector<std::uint32_t> stamp(n, 0), frontier, next_frontier;
    std::uint32_t epoch = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double ki = double(net.indegree(i));
        if (ki <= 1.0) continue;  // clamped factor is zero
        ++epoch;
        stamp[i] = epoch;
        frontier.assign(1, i);
        double ball = 0.0;
        for (int depth = 1; depth <= cfg.ci_level; ++depth) {
            next_frontier.clear();
            for (std::uint32_t u : frontier) {
                for (std::uint32_t v : net.out_neighbors(u)) {
                    if (stamp[v] == epoch) continue;
                    stamp[v] = epoch;
                    next_frontier.push_back(v);
                }
            }
            frontier.swap(next_frontier);
        }
        for (std::uint32_t v : frontier) ball += std::max(double(net.indegree(v)) - 1.0, 0.0);
        ci[i] = (ki - 1.0) * ball;
    }
    return make_score_vector("CI", std::move(ci));
}

// SLC_i = sum over citers j of Q_j, Q_j = sum over citers k of N_k, where N_k
// counts distinct nodes within two steps against edge direction (excluding k).
inline ScoreVector semi_local_centrality(const CitationNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<double> nk(n), q(n), slc(n);
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t epoch = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
        ++epoch;
        stamp[k] = epoch;
        std::size_t count = 0;
        for (std::uint32_t j : net.in_neighbors(k)) {
            if (stamp[j] != epoch) {
                stamp[j] = epoch;
                ++count;
            }
            for (std::uint32_t i : net.in_neighbors(j)) {
                if (stamp[i] != epoch) {
                    stamp[i] = epoch;
                    ++count;
                }
            }
        }
        nk[k] = double(count);
    }
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k : net.in_neighbors(j)) q[j] += nk[k];
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j : net.in_neighbors(i)) slc[i] += q[j];
    return make_score_vector("SLC", std::move(slc));
}

struct HitsResult {
    ScoreVector authority;
    ScoreVector hub;
    SolveInfo info;
};

// Both vectors are normalized to sum 1 after every iteration; the combined
// mean absolute change drives the stopping rule. Authority is the ranking
// output for citation data.
inline HitsResult hits(const CitationNetwork& net, const MetricConfig& cfg = {}) {
    const std::size_t n = net.node_count();
    if (net.edge_count() == 0) throw DataError("hits: network has no edges");
    std::vector<double> a(n, 1.0 / double(n)), h(n, 1.0 / double(n)), na(n), nh(n);
    double residual = 0.0;
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        double sa = 0.0, sh = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::uint32_t j : net.in_neighbors(i)) v += h[j];
            na[i] = v;
            sa += v;
            v = 0.0;
            for (std::uint32_t j : net.out_neighbors(i)) v += a[j];
            nh[i] = v;
            sh += v;
        }
        if (sa == 0.0 || sh == 0.0)
            throw DataError("hits: score mass vanished (no supporting edges)");
        residual = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            na[i] /= sa;
            nh[i] /= sh;
            residual += std::abs(na[i] - a[i]) + std::abs(nh[i] - h[i]);
        }
        residual /= double(n);
        a.swap(na);
        h.swap(nh);
        if (residual < cfg.epsilon)
            return {make_score_vector("HITS", std::move(a)),
                    make_score_vector("HUB", std::move(h)),
                    {iter, residual}};
    }
    throw ConvergenceError("hits did not converge", residual);
}

// Citation-count percentile within the node's publication year: the fraction
// of same-year nodes with strictly fewer citations.
inline ScoreVector yccp(const CitationNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<double> score(n);
    std::uint32_t begin = 0;
    std::vector<std::size_t> degs;
    while (begin < n) {
        std::uint32_t end = begin;
        const int year = year_of(net.node(begin).date);
        while (end < n && year_of(net.node(end).date) == year) ++end;
        degs.clear();
        for (std::uint32_t i = begin; i < end; ++i) degs.push_back(net.indegree(i));
        std::sort(degs.begin(), degs.end());
        const double denom = double(end - begin);
        for (std::uint32_t i = begin; i < end; ++i) {
            const auto below = std::lower_bound(degs.begin(), degs.end(), net.indegree(i)) -
                               degs.begin();
            score[i] = double(below) / denom;
        }
        begin = end;
    }
    return make_score_vector("YCCP", std::move(score));
}

// Ranking by age alone, oldest first; blind to the edges.
inline ScoreVector age_rank(const CitationNetwork& net) {
    std::vector<double> score(net.node_count());
    for (std::uint32_t i = 0; i < score.size(); ++i) score[i] = -double(i);
    return make_score_vector("AgeR", std::move(score));
}

struct CiteRankTuning {
    double alpha = 0.0;
    double tau_days = 0.0;
    double correlation = 0.0;
};

// Grid search maximizing the Spearman correlation between CiteRank scores and
// the indegree gained in the trailing window; ties go to smaller tau, then
// smaller alpha.
inline CiteRankTuning tune_citerank_params(const CitationNetwork& net,
                                           const std::vector<double>& alpha_grid,
                                           const std::vector<double>& tau_days_grid,
                                           double recent_window_days,
                                           const MetricConfig& base_cfg = {}) {
    if (alpha_grid.empty() || tau_days_grid.empty())
        throw UsageError("tune_citerank_params: empty parameter grid");
    std::vector<double> recent(net.node_count(), 0.0);
    const Date horizon = net.as_of() - std::chrono::days(long(recent_window_days));
    bool any = false;
    for (std::uint32_t i = 0; i < net.node_count(); ++i) {
        for (std::uint32_t j : net.in_neighbors(i)) {
            if (net.node(j).date > horizon) {
                recent[i] += 1.0;
                any = true;
            }
        }
    }
    if (!any) throw DataError("tune_citerank_params: no citations inside the recent window");
    std::vector<double> taus = tau_days_grid, alphas = alpha_grid;
    std::sort(taus.begin(), taus.end());
    std::sort(alphas.begin(), alphas.end());
    CiteRankTuning best;
    bool first = true;
    for (double tau : taus) {
        for (double alpha : alphas) {
            MetricConfig cfg = base_cfg;
            cfg.alpha = alpha;
            cfg.citerank_tau_days = tau;
            const double rho = spearman(citerank(net, cfg).scores, recent);
            if (first || rho > best.correlation) {
                best = {alpha, tau, rho};
                first = false;
            }
        }
    }
    return best;
}

}  // namespace citrank
