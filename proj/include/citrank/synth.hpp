#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "citrank/network.hpp"

namespace citrank {

struct SynthParams {
    std::size_t n_nodes = 10000;
    double growth_factor = 1.15;        // yearly multiplier of the appearance rate
    double attachment_offset = 1.0;     // preferential-attachment additive offset
    std::size_t references_per_node = 10;
    double aging_timescale_days = 2.0 * kDaysPerYear;
    int span_years = 20;
    int start_year = 1980;
    std::uint64_t seed = 1;
    std::size_t seminal_size = 100;
    double seminal_age_skew = 0.0;      // 0 = uniform over eligible; larger = older
    double quality_sigma = 1.2;         // lognormal quality spread
    double seminal_quality_quantile = 0.8;  // eligible = top (1-q) by quality
};

struct SynthResult {
    CitationNetwork network;
    SeminalSet seminal;
    std::vector<std::pair<std::string, double>> quality;  // id -> planted quality
    bool clamped_references = false;
};

namespace detail {

// Fenwick tree over per-node sampling weights.
class WeightTree {
public:
    explicit WeightTree(std::size_t n) : tree_(n + 1, 0.0), n_(n) {}
    void add(std::size_t i, double w) {
        for (++i; i <= n_; i += i & (~i + 1)) tree_[i] += w;
    }
    double total() const {
        double t = 0;
        for (std::size_t i = n_; i > 0; i -= i & (~i + 1)) t += tree_[i];
        return t;
    }
    // Smallest i with prefix sum > x.
    std::size_t sample(double x) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while (mask << 1 <= n_) mask <<= 1;
        for (; mask; mask >>= 1) {
            const std::size_t next = pos + mask;
            if (next <= n_ && tree_[next] <= x) {
                x -= tree_[next];
                pos = next;
            }
        }
        return pos;  // 0-based
    }

private:
    std::vector<double> tree_;
    std::size_t n_;
};

}  // namespace detail

// Growing network with an accelerating appearance rate, preferential
// attachment, exponential aging, and planted node quality. Each new node cites
// existing nodes with probability proportional to
// (indegree + offset) * exp(-age/timescale) * quality. The time dependence
// factors out of the sampling weights: at time t the weight of node i is
// proportional to (k_i + offset) * q_i * exp(t_i / tau).
inline SynthResult generate_synthetic(const SynthParams& p) {
    if (p.n_nodes == 0) throw UsageError("generate_synthetic: n_nodes must be positive");
    if (p.growth_factor <= 0 || p.attachment_offset <= 0 || p.aging_timescale_days <= 0 ||
        p.span_years <= 0)
        throw UsageError("generate_synthetic: growth factor, offset, timescale, span must be positive");
    if (p.seminal_size > p.n_nodes)
        throw UsageError("generate_synthetic: seminal set larger than network");

    std::mt19937_64 rng(p.seed);

    // Per-year node counts proportional to growth_factor^year.
    std::vector<std::size_t> per_year(p.span_years, 0);
    {
        double w = 1.0, total = 0.0;
        std::vector<double> weights(p.span_years);
        for (int y = 0; y < p.span_years; ++y, w *= p.growth_factor) {
            weights[y] = w;
            total += w;
        }
        std::size_t assigned = 0;
        for (int y = 0; y < p.span_years; ++y) {
            per_year[y] = std::size_t(double(p.n_nodes) * weights[y] / total);
            assigned += per_year[y];
        }
        for (int y = p.span_years - 1; assigned < p.n_nodes; y = (y + p.span_years - 1) % p.span_years) {
            ++per_year[y];
            ++assigned;
        }
    }

    const Date origin = Date{std::chrono::year{p.start_year} / std::chrono::January / 1};
    std::vector<NodeRecord> nodes;
    nodes.reserve(p.n_nodes);
    std::vector<double> quality(p.n_nodes);
    std::lognormal_distribution<double> qdist(0.0, p.quality_sigma);
    char idbuf[24];
    std::size_t idx = 0;
    for (int y = 0; y < p.span_years; ++y) {
        for (std::size_t k = 0; k < per_year[y]; ++k, ++idx) {
            // Evenly spread within the year, day resolution.
            const long day = long(365.0 * (double(k) + 0.5) / double(per_year[y]));
            std::snprintf(idbuf, sizeof(idbuf), "n%07zu", idx);
            nodes.push_back({idbuf, origin + std::chrono::days(long(y) * 365 + day)});
            quality[idx] = qdist(rng);
        }
    }
    // Ids were assigned in date order, so the sorted network order equals the
    // generation order.

    detail::WeightTree weights(p.n_nodes);
    std::vector<double> unit(p.n_nodes);  // q_i * exp(t_i / tau), per indegree unit
    const double t0 = double(days_between(origin, nodes.back().date)) / 2.0;  // overflow guard
    bool clamped = false;
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(p.n_nodes * p.references_per_node);
    std::vector<std::uint32_t> chosen;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < p.n_nodes; ++i) {
        std::size_t refs = p.references_per_node;
        if (refs > i) {
            refs = i;
            clamped = true;
        }
        chosen.clear();
        for (std::size_t r = 0; r < refs; ++r) {
            // Weighted draw without replacement via temporary weight removal.
            const double total = weights.total();
            if (total <= 0) break;
            std::size_t j = weights.sample(unif(rng) * total);
            if (std::find(chosen.begin(), chosen.end(), std::uint32_t(j)) != chosen.end()) {
                --r;  // duplicate; redraw
                continue;
            }
            chosen.push_back(std::uint32_t(j));
            edges.emplace_back(nodes[i].id, nodes[j].id);
        }
        for (std::uint32_t j : chosen) weights.add(j, unit[j]);  // indegree increment
        const double ti = double(days_between(origin, nodes[i].date));
        unit[i] = quality[i] * std::exp((ti - t0) / p.aging_timescale_days);
        weights.add(i, p.attachment_offset * unit[i]);
    }

    auto net = CitationNetwork::build(std::move(nodes), edges);

    // Seminal set: sampled without replacement from the top-quality nodes,
    // weighted by exp(-skew * position/N) so large skew concentrates the set
    // in the oldest cohort.
    SynthResult result{std::move(net), {}, {}, clamped};
    std::vector<double> sorted_q = quality;
    std::sort(sorted_q.begin(), sorted_q.end());
    const double q_threshold =
        sorted_q[std::size_t(double(p.n_nodes - 1) * p.seminal_quality_quantile)];
    detail::WeightTree seminal_weights(p.n_nodes);
    std::size_t eligible = 0;
    for (std::size_t i = 0; i < p.n_nodes; ++i) {
        if (quality[i] < q_threshold) continue;
        ++eligible;
        seminal_weights.add(i, std::exp(-p.seminal_age_skew * double(i) / double(p.n_nodes)));
    }
    if (p.seminal_size > eligible)
        throw UsageError("generate_synthetic: seminal set larger than quality-eligible pool");
    std::vector<std::string> seminal_ids;
    std::vector<char> taken(p.n_nodes, 0);
    while (seminal_ids.size() < p.seminal_size) {
        const double total = seminal_weights.total();
        std::size_t j = seminal_weights.sample(unif(rng) * total);
        if (taken[j]) continue;
        taken[j] = 1;
        seminal_weights.add(j, -std::exp(-p.seminal_age_skew * double(j) / double(p.n_nodes)));
        seminal_ids.push_back(result.network.node(std::uint32_t(j)).id);
    }
    std::sort(seminal_ids.begin(), seminal_ids.end());
    result.seminal = resolve_seminal(result.network, seminal_ids);
    result.quality.reserve(p.n_nodes);
    for (std::size_t i = 0; i < p.n_nodes; ++i)
        result.quality.emplace_back(result.network.node(std::uint32_t(i)).id, quality[i]);
    return result;
}

}  // namespace citrank
