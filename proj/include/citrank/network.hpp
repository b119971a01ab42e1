#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citrank/dates.hpp"
#include "citrank/errors.hpp"

namespace citrank {

struct NodeRecord {
    std::string id;
    Date date;
};

// Immutable time-stamped directed citation graph. Nodes are kept sorted by
// (date, id) ascending, so a node index is also its position in the age order.
// Edges point from the citing node to the cited node; the citation time is the
// citing node's date.
class CitationNetwork {
public:
    // Takes ownership of the node list and an edge list of (citing, cited) id
    // pairs resolved to indices against the *sorted* node order is not required;
    // edges are given as id pairs and resolved here. Self-citations and
    // duplicate edges are dropped; citations dated before their target are kept
    // but counted (see backdated_edges()).
    static CitationNetwork build(std::vector<NodeRecord> nodes,
                                 const std::vector<std::pair<std::string, std::string>>& edges,
                                 std::optional<Date> as_of = std::nullopt) {
        CitationNetwork net;
        std::sort(nodes.begin(), nodes.end(), [](const NodeRecord& a, const NodeRecord& b) {
            return a.date != b.date ? a.date < b.date : a.id < b.id;
        });
        net.nodes_ = std::move(nodes);
        net.index_.reserve(net.nodes_.size());
        for (std::uint32_t i = 0; i < net.nodes_.size(); ++i) {
            if (!net.index_.emplace(net.nodes_[i].id, i).second)
                throw DataError("duplicate node id: " + net.nodes_[i].id);
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> resolved;
        resolved.reserve(edges.size());
        for (const auto& [citing, cited] : edges) {
            auto a = net.find(citing), b = net.find(cited);
            if (!a || !b) throw DataError("edge endpoint not in node set: " + citing + " -> " + cited);
            if (*a == *b) continue;  // self-citation
            resolved.emplace_back(*a, *b);
        }
        std::sort(resolved.begin(), resolved.end());
        resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
        net.init_adjacency(std::move(resolved));
        if (as_of)
            net.as_of_ = *as_of;
        else if (!net.nodes_.empty())
            net.as_of_ = net.nodes_.back().date;
        return net;
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return out_targets_.size(); }
    Date as_of() const { return as_of_; }

    const NodeRecord& node(std::uint32_t i) const { return nodes_[i]; }
    const std::vector<NodeRecord>& nodes() const { return nodes_; }

    std::optional<std::uint32_t> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Nodes this node cites (its references).
    std::span<const std::uint32_t> out_neighbors(std::uint32_t i) const {
        return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
    }
    // Nodes citing this node.
    std::span<const std::uint32_t> in_neighbors(std::uint32_t i) const {
        return {in_sources_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
    }
    std::size_t outdegree(std::uint32_t i) const { return out_offsets_[i + 1] - out_offsets_[i]; }
    std::size_t indegree(std::uint32_t i) const { return in_offsets_[i + 1] - in_offsets_[i]; }

    // Citations whose citing node is dated before the cited node (data noise).
    std::size_t backdated_edges() const { return backdated_; }

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (std::uint32_t i = 0; i < nodes_.size(); ++i)
            for (std::uint32_t j : out_neighbors(i)) fn(i, j);
    }

private:
    void init_adjacency(std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
        const std::size_t n = nodes_.size();
        out_offsets_.assign(n + 1, 0);
        in_offsets_.assign(n + 1, 0);
        backdated_ = 0;
        for (auto [a, b] : edges) {
            ++out_offsets_[a + 1];
            ++in_offsets_[b + 1];
            if (nodes_[a].date < nodes_[b].date) ++backdated_;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out_offsets_[i + 1] += out_offsets_[i];
            in_offsets_[i + 1] += in_offsets_[i];
        }
        out_targets_.resize(edges.size());
        in_sources_.resize(edges.size());
        std::vector<std::uint32_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
        std::vector<std::uint32_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
        for (auto [a, b] : edges) {
            out_targets_[out_pos[a]++] = b;
            in_sources_[in_pos[b]++] = a;
        }
    }

    std::vector<NodeRecord> nodes_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::uint32_t> out_offsets_, out_targets_;
    std::vector<std::uint32_t> in_offsets_, in_sources_;
    std::size_t backdated_ = 0;
    Date as_of_{};
};

struct SeminalSet {
    std::vector<std::uint32_t> indices;  // resolved against one network
    std::vector<std::string> ids;
    std::vector<std::string> unresolved;

    std::size_t size() const { return indices.size(); }
};

inline SeminalSet resolve_seminal(const CitationNetwork& net, const std::vector<std::string>& ids) {
    SeminalSet s;
    for (const auto& id : ids) {
        if (auto i = net.find(id)) {
            s.indices.push_back(*i);
            s.ids.push_back(id);
        } else {
            s.unresolved.push_back(id);
        }
    }
    return s;
}

// Restriction of the network to nodes dated <= cutoff and the citations made
// by them. Citations to nodes dated after the cutoff (backdated noise) are
// dropped together with their missing endpoint.
inline CitationNetwork snapshot(const CitationNetwork& net, Date cutoff) {
    if (net.node_count() == 0 || cutoff < net.node(0).date)
        throw DataError("snapshot cutoff precedes the first node; snapshot would be empty");
    std::vector<NodeRecord> nodes;
    for (const auto& rec : net.nodes()) {
        if (rec.date <= cutoff) nodes.push_back(rec);
    }
    std::vector<std::pair<std::string, std::string>> edges;
    net.for_each_edge([&](std::uint32_t a, std::uint32_t b) {
        if (net.node(a).date <= cutoff && net.node(b).date <= cutoff)
            edges.emplace_back(net.node(a).id, net.node(b).id);
    });
    return CitationNetwork::build(std::move(nodes), edges, std::min(cutoff, net.as_of()));
}

// One snapshot per calendar year-end from the first node's year through
// as_of's year; a final snapshot at as_of is appended when as_of is not a
// December 31.
inline std::vector<std::pair<Date, CitationNetwork>> yearly_snapshots(const CitationNetwork& net) {
    if (net.node_count() == 0) throw DataError("yearly_snapshots: empty network");
    std::vector<std::pair<Date, CitationNetwork>> out;
    const int first = year_of(net.node(0).date);
    const int last = year_of(net.as_of());
    for (int y = first; y <= last; ++y) {
        Date cut = year_end(y);
        if (cut > net.as_of()) cut = net.as_of();
        out.emplace_back(cut, snapshot(net, cut));
        if (cut == net.as_of()) return out;
    }
    if (out.empty() || out.back().first != net.as_of())
        out.emplace_back(net.as_of(), snapshot(net, net.as_of()));
    return out;
}

struct CitationTimes {
    std::vector<std::uint32_t> node;       // qualifying nodes (>= k citations)
    std::vector<double> duration_years;    // time to the k-th citation
    std::optional<double> mean_years;      // absent when no node qualifies
};

// Mean time for nodes to collect their first k citations; a citation's time is
// its citing node's date. Backdated citations count as duration 0.
inline CitationTimes time_to_k_citations(const CitationNetwork& net, std::size_t k,
                                         const SeminalSet* subset = nullptr) {
    if (k == 0) throw UsageError("time_to_k_citations: k must be >= 1");
    CitationTimes result;
    std::vector<std::uint32_t> candidates;
    if (subset) {
        candidates = subset->indices;
    } else {
        candidates.resize(net.node_count());
        for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    }
    std::vector<Date> times;
    double total = 0.0;
    for (std::uint32_t i : candidates) {
        auto citers = net.in_neighbors(i);
        if (citers.size() < k) continue;
        times.clear();
        for (std::uint32_t j : citers) times.push_back(net.node(j).date);
        std::nth_element(times.begin(), times.begin() + (k - 1), times.end());
        double years = std::max(0.0, years_between(net.node(i).date, times[k - 1]));
        result.node.push_back(i);
        result.duration_years.push_back(years);
        total += years;
    }
    if (!result.node.empty()) result.mean_years = total / double(result.node.size());
    return result;
}

}  // namespace citrank
