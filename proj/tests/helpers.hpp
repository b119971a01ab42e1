#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "citrank/network.hpp"

namespace testutil {

using citrank::CitationNetwork;
using citrank::Date;
using citrank::NodeRecord;

inline Date day(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

// Two nodes, one citation B -> A. A is the older node.
inline CitationNetwork net2() {
    std::vector<NodeRecord> nodes{{"A", day(1990, 1, 1)}, {"B", day(1990, 1, 11)}};
    return CitationNetwork::build(std::move(nodes), {{"B", "A"}});
}

// Uniformly random directed graph with the given edge probability; node i gets
// a date i days after 1990-01-01, ids in date order.
inline CitationNetwork random_graph(std::size_t n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<NodeRecord> nodes;
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "v%04zu", i);
        nodes.push_back({buf, day(1990, 1, 1) + std::chrono::days(long(i))});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && unif(rng) < density) edges.emplace_back(nodes[i].id, nodes[j].id);
    return CitationNetwork::build(std::move(nodes), edges);
}

}  // namespace testutil
