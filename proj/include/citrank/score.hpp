#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "citrank/network.hpp"

namespace citrank {

// One metric's score per node, aligned to the network node order, plus the
// deterministic ranking: score descending, ties by earlier date then id
// ascending. Node order is already (date, id) ascending, so ties break by
// node index.
struct ScoreVector {
    std::string label;
    std::vector<double> scores;
    std::vector<std::uint32_t> ranking;  // node indices, best first
};

inline std::vector<std::uint32_t> rank_indices(const std::vector<double>& scores) {
    std::vector<std::uint32_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    });
    return order;
}

inline ScoreVector make_score_vector(std::string label, std::vector<double> scores) {
    ScoreVector sv;
    sv.label = std::move(label);
    sv.ranking = rank_indices(scores);
    sv.scores = std::move(scores);
    return sv;
}

// `id<TAB>score<TAB>rank`, one row per node in node order; rank is 1-based.
inline void save_scores(const ScoreVector& sv, const CitationNetwork& net, std::ostream& out) {
    std::vector<std::uint32_t> rank_of(sv.scores.size());
    for (std::uint32_t r = 0; r < sv.ranking.size(); ++r) rank_of[sv.ranking[r]] = r + 1;
    out << "id\tscore\trank\n";
    char buf[32];
    for (std::uint32_t i = 0; i < sv.scores.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", sv.scores[i]);
        out << net.node(i).id << '\t' << buf << '\t' << rank_of[i] << '\n';
    }
}

}  // namespace citrank
