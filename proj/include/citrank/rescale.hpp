#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "citrank/network.hpp"
#include "citrank/score.hpp"

namespace citrank {

struct RescaleConfig {
    std::size_t window = 0;  // even neighbor count W; 0 means default_window(net)

    // W = round(N/600) to nearest even, clamped to [100, 20000]. Matches the
    // order of magnitude of window sizes that scale with dataset size.
    static std::size_t default_window(std::size_t n) {
        auto w = std::size_t(std::llround(double(n) / 600.0));
        w = (w + 1) / 2 * 2;  // nearest even
        return std::clamp<std::size_t>(w, 100, 20000);
    }
};

// z-score of each node's score within the window [i-W/2, i+W/2] in the
// date-sorted node order, truncated at the boundaries. Population standard
// deviation; zero-variance windows map to score 0. Label gains an 'R' prefix.
inline ScoreVector rescale(const ScoreVector& sv, const CitationNetwork& net,
                           RescaleConfig cfg = {}) {
    const std::size_t n = net.node_count();
    if (sv.scores.size() != n) throw UsageError("rescale: score vector does not match network");
    std::size_t w = cfg.window ? cfg.window : RescaleConfig::default_window(n);
    if (w % 2 != 0) throw UsageError("rescale: window size must be even");
    if (w < 2 || w >= n) throw UsageError("rescale: window size must be in [2, N)");
    const std::size_t half = w / 2;

    // Two-pass per window; sliding-sum shortcuts lose too much precision on
    // broadly distributed scores (e.g. HITS authority).
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(i + half, n - 1);
        const double m = double(hi - lo + 1);
        double mu = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) mu += sv.scores[j];
        mu /= m;
        double var = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = sv.scores[j] - mu;
            var += d * d;
        }
        const double sigma = std::sqrt(var / m);
        out[i] = sigma > 0 ? (sv.scores[i] - mu) / sigma : 0.0;
    }
    return make_score_vector("R" + sv.label, std::move(out));
}

}  // namespace citrank
