#include <doctest.h>

#include "citrank/metrics.hpp"
#include "citrank/registry.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace citrank;
using testutil::day;

namespace {

void check_valid_permutation(const ScoreVector& sv) {
    std::vector<char> seen(sv.ranking.size(), 0);
    for (std::uint32_t i : sv.ranking) {
        REQUIRE(i < seen.size());
        REQUIRE(!seen[i]);
        seen[i] = 1;
    }
}

double sum(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

TEST_CASE("citation count equals indegree") {
    auto net = testutil::net2();
    auto c = citation_count(net);
    CHECK(c.scores[*net.find("A")] == 1.0);
    CHECK(c.scores[*net.find("B")] == 0.0);

    std::vector<NodeRecord> lone{{"x", day(1990, 1, 1)}, {"y", day(1990, 1, 2)}};
    auto edgeless = CitationNetwork::build(std::move(lone), {});
    for (double s : citation_count(edgeless).scores) CHECK(s == 0.0);
}

TEST_CASE("pagerank solves the two-node fixture exactly") {
    auto net = testutil::net2();
    MetricConfig cfg;
    auto p = pagerank(net, cfg);
    CHECK(p.scores[*net.find("A")] == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(p.scores[*net.find("B")] == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(sum(p.scores) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pagerank on an edgeless network is uniform") {
    auto net = testutil::random_graph(10, 0.0, 1);
    auto p = pagerank(net);
    for (double s : p.scores) CHECK(s == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("pagerank matches the dense linear solve on random graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto net = testutil::random_graph(50, 0.1, seed);
        auto p = pagerank(net);
        auto exact = oracle::pagerank_linear(net, 0.5);
        for (std::size_t i = 0; i < exact.size(); ++i)
            CHECK(std::abs(p.scores[i] - exact[i]) < 1e-6);
        CHECK(sum(p.scores) == doctest::Approx(1.0).epsilon(1e-9));
        // Rank agreement of the argmax with the exact solve.
        const auto best = std::max_element(exact.begin(), exact.end()) - exact.begin();
        CHECK(p.ranking[0] == std::uint32_t(best));
    }
}

TEST_CASE("citerank reduces to pagerank when all nodes share a date") {
    std::vector<NodeRecord> nodes;
    char buf[8];
    for (int i = 0; i < 12; ++i) {
        std::snprintf(buf, sizeof(buf), "s%02d", i);
        nodes.push_back({buf, day(1990, 1, 1)});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i < 12; ++i) edges.emplace_back(nodes[i].id, nodes[(i * 7) % 12].id);
    auto net = CitationNetwork::build(std::move(nodes), edges);
    auto t = citerank(net);
    auto p = pagerank(net);
    for (std::size_t i = 0; i < t.scores.size(); ++i)
        CHECK(std::abs(t.scores[i] - p.scores[i]) < 1e-9);
}

TEST_CASE("citerank concentrates teleport mass on recent nodes") {
    auto net = testutil::net2();
    MetricConfig cfg;
    cfg.citerank_tau_days = 1.0;  // B is 10 days newer
    auto t = citerank(net, cfg);
    auto exact = oracle::citerank_linear(net, cfg.alpha, cfg.citerank_tau_days);
    CHECK(t.scores[*net.find("A")] == doctest::Approx(exact[*net.find("A")]).epsilon(1e-7));
    CHECK(t.scores[*net.find("B")] == doctest::Approx(exact[*net.find("B")]).epsilon(1e-7));
    // Uniform teleport gives B 0.4; recency teleport must give it more.
    CHECK(t.scores[*net.find("B")] > 0.4);
    CHECK(sum(t.scores) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("citerank single node") {
    std::vector<NodeRecord> one{{"solo", day(1990, 1, 1)}};
    auto net = CitationNetwork::build(std::move(one), {});
    CHECK(citerank(net).scores[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("leaderrank matches the stationary solve on the two-node fixture") {
    auto net = testutil::net2();
    auto l = leaderrank(net);
    CHECK(l.scores[*net.find("A")] == doctest::Approx(5.0 / 3.0).epsilon(1e-7));
    CHECK(l.scores[*net.find("B")] == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
    CHECK(sum(l.scores) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("leaderrank agrees with the linear oracle and the ground redistribution is rank-neutral") {
    auto net = testutil::random_graph(40, 0.1, 9);
    auto l = leaderrank(net);
    auto exact = oracle::leaderrank_linear(net);
    for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(l.scores[i] == doctest::Approx(exact[i]).epsilon(1e-5));
    CHECK(sum(l.scores) == doctest::Approx(double(net.node_count()) + 1.0).epsilon(1e-6));
    // Adding the same constant to every score cannot change the ranking.
    std::vector<double> shifted = l.scores;
    for (double& s : shifted) s -= 0.123;
    CHECK(make_score_vector("L", shifted).ranking == l.ranking);
}

TEST_CASE("leaderrank on an edgeless network is symmetric") {
    auto net = testutil::random_graph(8, 0.0, 2);
    auto l = leaderrank(net);
    for (double s : l.scores) CHECK(s == doctest::Approx(l.scores[0]).epsilon(1e-9));
}

TEST_CASE("h-index fixtures and bounds") {
    // w cited by citers with indegrees 3, 2, 1.
    std::vector<NodeRecord> nodes{{"w", day(1990, 1, 1)},  {"a", day(1990, 1, 2)},
                                  {"b", day(1990, 1, 3)},  {"c", day(1990, 1, 4)},
                                  {"p1", day(1990, 1, 5)}, {"p2", day(1990, 1, 6)},
                                  {"p3", day(1990, 1, 7)}, {"p4", day(1990, 1, 8)},
                                  {"p5", day(1990, 1, 9)}, {"p6", day(1990, 1, 10)}};
    std::vector<std::pair<std::string, std::string>> edges{
        {"a", "w"}, {"b", "w"}, {"c", "w"},
        {"p1", "a"}, {"p2", "a"}, {"p3", "a"},  // a has indegree 3
        {"p4", "b"}, {"p5", "b"},               // b has indegree 2
        {"p6", "c"}};                           // c has indegree 1
    auto net = CitationNetwork::build(std::move(nodes), edges);
    auto h = h_index(net);
    CHECK(h.scores[*net.find("w")] == 2.0);
    CHECK(h.scores[*net.find("p1")] == 0.0);
    auto c = citation_count(net);
    for (std::size_t i = 0; i < h.scores.size(); ++i) CHECK(h.scores[i] <= c.scores[i]);
}

TEST_CASE("h-index matches the exhaustive oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto net = testutil::random_graph(120, 0.05, seed);
        auto h = h_index(net);
        auto exact = oracle::h_index_brute(net);
        for (std::size_t i = 0; i < exact.size(); ++i) CHECK(h.scores[i] == exact[i]);
    }
}

TEST_CASE("collective influence star fixture") {
    // X cited by 3 nodes; X -> Z -> W, W also cited by V.
    std::vector<NodeRecord> nodes{{"X", day(1990, 1, 1)}, {"Z", day(1990, 1, 2)},
                                  {"W", day(1990, 1, 3)}, {"V", day(1990, 1, 4)},
                                  {"s1", day(1990, 1, 5)}, {"s2", day(1990, 1, 6)},
                                  {"s3", day(1990, 1, 7)}};
    std::vector<std::pair<std::string, std::string>> edges{
        {"s1", "X"}, {"s2", "X"}, {"s3", "X"}, {"X", "Z"}, {"Z", "W"}, {"V", "W"}};
    auto net = CitationNetwork::build(std::move(nodes), edges);
    MetricConfig cfg;
    cfg.ci_level = 2;
    auto ci = collective_influence(net, cfg);
    CHECK(ci.scores[*net.find("X")] == 2.0);
    CHECK(ci.scores[*net.find("s1")] == 0.0);  // isolated in-degree clamp
}

TEST_CASE("collective influence matches brute-force BFS at l=1 and l=2") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto net = testutil::random_graph(150, 0.02, seed);
        for (int level : {1, 2}) {
            MetricConfig cfg;
            cfg.ci_level = level;
            auto ci = collective_influence(net, cfg);
            auto exact = oracle::collective_influence_brute(net, level);
            for (std::size_t i = 0; i < exact.size(); ++i) CHECK(ci.scores[i] == exact[i]);
        }
    }
}

TEST_CASE("semi-local centrality hand fixture") {
    std::vector<NodeRecord> nodes{{"A", day(1990, 1, 1)}, {"B", day(1990, 1, 2)},
                                  {"C", day(1990, 1, 3)}, {"D", day(1990, 1, 4)},
                                  {"E", day(1990, 1, 5)}, {"F", day(1990, 1, 6)}};
    std::vector<std::pair<std::string, std::string>> edges{
        {"C", "B"}, {"D", "B"}, {"B", "A"}, {"E", "A"}, {"F", "C"}};
    auto net = CitationNetwork::build(std::move(nodes), edges);
    auto slc = semi_local_centrality(net);
    CHECK(slc.scores[*net.find("A")] == 1.0);
    CHECK(slc.scores[*net.find("F")] == 0.0);  // no citers
}

TEST_CASE("semi-local centrality matches the naive oracle") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto net = testutil::random_graph(150, 0.03, seed);
        auto slc = semi_local_centrality(net);
        auto exact = oracle::semi_local_brute(net);
        for (std::size_t i = 0; i < exact.size(); ++i) CHECK(slc.scores[i] == exact[i]);
    }
}

TEST_CASE("hits concentrates authority on the cited node of the two-node fixture") {
    auto net = testutil::net2();
    auto r = hits(net);
    CHECK(r.authority.scores[*net.find("A")] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.authority.scores[*net.find("B")] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.hub.scores[*net.find("B")] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sum(r.authority.scores) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sum(r.hub.scores) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hits authority matches the A^T A power-iteration oracle") {
    auto net = testutil::random_graph(100, 0.05, 4);
    auto r = hits(net);
    auto eig = oracle::hits_authority_power(net, 400);
    CHECK(oracle::cosine(r.authority.scores, eig) > 1.0 - 1e-6);
}

TEST_CASE("hits refuses edgeless networks") {
    auto net = testutil::random_graph(5, 0.0, 1);
    CHECK_THROWS_AS(hits(net), DataError);
}

TEST_CASE("yccp percentiles within a year") {
    std::vector<NodeRecord> nodes{{"a", day(1990, 1, 1)}, {"b", day(1990, 5, 1)},
                                  {"c", day(1990, 9, 1)}, {"x1", day(1991, 1, 1)},
                                  {"x2", day(1991, 2, 1)}, {"x3", day(1991, 3, 1)},
                                  {"x4", day(1991, 4, 1)}, {"x5", day(1991, 5, 1)},
                                  {"x6", day(1991, 6, 1)}, {"lone", day(1992, 1, 1)}};
    // Same-year citation counts for 1990: a=5, b=3, c=1.
    std::vector<std::pair<std::string, std::string>> edges;
    for (const char* s : {"x1", "x2", "x3", "x4", "x5"}) edges.emplace_back(s, "a");
    for (const char* s : {"x1", "x2", "x3"}) edges.emplace_back(s, "b");
    edges.emplace_back("x1", "c");
    auto net = CitationNetwork::build(std::move(nodes), edges);
    auto y = yccp(net);
    CHECK(y.scores[*net.find("a")] == doctest::Approx(2.0 / 3.0));
    CHECK(y.scores[*net.find("b")] == doctest::Approx(1.0 / 3.0));
    CHECK(y.scores[*net.find("c")] == doctest::Approx(0.0));
    CHECK(y.scores[*net.find("lone")] == 0.0);  // single-node year
}

TEST_CASE("yccp matches brute force, and all-in-one-year equals citation ranking") {
    auto net = testutil::random_graph(100, 0.05, 8);  // all dates within 1990
    auto y = yccp(net);
    auto exact = oracle::yccp_brute(net);
    for (std::size_t i = 0; i < exact.size(); ++i) CHECK(y.scores[i] == doctest::Approx(exact[i]));
    CHECK(y.ranking == citation_count(net).ranking);
}

TEST_CASE("age rank puts the oldest first and ignores edges") {
    auto net = testutil::net2();
    auto a = age_rank(net);
    CHECK(a.ranking[0] == *net.find("A"));
    auto dense = testutil::random_graph(30, 0.3, 5);
    auto sparse = testutil::random_graph(30, 0.0, 5);
    CHECK(age_rank(dense).ranking == age_rank(sparse).ranking);
}

TEST_CASE("score vector rankings are valid permutations and deterministic") {
    auto net = testutil::random_graph(60, 0.08, 13);
    for (const auto& name : all_metric_names()) {
        auto sv = compute_metric(name, net, {}, RescaleConfig{10});
        check_valid_permutation(sv);
        auto again = compute_metric(name, net, {}, RescaleConfig{10});
        CHECK(sv.ranking == again.ranking);
        CHECK(sv.scores == again.scores);
    }
}

TEST_CASE("iterative solvers are independent of node input order") {
    auto net = testutil::random_graph(50, 0.1, 21);
    // Rebuild with the rows presented in reverse; the network sorts them back.
    std::vector<NodeRecord> reversed(net.nodes().rbegin(), net.nodes().rend());
    std::vector<std::pair<std::string, std::string>> edges;
    net.for_each_edge([&](std::uint32_t a, std::uint32_t b) {
        edges.emplace_back(net.node(a).id, net.node(b).id);
    });
    std::reverse(edges.begin(), edges.end());
    auto net_r = CitationNetwork::build(std::move(reversed), edges);
    for (const char* name : {"P", "T", "L", "HITS"}) {
        auto a = compute_metric(name, net);
        auto b = compute_metric(name, net_r);
        for (std::size_t i = 0; i < a.scores.size(); ++i)
            CHECK(std::abs(a.scores[i] - b.scores[i]) <= 1e-9);
    }
}

TEST_CASE("adding a citation from a new node never decreases C or h") {
    auto net = testutil::random_graph(40, 0.08, 17);
    auto c0 = citation_count(net);
    auto h0 = h_index(net);
    const std::string target = net.node(5).id;
    std::vector<NodeRecord> nodes = net.nodes();
    nodes.push_back({"zzz_new", day(1995, 1, 1)});
    std::vector<std::pair<std::string, std::string>> edges;
    net.for_each_edge([&](std::uint32_t a, std::uint32_t b) {
        edges.emplace_back(net.node(a).id, net.node(b).id);
    });
    edges.emplace_back("zzz_new", target);
    auto net2 = CitationNetwork::build(std::move(nodes), edges);
    auto c1 = citation_count(net2);
    auto h1 = h_index(net2);
    const auto t0 = *net.find(target), t1 = *net2.find(target);
    CHECK(c1.scores[t1] >= c0.scores[t0]);
    CHECK(h1.scores[t1] >= h0.scores[t0]);
}

TEST_CASE("tune_citerank_params: single grid point and window errors") {
    auto net = testutil::random_graph(60, 0.08, 23);
    auto tuned = tune_citerank_params(net, {0.5}, {30.0}, 40.0);
    CHECK(tuned.alpha == 0.5);
    CHECK(tuned.tau_days == 30.0);
    CHECK_THROWS_AS(tune_citerank_params(net, {}, {30.0}, 40.0), UsageError);
}

TEST_CASE("metric registry names") {
    CHECK(is_metric_name("P"));
    CHECK(is_metric_name("RP"));
    CHECK(is_metric_name("YCCP"));
    CHECK_FALSE(is_metric_name("RYCCP"));
    CHECK_FALSE(is_metric_name("RAgeR"));
    CHECK_FALSE(is_metric_name("bogus"));
    CHECK(all_metric_names().size() == 18);
}
