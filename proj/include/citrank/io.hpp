#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citrank/network.hpp"

namespace citrank {

struct LoadSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t rejected_unknown_endpoint = 0;
    std::size_t rejected_self_citation = 0;
    std::size_t rejected_duplicate_edge = 0;
    std::size_t backdated_citations = 0;
};

namespace detail {

inline bool split_two(const std::string& line, char delim, std::string& a, std::string& b) {
    auto pos = line.find(delim);
    if (pos == std::string::npos) return false;
    a = line.substr(0, pos);
    b = line.substr(pos + 1);
    if (!b.empty() && b.back() == '\r') b.pop_back();
    return !a.empty() && !b.empty();
}

inline bool skip_line(const std::string& line) {
    return line.empty() || line[0] == '#' || line == "\r";
}

}  // namespace detail

// Node rows are `id<TAB>YYYY-MM-DD`; edge rows are `citing_id<TAB>cited_id`.
// Lines starting with '#' are comments. Edges referencing unknown ids are
// counted and dropped; malformed dates and duplicate node ids are fatal.
inline CitationNetwork load_network(std::istream& nodes_in, std::istream& edges_in,
                                    LoadSummary* summary = nullptr, char delim = '\t') {
    std::vector<NodeRecord> nodes;
    std::unordered_set<std::string> known;
    std::string line, a, b;
    std::size_t lineno = 0;
    while (std::getline(nodes_in, line)) {
        ++lineno;
        if (detail::skip_line(line)) continue;
        if (!detail::split_two(line, delim, a, b))
            throw DataError("node file line " + std::to_string(lineno) + ": expected id<TAB>date");
        auto date = parse_date(b);
        if (!date)
            throw DataError("node file line " + std::to_string(lineno) + ": malformed date '" + b +
                            "'");
        if (!known.insert(a).second)
            throw DataError("node file line " + std::to_string(lineno) + ": duplicate node id '" +
                            a + "'");
        nodes.push_back({std::move(a), *date});
    }
    if (nodes.empty()) throw DataError("node file is empty");

    std::vector<std::pair<std::string, std::string>> edges;
    std::size_t unknown = 0, selfcite = 0;
    std::unordered_set<std::string> seen_edges;
    std::size_t duplicates = 0;
    lineno = 0;
    while (std::getline(edges_in, line)) {
        ++lineno;
        if (detail::skip_line(line)) continue;
        if (!detail::split_two(line, delim, a, b))
            throw DataError("edge file line " + std::to_string(lineno) +
                            ": expected citing<TAB>cited");
        if (!known.count(a) || !known.count(b)) {
            ++unknown;
            continue;
        }
        if (a == b) {
            ++selfcite;
            continue;
        }
        if (!seen_edges.insert(a + '\t' + b).second) {
            ++duplicates;
            continue;
        }
        edges.emplace_back(std::move(a), std::move(b));
    }
    auto net = CitationNetwork::build(std::move(nodes), edges);
    if (summary) {
        summary->nodes = net.node_count();
        summary->edges = net.edge_count();
        summary->rejected_unknown_endpoint = unknown;
        summary->rejected_self_citation = selfcite;
        summary->rejected_duplicate_edge = duplicates;
        summary->backdated_citations = net.backdated_edges();
    }
    return net;
}

inline CitationNetwork load_network_files(const std::string& nodes_path,
                                          const std::string& edges_path,
                                          LoadSummary* summary = nullptr, char delim = '\t') {
    std::ifstream nodes_in(nodes_path);
    if (!nodes_in) throw UsageError("cannot open node file: " + nodes_path);
    std::ifstream edges_in(edges_path);
    if (!edges_in) throw UsageError("cannot open edge file: " + edges_path);
    return load_network(nodes_in, edges_in, summary, delim);
}

inline void save_network(const CitationNetwork& net, std::ostream& nodes_out,
                         std::ostream& edges_out) {
    for (const auto& rec : net.nodes()) nodes_out << rec.id << '\t' << format_date(rec.date) << '\n';
    net.for_each_edge([&](std::uint32_t a, std::uint32_t b) {
        edges_out << net.node(a).id << '\t' << net.node(b).id << '\n';
    });
}

// One id per line; unresolved ids are reported in the result and dropped.
inline SeminalSet load_seminal(std::istream& in, const CitationNetwork& net) {
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::skip_line(line)) continue;
        ids.push_back(line);
    }
    return resolve_seminal(net, ids);
}

inline SeminalSet load_seminal_file(const std::string& path, const CitationNetwork& net) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open seminal file: " + path);
    return load_seminal(in, net);
}

}  // namespace citrank
