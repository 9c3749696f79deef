#include "quasirank/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "quasirank/errors.hpp"

namespace quasirank {

EdgeList parse_edge_list(std::istream& in) {
    EdgeList out;
    std::unordered_map<std::uint64_t, bool> seen;
    auto intern = [&out](const std::string& label) -> NodeId {
        auto it = out.label_map.find(label);
        if (it != out.label_map.end()) return it->second;
        NodeId id = static_cast<NodeId>(out.labels.size());
        out.labels.push_back(label);
        out.label_map.emplace(label, id);
        return id;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;           // blank line
        if (a.front() == '#') continue;     // comment
        if (!(ls >> b) || (ls >> extra)) {
            throw ParseError("expected two node labels at line " + std::to_string(line_no),
                             line_no);
        }
        NodeId src = intern(a);
        NodeId dst = intern(b);
        std::uint64_t key = (static_cast<std::uint64_t>(src) << 32) | dst;
        if (!seen.emplace(key, true).second) continue;  // duplicate edge
        out.edges.emplace_back(src, dst);
    }
    if (out.edges.empty()) throw ParseError("no edges", line_no);
    return out;
}

EdgeList parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

EdgeList load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list: " + path);
    return parse_edge_list(in);
}

std::string render_edge_list(const EdgeList& edges) {
    std::ostringstream out;
    for (const auto& [s, t] : edges.edges) {
        out << edges.labels[s] << '\t' << edges.labels[t] << '\n';
    }
    return out.str();
}

WebGraph::WebGraph(const EdgeList& edges) {
    n_ = edges.node_count();
    labels_ = edges.labels;
    out_degree_.assign(n_, 0);
    std::vector<std::uint32_t> in_degree(n_, 0);
    for (const auto& [s, t] : edges.edges) {
        ++out_degree_[s];
        ++in_degree[t];
    }

    out_offsets_.assign(n_ + 1, 0);
    in_offsets_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        out_offsets_[i + 1] = out_offsets_[i] + out_degree_[i];
        in_offsets_[i + 1] = in_offsets_[i] + in_degree[i];
    }
    out_targets_.resize(edges.edges.size());
    in_sources_.resize(edges.edges.size());
    std::vector<std::size_t> out_cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (const auto& [s, t] : edges.edges) {
        out_targets_[out_cursor[s]++] = t;
        in_sources_[in_cursor[t]++] = s;
    }
    for (std::size_t i = 0; i < n_; ++i) {
        std::sort(out_targets_.begin() + out_offsets_[i], out_targets_.begin() + out_offsets_[i + 1]);
        std::sort(in_sources_.begin() + in_offsets_[i], in_sources_.begin() + in_offsets_[i + 1]);
    }
    for (NodeId i = 0; i < n_; ++i) {
        if (out_degree_[i] == 0) dangling_.push_back(i);
    }
}

bool WebGraph::has_edge(NodeId i, NodeId j) const {
    auto row = out_neighbors(i);
    return std::binary_search(row.begin(), row.end(), j);
}

double WebGraph::transition_prob(NodeId i, NodeId j) const {
    if (i >= n_ || j >= n_) throw ValidationError("transition_prob: node index out of range");
    if (out_degree_[i] == 0) return 1.0 / static_cast<double>(n_);
    if (has_edge(i, j)) return 1.0 / static_cast<double>(out_degree_[i]);
    return 0.0;
}

WebGraph build_graph(const EdgeList& edges) { return WebGraph(edges); }

} // namespace quasirank
