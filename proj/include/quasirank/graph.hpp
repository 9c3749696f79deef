#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace quasirank {

using NodeId = std::uint32_t;

/// Deduplicated directed edge list with the label -> dense id mapping.
/// Ids are assigned in first-appearance order (source before target per line).
struct EdgeList {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::string> labels;                     // id -> label
    std::unordered_map<std::string, NodeId> label_map;   // label -> id

    std::size_t node_count() const { return labels.size(); }
};

/// Parse "source target" lines. '#' starts a comment line, blank lines are
/// ignored, duplicate edges collapse to one. Throws ParseError on a line
/// that does not hold exactly two tokens, or when no edges remain.
EdgeList parse_edge_list(std::istream& in);
EdgeList parse_edge_list(const std::string& text);
EdgeList load_edge_list(const std::string& path);

/// Write an EdgeList back out in the ingestion format (one edge per line).
std::string render_edge_list(const EdgeList& edges);

/// Immutable directed graph in compressed sparse row form, forward and
/// reverse. Row targets are sorted. Nodes with no out-links are dangling;
/// their transition row is the uniform 1/n row, kept virtual.
class WebGraph {
public:
    explicit WebGraph(const EdgeList& edges);

    std::size_t size() const { return n_; }
    std::size_t edge_count() const { return out_targets_.size(); }

    std::span<const NodeId> out_neighbors(NodeId i) const {
        return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
    }
    std::span<const NodeId> in_neighbors(NodeId i) const {
        return {in_sources_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
    }

    std::uint32_t out_degree(NodeId i) const { return out_degree_[i]; }
    bool is_dangling(NodeId i) const { return out_degree_[i] == 0; }
    const std::vector<NodeId>& dangling() const { return dangling_; }
    bool has_edge(NodeId i, NodeId j) const;

    const std::string& label(NodeId i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// One entry of the full transition matrix: 1/d_i along a link, 1/n from
    /// a dangling row, 0 otherwise. Throws ValidationError on bad indices.
    double transition_prob(NodeId i, NodeId j) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> out_offsets_;
    std::vector<NodeId> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<NodeId> in_sources_;
    std::vector<std::uint32_t> out_degree_;
    std::vector<NodeId> dangling_;
    std::vector<std::string> labels_;
};

WebGraph build_graph(const EdgeList& edges);

} // namespace quasirank
