#include "quasirank/scc.hpp"

#include <algorithm>
#include <limits>

#include "quasirank/errors.hpp"

namespace quasirank {

namespace {
constexpr std::uint32_t UNVISITED = std::numeric_limits<std::uint32_t>::max();
}

SccLabeling tarjan_scc(const WebGraph& g) {
    const std::size_t n = g.size();
    SccLabeling out;
    out.component_of.assign(n, UNVISITED);

    std::vector<std::uint32_t> index(n, UNVISITED);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    // explicit DFS frame: (node, position in its adjacency row)
    std::vector<std::pair<NodeId, std::size_t>> frames;
    std::uint32_t counter = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != UNVISITED) continue;
        frames.emplace_back(root, 0);
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            auto& [v, cursor] = frames.back();
            auto row = g.out_neighbors(v);
            if (cursor < row.size()) {
                NodeId w = row[cursor++];
                if (index[w] == UNVISITED) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::uint32_t comp = static_cast<std::uint32_t>(out.component_sizes.size());
                    std::uint32_t size = 0;
                    NodeId w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        out.component_of[w] = comp;
                        ++size;
                    } while (w != v);
                    out.component_sizes.push_back(size);
                }
                NodeId done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    NodeId parent = frames.back().first;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
                }
            }
        }
    }

    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < out.component_sizes.size(); ++c) {
        if (out.component_sizes[c] > out.component_sizes[best]) best = c;
    }
    out.giant = best;
    return out;
}

std::vector<BowtieClass> classify_bowtie(const WebGraph& g, const SccLabeling& s) {
    const std::size_t n = g.size();
    if (n == 0) throw ValidationError("classify_bowtie: empty graph");

    std::vector<BowtieClass> cls(n, BowtieClass::OTHER);
    std::vector<bool> fwd(n, false), bwd(n, false);
    std::vector<NodeId> queue;

    for (NodeId v = 0; v < n; ++v) {
        if (s.component_of[v] == s.giant) {
            cls[v] = BowtieClass::SCC;
            fwd[v] = bwd[v] = true;
            queue.push_back(v);
        }
    }
    // forward sweep: nodes reachable from the giant SCC
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeId w : g.out_neighbors(queue[head])) {
            if (!fwd[w]) {
                fwd[w] = true;
                queue.push_back(w);
            }
        }
    }
    // backward sweep: nodes that reach the giant SCC
    queue.clear();
    for (NodeId v = 0; v < n; ++v) {
        if (s.component_of[v] == s.giant) queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeId w : g.in_neighbors(queue[head])) {
            if (!bwd[w]) {
                bwd[w] = true;
                queue.push_back(w);
            }
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (cls[v] == BowtieClass::SCC) continue;
        if (bwd[v]) cls[v] = BowtieClass::IN;
        else if (fwd[v]) cls[v] = BowtieClass::OUT;
    }
    return cls;
}

} // namespace quasirank
