#include "quasirank/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <unordered_set>

#include "quasirank/errors.hpp"

namespace quasirank {

double Decomposition::exit_prob(std::size_t core_row, NodeId global_target) const {
    if (core_index(global_target) != npos) return 0.0;
    if (T.is_uniform_row(core_row)) return 1.0 / static_cast<double>(full_size);
    for (const auto& [t, v] : exit_edges[core_row]) {
        if (t == global_target) return v;
    }
    return 0.0;
}

std::size_t Decomposition::core_index(NodeId global) const {
    return global < core_index_.size() ? core_index_[global] : npos;
}

namespace {

// Multi-source backward reachability over the reverse adjacency.
std::vector<bool> reaches(const WebGraph& g, const std::vector<NodeId>& sources) {
    std::vector<bool> mark(g.size(), false);
    std::vector<NodeId> queue;
    for (NodeId s : sources) {
        if (!mark[s]) {
            mark[s] = true;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeId w : g.in_neighbors(queue[head])) {
            if (!mark[w]) {
                mark[w] = true;
                queue.push_back(w);
            }
        }
    }
    return mark;
}

} // namespace

Decomposition split_escc_pout(const WebGraph& g) {
    const std::size_t n = g.size();
    if (n == 0) throw ValidationError("no recurrent core");

    std::vector<bool> in_core(n, false);
    if (!g.dangling().empty()) {
        // A dangling node's artificial row reaches every node, so its SCC in
        // the augmented graph is exactly the set that reaches some dangling
        // node; computing that set avoids materializing n * |dangling| links.
        in_core = reaches(g, g.dangling());
    } else {
        SccLabeling s = tarjan_scc(g);
        for (NodeId v = 0; v < n; ++v) in_core[v] = s.component_of[v] == s.giant;
    }

    Decomposition d;
    d.full_size = n;
    for (NodeId v = 0; v < n; ++v) {
        if (in_core[v]) d.escc.push_back(v);
    }
    if (d.escc.empty()) throw ValidationError("no recurrent core");

    std::vector<bool> reaches_core = reaches(g, d.escc);
    for (NodeId v = 0; v < n; ++v) {
        if (in_core[v]) continue;
        if (reaches_core[v]) d.residual_in.push_back(v);
        else d.pout.push_back(v);
    }
    if (!d.residual_in.empty()) {
        std::cerr << "warning: " << d.residual_in.size()
                  << " node(s) reach the core without belonging to it; they are"
                     " reported separately and excluded from the core block\n";
    }

    d.core_index_.assign(n, Decomposition::npos);
    for (std::size_t k = 0; k < d.escc.size(); ++k) d.core_index_[d.escc[k]] = k;
    std::vector<std::size_t> pout_index(n, Decomposition::npos);
    for (std::size_t k = 0; k < d.pout.size(); ++k) pout_index[d.pout[k]] = k;

    const std::size_t n_core = d.escc.size();
    std::vector<std::vector<TransitionBlock::Entry>> t_rows(n_core);
    std::vector<std::uint8_t> t_uniform(n_core, 0);
    d.exit_edges.assign(n_core, {});
    for (std::size_t k = 0; k < n_core; ++k) {
        const NodeId v = d.escc[k];
        if (g.is_dangling(v)) {
            t_uniform[k] = 1;
            continue;
        }
        const double p = 1.0 / static_cast<double>(g.out_degree(v));
        for (NodeId w : g.out_neighbors(v)) {
            const std::size_t local = d.core_index_[w];
            if (local != Decomposition::npos) {
                t_rows[k].push_back({static_cast<std::uint32_t>(local), p});
            } else {
                d.exit_edges[k].emplace_back(w, p);
            }
        }
        if (t_rows[k].empty())
            throw InternalError("core row keeps no mass inside the core");
    }
    d.T = TransitionBlock::from_rows(n, std::move(t_rows), std::move(t_uniform));

    const std::size_t n_pout = d.pout.size();
    std::vector<std::vector<TransitionBlock::Entry>> q_rows(n_pout);
    for (std::size_t k = 0; k < n_pout; ++k) {
        const NodeId v = d.pout[k];
        if (g.is_dangling(v))
            throw InternalError("dangling node classified outside the core");
        const double p = 1.0 / static_cast<double>(g.out_degree(v));
        for (NodeId w : g.out_neighbors(v)) {
            const std::size_t local = pout_index[w];
            if (local == Decomposition::npos)
                throw InternalError("zero block violated: transition out of the absorbing part");
            q_rows[k].push_back({static_cast<std::uint32_t>(local), p});
        }
    }
    d.Q = TransitionBlock::from_rows(n, std::move(q_rows), std::vector<std::uint8_t>(n_pout, 0));

    return d;
}

ComponentStats component_stats(const WebGraph& g, const SccLabeling& s, const Decomposition& d) {
    ComponentStats st;
    st.total = g.size();
    st.escc_size = d.escc.size();
    st.pout_size = d.pout.size();

    auto bowtie = classify_bowtie(g, s);
    std::unordered_set<std::uint32_t> comps_in_out, comps_not_in_out;
    std::unordered_set<std::uint32_t> comps_in_pout, comps_not_in_pout;
    std::vector<bool> in_pout(g.size(), false);
    for (NodeId v : d.pout) in_pout[v] = true;

    for (NodeId v = 0; v < g.size(); ++v) {
        switch (bowtie[v]) {
            case BowtieClass::SCC: ++st.scc_size; break;
            case BowtieClass::IN: ++st.in_size; break;
            case BowtieClass::OUT: ++st.out_size; break;
            case BowtieClass::OTHER: break;
        }
        const std::uint32_t c = s.component_of[v];
        (bowtie[v] == BowtieClass::OUT ? comps_in_out : comps_not_in_out).insert(c);
        (in_pout[v] ? comps_in_pout : comps_not_in_pout).insert(c);
    }
    for (std::uint32_t c : comps_in_out) {
        if (!comps_not_in_out.contains(c)) ++st.scc_count_in_out;
    }
    for (std::uint32_t c : comps_in_pout) {
        if (!comps_not_in_pout.contains(c)) ++st.scc_count_in_pout;
    }
    return st;
}

} // namespace quasirank
