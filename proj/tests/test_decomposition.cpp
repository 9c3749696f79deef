#include <doctest.h>

#include <cmath>

#include "quasirank/decomposition.hpp"
#include "quasirank/errors.hpp"
#include "quasirank/scc.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace quasirank;
namespace qt = quasirank::testing;

TEST_CASE("tarjan on a cycle, a chain, and G3") {
    {
        const WebGraph g = build_graph(parse_edge_list(std::string("0 1\n1 2\n2 0\n")));
        const SccLabeling s = tarjan_scc(g);
        REQUIRE(s.count() == 1);
        CHECK(s.component_sizes[0] == 3);
    }
    {
        const WebGraph g = build_graph(parse_edge_list(std::string("0 1\n1 2\n")));
        const SccLabeling s = tarjan_scc(g);
        CHECK(s.count() == 3);
    }
    {
        const SccLabeling s = tarjan_scc(qt::make_g3());
        REQUIRE(s.count() == 2);
        CHECK(s.component_of[0] == s.component_of[1]);
        CHECK(s.component_of[2] != s.component_of[0]);
        CHECK(s.component_sizes[s.giant] == 2);
    }
}

TEST_CASE("tarjan is safe on a deep chain") {
    std::string text;
    for (int k = 0; k < 200000; ++k)
        text += std::to_string(k) + " " + std::to_string(k + 1) + "\n";
    const SccLabeling s = tarjan_scc(build_graph(parse_edge_list(text)));
    CHECK(s.count() == 200001);
}

TEST_CASE("bow-tie classes on G3") {
    const WebGraph g = qt::make_g3();
    const auto cls = classify_bowtie(g, tarjan_scc(g));
    CHECK(cls[0] == BowtieClass::SCC);
    CHECK(cls[1] == BowtieClass::SCC);
    CHECK(cls[2] == BowtieClass::OUT);
}

TEST_CASE("bow-tie tie rule on a star") {
    // all components are singletons; the giant resolves to the lowest
    // component index, which is the first completed (a sink)
    const WebGraph g = build_graph(parse_edge_list(std::string("0 1\n0 2\n")));
    const SccLabeling s = tarjan_scc(g);
    CHECK(s.giant == 0);
    const auto cls = classify_bowtie(g, s);
    std::size_t scc_nodes = 0, in_nodes = 0;
    for (auto c : cls) {
        scc_nodes += c == BowtieClass::SCC;
        in_nodes += c == BowtieClass::IN;
    }
    CHECK(scc_nodes == 1);
    CHECK(in_nodes == 1);
    CHECK(cls[0] == BowtieClass::IN);
}

TEST_CASE("bow-tie on a cycle with a tail") {
    const WebGraph g = build_graph(parse_edge_list(std::string("0 1\n1 2\n2 0\n2 3\n3 3\n")));
    const auto cls = classify_bowtie(g, tarjan_scc(g));
    CHECK(cls[0] == BowtieClass::SCC);
    CHECK(cls[1] == BowtieClass::SCC);
    CHECK(cls[2] == BowtieClass::SCC);
    CHECK(cls[3] == BowtieClass::OUT);
}

TEST_CASE("split on G3: blocks and exit sums") {
    const Decomposition d = split_escc_pout(qt::make_g3());
    CHECK(d.escc == std::vector<NodeId>{0, 1});
    CHECK(d.pout == std::vector<NodeId>{2});
    CHECK(d.residual_in.empty());
    CHECK(d.T.entry(0, 1) == doctest::Approx(1.0));
    CHECK(d.T.entry(1, 0) == doctest::Approx(0.5));
    CHECK(d.T.entry(0, 0) == 0.0);
    CHECK(d.T.entry(1, 1) == 0.0);
    CHECK(d.T.exit_sum(0) == doctest::Approx(0.0));
    CHECK(d.T.exit_sum(1) == doctest::Approx(0.5));
    CHECK(d.Q.entry(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("split on G4: dangling row is the uniform row") {
    const Decomposition d = split_escc_pout(qt::make_g4());
    CHECK(d.escc == std::vector<NodeId>{0, 1, 2});
    CHECK(d.pout == std::vector<NodeId>{3});
    const double expected[3][3] = {{0, 1, 0}, {1.0 / 3, 0, 1.0 / 3}, {0.25, 0.25, 0.25}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(d.T.entry(i, j) == doctest::Approx(expected[i][j]));
    CHECK(d.T.is_uniform_row(2));
    CHECK(d.T.exit_sum(0) == doctest::Approx(0.0));
    CHECK(d.T.exit_sum(1) == doctest::Approx(1.0 / 3));
    CHECK(d.T.exit_sum(2) == doctest::Approx(0.25));
    CHECK(d.exit_prob(1, 3) == doctest::Approx(1.0 / 3));
    CHECK(d.exit_prob(2, 3) == doctest::Approx(0.25));
    CHECK(d.exit_prob(0, 3) == 0.0);
}

TEST_CASE("a bare cycle keeps all mass in the core") {
    const WebGraph g = build_graph(parse_edge_list(std::string("0 1\n1 2\n2 0\n")));
    const Decomposition d = split_escc_pout(g);
    CHECK(d.escc.size() == 3);
    CHECK(d.pout.empty());
    CHECK(d.T.is_stochastic());
}

TEST_CASE("component stats on the fixtures") {
    {
        const WebGraph g = qt::make_g3();
        const auto st = component_stats(g, tarjan_scc(g), split_escc_pout(g));
        CHECK(st.total == 3);
        CHECK(st.escc_size == 2);
        CHECK(st.pout_size == 1);
        CHECK(st.scc_count_in_out == 1);
        CHECK(st.scc_count_in_pout == 1);
    }
    {
        const WebGraph g = qt::make_g4();
        const auto st = component_stats(g, tarjan_scc(g), split_escc_pout(g));
        CHECK(st.total == 4);
        CHECK(st.escc_size == 3);
        CHECK(st.pout_size == 1);
    }
}

namespace {

// Dense reachability closure over the full transition pattern, artificial
// uniform rows included: the reference for the core/absorbing split.
void brute_force_split(const WebGraph& g, std::vector<bool>& core, std::vector<bool>& pout) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (NodeId i = 0; i < n; ++i) {
        reach[i][i] = true;
        if (g.is_dangling(i)) {
            for (NodeId j = 0; j < n; ++j) reach[i][j] = true;
        } else {
            for (NodeId j : g.out_neighbors(i)) reach[i][j] = true;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (reach[k][j]) reach[i][j] = true;
        }

    core.assign(n, false);
    if (!g.dangling().empty()) {
        for (NodeId i = 0; i < n; ++i)
            for (NodeId dnode : g.dangling()) core[i] = core[i] || reach[i][dnode];
    } else {
        const SccLabeling s = tarjan_scc(g);
        for (NodeId i = 0; i < n; ++i) core[i] = s.component_of[i] == s.giant;
    }
    pout.assign(n, true);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (core[j] && reach[i][j]) pout[i] = false;
}

} // namespace

TEST_CASE("split agrees with the dense reachability oracle on small random graphs") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const WebGraph g = build_graph(
            parse_edge_list(qt::random_edge_text(seed, 3 + seed % 8, 2.0, 0.3)));
        const Decomposition d = split_escc_pout(g);
        std::vector<bool> core, pout;
        brute_force_split(g, core, pout);
        for (NodeId v = 0; v < g.size(); ++v) {
            const bool in_core = d.core_index(v) != Decomposition::npos;
            CHECK(in_core == core[v]);
        }
        std::vector<bool> in_pout(g.size(), false);
        for (NodeId v : d.pout) in_pout[v] = true;
        for (NodeId v = 0; v < g.size(); ++v) CHECK(in_pout[v] == pout[v]);
    }
}

TEST_CASE("structural invariants hold on random graphs") {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const WebGraph g = build_graph(
            parse_edge_list(qt::random_edge_text(seed, 4 + seed % 40, 3.0, 0.15)));
        const Decomposition d = split_escc_pout(g);

        // zero block: nothing flows from the absorbing part back to the rest
        for (NodeId p : d.pout) {
            for (NodeId v : d.escc) CHECK(g.transition_prob(p, v) == 0.0);
            for (NodeId v : d.residual_in) CHECK(g.transition_prob(p, v) == 0.0);
        }
        // row balance and positivity
        for (std::size_t i = 0; i < d.T.size(); ++i) {
            CHECK(std::abs(d.T.row_sum(i) + d.T.exit_sum(i) - 1.0) <= 1e-12);
            CHECK(d.T.row_sum(i) > 0.0);
        }
    }
}

TEST_CASE("exit rows scale linearly and the conditional kernel is stochastic") {
    const Decomposition d = split_escc_pout(qt::make_g4());
    const TransitionBlock bar = d.T.conditional();
    CHECK(bar.is_stochastic());
    const TransitionBlock half = d.T.scaled_exits(0.5);
    for (std::size_t i = 0; i < d.T.size(); ++i)
        CHECK(half.exit_sum(i) == doctest::Approx(0.5 * d.T.exit_sum(i)));
    const TransitionBlock full = d.T.scaled_exits(1.0);
    for (std::size_t i = 0; i < d.T.size(); ++i)
        CHECK(full.row_sum(i) == doctest::Approx(d.T.row_sum(i)));
}
