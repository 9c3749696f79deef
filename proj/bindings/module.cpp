#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasirank/album.hpp"
#include "quasirank/conditioned_walk.hpp"
#include "quasirank/decomposition.hpp"
#include "quasirank/errors.hpp"
#include "quasirank/graph.hpp"
#include "quasirank/io.hpp"
#include "quasirank/perturbation.hpp"
#include "quasirank/rank_compare.hpp"
#include "quasirank/spectral.hpp"

namespace py = pybind11;
using namespace quasirank;

namespace {

// Bundle every core-domain measure for a graph in one call; the common way
// the module is used from python.
py::dict rank_all(const WebGraph& g, double damping, double tol, std::size_t max_iter) {
    SolverOptions opt{tol, max_iter};
    const Decomposition d = split_escc_pout(g);
    const TransitionBlock& T = d.T;

    py::dict out;
    auto labels_of = [&](const std::vector<NodeId>& ids) {
        std::vector<std::string> ls;
        ls.reserve(ids.size());
        for (NodeId v : ids) ls.push_back(g.label(v));
        return ls;
    };
    out["escc"] = labels_of(d.escc);
    out["pout"] = labels_of(d.pout);
    out["residual_in"] = labels_of(d.residual_in);

    const CentralityVector pr = pagerank(g, damping, opt);
    out["pagerank"] = pr.scores;

    const SpectralResult qs = quasi_stationary(T, opt);
    const TransitionBlock T_bar = bar_transition(T);
    const CentralityVector pi_bar = bar_stationary(T_bar, opt);
    const RightVectors rv = right_eigenvector(T, pi_bar, qs.pi_tilde, opt);
    out["lambda1"] = qs.lambda1;
    out["lambda1_exit_identity"] = lambda_from_exit(qs.pi_tilde, T);
    out["pi_tilde"] = qs.pi_tilde.scores;
    out["pi_bar"] = pi_bar.scores;
    out["pi_check"] = check_stationary(qs.pi_tilde, rv.u_tilde).scores;
    out["u"] = rv.u;
    bool leaks = false;
    for (std::size_t i = 0; i < T.size() && !leaks; ++i) leaks = T.exit_sum(i) > 1e-15;
    if (leaks) out["pi_hat"] = pseudo_stationary(T, opt).scores;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Parameter-free quasi-stationary centrality measures over directed graphs";

    py::register_exception<ParseError>(m, "GraphParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "GraphValidationError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "SolverConvergenceError", PyExc_RuntimeError);
    py::register_exception<StatisticalError>(m, "SimulationError", PyExc_RuntimeError);

    py::class_<WebGraph>(m, "WebGraph")
        .def_property_readonly("size", &WebGraph::size)
        .def_property_readonly("edge_count", &WebGraph::edge_count)
        .def("out_degree", &WebGraph::out_degree)
        .def("is_dangling", &WebGraph::is_dangling)
        .def("label", &WebGraph::label)
        .def_property_readonly("dangling",
                               [](const WebGraph& g) { return g.dangling(); })
        .def("transition_prob", &WebGraph::transition_prob)
        .def("out_neighbors", [](const WebGraph& g, NodeId i) {
            auto row = g.out_neighbors(i);
            return std::vector<NodeId>(row.begin(), row.end());
        });

    m.def("parse_graph",
          [](const std::string& text) { return build_graph(parse_edge_list(text)); },
          py::arg("text"), "Build a graph from edge-list text (one 'src dst' pair per line).");
    m.def("load_graph",
          [](const std::string& path) { return build_graph(load_edge_list(path)); },
          py::arg("path"));

    m.def("decompose", [](const WebGraph& g) {
        const Decomposition d = split_escc_pout(g);
        const SccLabeling s = tarjan_scc(g);
        const ComponentStats st = component_stats(g, s, d);
        py::dict out;
        auto labels_of = [&](const std::vector<NodeId>& ids) {
            std::vector<std::string> ls;
            for (NodeId v : ids) ls.push_back(g.label(v));
            return ls;
        };
        out["escc"] = labels_of(d.escc);
        out["pout"] = labels_of(d.pout);
        out["residual_in"] = labels_of(d.residual_in);
        out["stats"] = py::dict(
            py::arg("total") = st.total, py::arg("scc_size") = st.scc_size,
            py::arg("in_size") = st.in_size, py::arg("out_size") = st.out_size,
            py::arg("escc_size") = st.escc_size, py::arg("pout_size") = st.pout_size,
            py::arg("scc_count_in_out") = st.scc_count_in_out,
            py::arg("scc_count_in_pout") = st.scc_count_in_pout);
        out["t_row_sums"] = d.T.row_sums();
        out["t_exit_sums"] = d.T.exit_sums();
        return out;
    });

    m.def("rank_all", &rank_all, py::arg("graph"), py::arg("damping") = 0.85,
          py::arg("tol") = 1e-10, py::arg("max_iter") = 1'000'000);

    m.def("pagerank",
          [](const WebGraph& g, double damping, double tol, std::size_t max_iter) {
              return pagerank(g, damping, SolverOptions{tol, max_iter}).scores;
          },
          py::arg("graph"), py::arg("damping") = 0.85, py::arg("tol") = 1e-10,
          py::arg("max_iter") = 1'000'000);

    m.def("kendall_tau", [](const std::vector<double>& a, const std::vector<double>& b) {
        const TauResult r = kendall_tau(a, b);
        return py::make_tuple(r.tau, r.variant == TauVariant::TauB ? "tau_b" : "tau_a");
    });

    m.def("generate_album_graph",
          [](std::size_t albums, std::size_t pages, std::size_t hubs, double density,
             std::uint64_t seed, std::size_t leaves, std::size_t exits) {
              const AlbumGraph ag = generate_album_graph(
                  {albums, pages, hubs, density, seed, leaves, exits});
              py::dict out;
              out["graph"] = build_graph(ag.edges);
              out["edge_text"] = render_edge_list(ag.edges);
              out["hubs"] = ag.hubs;
              out["indexes"] = ag.indexes;
              out["interiors"] = ag.interiors;
              out["leaves"] = ag.leaves;
              out["exits"] = ag.exits;
              return out;
          },
          py::arg("albums") = 1, py::arg("pages") = 3, py::arg("hubs") = 2,
          py::arg("density") = 1.0, py::arg("seed") = 0, py::arg("leaves") = 0,
          py::arg("exits") = 0);

    m.def("simulate_conditioned",
          [](const WebGraph& g, const std::string& start, std::size_t horizon,
             std::uint64_t samples, std::uint64_t seed) {
              const Decomposition d = split_escc_pout(g);
              NodeId global = 0;
              bool found = false;
              for (NodeId v = 0; v < g.size(); ++v) {
                  if (g.label(v) == start) {
                      global = v;
                      found = true;
                      break;
                  }
              }
              if (!found) throw ValidationError("unknown start node: " + start);
              const std::size_t local = d.core_index(global);
              if (local == Decomposition::npos)
                  throw ValidationError("start node lies outside the core: " + start);
              const auto rows = simulate_conditioned(d.T, local, horizon, samples, seed);
              const ConditionedKernel ck(d.T, horizon);
              py::list out;
              for (const auto& r : rows) {
                  py::dict e;
                  e["target"] = g.label(d.escc[r.target]);
                  e["analytic"] = ck.entry(r.start, r.target);
                  e["estimate"] = r.estimate;
                  e["std_error"] = r.std_error;
                  e["survivors"] = r.survivors;
                  out.append(e);
              }
              return out;
          },
          py::arg("graph"), py::arg("start"), py::arg("horizon"), py::arg("samples"),
          py::arg("seed") = 0);

    m.def("expansion_report", [](const WebGraph& g) {
        const Decomposition d = split_escc_pout(g);
        const ExpansionReport r = expansion_report(PerturbationFamily::from_block(d.T));
        py::dict out;
        out["epsilons"] = r.epsilons;
        py::dict res;
        for (const auto& [name, values] : r.residuals) res[name.c_str()] = values;
        out["residuals"] = res;
        py::dict fit;
        for (const auto& [name, slope] : r.fitted_exponents) fit[name.c_str()] = slope;
        out["fitted_exponents"] = fit;
        return out;
    });
}
