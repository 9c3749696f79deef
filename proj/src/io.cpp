#include "quasirank/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quasirank/errors.hpp"

namespace fs = std::filesystem;

namespace quasirank {

std::string format_score(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string centrality_csv(const CentralityVector& v, const LabelFn& label) {
    const Ranking r = Ranking::of(v.scores);
    std::ostringstream out;
    out << "node_label,score,rank\n";
    for (std::size_t k = 0; k < r.order.size(); ++k) {
        const std::size_t pos = r.order[k];
        out << label(v.nodes[pos]) << ',' << format_score(v.scores[pos]) << ',' << (k + 1)
            << '\n';
    }
    return out.str();
}

std::string stats_json(const ComponentStats& s) {
    nlohmann::ordered_json j;
    j["total"] = s.total;
    j["scc_size"] = s.scc_size;
    j["in_size"] = s.in_size;
    j["out_size"] = s.out_size;
    j["escc_size"] = s.escc_size;
    j["pout_size"] = s.pout_size;
    j["scc_count_in_out"] = s.scc_count_in_out;
    j["scc_count_in_pout"] = s.scc_count_in_pout;
    return j.dump(2) + "\n";
}

std::string partition_csv(const Decomposition& d, const LabelFn& label) {
    std::ostringstream out;
    out << "node_label,class\n";
    for (NodeId v : d.escc) out << label(v) << ",ESCC\n";
    for (NodeId v : d.pout) out << label(v) << ",POUT\n";
    for (NodeId v : d.residual_in) out << label(v) << ",RESIDUAL_IN\n";
    return out.str();
}

std::string spectral_json(const SpectralResult& r, double lambda_exit) {
    nlohmann::ordered_json j;
    j["lambda1"] = r.lambda1;
    j["lambda1_exit_identity"] = lambda_exit;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    return j.dump(2) + "\n";
}

std::string tau_matrix_csv(const TauMatrix& t) {
    std::ostringstream out;
    out << "measure";
    for (const auto& m : t.measures) out << ',' << m;
    out << '\n';
    for (std::size_t i = 0; i < t.measures.size(); ++i) {
        out << t.measures[i];
        for (std::size_t j = 0; j < t.measures.size(); ++j)
            out << ',' << format_score(t.values[i][j]);
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    out << "c,tau\n";
    for (const auto& [c, tau] : rows) out << format_score(c) << ',' << format_score(tau) << '\n';
    return out.str();
}

std::string divergence_csv(const std::vector<RankShift>& rows, const LabelFn& label) {
    std::ostringstream out;
    out << "node_label,rank_pr,rank_qs,delta,flagged\n";
    for (const auto& r : rows) {
        out << label(r.node) << ',' << r.rank_reference << ',' << r.rank_quasi << ',' << r.delta
            << ',' << (r.flagged ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string expansion_csv(const ExpansionReport& r) {
    std::ostringstream out;
    out << "epsilon";
    for (const auto& [name, _] : r.residuals) out << ',' << name;
    out << '\n';
    for (std::size_t k = 0; k < r.epsilons.size(); ++k) {
        out << format_score(r.epsilons[k]);
        for (const auto& [_, res] : r.residuals) out << ',' << format_score(res[k]);
        out << '\n';
    }
    return out.str();
}

std::string walk_csv(const std::vector<WalkEstimate>& rows, const std::vector<double>& analytic,
                     const LabelFn& label) {
    if (rows.size() != analytic.size())
        throw ValidationError("walk_csv: analytic column size mismatch");
    std::ostringstream out;
    out << "i,j,N,analytic,estimate,std_error,z_score\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        const double z = r.std_error > 0.0 ? (r.estimate - analytic[k]) / r.std_error : 0.0;
        out << label(static_cast<NodeId>(r.start)) << ','
            << label(static_cast<NodeId>(r.target)) << ',' << r.horizon << ','
            << format_score(analytic[k]) << ',' << format_score(r.estimate) << ','
            << format_score(r.std_error) << ',' << format_score(z) << '\n';
    }
    return out.str();
}

OutputStage::OutputStage(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

OutputStage::~OutputStage() {
    if (committed_) return;
    for (const auto& [_, temp] : staged_) {
        std::error_code ec;
        fs::remove(temp, ec);
    }
}

void OutputStage::add(const std::string& filename, const std::string& content) {
    const std::string temp = (fs::path(dir_) / (".tmp." + filename)).string();
    std::ofstream out(temp, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + temp);
    out << content;
    out.close();
    if (!out) throw ValidationError("write failed for " + temp);
    staged_.emplace_back((fs::path(dir_) / filename).string(), temp);
}

void OutputStage::commit() {
    for (const auto& [final_name, temp] : staged_) {
        fs::rename(temp, final_name);
    }
    committed_ = true;
}

} // namespace quasirank
