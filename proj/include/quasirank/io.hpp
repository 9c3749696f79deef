#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quasirank/conditioned_walk.hpp"
#include "quasirank/decomposition.hpp"
#include "quasirank/perturbation.hpp"
#include "quasirank/rank_compare.hpp"
#include "quasirank/spectral.hpp"

namespace quasirank {

/// 17 significant digits: doubles round-trip exactly.
std::string format_score(double x);

using LabelFn = std::function<std::string(NodeId)>;

std::string centrality_csv(const CentralityVector& v, const LabelFn& label);
std::string stats_json(const ComponentStats& s);
std::string partition_csv(const Decomposition& d, const LabelFn& label);
std::string spectral_json(const SpectralResult& r, double lambda_exit);
std::string tau_matrix_csv(const TauMatrix& t);
std::string sweep_csv(const std::vector<std::pair<double, double>>& rows);
std::string divergence_csv(const std::vector<RankShift>& rows, const LabelFn& label);
std::string expansion_csv(const ExpansionReport& r);

/// Walk table rows pair each Monte-Carlo estimate with its analytic value.
std::string walk_csv(const std::vector<WalkEstimate>& rows, const std::vector<double>& analytic,
                     const LabelFn& label);

/// All-or-nothing output writing: every file goes to a temp name first and
/// is renamed on commit; without a commit the temps are removed, so a
/// failed run leaves no partial outputs behind.
class OutputStage {
public:
    explicit OutputStage(std::string dir);
    ~OutputStage();
    OutputStage(const OutputStage&) = delete;
    OutputStage& operator=(const OutputStage&) = delete;

    void add(const std::string& filename, const std::string& content);
    void commit();

private:
    std::string dir_;
    std::vector<std::pair<std::string, std::string>> staged_;  // (final, temp)
    bool committed_ = false;
};

} // namespace quasirank
