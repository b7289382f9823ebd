#ifndef QTOMO_VALIDATION_HPP
#define QTOMO_VALIDATION_HPP

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "qtomo/confidence.hpp"
#include "qtomo/estimators.hpp"

namespace qtomo {

/// Aggregate over many simulated experiments against a known true state.
struct TrialBatchResult {
    long long trials = 0;
    std::map<LossKind, long long> failures_per_loss; // Delta(est, true) > delta
    long long enm_vs_lls_violations = 0; // must stay 0
    std::map<LossKind, double> empirical_error_rate;
    std::map<LossKind, double> bound_one_minus_cl;
};

/// Runs `trials` simulated experiments (seeds base_seed + t), estimates
/// LLS/ENM, and counts per-loss threshold failures. Trials are fanned out
/// over threads by trial index; results are identical to sequential runs.
TrialBatchResult run_batch(const ExperimentDesign& design, const CMatrix& rho_true,
                           double delta, const std::vector<LossKind>& losses,
                           long long trials, std::uint64_t base_seed);

struct SweepCell {
    int k = 0;
    double eta = 0.0;
    long long n_total = 0;
    std::string state;
    LossKind loss = LossKind::Trace;
    long long trials = 0;
    double empirical_rate = 0.0;
    double bound = 0.0; // 1 - CL
    double margin = 0.0; // bound + 3 sigma - empirical
    bool flagged = false;
};

struct SweepTable {
    std::vector<SweepCell> cells;
    bool any_flagged() const;
    std::string to_csv() const;
    nlohmann::ordered_json to_json() const;
};

/// Empirical-vs-certified sweep over sample sizes and prepared states.
/// A cell is flagged when the empirical error rate exceeds the certified
/// bound by more than three binomial standard errors.
SweepTable coverage_sweep(int k, double eta, double delta,
                          const std::vector<long long>& n_grid,
                          const std::vector<std::pair<std::string, CMatrix>>& states,
                          long long trials_per_cell, std::uint64_t base_seed,
                          LossKind loss = LossKind::Trace);

} // namespace qtomo

#endif
