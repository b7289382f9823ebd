#include "qtomo/validation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qtomo/loss.hpp"
#include "qtomo/rng.hpp"

namespace qtomo {

TrialBatchResult run_batch(const ExperimentDesign& design, const CMatrix& rho_true,
                           double delta, const std::vector<LossKind>& losses,
                           long long trials, std::uint64_t base_seed) {
    if (trials < 1) throw InvalidTarget("run_batch: trials must be at least 1");
    if (!is_physical(rho_true)) throw UnphysicalState("run_batch: true state is unphysical");

    const std::vector<double> s_true = to_bloch(rho_true, design.basis);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<long long>(trials, static_cast<long long>(hw)));

    struct Partial {
        std::vector<long long> failures; // indexed like `losses`
        long long violations = 0;
    };
    std::vector<Partial> parts(workers);
    for (Partial& p : parts) p.failures.assign(losses.size(), 0);

    std::atomic<long long> next_trial{0};
    auto work = [&](unsigned w) {
        Partial& part = parts[w];
        for (;;) {
            const long long t = next_trial.fetch_add(1);
            if (t >= trials) break;
            const FrequencyVector f = sample(design, rho_true, base_seed + t);
            const LlsEstimate lls = lls_estimate(design, f);
            const CMatrix enm = enm_estimate(lls.rho);
            const std::vector<double> s_enm = to_bloch(enm, design.basis);
            double d_lls = 0.0, d_enm = 0.0;
            for (size_t i = 0; i < s_true.size(); ++i) {
                d_lls += (lls.s[i] - s_true[i]) * (lls.s[i] - s_true[i]);
                d_enm += (s_enm[i] - s_true[i]) * (s_enm[i] - s_true[i]);
            }
            if (std::sqrt(d_enm) > std::sqrt(d_lls) + 1e-10) ++part.violations;
            for (size_t li = 0; li < losses.size(); ++li)
                if (apply_loss(losses[li], enm, rho_true) > delta) ++part.failures[li];
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (std::thread& th : pool) th.join();

    TrialBatchResult out;
    out.trials = trials;
    for (size_t li = 0; li < losses.size(); ++li) {
        long long fails = 0;
        for (const Partial& p : parts) fails += p.failures[li];
        out.failures_per_loss[losses[li]] = fails;
        out.empirical_error_rate[losses[li]] =
            static_cast<double>(fails) / static_cast<double>(trials);
        const ConfidenceReport rep =
            confidence_level(design, losses[li], delta, design.total);
        out.bound_one_minus_cl[losses[li]] = 1.0 - rep.cl;
    }
    for (const Partial& p : parts) out.enm_vs_lls_violations += p.violations;
    return out;
}

bool SweepTable::any_flagged() const {
    for (const SweepCell& c : cells)
        if (c.flagged) return true;
    return false;
}

std::string SweepTable::to_csv() const {
    std::string out = "k,eta,N,state,loss,trials,empirical_rate,bound,margin,flagged\n";
    char line[256];
    for (const SweepCell& c : cells) {
        std::snprintf(line, sizeof line, "%d,%.17g,%lld,%s,%s,%lld,%.17g,%.17g,%.17g,%d\n",
                      c.k, c.eta, c.n_total, c.state.c_str(), loss_name(c.loss).c_str(),
                      c.trials, c.empirical_rate, c.bound, c.margin, c.flagged ? 1 : 0);
        out += line;
    }
    return out;
}

nlohmann::ordered_json SweepTable::to_json() const {
    nlohmann::ordered_json out;
    out["cells"] = nlohmann::ordered_json::array();
    for (const SweepCell& c : cells) {
        nlohmann::ordered_json j;
        j["k"] = c.k;
        j["eta"] = c.eta;
        j["N"] = c.n_total;
        j["state"] = c.state;
        j["loss"] = loss_name(c.loss);
        j["trials"] = c.trials;
        j["empirical_rate"] = c.empirical_rate;
        j["bound"] = c.bound;
        j["margin"] = c.margin;
        j["flagged"] = c.flagged;
        out["cells"].push_back(std::move(j));
    }
    out["any_flagged"] = any_flagged();
    return out;
}

SweepTable coverage_sweep(int k, double eta, double delta,
                          const std::vector<long long>& n_grid,
                          const std::vector<std::pair<std::string, CMatrix>>& states,
                          long long trials_per_cell, std::uint64_t base_seed,
                          LossKind loss) {
    SweepTable table;
    const long long settings = static_cast<long long>(std::pow(3.0, k));
    std::uint64_t cell_index = 0;
    for (long long n_total : n_grid) {
        const long long per = std::max<long long>(1, n_total / settings);
        const ExperimentDesign design = pauli_design(k, eta, per);
        for (const auto& [name, rho] : states) {
            const TrialBatchResult batch =
                run_batch(design, rho, delta, {loss}, trials_per_cell,
                          base_seed ^ hash_u64(cell_index));
            SweepCell cell;
            cell.k = k;
            cell.eta = eta;
            cell.n_total = design.total;
            cell.state = name;
            cell.loss = loss;
            cell.trials = trials_per_cell;
            cell.empirical_rate = batch.empirical_error_rate.at(loss);
            cell.bound = batch.bound_one_minus_cl.at(loss);
            const double p = std::min(1.0, std::max(0.0, cell.bound));
            const double sigma =
                std::sqrt(p * (1.0 - p) / static_cast<double>(trials_per_cell));
            cell.margin = cell.bound + 3.0 * sigma - cell.empirical_rate;
            cell.flagged = cell.empirical_rate > cell.bound + 3.0 * sigma;
            table.cells.push_back(std::move(cell));
            ++cell_index;
        }
    }
    return table;
}

} // namespace qtomo
