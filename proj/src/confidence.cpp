#include "qtomo/confidence.hpp"

#include <cmath>

namespace qtomo {

double b_constant(LossKind loss, int d) {
    const double dd = static_cast<double>(d);
    switch (loss) {
        case LossKind::HilbertSchmidt: return 8.0 / (dd * dd - 1.0);
        case LossKind::Trace: return 16.0 / (dd * (dd * dd - 1.0));
        case LossKind::Infidelity: return 4.0 / (dd * (dd * dd - 1.0));
    }
    return 0.0;
}

std::vector<double> c_alpha(const ExperimentDesign& design) {
    if (!design.ic)
        throw NotInformationallyComplete("c_alpha: design is not informationally complete");
    const int params = design.n_params();
    std::vector<double> c(params, 0.0);
    for (int a = 0; a < params; ++a) {
        double tot = 0.0;
        for (int j = 0; j < design.n_povms(); ++j) {
            double hi = design.left_inverse(a, design.offsets[j]);
            double lo = hi;
            for (int m = 1; m < design.povms[j].outcomes(); ++m) {
                const double v = design.left_inverse(a, design.offsets[j] + m);
                hi = std::max(hi, v);
                lo = std::min(lo, v);
            }
            tot += design.ratio[j] * (hi - lo) * (hi - lo);
        }
        c[a] = tot;
    }
    return c;
}

namespace {

ConfidenceReport build_report(const ExperimentDesign& design, LossKind loss, double delta,
                              long long n_total, double rate_factor) {
    if (delta <= 0.0) throw InvalidThreshold("error threshold delta must be positive");
    if (n_total < 1) throw InvalidTarget("N must be at least 1");
    ConfidenceReport r;
    r.loss = loss;
    r.delta = delta;
    r.n_total = n_total;
    r.b = b_constant(loss, design.dim());
    r.c = c_alpha(design);
    r.rate_factor = rate_factor;
    r.per_alpha_terms.resize(r.c.size());
    double sum = 0.0;
    for (size_t a = 0; a < r.c.size(); ++a) {
        const double term =
            2.0 * std::exp(-rate_factor * (r.b / r.c[a]) * delta * delta * n_total);
        r.per_alpha_terms[a] = term;
        sum += term;
    }
    r.cl = 1.0 - sum;
    r.cl_clamped = std::max(0.0, r.cl);
    return r;
}

} // namespace

ConfidenceReport confidence_level(const ExperimentDesign& design, LossKind loss,
                                  double delta, long long n_total) {
    return build_report(design, loss, delta, n_total, 1.0);
}

ConfidenceReport cls_confidence_level(const ExperimentDesign& design, LossKind loss,
                                      double delta, long long n_total) {
    if (!design.ic)
        throw NotInformationallyComplete(
            "cls_confidence_level: design is not informationally complete");
    const double ratio = design.sigma_min / design.sigma_max;
    return build_report(design, loss, delta, n_total, ratio * ratio);
}

double closed_form_cl_k(int k, double eta, double delta, long long n_total, LossKind loss) {
    if (k < 1) throw UnsupportedDimension("closed_form_cl_k requires k >= 1");
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidEfficiency("closed form requires eta in (0, 1]");
    if (delta <= 0.0) throw InvalidThreshold("error threshold delta must be positive");
    const int d = 1 << k;
    const double b = b_constant(loss, d);
    double sum = 0.0;
    double binom = 1.0; // C(k, l)
    for (int l = 0; l < k; ++l) {
        const double weight = std::pow(3.0, k - l) * binom;
        const double rate = b * std::pow(2.0, k - 3) * std::pow(eta, 2 * (k - l)) /
                            std::pow(3.0, k - l);
        sum += weight * std::exp(-rate * delta * delta * n_total);
        binom = binom * (k - l) / (l + 1);
    }
    return 1.0 - 2.0 * sum;
}

long long required_samples(int k, double eta, double delta, LossKind loss, double target_cl) {
    if (!(target_cl > 0.0 && target_cl < 1.0))
        throw InvalidTarget("target confidence level must lie in (0, 1)");
    const auto good = [&](long long n) {
        return closed_form_cl_k(k, eta, delta, n, loss) >= target_cl;
    };
    long long hi = 1;
    while (!good(hi)) {
        if (hi > (1LL << 60)) throw InvalidTarget("required sample size is astronomically large");
        hi *= 2;
    }
    long long lo = hi / 2; // cl(lo) < target (or lo == 0)
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (good(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double preparation_bound(double delta_target_est, double delta, LossKind loss,
                         const ErrorBudget& budget) {
    if (loss == LossKind::Infidelity)
        throw InvalidLoss("preparation_bound needs a distance loss; "
                          "use infidelity_preparation_bound");
    if (delta_target_est < 0.0 || delta <= 0.0 || budget.xi < 0.0 || budget.zeta < 0.0)
        throw InvalidThreshold("preparation bound inputs must be non-negative, delta > 0");
    return delta_target_est + budget.xi + budget.zeta + delta;
}

std::pair<double, double> infidelity_preparation_bound(double trace_dist_target_est,
                                                       double delta,
                                                       const ErrorBudget& budget) {
    const double bound =
        2.0 * (trace_dist_target_est + budget.xi + budget.zeta + delta);
    return {bound, 1.0 - bound};
}

nlohmann::ordered_json report_to_json(const ConfidenceReport& r) {
    nlohmann::ordered_json j;
    j["loss"] = loss_name(r.loss);
    j["delta"] = r.delta;
    j["N"] = r.n_total;
    j["b"] = r.b;
    j["c_alpha"] = r.c;
    j["per_alpha_terms"] = r.per_alpha_terms;
    j["cl"] = r.cl;
    j["cl_clamped"] = r.cl_clamped;
    j["rate_factor"] = r.rate_factor;
    return j;
}

} // namespace qtomo
