#ifndef QTOMO_CONFIDENCE_HPP
#define QTOMO_CONFIDENCE_HPP

#include <json.hpp>
#include <utility>
#include <vector>

#include "qtomo/loss.hpp"
#include "qtomo/measurement.hpp"

namespace qtomo {

/// User-supplied systematic (xi) and numerical (zeta) error budgets.
struct ErrorBudget {
    double xi = 0.0;
    double zeta = 0.0;
};

/// Certificate for one (loss, delta, N) triple:
/// cl = 1 - sum_alpha 2 exp(-(b/c_alpha) delta^2 N), possibly negative
/// (valid but vacuous); cl_clamped = max(cl, 0).
struct ConfidenceReport {
    LossKind loss = LossKind::Trace;
    double delta = 0.0;
    long long n_total = 0;
    double b = 0.0;
    std::vector<double> c;
    std::vector<double> per_alpha_terms;
    double cl = 0.0;
    double cl_clamped = 0.0;
    double rate_factor = 1.0; // (sigma_min/sigma_max)^2 for the CLS variant
};

/// Loss-dependent constant: 8/(d^2-1) for HS, 16/(d(d^2-1)) for trace,
/// 4/(d(d^2-1)) for infidelity.
double b_constant(LossKind loss, int d);

/// c_alpha = sum_j r^(j) (max_m L[alpha,(j,m)] - min_m L[alpha,(j,m)])^2,
/// with L the design's left inverse; max/min over all outcomes of POVM j,
/// zero-probability outcomes included.
std::vector<double> c_alpha(const ExperimentDesign& design);

ConfidenceReport confidence_level(const ExperimentDesign& design, LossKind loss,
                                  double delta, long long n_total);

/// Exponent multiplied by (sigma_min(A)/sigma_max(A))^2; never exceeds the
/// plain confidence level.
ConfidenceReport cls_confidence_level(const ExperimentDesign& design, LossKind loss,
                                      double delta, long long n_total);

/// k-qubit closed form with detection efficiency eta:
/// 1 - 2 sum_l 3^{k-l} C(k,l) exp[-b 2^{k-3} eta^{2(k-l)} delta^2 N / 3^{k-l}].
double closed_form_cl_k(int k, double eta, double delta, long long n_total, LossKind loss);

/// Smallest N with closed_form_cl_k >= target_cl, by bisection.
long long required_samples(int k, double eta, double delta, LossKind loss, double target_cl);

/// Certified preparation bound Delta(target, true) <= measured + xi + zeta + delta,
/// valid for the distance losses only (use infidelity_preparation_bound otherwise).
double preparation_bound(double delta_target_est, double delta, LossKind loss,
                         const ErrorBudget& budget);

/// (infidelity bound, fidelity bound) from a TRACE-distance threshold:
/// infidelity <= 2 (trace_dist + xi + zeta + delta).
std::pair<double, double> infidelity_preparation_bound(double trace_dist_target_est,
                                                       double delta,
                                                       const ErrorBudget& budget);

nlohmann::ordered_json report_to_json(const ConfidenceReport& r);

} // namespace qtomo

#endif
