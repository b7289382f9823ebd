#ifndef QTOMO_ESTIMATORS_HPP
#define QTOMO_ESTIMATORS_HPP

#include <json.hpp>
#include <optional>
#include <vector>

#include "qtomo/measurement.hpp"

namespace qtomo {

struct LlsEstimate {
    std::vector<double> s;
    CMatrix rho; // Hermitian trace-one, possibly unphysical
};

/// Linear least squares: s = L (f - a0) with the design's left inverse.
/// Requires an informationally complete design.
LlsEstimate lls_estimate(const ExperimentDesign& design, const FrequencyVector& f);

/// Frobenius-norm projection onto the density matrices: eigen-decompose,
/// project the spectrum onto the probability simplex, reassemble.
CMatrix enm_estimate(const CMatrix& rho_lls);

struct ClsResult {
    CMatrix rho;
    std::vector<double> s;
    int iterations = 0;
    double residual = 0.0; // final value of ||A s + a0 - f||_2
    bool converged = false;
};

/// Constrained least squares over physical states by projected gradient
/// with fixed step 1/L, L = 2 sigma_max(A)^2, started from the ENM point.
ClsResult cls_estimate(const ExperimentDesign& design, const FrequencyVector& f,
                       int max_iters = 10000, double tol = 1e-10);

struct EstimateRecord {
    std::vector<double> s_lls;
    CMatrix rho_lls;
    CMatrix rho_enm;
    std::vector<double> s_enm;
    std::optional<ClsResult> cls;
};

EstimateRecord estimate_all(const ExperimentDesign& design, const FrequencyVector& f,
                            bool with_cls = false);

nlohmann::ordered_json estimate_to_json(const EstimateRecord& rec);

} // namespace qtomo

#endif
