#include "qtomo/estimators.hpp"

#include <cmath>

#include "qtomo/numerics.hpp"

namespace qtomo {

LlsEstimate lls_estimate(const ExperimentDesign& design, const FrequencyVector& f) {
    if (!design.ic)
        throw NotInformationallyComplete("lls_estimate: design is not informationally complete");
    if (static_cast<int>(f.frequencies.size()) != design.total_outcomes())
        throw DimensionMismatch("lls_estimate: frequency vector length mismatch");
    std::vector<double> shifted(f.frequencies);
    for (int r = 0; r < design.total_outcomes(); ++r) shifted[r] -= design.a0[r];
    LlsEstimate est;
    est.s = design.left_inverse.matvec(shifted);
    est.rho = from_bloch(est.s, design.basis);
    return est;
}

CMatrix enm_estimate(const CMatrix& rho_lls) {
    const EigenDecomposition ed = eigh(rho_lls); // throws NonHermitianInput
    const std::vector<double> w = project_simplex(ed.eigenvalues);
    const int n = rho_lls.n;
    CMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += ed.eigenvectors(i, k) * w[k] * std::conj(ed.eigenvectors(j, k));
            out(i, j) = s;
        }
    // Exact Hermitian symmetrization; the projection is Hermitian by construction.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = m;
            out(j, i) = std::conj(m);
        }
    for (int i = 0; i < n; ++i) out(i, i) = out(i, i).real();
    return out;
}

ClsResult cls_estimate(const ExperimentDesign& design, const FrequencyVector& f,
                       int max_iters, double tol) {
    if (!design.ic)
        throw NotInformationallyComplete("cls_estimate: design is not informationally complete");

    const auto objective_residual = [&](const std::vector<double>& s) {
        std::vector<double> r = design.design_matrix.matvec(s);
        for (int i = 0; i < design.total_outcomes(); ++i)
            r[i] += design.a0[i] - f.frequencies[i];
        return r;
    };
    const auto project_physical = [&](const std::vector<double>& s) {
        return to_bloch(enm_estimate(from_bloch(s, design.basis)), design.basis);
    };

    const double lipschitz = 2.0 * design.sigma_max * design.sigma_max;
    const LlsEstimate lls = lls_estimate(design, f);
    std::vector<double> s = to_bloch(enm_estimate(lls.rho), design.basis);

    ClsResult out;
    out.converged = false;
    int it = 0;
    for (; it < max_iters; ++it) {
        const std::vector<double> r = objective_residual(s);
        std::vector<double> grad = design.design_matrix.transpose_matvec(r);
        std::vector<double> next(s);
        for (size_t i = 0; i < next.size(); ++i) next[i] -= 2.0 * grad[i] / lipschitz;
        next = project_physical(next);
        double step = 0.0;
        for (size_t i = 0; i < next.size(); ++i)
            step = std::max(step, std::abs(next[i] - s[i]));
        s = std::move(next);
        if (step <= tol) {
            out.converged = true;
            ++it;
            break;
        }
    }
    out.iterations = it;
    out.s = s;
    out.rho = enm_estimate(from_bloch(s, design.basis));
    out.residual = norm2(objective_residual(s));
    return out;
}

EstimateRecord estimate_all(const ExperimentDesign& design, const FrequencyVector& f,
                            bool with_cls) {
    EstimateRecord rec;
    const LlsEstimate lls = lls_estimate(design, f);
    rec.s_lls = lls.s;
    rec.rho_lls = lls.rho;
    rec.rho_enm = enm_estimate(lls.rho);
    rec.s_enm = to_bloch(rec.rho_enm, design.basis);
    if (with_cls) rec.cls = cls_estimate(design, f);
    return rec;
}

nlohmann::ordered_json estimate_to_json(const EstimateRecord& rec) {
    nlohmann::ordered_json j;
    j["s_lls"] = rec.s_lls;
    j["rho_lls"] = density_to_json(rec.rho_lls);
    j["s_enm"] = rec.s_enm;
    j["rho_enm"] = density_to_json(rec.rho_enm);
    if (rec.cls) {
        j["cls"]["rho"] = density_to_json(rec.cls->rho);
        j["cls"]["s"] = rec.cls->s;
        j["cls"]["iterations"] = rec.cls->iterations;
        j["cls"]["residual"] = rec.cls->residual;
        j["cls"]["converged"] = rec.cls->converged;
    }
    return j;
}

} // namespace qtomo
