#include "qtomo/loss.hpp"

#include <cmath>

#include "qtomo/numerics.hpp"

namespace qtomo {

std::string loss_name(LossKind k) {
    switch (k) {
        case LossKind::HilbertSchmidt: return "hs";
        case LossKind::Trace: return "trace";
        case LossKind::Infidelity: return "infidelity";
    }
    return "?";
}

LossKind loss_from_name(const std::string& name) {
    if (name == "hs") return LossKind::HilbertSchmidt;
    if (name == "trace") return LossKind::Trace;
    if (name == "infidelity") return LossKind::Infidelity;
    throw InvalidLoss("unknown loss function: " + name);
}

double hs_distance(const CMatrix& a, const CMatrix& b) {
    if (a.n != b.n) throw DimensionMismatch("hs_distance: dimension mismatch");
    return (a - b).frobenius_norm() / std::sqrt(2.0);
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    if (a.n != b.n) throw DimensionMismatch("trace_distance: dimension mismatch");
    const EigenDecomposition ed = eigh(a - b);
    double s = 0.0;
    for (double e : ed.eigenvalues) s += std::abs(e);
    return 0.5 * s;
}

namespace {

CMatrix psd_sqrt(const CMatrix& m) {
    const EigenDecomposition ed = eigh(m);
    const int n = m.n;
    for (double e : ed.eigenvalues)
        if (e < -1e-10)
            throw UnphysicalInput("infidelity: argument is not positive-semidefinite");
    CMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) {
                const double e = std::max(0.0, ed.eigenvalues[k]);
                s += ed.eigenvectors(i, k) * std::sqrt(e) * std::conj(ed.eigenvectors(j, k));
            }
            out(i, j) = s;
        }
    return out;
}

} // namespace

double infidelity(const CMatrix& a, const CMatrix& b) {
    if (a.n != b.n) throw DimensionMismatch("infidelity: dimension mismatch");
    const EigenDecomposition edb = eigh(b);
    if (edb.eigenvalues.back() < -1e-10)
        throw UnphysicalInput("infidelity: argument is not positive-semidefinite");
    const CMatrix ra = psd_sqrt(a);
    const CMatrix inner = ra * b * ra;
    const EigenDecomposition ed = eigh(0.5 * (inner + inner.adjoint()));
    double root_fid = 0.0;
    for (double e : ed.eigenvalues) root_fid += std::sqrt(std::max(0.0, e));
    return 1.0 - root_fid * root_fid;
}

double linf_distance(const std::vector<double>& s1, const std::vector<double>& s2) {
    if (s1.size() != s2.size()) throw DimensionMismatch("linf_distance: length mismatch");
    double m = 0.0;
    for (size_t i = 0; i < s1.size(); ++i) m = std::max(m, std::abs(s1[i] - s2[i]));
    return m;
}

double apply_loss(LossKind k, const CMatrix& a, const CMatrix& b) {
    switch (k) {
        case LossKind::HilbertSchmidt: return hs_distance(a, b);
        case LossKind::Trace: return trace_distance(a, b);
        case LossKind::Infidelity: return infidelity(a, b);
    }
    return 0.0;
}

} // namespace qtomo
