#include "qtomo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qtomo {

CMatrix EigenDecomposition::reconstruct() const {
    const int n = eigenvectors.n;
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
            m(i, j) = s;
        }
    return m;
}

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

EigenDecomposition eigh(const CMatrix& m) {
    if (!m.is_hermitian(1e-12))
        throw NonHermitianInput("eigh: input violates the Hermiticity tolerance");

    const int n = m.n;
    // Symmetrize exactly so rounding in the caller cannot accumulate.
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    CMatrix v = CMatrix::identity(n);

    const double scale = std::max(1e-300, a.frobenius_norm());
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_norm(a) <= 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                const double babs = std::abs(b);
                if (babs <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(b);
                const double theta = 0.5 * std::atan2(2.0 * babs, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // Unitary J acting on columns (p, q):
                //   col_p <- c*col_p + s*e^{-i phi}*col_q
                //   col_q <- -s*col_p + c*e^{-i phi}*col_q
                const cplx sp = s * std::polar(1.0, -phi);
                const cplx cp = c * std::polar(1.0, -phi);
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + sp * aiq;
                    a(i, q) = -s * aip + cp * aiq;
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + sp * viq;
                    v(i, q) = -s * vip + cp * viq;
                }
                const cplx spc = std::conj(sp);
                const cplx cpc = std::conj(cp);
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + spc * aqj;
                    a(q, j) = -s * apj + cpc * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return diag[l] > diag[r]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::pair<double, double> extreme_singular_values(const RMatrix& a) {
    const RMatrix g = a.gram();
    CMatrix gc(g.cols);
    for (int i = 0; i < g.cols; ++i)
        for (int j = 0; j < g.cols; ++j) gc(i, j) = g(i, j);
    const EigenDecomposition ed = eigh(gc);
    const double hi = std::sqrt(std::max(0.0, ed.eigenvalues.front()));
    const double lo = std::sqrt(std::max(0.0, ed.eigenvalues.back()));
    return {hi, lo};
}

std::vector<double> project_simplex(const std::vector<double>& v) {
    const int d = static_cast<int>(v.size());
    std::vector<double> u(v);
    std::stable_sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    int k = 0;
    for (int i = 0; i < d; ++i) {
        cumsum += u[i];
        const double t = (cumsum - 1.0) / (i + 1);
        if (u[i] - t > 0.0) {
            tau = t;
            k = i + 1;
        }
    }
    (void)k;
    std::vector<double> w(d);
    for (int i = 0; i < d; ++i) w[i] = std::max(v[i] - tau, 0.0);
    return w;
}

} // namespace qtomo
