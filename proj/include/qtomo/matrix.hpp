#ifndef QTOMO_MATRIX_HPP
#define QTOMO_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "qtomo/errors.hpp"

namespace qtomo {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions here are tiny
/// (d <= 16 for four qubits), so no attempt at cleverness.
struct CMatrix {
    int n = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    explicit CMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}

    cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static CMatrix identity(int dim) {
        CMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    CMatrix adjoint() const {
        CMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : a) s += std::norm(z);
        return std::sqrt(s);
    }

    bool is_hermitian(double tol = 1e-12) const {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    CMatrix& operator+=(const CMatrix& o) {
        assert(n == o.n);
        for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        assert(n == o.n);
        for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    CMatrix& operator*=(cplx z) {
        for (cplx& v : a) v *= z;
        return *this;
    }

    friend CMatrix operator+(CMatrix l, const CMatrix& r) { return l += r; }
    friend CMatrix operator-(CMatrix l, const CMatrix& r) { return l -= r; }
    friend CMatrix operator*(CMatrix l, cplx z) { return l *= z; }
    friend CMatrix operator*(cplx z, CMatrix r) { return r *= z; }

    friend CMatrix operator*(const CMatrix& l, const CMatrix& r) {
        assert(l.n == r.n);
        CMatrix m(l.n);
        for (int i = 0; i < l.n; ++i)
            for (int k = 0; k < l.n; ++k) {
                const cplx lik = l(i, k);
                if (lik == cplx{}) continue;
                for (int j = 0; j < l.n; ++j) m(i, j) += lik * r(k, j);
            }
        return m;
    }
};

inline CMatrix kron(const CMatrix& l, const CMatrix& r) {
    CMatrix m(l.n * r.n);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            const cplx lij = l(i, j);
            if (lij == cplx{}) continue;
            for (int p = 0; p < r.n; ++p)
                for (int q = 0; q < r.n; ++q) m(i * r.n + p, j * r.n + q) = lij * r(p, q);
        }
    return m;
}

/// Real Hermitian inner product Tr[a b] for Hermitian a, b (imaginary part cancels).
inline double hermitian_inner(const CMatrix& x, const CMatrix& y) {
    assert(x.n == y.n);
    cplx s = 0.0;
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) s += x(i, k) * y(k, i);
    return s.real();
}

/// Dense real rectangular matrix, row-major.
struct RMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RMatrix() = default;
    RMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const double& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    std::vector<double> matvec(const std::vector<double>& v) const {
        assert(static_cast<int>(v.size()) == cols);
        std::vector<double> out(rows, 0.0);
        for (int i = 0; i < rows; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    std::vector<double> transpose_matvec(const std::vector<double>& v) const {
        assert(static_cast<int>(v.size()) == rows);
        std::vector<double> out(cols, 0.0);
        for (int i = 0; i < rows; ++i) {
            const double vi = v[i];
            if (vi == 0.0) continue;
            for (int j = 0; j < cols; ++j) out[j] += (*this)(i, j) * vi;
        }
        return out;
    }

    /// Gram matrix A^T A.
    RMatrix gram() const {
        RMatrix g(cols, cols);
        for (int i = 0; i < rows; ++i)
            for (int p = 0; p < cols; ++p) {
                const double v = (*this)(i, p);
                if (v == 0.0) continue;
                for (int q = 0; q < cols; ++q) g(p, q) += v * (*this)(i, q);
            }
        return g;
    }

    friend RMatrix operator*(const RMatrix& l, const RMatrix& r) {
        assert(l.cols == r.rows);
        RMatrix m(l.rows, r.cols);
        for (int i = 0; i < l.rows; ++i)
            for (int k = 0; k < l.cols; ++k) {
                const double lik = l(i, k);
                if (lik == 0.0) continue;
                for (int j = 0; j < r.cols; ++j) m(i, j) += lik * r(k, j);
            }
        return m;
    }
};

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace qtomo

#endif
