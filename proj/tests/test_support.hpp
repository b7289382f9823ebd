#ifndef QTOMO_TEST_SUPPORT_HPP
#define QTOMO_TEST_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "qtomo/matrix.hpp"
#include "qtomo/rng.hpp"

namespace qtomo::testing {

inline double gaussian(Rng& rng) {
    // Box-Muller; one value per call keeps the stream layout obvious.
    const double u1 = std::max(rng.next_double(), 1e-300);
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline CMatrix random_gaussian_matrix(int d, Rng& rng) {
    CMatrix g(d);
    for (cplx& z : g.a) z = cplx(gaussian(rng), gaussian(rng));
    return g;
}

/// Full-rank random density matrix: G G^dag / Tr[G G^dag].
inline CMatrix random_density(int d, Rng& rng) {
    const CMatrix g = random_gaussian_matrix(d, rng);
    CMatrix m = g * g.adjoint();
    m *= cplx(1.0 / m.trace().real(), 0.0);
    return m;
}

inline CMatrix random_hermitian(int d, Rng& rng) {
    const CMatrix g = random_gaussian_matrix(d, rng);
    return 0.5 * (g + g.adjoint());
}

/// Random Hermitian trace-one matrix (possibly far from physical).
inline CMatrix random_hermitian_trace_one(int d, Rng& rng) {
    CMatrix m = random_hermitian(d, rng);
    const double shift = (1.0 - m.trace().real()) / d;
    for (int i = 0; i < d; ++i) m(i, i) += shift;
    return m;
}

/// Random pure state density matrix.
inline CMatrix random_pure(int d, Rng& rng) {
    std::vector<cplx> psi(d);
    double norm = 0.0;
    for (cplx& z : psi) {
        z = cplx(gaussian(rng), gaussian(rng));
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    CMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]) / (norm * norm);
    return m;
}

} // namespace qtomo::testing

#endif
