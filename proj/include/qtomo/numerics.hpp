#ifndef QTOMO_NUMERICS_HPP
#define QTOMO_NUMERICS_HPP

#include <utility>
#include <vector>

#include "qtomo/matrix.hpp"

namespace qtomo {

/// Eigendecomposition of a complex Hermitian matrix. Eigenvalues are sorted
/// descending; eigenvectors are the matching columns of a unitary matrix.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;

    CMatrix reconstruct() const;
};

/// Cyclic complex Jacobi diagonalization. Throws NonHermitianInput if the
/// input violates the 1e-12 Hermiticity tolerance.
EigenDecomposition eigh(const CMatrix& m);

/// Largest and smallest singular values of a real rows >= cols matrix,
/// computed through eigh of A^T A. sigma_min may be 0.
std::pair<double, double> extreme_singular_values(const RMatrix& a);

/// Euclidean projection onto the probability simplex {w : w_i >= 0, sum w_i = 1},
/// by the sort-and-threshold algorithm.
std::vector<double> project_simplex(const std::vector<double>& v);

} // namespace qtomo

#endif
