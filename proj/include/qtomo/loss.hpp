#ifndef QTOMO_LOSS_HPP
#define QTOMO_LOSS_HPP

#include <string>
#include <vector>

#include "qtomo/matrix.hpp"

namespace qtomo {

enum class LossKind { HilbertSchmidt, Trace, Infidelity };

/// CLI/JSON names: "hs", "trace", "infidelity".
std::string loss_name(LossKind k);
LossKind loss_from_name(const std::string& name);

/// (1/sqrt(2)) ||a - b||_F. Equals (1/2)||s_a - s_b||_2 in Bloch coordinates.
double hs_distance(const CMatrix& a, const CMatrix& b);

/// Half the sum of absolute eigenvalues of a - b.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// 1 - Tr[sqrt(sqrt(a) b sqrt(a))]^2. Both arguments must be
/// positive-semidefinite within 1e-10; eigenvalues in [-1e-10, 0) are
/// clamped to 0 before the square roots. Not a distance.
double infidelity(const CMatrix& a, const CMatrix& b);

double linf_distance(const std::vector<double>& s1, const std::vector<double>& s2);

double apply_loss(LossKind k, const CMatrix& a, const CMatrix& b);

} // namespace qtomo

#endif
