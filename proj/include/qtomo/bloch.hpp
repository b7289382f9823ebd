#ifndef QTOMO_BLOCH_HPP
#define QTOMO_BLOCH_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qtomo/matrix.hpp"
#include "qtomo/numerics.hpp"

namespace qtomo {

enum class BasisKind { GellMann, PauliTensor };

/// Traceless orthogonal generator basis: Tr[lambda_a] = 0 and
/// Tr[lambda_a lambda_b] = 2 delta_ab. A density matrix and its Bloch
/// vector are related by rho(s) = I/d + (1/2) s.lambda, s_a = Tr[rho lambda_a].
struct GeneratorBasis {
    BasisKind kind = BasisKind::GellMann;
    int dim = 0;
    int qubits = 0; // 0 unless kind == PauliTensor
    std::vector<CMatrix> matrices;

    int size() const { return static_cast<int>(matrices.size()); }
};

/// Pauli matrices, index 0..3 = I, sigma_x, sigma_y, sigma_z.
const CMatrix& pauli(int i);

/// Gell-Mann style basis for dimension d >= 2: symmetric, antisymmetric,
/// then diagonal families, each in index order.
GeneratorBasis make_gell_mann_basis(int d);

/// Normalized Pauli tensor basis for k qubits: lambda_beta =
/// (tensor_q sigma_{beta_q}) / sqrt(2^{k-1}), beta in lexicographic order
/// over {0,1,2,3}^k with the all-identity index excluded.
GeneratorBasis make_pauli_tensor_basis(int k);

std::vector<double> to_bloch(const CMatrix& rho, const GeneratorBasis& basis);

/// Hermitian trace-one reconstruction; NOT necessarily positive-semidefinite.
CMatrix from_bloch(const std::vector<double>& s, const GeneratorBasis& basis);

/// True iff the minimum eigenvalue of m is >= -tol.
bool is_physical(const CMatrix& m, double tol = 1e-9);

double min_eigenvalue(const CMatrix& m);

/// Named preparation targets for k qubits: "mixed" = I/d,
/// "zero" = |0...0><0...0|, "ghz" = GHZ state.
CMatrix preset_state(const std::string& name, int qubits);

nlohmann::ordered_json density_to_json(const CMatrix& m);
CMatrix density_from_json(const nlohmann::json& j);

} // namespace qtomo

#endif
