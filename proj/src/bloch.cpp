#include "qtomo/bloch.hpp"

#include <cmath>

namespace qtomo {

const CMatrix& pauli(int i) {
    static const std::vector<CMatrix> mats = [] {
        std::vector<CMatrix> v(4, CMatrix(2));
        v[0](0, 0) = 1.0;
        v[0](1, 1) = 1.0;
        v[1](0, 1) = 1.0;
        v[1](1, 0) = 1.0;
        v[2](0, 1) = cplx(0.0, -1.0);
        v[2](1, 0) = cplx(0.0, 1.0);
        v[3](0, 0) = 1.0;
        v[3](1, 1) = -1.0;
        return v;
    }();
    return mats.at(i);
}

GeneratorBasis make_gell_mann_basis(int d) {
    if (d < 2) throw UnsupportedDimension("generator basis requires dimension >= 2");
    GeneratorBasis b;
    b.kind = BasisKind::GellMann;
    b.dim = d;
    // Symmetric family.
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix m(d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            b.matrices.push_back(m);
        }
    // Antisymmetric family.
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix m(d);
            m(j, k) = cplx(0.0, -1.0);
            m(k, j) = cplx(0.0, 1.0);
            b.matrices.push_back(m);
        }
    // Diagonal family.
    for (int l = 1; l < d; ++l) {
        CMatrix m(d);
        const double f = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = f;
        m(l, l) = -l * f;
        b.matrices.push_back(m);
    }
    return b;
}

GeneratorBasis make_pauli_tensor_basis(int k) {
    if (k < 1) throw UnsupportedDimension("Pauli tensor basis requires k >= 1");
    GeneratorBasis b;
    b.kind = BasisKind::PauliTensor;
    b.qubits = k;
    b.dim = 1 << k;
    const double norm = 1.0 / std::sqrt(std::pow(2.0, k - 1));
    const int total = 1;
    (void)total;
    std::vector<int> beta(k, 0);
    const long count = static_cast<long>(std::pow(4.0, k));
    for (long idx = 1; idx < count; ++idx) { // skip all-identity
        long rem = idx;
        for (int q = k - 1; q >= 0; --q) {
            beta[q] = static_cast<int>(rem % 4);
            rem /= 4;
        }
        CMatrix m = pauli(beta[0]);
        for (int q = 1; q < k; ++q) m = kron(m, pauli(beta[q]));
        m *= norm;
        b.matrices.push_back(m);
    }
    return b;
}

std::vector<double> to_bloch(const CMatrix& rho, const GeneratorBasis& basis) {
    if (rho.n != basis.dim) throw DimensionMismatch("to_bloch: state/basis dimension mismatch");
    std::vector<double> s(basis.size());
    for (int a = 0; a < basis.size(); ++a) s[a] = hermitian_inner(rho, basis.matrices[a]);
    return s;
}

CMatrix from_bloch(const std::vector<double>& s, const GeneratorBasis& basis) {
    if (static_cast<int>(s.size()) != basis.size())
        throw DimensionMismatch("from_bloch: vector/basis length mismatch");
    const int d = basis.dim;
    CMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
    for (int a = 0; a < basis.size(); ++a) {
        if (s[a] == 0.0) continue;
        const CMatrix& lam = basis.matrices[a];
        const double half = 0.5 * s[a];
        for (size_t idx = 0; idx < m.a.size(); ++idx) m.a[idx] += half * lam.a[idx];
    }
    return m;
}

double min_eigenvalue(const CMatrix& m) {
    const EigenDecomposition ed = eigh(m);
    return ed.eigenvalues.back();
}

bool is_physical(const CMatrix& m, double tol) {
    return min_eigenvalue(m) >= -tol;
}

CMatrix preset_state(const std::string& name, int qubits) {
    const int d = 1 << qubits;
    if (name == "mixed") {
        CMatrix m(d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
        return m;
    }
    if (name == "zero") {
        CMatrix m(d);
        m(0, 0) = 1.0;
        return m;
    }
    if (name == "ghz") {
        CMatrix m(d);
        m(0, 0) = 0.5;
        m(0, d - 1) = 0.5;
        m(d - 1, 0) = 0.5;
        m(d - 1, d - 1) = 0.5;
        return m;
    }
    throw InvalidTarget("unknown state preset: " + name);
}

nlohmann::ordered_json density_to_json(const CMatrix& m) {
    nlohmann::ordered_json j;
    j["dim"] = m.n;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const cplx& z : m.a) entries.push_back({z.real(), z.imag()});
    j["entries"] = std::move(entries);
    return j;
}

CMatrix density_from_json(const nlohmann::json& j) {
    const int d = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != d * d)
        throw DimensionMismatch("density matrix JSON: entry count does not match dim");
    CMatrix m(d);
    for (int i = 0; i < d * d; ++i)
        m.a[i] = cplx(entries[i][0].get<double>(), entries[i][1].get<double>());
    return m;
}

} // namespace qtomo
