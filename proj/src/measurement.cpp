#include "qtomo/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qtomo/numerics.hpp"
#include "qtomo/rng.hpp"

namespace qtomo {

void Povm::validate() const {
    CMatrix sum(dim);
    for (const CMatrix& e : effects) {
        if (e.n != dim) throw DimensionMismatch("POVM effect dimension mismatch");
        if (!e.is_hermitian(1e-12)) throw NonHermitianInput("POVM effect not Hermitian");
        if (min_eigenvalue(e) < -1e-10)
            throw UnphysicalState("POVM effect is not positive-semidefinite");
        sum += e;
    }
    sum -= CMatrix::identity(dim);
    if (sum.frobenius_norm() > 1e-10)
        throw UnphysicalState("POVM effects do not sum to the identity");
}

Povm pauli_loss_povm(int axis, double eta) {
    if (axis < 0 || axis > 2) throw UnsupportedDimension("Pauli axis must be 0, 1 or 2");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidEfficiency("detection efficiency must lie in [0, 1]");
    const CMatrix& sig = pauli(axis + 1);
    const CMatrix id = CMatrix::identity(2);
    Povm p;
    p.dim = 2;
    p.name = std::string(1, "xyz"[axis]);
    p.effects.resize(3, CMatrix(2));
    p.effects[0] = 0.5 * eta * (id + sig);
    p.effects[1] = 0.5 * eta * (id - sig);
    p.effects[2] = (1.0 - eta) * id;
    return p;
}

namespace {

void populate_linear_part(ExperimentDesign& d) {
    const int params = d.basis.size();
    int rows = 0;
    d.offsets.clear();
    for (const Povm& p : d.povms) {
        d.offsets.push_back(rows);
        rows += p.outcomes();
    }
    d.a0.assign(rows, 0.0);
    d.design_matrix = RMatrix(rows, params);
    int r = 0;
    for (const Povm& p : d.povms) {
        for (const CMatrix& e : p.effects) {
            d.a0[r] = e.trace().real() / d.basis.dim;
            for (int a = 0; a < params; ++a)
                d.design_matrix(r, a) = 0.5 * hermitian_inner(e, d.basis.matrices[a]);
            ++r;
        }
    }
    d.total = 0;
    for (long long n : d.counts) d.total += n;
    d.ratio.clear();
    for (long long n : d.counts) d.ratio.push_back(static_cast<double>(d.total) / n);

    auto [hi, lo] = extreme_singular_values(d.design_matrix);
    d.sigma_max = hi;
    d.sigma_min = lo;
    d.ic = lo > 1e-10 * hi;
}

/// (A^T A)^{-1} A^T through the eigendecomposition of the Gram matrix.
RMatrix pseudo_left_inverse(const RMatrix& a) {
    const RMatrix g = a.gram();
    CMatrix gc(g.cols);
    for (int i = 0; i < g.cols; ++i)
        for (int j = 0; j < g.cols; ++j) gc(i, j) = g(i, j);
    const EigenDecomposition ed = eigh(gc);
    RMatrix ginv(g.cols, g.cols);
    for (int i = 0; i < g.cols; ++i)
        for (int j = 0; j < g.cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < g.cols; ++k)
                s += ed.eigenvectors(i, k).real() / ed.eigenvalues[k] *
                     ed.eigenvectors(j, k).real();
            ginv(i, j) = s;
        }
    RMatrix out(g.cols, a.rows);
    for (int i = 0; i < g.cols; ++i)
        for (int r = 0; r < a.rows; ++r) {
            double s = 0.0;
            for (int k = 0; k < g.cols; ++k) s += ginv(i, k) * a(r, k);
            out(i, r) = s;
        }
    return out;
}

} // namespace

ExperimentDesign make_design(std::vector<Povm> povms, std::vector<long long> counts,
                             GeneratorBasis basis) {
    if (povms.size() != counts.size())
        throw DimensionMismatch("make_design: one repetition count per POVM required");
    for (long long n : counts)
        if (n <= 0) throw InvalidTarget("repetition counts must be positive");
    ExperimentDesign d;
    d.basis = std::move(basis);
    d.povms = std::move(povms);
    d.counts = std::move(counts);
    for (const Povm& p : d.povms)
        if (p.dim != d.basis.dim) throw DimensionMismatch("POVM/basis dimension mismatch");
    populate_linear_part(d);
    if (d.ic) d.left_inverse = pseudo_left_inverse(d.design_matrix);
    return d;
}

ExperimentDesign pauli_design(int k, double eta, long long n_per_setting) {
    if (k < 1) throw UnsupportedDimension("pauli_design requires k >= 1");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidEfficiency("detection efficiency must lie in [0, 1]");
    if (n_per_setting <= 0) throw InvalidTarget("n_per_setting must be positive");

    const int nsettings = static_cast<int>(std::pow(3.0, k));
    std::vector<Povm> povms;
    std::vector<int> axes(k, 0);
    for (int j = 0; j < nsettings; ++j) {
        int rem = j;
        for (int q = k - 1; q >= 0; --q) {
            axes[q] = rem % 3;
            rem /= 3;
        }
        std::vector<Povm> singles;
        for (int q = 0; q < k; ++q) singles.push_back(pauli_loss_povm(axes[q], eta));
        Povm p;
        p.dim = 1 << k;
        for (int q = 0; q < k; ++q) p.name += singles[q].name;
        const int m_total = static_cast<int>(std::pow(3.0, k));
        std::vector<int> ms(k, 0);
        for (int m = 0; m < m_total; ++m) {
            int mr = m;
            for (int q = k - 1; q >= 0; --q) {
                ms[q] = mr % 3;
                mr /= 3;
            }
            CMatrix e = singles[0].effects[ms[0]];
            for (int q = 1; q < k; ++q) e = kron(e, singles[q].effects[ms[q]]);
            p.effects.push_back(std::move(e));
        }
        povms.push_back(std::move(p));
    }

    ExperimentDesign d;
    d.basis = make_pauli_tensor_basis(k);
    d.povms = std::move(povms);
    d.counts.assign(nsettings, n_per_setting);
    populate_linear_part(d);

    if (d.ic && eta > 0.0) {
        // Analytic reconstruction matrix: for a generator with l identity
        // factors, every setting matching its non-identity axes contributes
        // with weight 1/(sqrt(2^{k-1}) eta^{k-l} 3^l) and sign equal to the
        // product of its detected +-1 outcomes; no-detection outcomes on
        // identity slots carry the same weight.
        const int params = d.basis.size();
        const int m_total = static_cast<int>(std::pow(3.0, k));
        d.left_inverse = RMatrix(params, d.total_outcomes());
        std::vector<int> beta(k), ax(k), ms(k);
        for (int a = 0; a < params; ++a) {
            long idx = a + 1; // basis skips the all-identity index
            for (int q = k - 1; q >= 0; --q) {
                beta[q] = static_cast<int>(idx % 4);
                idx /= 4;
            }
            int l = 0;
            for (int q = 0; q < k; ++q)
                if (beta[q] == 0) ++l;
            const double mag = 1.0 / (std::sqrt(std::pow(2.0, k - 1)) *
                                      std::pow(eta, k - l) * std::pow(3.0, l));
            for (int j = 0; j < nsettings; ++j) {
                int rem = j;
                for (int q = k - 1; q >= 0; --q) {
                    ax[q] = rem % 3;
                    rem /= 3;
                }
                bool match = true;
                for (int q = 0; q < k; ++q)
                    if (beta[q] != 0 && ax[q] != beta[q] - 1) {
                        match = false;
                        break;
                    }
                if (!match) continue;
                for (int m = 0; m < m_total; ++m) {
                    int mr = m;
                    for (int q = k - 1; q >= 0; --q) {
                        ms[q] = mr % 3;
                        mr /= 3;
                    }
                    int sign = 1;
                    bool ok = true;
                    for (int q = 0; q < k; ++q) {
                        if (beta[q] == 0) continue; // any outcome, incl. no detection
                        if (ms[q] == 2) {
                            ok = false;
                            break;
                        }
                        if (ms[q] == 1) sign = -sign;
                    }
                    if (ok) d.left_inverse(a, d.offsets[j] + m) = sign * mag;
                }
            }
        }
    } else if (d.ic) {
        d.left_inverse = pseudo_left_inverse(d.design_matrix);
    }
    return d;
}

bool is_informationally_complete(const ExperimentDesign& design) { return design.ic; }

std::vector<double> born_probabilities(const ExperimentDesign& design,
                                       const std::vector<double>& s) {
    if (static_cast<int>(s.size()) != design.n_params())
        throw DimensionMismatch("born_probabilities: Bloch vector length mismatch");
    std::vector<double> p = design.design_matrix.matvec(s);
    for (int r = 0; r < design.total_outcomes(); ++r) p[r] += design.a0[r];
    return p;
}

FrequencyVector sample(const ExperimentDesign& design, const CMatrix& rho,
                       std::uint64_t seed) {
    if (rho.n != design.dim()) throw DimensionMismatch("sample: state dimension mismatch");
    if (!rho.is_hermitian(1e-12) || std::abs(rho.trace().real() - 1.0) > 1e-9 ||
        !is_physical(rho))
        throw UnphysicalState("sample: state is not a density matrix");

    const std::vector<double> p = born_probabilities(design, to_bloch(rho, design.basis));
    FrequencyVector f;
    f.counts_observed.assign(design.total_outcomes(), 0);
    f.frequencies.assign(design.total_outcomes(), 0.0);
    for (int j = 0; j < design.n_povms(); ++j) {
        const int off = design.offsets[j];
        const int m_count = design.povms[j].outcomes();
        std::vector<double> cdf(m_count);
        double acc = 0.0;
        for (int m = 0; m < m_count; ++m) {
            acc += std::max(0.0, p[off + m]);
            cdf[m] = acc;
        }
        Rng rng = substream(seed, static_cast<std::uint64_t>(j));
        for (long long t = 0; t < design.counts[j]; ++t) {
            const double u = rng.next_double() * acc;
            int pick = m_count - 1;
            for (int m = 0; m < m_count; ++m)
                if (u < cdf[m]) {
                    pick = m;
                    break;
                }
            ++f.counts_observed[off + pick];
        }
        for (int m = 0; m < m_count; ++m)
            f.frequencies[off + m] =
                static_cast<double>(f.counts_observed[off + m]) / design.counts[j];
    }
    return f;
}

nlohmann::ordered_json design_to_json(const ExperimentDesign& design) {
    nlohmann::ordered_json j;
    j["basis"]["kind"] = design.basis.kind == BasisKind::PauliTensor ? "pauli_tensor" : "gell_mann";
    j["basis"]["dim"] = design.basis.dim;
    j["basis"]["qubits"] = design.basis.qubits;
    nlohmann::ordered_json povms = nlohmann::ordered_json::array();
    for (int p = 0; p < design.n_povms(); ++p) {
        nlohmann::ordered_json pj;
        pj["name"] = design.povms[p].name;
        pj["count"] = design.counts[p];
        nlohmann::ordered_json effects = nlohmann::ordered_json::array();
        for (const CMatrix& e : design.povms[p].effects) effects.push_back(density_to_json(e));
        pj["effects"] = std::move(effects);
        povms.push_back(std::move(pj));
    }
    j["povms"] = std::move(povms);
    return j;
}

std::string frequencies_to_csv(const ExperimentDesign& design, const FrequencyVector& f) {
    std::string out = "povm_index,outcome_index,count,frequency\n";
    char line[128];
    for (int j = 0; j < design.n_povms(); ++j)
        for (int m = 0; m < design.povms[j].outcomes(); ++m) {
            const int r = design.offsets[j] + m;
            std::snprintf(line, sizeof line, "%d,%d,%lld,%.17g\n", j, m,
                          f.counts_observed[r], f.frequencies[r]);
            out += line;
        }
    return out;
}

FrequencyVector frequencies_from_csv(const ExperimentDesign& design, const std::string& csv) {
    FrequencyVector f;
    f.counts_observed.assign(design.total_outcomes(), 0);
    f.frequencies.assign(design.total_outcomes(), 0.0);
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("povm_index", 0) == 0) continue;
        int j = 0, m = 0;
        long long c = 0;
        double freq = 0.0;
        if (std::sscanf(line.c_str(), "%d,%d,%lld,%lf", &j, &m, &c, &freq) != 4)
            throw InvalidTarget("malformed frequency CSV line: " + line);
        if (j < 0 || j >= design.n_povms() || m < 0 || m >= design.povms[j].outcomes())
            throw DimensionMismatch("frequency CSV indices do not match the design");
        const int r = design.offsets[j] + m;
        f.counts_observed[r] = c;
        f.frequencies[r] = freq;
    }
    for (int j = 0; j < design.n_povms(); ++j) {
        long long tot = 0;
        for (int m = 0; m < design.povms[j].outcomes(); ++m)
            tot += f.counts_observed[design.offsets[j] + m];
        if (tot != design.counts[j])
            throw DimensionMismatch("frequency CSV counts do not sum to the design counts");
    }
    return f;
}

} // namespace qtomo
