#ifndef QTOMO_MEASUREMENT_HPP
#define QTOMO_MEASUREMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtomo/bloch.hpp"
#include "qtomo/matrix.hpp"

namespace qtomo {

/// A POVM: positive-semidefinite effects summing to the identity.
struct Povm {
    int dim = 0;
    std::string name;
    std::vector<CMatrix> effects;

    int outcomes() const { return static_cast<int>(effects.size()); }
    void validate() const; // PSD effects, completeness
};

/// Lossy Pauli measurement on one qubit along axis 0/1/2 = x/y/z:
/// effects (eta/2)(I +- sigma_axis) for outcomes +1/-1 plus a
/// no-detection effect (1-eta) I, kept even when eta = 1 so the data
/// layout does not depend on eta.
Povm pauli_loss_povm(int axis, double eta);

/// An informational design: which POVMs, how often each, and the linear
/// parametrization p = a0 + A s of the Born probabilities.
///
/// Outcome indices are flattened POVM-major (j outer, m inner); this fixed
/// ordering defines the row order of A, a0 and frequency data everywhere.
///
/// Note on data reuse: with several POVMs informing the same Bloch
/// coordinate, coordinate estimates are correlated; the per-coordinate
/// union bound behind the certificate calculus already accounts for this.
struct ExperimentDesign {
    GeneratorBasis basis;
    std::vector<Povm> povms;
    std::vector<long long> counts; // n^(j)
    std::vector<int> offsets;      // flattened row offset of POVM j
    long long total = 0;           // N
    std::vector<double> ratio;     // r^(j) = N / n^(j)

    std::vector<double> a0;  // Tr[Pi_m]/d per row
    RMatrix design_matrix;   // A[(j,m), alpha] = Tr[Pi_m lambda_alpha]/2
    RMatrix left_inverse;    // a left inverse of A (only valid when ic)
    bool ic = false;
    double sigma_max = 0.0; // extreme singular values of A
    double sigma_min = 0.0;

    int total_outcomes() const { return design_matrix.rows; }
    int n_povms() const { return static_cast<int>(povms.size()); }
    int dim() const { return basis.dim; }
    int n_params() const { return basis.size(); }
};

/// Generic design: left inverse is (A^T A)^{-1} A^T when IC.
ExperimentDesign make_design(std::vector<Povm> povms, std::vector<long long> counts,
                             GeneratorBasis basis);

/// k-qubit Pauli tomography design with detection efficiency eta:
/// 3^k tensor-product POVMs (axis assignments in lexicographic order),
/// n_per_setting repetitions each, PauliTensor basis.
///
/// The left inverse installed here is the analytic per-qubit reconstruction
/// matrix (uniform weighting over the settings measuring a given generator,
/// nonzero on no-detection outcomes), not the Moore-Penrose pseudoinverse.
/// Both invert A; the analytic one has strictly smaller per-setting outcome
/// ranges when eta < 1, which tightens the certificate constants and makes
/// them match the k-qubit closed form exactly.
ExperimentDesign pauli_design(int k, double eta, long long n_per_setting);

bool is_informationally_complete(const ExperimentDesign& design);

/// Born probabilities p = a0 + A s, flattened POVM-major.
std::vector<double> born_probabilities(const ExperimentDesign& design,
                                       const std::vector<double>& s);

/// Observed outcome counts and relative frequencies, flattened like the design.
struct FrequencyVector {
    std::vector<long long> counts_observed;
    std::vector<double> frequencies;
};

/// Draw n^(j) i.i.d. outcomes from each POVM's Born distribution by
/// inverse CDF on a per-POVM substream of a deterministic seeded PRNG.
/// Identical (design, rho, seed) triples give identical output.
FrequencyVector sample(const ExperimentDesign& design, const CMatrix& rho,
                       std::uint64_t seed);

nlohmann::ordered_json design_to_json(const ExperimentDesign& design);
std::string frequencies_to_csv(const ExperimentDesign& design, const FrequencyVector& f);
FrequencyVector frequencies_from_csv(const ExperimentDesign& design, const std::string& csv);

} // namespace qtomo

#endif
