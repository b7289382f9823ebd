#include <doctest.h>

#include <cmath>

#include "qtomo/bloch.hpp"
#include "qtomo/loss.hpp"
#include "test_support.hpp"

using namespace qtomo;
using qtomo::testing::random_density;

namespace {

GeneratorBasis basis_for(int d, bool pauli_kind) {
    return pauli_kind ? make_pauli_tensor_basis(static_cast<int>(std::log2(d)))
                      : make_gell_mann_basis(d);
}

void check_basis_invariants(const GeneratorBasis& b) {
    for (int a = 0; a < b.size(); ++a) {
        CHECK(std::abs(b.matrices[a].trace()) <= 1e-12);
        for (int c = 0; c < b.size(); ++c) {
            const double expected = a == c ? 2.0 : 0.0;
            CHECK(std::abs(hermitian_inner(b.matrices[a], b.matrices[c]) - expected) <= 1e-12);
        }
    }
}

} // namespace

TEST_CASE("generator bases: tracelessness and orthogonality") {
    check_basis_invariants(make_gell_mann_basis(2));
    check_basis_invariants(make_gell_mann_basis(3));
    check_basis_invariants(make_gell_mann_basis(4));
    check_basis_invariants(make_pauli_tensor_basis(1));
    check_basis_invariants(make_pauli_tensor_basis(2));
}

TEST_CASE("Pauli tensor basis: count, normalization and one-qubit content") {
    const GeneratorBasis b1 = make_pauli_tensor_basis(1);
    REQUIRE(b1.size() == 3);
    for (int a = 0; a < 3; ++a)
        CHECK((b1.matrices[a] - pauli(a + 1)).frobenius_norm() <= 1e-15);

    const GeneratorBasis b2 = make_pauli_tensor_basis(2);
    CHECK(b2.size() == 15);
    for (const CMatrix& lam : b2.matrices)
        CHECK(hermitian_inner(lam, lam) == doctest::Approx(2.0).epsilon(1e-13));
    // lambda for (z, z) is (1/sqrt(2)) sigma_z (x) sigma_z; index 4*3+3-1.
    const CMatrix zz = kron(pauli(3), pauli(3)) * cplx(1.0 / std::sqrt(2.0), 0.0);
    CHECK((b2.matrices[4 * 3 + 3 - 1] - zz).frobenius_norm() <= 1e-15);
}

TEST_CASE("make_basis rejects unsupported dimensions") {
    CHECK_THROWS_AS(make_gell_mann_basis(1), UnsupportedDimension);
    CHECK_THROWS_AS(make_pauli_tensor_basis(0), UnsupportedDimension);
}

TEST_CASE("to_bloch/from_bloch: hand-checked values") {
    const GeneratorBasis b = make_pauli_tensor_basis(1);
    const CMatrix mixed = preset_state("mixed", 1);
    for (double s : to_bloch(mixed, b)) CHECK(std::abs(s) <= 1e-14);

    const CMatrix zero = preset_state("zero", 1);
    const std::vector<double> s0 = to_bloch(zero, b);
    CHECK(s0[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s0[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s0[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((from_bloch({0.0, 0.0, 1.0}, b) - zero).frobenius_norm() <= 1e-14);

    const GeneratorBasis b2 = make_pauli_tensor_basis(2);
    const CMatrix zz = preset_state("zero", 2);
    const std::vector<double> s2 = to_bloch(zz, b2);
    CHECK(s2[4 * 3 + 3 - 1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

    const CMatrix unphys = from_bloch({0.0, 0.0, 2.0}, b);
    CHECK(unphys(0, 0).real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(unphys(1, 1).real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(!is_physical(unphys, 1e-9));
    CHECK(is_physical(preset_state("mixed", 1)));
    CHECK(is_physical(preset_state("zero", 1)));
}

TEST_CASE("round trip and HS norm correspondence on random states") {
    Rng rng(7);
    for (int d : {2, 3, 4}) {
        for (bool pauli_kind : {false, true}) {
            if (pauli_kind && d == 3) continue;
            const GeneratorBasis b = basis_for(d, pauli_kind);
            for (int rep = 0; rep < 1000; ++rep) {
                const CMatrix rho = random_density(d, rng);
                const std::vector<double> s = to_bloch(rho, b);
                CHECK((from_bloch(s, b) - rho).frobenius_norm() <= 1e-10);

                const CMatrix rho2 = random_density(d, rng);
                const std::vector<double> s2 = to_bloch(rho2, b);
                std::vector<double> diff(s.size());
                for (size_t i = 0; i < s.size(); ++i) diff[i] = s[i] - s2[i];
                CHECK(std::abs(hs_distance(rho, rho2) - 0.5 * norm2(diff)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("density matrix JSON round trip") {
    Rng rng(13);
    const CMatrix rho = random_density(4, rng);
    const CMatrix back = density_from_json(density_to_json(rho));
    CHECK((rho - back).frobenius_norm() == 0.0);
}

TEST_CASE("preset states are physical; ghz is entangled boundary") {
    for (int k : {1, 2, 3}) {
        for (const char* name : {"mixed", "zero", "ghz"}) {
            const CMatrix rho = preset_state(name, k);
            CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(is_physical(rho));
        }
    }
    const CMatrix ghz = preset_state("ghz", 2);
    CHECK(min_eigenvalue(ghz) >= -1e-12);
    CHECK((ghz * ghz - ghz).frobenius_norm() <= 1e-12); // pure
}
