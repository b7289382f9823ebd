#include <doctest.h>

#include <cmath>

#include "qtomo/bloch.hpp"
#include "qtomo/loss.hpp"
#include "test_support.hpp"

using namespace qtomo;
using qtomo::testing::random_density;
using qtomo::testing::random_pure;

TEST_CASE("loss names round trip") {
    for (LossKind k : {LossKind::HilbertSchmidt, LossKind::Trace, LossKind::Infidelity})
        CHECK(loss_from_name(loss_name(k)) == k);
    CHECK_THROWS_AS(loss_from_name("bures"), InvalidLoss);
}

TEST_CASE("distances on computational basis states") {
    const CMatrix zero = preset_state("zero", 1);
    CMatrix one(2);
    one(1, 1) = 1.0;
    CHECK(hs_distance(zero, zero) == 0.0);
    CHECK(trace_distance(zero, zero) == 0.0);
    CHECK(infidelity(zero, zero) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(hs_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(infidelity(zero, one) == doctest::Approx(1.0).epsilon(1e-12));

    const CMatrix mixed = preset_state("mixed", 1);
    CHECK(trace_distance(mixed, zero) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("infidelity: pure state cross-check and unphysical rejection") {
    Rng rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const CMatrix a = random_pure(2, rng);
        const CMatrix b = random_pure(2, rng);
        const double overlap = hermitian_inner(a, b); // |<psi|phi>|^2 for pure states
        // sqrt(eps)-level error from near-zero eigenvalues in the matrix sqrt
        CHECK(std::abs(infidelity(a, b) - (1.0 - overlap)) <= 1e-6);
    }
    CMatrix bad(2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(infidelity(bad, preset_state("mixed", 1)), UnphysicalInput);
}

TEST_CASE("linf distance") {
    CHECK(linf_distance({0.0, 0.0, 1.0}, {0.0, 0.0, 0.3}) == doctest::Approx(0.7));
    CHECK(linf_distance({1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK_THROWS_AS(linf_distance({1.0}, {1.0, 2.0}), DimensionMismatch);
    Rng rng(6);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> u(5), v(5), diff(5);
        for (int i = 0; i < 5; ++i) {
            u[i] = rng.next_double();
            v[i] = rng.next_double();
            diff[i] = u[i] - v[i];
        }
        CHECK(norm2(diff) >= linf_distance(u, v));
    }
}

TEST_CASE("inequality chain between the losses on random physical pairs") {
    Rng rng(17);
    for (int d : {2, 4}) {
        const GeneratorBasis b =
            d == 2 ? make_pauli_tensor_basis(1) : make_pauli_tensor_basis(2);
        const double sd = std::sqrt(static_cast<double>(d));
        for (int rep = 0; rep < 10000; ++rep) {
            const CMatrix x = rep % 4 == 0 ? random_pure(d, rng) : random_density(d, rng);
            const CMatrix y = rep % 5 == 0 ? random_pure(d, rng) : random_density(d, rng);
            const double hs = hs_distance(x, y);
            const double tr = trace_distance(x, y);
            const double inf = infidelity(x, y);
            CHECK(tr <= sd / std::sqrt(2.0) * hs + 1e-9);
            CHECK(inf <= std::sqrt(2.0) * sd * hs + 1e-9);
            CHECK(inf <= 2.0 * tr + 1e-9);
            const double linf = linf_distance(to_bloch(x, b), to_bloch(y, b));
            CHECK(hs <= std::sqrt(d * d - 1.0) / 2.0 * linf + 1e-9);
        }
    }
}

TEST_CASE("triangle inequality for the distances; infidelity is not one") {
    Rng rng(19);
    for (int rep = 0; rep < 500; ++rep) {
        const CMatrix x = random_density(2, rng);
        const CMatrix y = random_density(2, rng);
        const CMatrix z = random_density(2, rng);
        CHECK(hs_distance(x, z) <= hs_distance(x, y) + hs_distance(y, z) + 1e-12);
        CHECK(trace_distance(x, z) <= trace_distance(x, y) + trace_distance(y, z) + 1e-12);
    }
    // Infidelity violates the triangle inequality for nearly aligned pure
    // states: sin^2 is subadditive only for large angles.
    auto pure_at = [](double theta) {
        CMatrix m(2);
        m(0, 0) = std::cos(theta) * std::cos(theta);
        m(0, 1) = std::cos(theta) * std::sin(theta);
        m(1, 0) = m(0, 1);
        m(1, 1) = std::sin(theta) * std::sin(theta);
        return m;
    };
    const CMatrix x = pure_at(0.0);
    const CMatrix y = pure_at(0.1);
    const CMatrix z = pure_at(0.2);
    CHECK(infidelity(x, z) > infidelity(x, y) + infidelity(y, z) + 1e-6);
}
