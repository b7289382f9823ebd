#include <doctest.h>

#include <cmath>

#include "qtomo/confidence.hpp"

using namespace qtomo;

namespace {

// Extended-precision oracle for the one-qubit closed form
// 1 - 6 exp(-(2/9) eta^2 delta^2 N).
long double cl1_oracle(long double eta, long double delta, long long n) {
    return 1.0L - 6.0L * std::exp(-(2.0L / 9.0L) * eta * eta * delta * delta
                                  * static_cast<long double>(n));
}

// Two-qubit closed form for the trace loss:
// 1 - 18 exp(-(2/135) eta^4 delta^2 N) - 12 exp(-(2/45) eta^2 delta^2 N).
long double cl2_oracle(long double eta, long double delta, long long n) {
    const long double x = delta * delta * static_cast<long double>(n);
    return 1.0L - 18.0L * std::exp(-(2.0L / 135.0L) * eta * eta * eta * eta * x)
           - 12.0L * std::exp(-(2.0L / 45.0L) * eta * eta * x);
}

} // namespace

TEST_CASE("b constants") {
    CHECK(b_constant(LossKind::HilbertSchmidt, 2) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(b_constant(LossKind::Trace, 2) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(b_constant(LossKind::Infidelity, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(b_constant(LossKind::HilbertSchmidt, 4) == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
    CHECK(b_constant(LossKind::Trace, 4) == doctest::Approx(4.0 / 15.0).epsilon(1e-15));
    CHECK(b_constant(LossKind::Infidelity, 4) == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("c constants match the per-qubit closed form") {
    for (double eta : {1.0, 0.9, 0.8}) {
        const ExperimentDesign d1 = pauli_design(1, eta, 10);
        for (double c : c_alpha(d1))
            CHECK(std::abs(c - 12.0 / (eta * eta)) <= 1e-12 * c);

        const ExperimentDesign d2 = pauli_design(2, eta, 10);
        const std::vector<double> c2 = c_alpha(d2);
        int n_weight2 = 0, n_weight1 = 0;
        for (int a = 0; a < d2.n_params(); ++a) {
            // Multi-index of generator a in base 4 (skipping all-identity).
            const int code = a + 1;
            const int w = (code / 4 != 0) + (code % 4 != 0);
            if (w == 2) {
                CHECK(std::abs(c2[a] - 18.0 / std::pow(eta, 4)) <= 1e-12 * c2[a]);
                ++n_weight2;
            } else {
                CHECK(std::abs(c2[a] - 6.0 / (eta * eta)) <= 1e-12 * c2[a]);
                ++n_weight1;
            }
        }
        CHECK(n_weight2 == 9);
        CHECK(n_weight1 == 6);
    }
    // k = 3 spot check against 3^{k-l} / (2^{k-3} eta^{2(k-l)}).
    const double eta = 0.9;
    const ExperimentDesign d3 = pauli_design(3, eta, 1);
    const std::vector<double> c3 = c_alpha(d3);
    for (int a = 0; a < d3.n_params(); ++a) {
        const int code = a + 1;
        const int w = (code / 16 != 0) + ((code / 4) % 4 != 0) + (code % 4 != 0);
        const int l = 3 - w;
        const double expected = std::pow(3.0, 3 - l) / (std::pow(eta, 2 * (3 - l)));
        CHECK(std::abs(c3[a] - expected) <= 1e-12 * c3[a]);
    }
}

TEST_CASE("headline certificate: one qubit, eta 0.9, delta 0.07, N 7500") {
    const ExperimentDesign d = pauli_design(1, 0.9, 2500);
    const ConfidenceReport r = confidence_level(d, LossKind::Trace, 0.07, 7500);
    CHECK(r.cl == doctest::Approx(static_cast<double>(cl1_oracle(0.9L, 0.07L, 7500))).epsilon(1e-12));
    CHECK(r.cl == doctest::Approx(0.99196).epsilon(1e-4));
    CHECK(r.cl_clamped == r.cl);
    CHECK(r.n_total == 7500);
    CHECK(r.per_alpha_terms.size() == 3);
}

TEST_CASE("closed form agrees with the design-based certificate") {
    for (int k : {1, 2}) {
        for (double eta : {1.0, 0.9, 0.8}) {
            const ExperimentDesign d = pauli_design(k, eta, 500);
            for (LossKind loss :
                 {LossKind::HilbertSchmidt, LossKind::Trace, LossKind::Infidelity}) {
                for (double delta : {0.05, 0.1}) {
                    const ConfidenceReport r =
                        confidence_level(d, loss, delta, d.total);
                    const double cf = closed_form_cl_k(k, eta, delta, d.total, loss);
                    CHECK(std::abs(r.cl - cf) <= 1e-12);
                }
            }
        }
    }
    // The two-qubit closed form also matches its literal expression.
    CHECK(closed_form_cl_k(2, 0.9, 0.06, 100000, LossKind::Trace)
          == doctest::Approx(static_cast<double>(cl2_oracle(0.9L, 0.06L, 100000))).epsilon(1e-13));
}

TEST_CASE("certificate is monotone in N and delta, and can be vacuous") {
    const ExperimentDesign d = pauli_design(1, 0.9, 1000);
    double prev = -1e9;
    for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
        const double cl = confidence_level(d, LossKind::Trace, 0.05, n).cl;
        CHECK(cl > prev);
        prev = cl;
    }
    prev = -1e9;
    for (double delta : {0.01, 0.05, 0.1, 0.3}) {
        const double cl = confidence_level(d, LossKind::Trace, delta, 5000).cl;
        CHECK(cl > prev);
        prev = cl;
    }
    const ConfidenceReport vac = confidence_level(d, LossKind::Trace, 0.01, 100);
    CHECK(vac.cl < 0.0);
    CHECK(vac.cl_clamped == 0.0);
}

TEST_CASE("certificate input validation") {
    const ExperimentDesign d = pauli_design(1, 1.0, 10);
    CHECK_THROWS_AS(confidence_level(d, LossKind::Trace, 0.0, 100), InvalidThreshold);
    CHECK_THROWS_AS(confidence_level(d, LossKind::Trace, -0.1, 100), InvalidThreshold);
    CHECK_THROWS_AS(confidence_level(d, LossKind::Trace, 0.1, 0), InvalidTarget);
}

TEST_CASE("cls certificate: never better; equal for the ideal one-qubit design") {
    const ExperimentDesign ideal = pauli_design(1, 1.0, 1000);
    const ConfidenceReport enm = confidence_level(ideal, LossKind::Trace, 0.05, 3000);
    const ConfidenceReport cls = cls_confidence_level(ideal, LossKind::Trace, 0.05, 3000);
    CHECK(cls.rate_factor == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cls.cl == doctest::Approx(enm.cl).epsilon(1e-12));

    const ExperimentDesign lossy = pauli_design(2, 0.8, 1000);
    const ConfidenceReport e2 = confidence_level(lossy, LossKind::Trace, 0.05, lossy.total);
    const ConfidenceReport c2 = cls_confidence_level(lossy, LossKind::Trace, 0.05, lossy.total);
    CHECK(c2.rate_factor < 1.0);
    CHECK(c2.cl <= e2.cl + 1e-15);
}

TEST_CASE("required_samples: smallest N reaching the target") {
    for (double target : {0.9, 0.99}) {
        const long long n = required_samples(1, 0.9, 0.07, LossKind::Trace, target);
        CHECK(closed_form_cl_k(1, 0.9, 0.07, n, LossKind::Trace) >= target);
        CHECK(closed_form_cl_k(1, 0.9, 0.07, n - 1, LossKind::Trace) < target);
    }
    const long long n2 = required_samples(2, 0.8, 0.1, LossKind::Infidelity, 0.95);
    CHECK(closed_form_cl_k(2, 0.8, 0.1, n2, LossKind::Infidelity) >= 0.95);
    CHECK(closed_form_cl_k(2, 0.8, 0.1, n2 - 1, LossKind::Infidelity) < 0.95);
}

TEST_CASE("preparation bounds") {
    const ErrorBudget budget{0.01, 0.001};
    CHECK(preparation_bound(0.05, 0.07, LossKind::Trace, budget)
          == doctest::Approx(0.131).epsilon(1e-12));
    CHECK(preparation_bound(0.02, 0.03, LossKind::HilbertSchmidt, budget)
          == doctest::Approx(0.061).epsilon(1e-12));
    CHECK_THROWS_AS(preparation_bound(0.05, 0.07, LossKind::Infidelity, budget), InvalidLoss);

    const auto [inf_bound, fid_bound] = infidelity_preparation_bound(0.05, 0.07, budget);
    CHECK(inf_bound == doctest::Approx(2.0 * 0.131).epsilon(1e-12));
    CHECK(fid_bound == doctest::Approx(1.0 - 2.0 * 0.131).epsilon(1e-12));
}

TEST_CASE("report JSON carries the certificate") {
    const ExperimentDesign d = pauli_design(1, 0.9, 2500);
    const nlohmann::ordered_json j =
        report_to_json(confidence_level(d, LossKind::Trace, 0.07, 7500));
    CHECK(j["loss"] == "trace");
    CHECK(j["delta"] == 0.07);
    CHECK(j["N"] == 7500);
    CHECK(j.contains("cl"));
    CHECK(j.contains("c_alpha"));
}
