#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "qcs/estimation.hpp"
#include "qcs/rng.hpp"
#include "qcs/spacetime.hpp"

using namespace qcs;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exact-probability fringe counts for a given phase, rounded to the
// nearest integer at sample size m.
FringeSample cos_counts(double phi, std::uint64_t m) {
    const auto n0 = static_cast<std::uint64_t>(
        std::llround(0.5 * (1.0 + std::cos(phi)) * static_cast<double>(m)));
    return FringeSample{n0, m - n0};
}

FringeSample sin_counts(double phi, std::uint64_t m) {
    const auto n0 = static_cast<std::uint64_t>(
        std::llround(0.5 * (1.0 - std::sin(phi)) * static_cast<double>(m)));
    return FringeSample{n0, m - n0};
}

} // namespace

TEST_CASE("ramsey_excited_probability") {
    CHECK(ramsey_excited_probability(2.0, 0.0) == doctest::Approx(0.0));
    CHECK(ramsey_excited_probability(kPi, 1.0) == doctest::Approx(1.0));
    CHECK(ramsey_excited_probability(kPi / 2.0, 1.0) == doctest::Approx(0.5));
    CHECK(ramsey_excited_probability(1.0, 0.7) ==
          doctest::Approx(std::pow(std::sin(0.35), 2)));
}

TEST_CASE("estimate_phase") {
    SUBCASE("exact inversion at cardinal phases") {
        const std::uint64_t m = 1u << 20;
        CHECK(estimate_phase(cos_counts(0.0, m), sin_counts(0.0, m)).phi_hat ==
              doctest::Approx(0.0).epsilon(1e-6));
        CHECK(estimate_phase(cos_counts(kPi / 2, m), sin_counts(kPi / 2, m))
                  .phi_hat == doctest::Approx(kPi / 2).epsilon(1e-6));
        CHECK(estimate_phase(cos_counts(kPi, m), sin_counts(kPi, m)).phi_hat ==
              doctest::Approx(kPi).epsilon(1e-6));
    }
    SUBCASE("equivariance across a phase grid") {
        const std::uint64_t m = 1u << 22;
        for (int i = -8; i <= 8; ++i) {
            const double phi = static_cast<double>(i) * kPi / 8.0 + 0.05;
            const double want = wrap_phase(phi);
            const double got =
                estimate_phase(cos_counts(phi, m), sin_counts(phi, m)).phi_hat;
            CHECK(std::abs(wrap_phase(got - want)) < 1e-5);
        }
    }
    SUBCASE("result lies in the principal interval") {
        const std::uint64_t m = 4096;
        const PhaseEstimate e =
            estimate_phase(cos_counts(5.0, m), sin_counts(5.0, m));
        CHECK(e.phi_hat > -kPi);
        CHECK(e.phi_hat <= kPi);
        CHECK(e.stderr_ > 0.0);
        CHECK(e.samples == m);
    }
    SUBCASE("stderr scales as 1/sqrt(M)") {
        const double s2 = estimate_phase(cos_counts(0.3, 100),
                                         sin_counts(0.3, 100)).stderr_;
        const double s3 = estimate_phase(cos_counts(0.3, 1000),
                                         sin_counts(0.3, 1000)).stderr_;
        const double s4 = estimate_phase(cos_counts(0.3, 10000),
                                         sin_counts(0.3, 10000)).stderr_;
        CHECK(s2 / s3 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
        CHECK(s3 / s4 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
    }
    SUBCASE("sampled recovery within 0.05 in >= 95 of 100 repetitions") {
        int hits = 0;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            Rng rng = Rng::stream(1234, rep);
            const double phi = 2.0 * kPi * rng.next_double() - kPi;
            const std::uint64_t m = 10000;
            FringeSample cs, ss;
            const double p0c = 0.5 * (1.0 + std::cos(phi));
            const double p0s = 0.5 * (1.0 - std::sin(phi));
            for (std::uint64_t i = 0; i < m / 2; ++i) {
                (rng.next_double() < p0c ? cs.n0 : cs.n1) += 1;
                (rng.next_double() < p0s ? ss.n0 : ss.n1) += 1;
            }
            const PhaseEstimate e = estimate_phase(cs, ss);
            if (std::abs(wrap_phase(e.phi_hat - phi)) <= 0.05) ++hits;
        }
        CHECK(hits >= 95);
    }
    SUBCASE("empty sample rejected") {
        CHECK_THROWS(estimate_phase(FringeSample{0, 0}, sin_counts(0.0, 10)));
        CHECK_THROWS(estimate_phase(cos_counts(0.0, 10), FringeSample{0, 0}));
    }
}

TEST_CASE("offset_class_from_phase") {
    SUBCASE("inversion") {
        const double w = 2.0, tau = 0.8;
        const PhaseEstimate e{wrap_phase(-w * tau), 0.01, 10000};
        const OffsetClass oc = offset_class_from_phase(e, w, 0.0);
        CHECK(oc.period == doctest::Approx(kPi));
        const double diff =
            std::remainder(oc.tau_hat - tau, oc.period);
        CHECK(std::abs(diff) < 1e-9);
    }
    SUBCASE("representative lies in [0, period)") {
        const PhaseEstimate e{2.5, 0.01, 10000};
        const OffsetClass oc = offset_class_from_phase(e, 1.3, -0.4);
        CHECK(oc.tau_hat >= 0.0);
        CHECK(oc.tau_hat < oc.period);
    }
    SUBCASE("known delta recenters the class") {
        const double w = 1.5, tau = 0.3, delta = 0.7;
        const PhaseEstimate e{wrap_phase(delta - w * tau), 0.01, 10000};
        const OffsetClass oc = offset_class_from_phase(e, w, delta);
        CHECK(std::abs(std::remainder(oc.tau_hat - tau, oc.period)) < 1e-9);
    }
    SUBCASE("degenerate qubit route") {
        const PhaseEstimate e{0.4, 0.01, 100};
        CHECK_THROWS_AS(offset_class_from_phase(e, 0.0, 0.0),
                        OmegaDegenerateError);
        CHECK_THROWS(offset_class_from_phase(e, -1.0, 0.0));
    }
}

TEST_CASE("identifiability_audit") {
    // Toy pipeline: the record depends on tau and delta only through
    // delta - omega*tau, mimicking the physical observable.
    const double omega = 2.0;
    auto gauge_blind = [omega](double tau, double delta) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", delta - omega * tau);
        return std::string(buf);
    };
    auto leaky = [](double tau, double delta) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g|%.17g", tau, delta);
        return std::string(buf);
    };
    SUBCASE("zero shift is always identical") {
        CHECK(identifiability_audit(gauge_blind, 0.3, 0.7, omega, 0.0));
        CHECK(identifiability_audit(leaky, 0.3, 0.7, omega, 0.0));
    }
    SUBCASE("gauge-blind pipeline passes nonzero shifts") {
        // exact float identity requires delta + omega*shift - omega*(tau+shift)
        // to reproduce delta - omega*tau bit-for-bit; use shifts where it does
        CHECK(identifiability_audit(gauge_blind, 0.0, 0.5, omega, 0.25));
    }
    SUBCASE("leaky pipeline is caught") {
        CHECK(!identifiability_audit(leaky, 0.3, 0.7, omega, 0.1));
    }
}
