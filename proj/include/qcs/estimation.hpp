#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace qcs {

// Excited-state population of the Ramsey sequence: sin^2(omega T / 2).
double ramsey_excited_probability(double omega, double t_interval);

struct FringeSample {
    std::uint64_t n0 = 0; // readout bit 0 counts
    std::uint64_t n1 = 0;

    std::uint64_t total() const { return n0 + n1; }
};

struct PhaseEstimate {
    double phi_hat; // in (-pi, pi]
    double stderr_;
    std::uint64_t samples;
};

// Two-quadrature inversion of the teleported-state readout model.
// Preparation 1 (alpha = beta = 1/sqrt 2): after the readout pulse
// P(bit 0) = (1 + cos phi)/2.  Preparation 2 (alpha = 1/sqrt 2,
// beta = i/sqrt 2): P(bit 0) = (1 - sin phi)/2.  The estimate is
// atan2 of the empirical sine/cosine; stderr ~ 1/sqrt(M).
PhaseEstimate estimate_phase(const FringeSample& cos_sample,
                             const FringeSample& sin_sample);

struct OffsetClass {
    double tau_hat; // representative in [0, period)
    double period;  // 2 pi / omega
};

// Raised when omega = 0: the offset is unobservable and the measured
// phase estimates delta directly.
class OmegaDegenerateError : public std::domain_error {
public:
    OmegaDegenerateError()
        : std::domain_error(
              "omega = 0: offset unobservable; the phase estimates delta") {}
};

// tau_hat = (assumed_delta - phi_hat)/omega reduced into one period;
// the true tau lies in {tau_hat + k 2 pi / omega}.
OffsetClass offset_class_from_phase(const PhaseEstimate& est, double omega,
                                    double assumed_delta);

// Runs the supplied record-producing pipeline twice under equal seeds,
// once with (tau, delta) and once with (tau + shift, delta + omega*shift),
// and reports whether the serialized measurement-record streams are
// bit-identical.
bool identifiability_audit(
    const std::function<std::string(double tau, double delta)>& run_records,
    double tau, double delta, double omega, double gauge_shift);

} // namespace qcs
