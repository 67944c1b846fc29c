#include "qcs/estimation.hpp"

#include <cmath>

#include "qcs/spacetime.hpp" // wrap_phase

namespace qcs {

double ramsey_excited_probability(double omega, double t_interval) {
    const double s = std::sin(0.5 * omega * t_interval);
    return s * s;
}

PhaseEstimate estimate_phase(const FringeSample& cos_sample,
                             const FringeSample& sin_sample) {
    const std::uint64_t mc = cos_sample.total();
    const std::uint64_t ms = sin_sample.total();
    if (mc == 0 || ms == 0) {
        throw std::invalid_argument("estimate_phase: degenerate empty sample");
    }
    const double c = 2.0 * static_cast<double>(cos_sample.n0) /
                         static_cast<double>(mc) -
                     1.0;
    const double s = 1.0 - 2.0 * static_cast<double>(sin_sample.n0) /
                               static_cast<double>(ms);
    const double phi = wrap_phase(std::atan2(s, c));
    const std::uint64_t m = (mc + ms) / 2;
    return PhaseEstimate{phi, 1.0 / std::sqrt(static_cast<double>(m)), m};
}

OffsetClass offset_class_from_phase(const PhaseEstimate& est, double omega,
                                    double assumed_delta) {
    if (omega == 0.0) {
        throw OmegaDegenerateError();
    }
    if (!(omega > 0.0)) {
        throw std::invalid_argument("offset_class_from_phase: omega < 0");
    }
    const double period = 2.0 * 3.14159265358979323846 / omega;
    double tau = (assumed_delta - est.phi_hat) / omega;
    tau -= period * std::floor(tau / period);
    if (tau >= period) tau -= period; // guard against rounding at the edge
    return OffsetClass{tau, period};
}

bool identifiability_audit(
    const std::function<std::string(double tau, double delta)>& run_records,
    double tau, double delta, double omega, double gauge_shift) {
    const std::string base = run_records(tau, delta);
    const std::string shifted =
        run_records(tau + gauge_shift, delta + omega * gauge_shift);
    return base == shifted;
}

} // namespace qcs
