#include "qcs/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::string kA = "A";
const std::string kB = "B";
const std::string kAPrime = "A'";
const std::string kBPrime = "B'";

} // namespace

SingleQubitOp evolve_forward(double omega, double dt) {
    return free_evolution(omega, -dt);
}

SingletHandle make_singlet(double delta) {
    const double s = 1.0 / std::sqrt(2.0);
    // |q_A q_B>: index 1 = |01>, index 2 = |10>
    std::vector<Amplitude> amps(4, 0.0);
    amps[1] = s;
    amps[2] = -s * std::polar(1.0, delta);
    return SingletHandle(StateVector({kA, kB}, std::move(amps)), delta);
}

std::pair<Amplitude, Amplitude> clock_basis_coefficients(double delta) {
    const Amplitude e = std::polar(1.0, delta);
    const double d = 2.0 * std::sqrt(2.0);
    return {(1.0 + e) / d, (1.0 - e) / d};
}

MeasurementBasis plus_minus_basis(const std::string& label) {
    const double s = 1.0 / std::sqrt(2.0);
    return MeasurementBasis(
        {label}, {StateVector({label}, {s, s}), StateVector({label}, {s, -s})});
}

MeasurementBasis computational_basis(const std::string& label) {
    return MeasurementBasis({label}, {StateVector::basis_state({label}, 0),
                                      StateVector::basis_state({label}, 1)});
}

MeasurementBasis bell_basis_at_reference() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::string> reg{kB, kBPrime};
    return MeasurementBasis(
        reg, {StateVector(reg, {0.0, s, s, 0.0}),    // Psi+
              StateVector(reg, {0.0, s, -s, 0.0}),   // Psi-
              StateVector(reg, {s, 0.0, 0.0, s}),    // Phi+
              StateVector(reg, {s, 0.0, 0.0, -s})}); // Phi-
}

SingleQubitOp correction_operator(BellOutcome outcome, double omega,
                                  double t_alice) {
    const Amplitude rewind = std::polar(1.0, omega * t_alice);
    switch (outcome) {
        case BellOutcome::PsiPlus:
            return SingleQubitOp{{1.0, 0.0, 0.0, -rewind}};
        case BellOutcome::PsiMinus:
            return SingleQubitOp{{-1.0, 0.0, 0.0, -rewind}};
        case BellOutcome::PhiPlus:
            return SingleQubitOp{{0.0, -rewind, 1.0, 0.0}};
        case BellOutcome::PhiMinus:
            return SingleQubitOp{{0.0, -rewind, -1.0, 0.0}};
    }
    throw std::invalid_argument("correction_operator: invalid Bell outcome");
}

void TeleportSpec::validate() const {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > kAlgebraTol * 10) {
        throw std::invalid_argument(
            "TeleportSpec: |alpha|^2 + |beta|^2 must be 1");
    }
    if (!std::isfinite(omega) || !std::isfinite(correction_time)) {
        throw std::invalid_argument("TeleportSpec: non-finite parameter");
    }
}

TeleportResult run_teleportation_qcs(const TeleportSpec& spec,
                                     const SingletHandle& singlet,
                                     const PartyClocks& clocks, Rng& rng,
                                     std::optional<BellOutcome> forced_outcome) {
    spec.validate();
    if (singlet.state().labels() != std::vector<std::string>{kA, kB}) {
        throw std::invalid_argument(
            "run_teleportation_qcs: singlet register must be (A, B)");
    }
    if (spec.channel_latency) {
        // The message leaves Bob at global time 0 and arrives at
        // global time latency; the correction cannot precede it.
        const double correction_global = spec.correction_time + clocks.tau;
        if (correction_global + 1e-12 < *spec.channel_latency) {
            throw std::invalid_argument(
                "run_teleportation_qcs: correction precedes message arrival");
        }
    }

    // Global t = 0 (Bob's Bell measurement time): the singlet is dark,
    // so its state is the distribution-time state up to a global phase.
    // Bob prepares B' and the joint register is (A, B, B').
    std::vector<Amplitude> amps(8, 0.0);
    const auto& s = singlet.state();
    // index layout a b b': singlet amp at (a,b) tensor chi at b'
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const Amplitude sab = s.amp(2 * a + b);
            amps[4 * a + 2 * b + 0] = sab * spec.alpha;
            amps[4 * a + 2 * b + 1] = sab * spec.beta;
        }
    }
    StateVector joint({kA, kB, kBPrime}, std::move(amps));

    const MeasurementBasis bell = bell_basis_at_reference();
    int outcome;
    StateVector collapsed = joint; // replaced below
    if (forced_outcome) {
        outcome = static_cast<int>(*forced_outcome);
        collapsed = collapse(joint, bell, outcome);
    } else {
        MeasurementResult r = measure(joint, bell, rng);
        outcome = r.outcome;
        collapsed = std::move(r.post);
    }

    // Extract Alice's factor: the collapsed state is |bell_k>_{BB'} (x) psi_A.
    const auto& bk = bell.states()[static_cast<std::size_t>(outcome)];
    std::vector<Amplitude> psi(2, 0.0);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t bb = 0; bb < 4; ++bb) {
            psi[a] += std::conj(bk.amp(bb)) * collapsed.amp(4 * a + bb);
        }
    }
    StateVector alice({kA}, std::move(psi));

    // Alice's qubit evolves from the collapse (global 0) until her
    // correction at local time t_A, i.e. global time t_A + tau.
    const double correction_global = spec.correction_time + clocks.tau;
    alice = apply(evolve_forward(spec.omega, correction_global), kA, alice);
    alice = apply(correction_operator(static_cast<BellOutcome>(outcome),
                                      spec.omega, spec.correction_time),
                  kA, alice);

    MeasurementRecord rec;
    rec.outcomes = {outcome};
    rec.timestamps = {0.0, spec.correction_time};
    rec.messages = {{"Bob", "Alice", outcome, 0.0}};
    return TeleportResult{std::move(alice), std::move(rec)};
}

BasicQcsResult run_basic_qcs(const BasicQcsSpec& spec,
                             const SingletHandle& singlet,
                             const PartyClocks& clocks, Rng& rng) {
    if (singlet.state().labels() != std::vector<std::string>{kA, kB}) {
        throw std::invalid_argument(
            "run_basic_qcs: singlet register must be (A, B)");
    }
    // Bob measures at his clock time t_m (= global time t_m); the dark
    // singlet carries no relative evolution up to that instant.
    const double t_m = spec.bob_measure_time;
    StateVector state = singlet.state();
    state = apply(evolve_forward(spec.omega, t_m), kA, state);
    state = apply(evolve_forward(spec.omega, t_m), kB, state);

    MeasurementResult bob = measure(state, plus_minus_basis(kB), rng);

    // Alice's half evolves freely until her readout at local time t_r,
    // i.e. global time t_r + tau.
    const double readout_global = spec.alice_readout_time + clocks.tau;
    StateVector alice_side =
        apply(evolve_forward(spec.omega, readout_global - t_m), kA, bob.post);
    alice_side = apply(hadamard_clock(), kA, alice_side);
    MeasurementResult alice = measure(alice_side, computational_basis(kA), rng);

    MeasurementRecord rec;
    rec.outcomes = {bob.outcome, alice.outcome};
    rec.timestamps = {t_m, spec.alice_readout_time};
    rec.messages = {{"Bob", "Alice", bob.outcome, t_m}};
    return BasicQcsResult{bob.outcome, alice.outcome, std::move(rec)};
}

StateVector make_phase_immune_state() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Amplitude> amps(16, 0.0);
    amps[0b0110] = s;
    amps[0b1001] = -s;
    return StateVector({kA, kAPrime, kB, kBPrime}, std::move(amps));
}

std::pair<StateVector, double> cabrillo_entangle(Rng& rng) {
    const double phi = 2.0 * kPi * rng.next_double();
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Amplitude> amps(4, 0.0);
    amps[1] = s;
    amps[2] = s * std::polar(1.0, phi);
    return {StateVector({kA, kB}, std::move(amps)), phi};
}

} // namespace qcs
