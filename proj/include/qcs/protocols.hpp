#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcs/qstate.hpp"
#include "qcs/rng.hpp"

namespace qcs {

// Timeline model: a single global inertial frame for comoving parties.
// Bob's clock reads the global time t; Alice's clock reads t - tau, so
// an event at Alice's local time t_A happens at global time t_A + tau.
//
// Physical forward evolution of a qubit over an interval dt is
// exp(-i H0 dt) = free_evolution(omega, -dt); free_evolution itself is
// the dephasing map U_t of the clock Hamiltonian.  Under these
// conventions a |+> pulse followed by a second pulse after interval T
// reproduces the cos/(+i sin) Ramsey state exactly.

struct PartyClocks {
    double tau = 0.0; // t_B = t_A + tau
};

// Physical Schroedinger evolution over a (possibly negative) interval.
SingleQubitOp evolve_forward(double omega, double dt);

class SingletHandle {
public:
    SingletHandle(StateVector state, double hidden_delta)
        : state_(std::move(state)), hidden_delta_(hidden_delta) {}

    const StateVector& state() const { return state_; }

    // Oracle-only ground truth.  Party logic must never call this; the
    // information-barrier audit exercises that contract.
    double oracle_hidden_delta() const { return hidden_delta_; }

private:
    StateVector state_;
    double hidden_delta_;
};

// (|0>_A |1>_B - e^{i delta} |1>_A |0>_B) / sqrt(2) over labels (A, B).
SingletHandle make_singlet(double delta);

// Coefficients of the clock-basis decomposition:
//   c_anti (|-+> - |+->) + c_corr (|++> - |-->)
// with c_anti = (1+e^{i delta})/(2 sqrt 2), c_corr = (1-e^{i delta})/(2 sqrt 2).
std::pair<Amplitude, Amplitude> clock_basis_coefficients(double delta);

// {|+>, |->} over a single qubit label.
MeasurementBasis plus_minus_basis(const std::string& label);

// {|0>, |1>} over a single qubit label.
MeasurementBasis computational_basis(const std::string& label);

enum class BellOutcome : int { PsiPlus = 0, PsiMinus = 1, PhiPlus = 2, PhiMinus = 3 };

// {Psi+, Psi-, Phi+, Phi-} over (B, B'), the form the basis takes at
// Bob's clock time 0.
MeasurementBasis bell_basis_at_reference();

// Alice's outcome-conditioned correction.  The time-dependent factor is
// the rewind of her qubit's physical free evolution over her local
// elapsed time t_A (equivalently, the dephasing map at +t_A):
//   M_{Psi+-} = +-|0><0| - e^{i omega t_A} |1><1|
//   M_{Phi+-} = -e^{i omega t_A} |0><1| +- |1><0|
SingleQubitOp correction_operator(BellOutcome outcome, double omega,
                                  double t_alice);

struct ClassicalMessage {
    std::string sender;
    std::string recipient;
    int payload;
    double send_time; // on the sender's clock
};

struct MeasurementRecord {
    std::uint64_t trial = 0;
    std::vector<int> outcomes;
    std::vector<double> timestamps; // local clock readings
    std::vector<ClassicalMessage> messages;
};

struct TeleportSpec {
    Amplitude alpha;
    Amplitude beta;
    double omega = 0.0;
    // Bob's Bell measurement is at his clock time 0 (fixed).
    double correction_time = 0.0; // t_A on Alice's clock
    std::optional<double> channel_latency; // global-frame delay of the message

    void validate() const;
};

struct TeleportResult {
    StateVector output; // Alice's qubit, register {A}
    MeasurementRecord record;
};

// Full timeline in the global frame.  If `forced_outcome` is set the
// Bell branch is injected instead of sampled (rng is then unused for
// the Bell step).  Output is alpha|0> + e^{i s (delta - omega tau)} beta|1>
// up to global phase, with s = +1 for Psi branches and s = -1 for Phi
// branches; the correction time t_A cancels in every branch.
TeleportResult run_teleportation_qcs(const TeleportSpec& spec,
                                     const SingletHandle& singlet,
                                     const PartyClocks& clocks, Rng& rng,
                                     std::optional<BellOutcome> forced_outcome =
                                         std::nullopt);

struct BasicQcsSpec {
    double omega = 0.0;
    double bob_measure_time = 0.0;   // on Bob's clock
    double alice_readout_time = 1.0; // on Alice's clock
};

struct BasicQcsResult {
    int bob_outcome;  // 0 -> |+>, 1 -> |->
    int alice_bit;    // population bit after the readout pulse
    MeasurementRecord record;
};

// Bob measures his singlet half in {|+>,|->} and sends the outcome;
// Alice's collapsed half evolves freely and is read out by a Hadamard
// pulse plus population measurement at her clock time alice_readout_time.
BasicQcsResult run_basic_qcs(const BasicQcsSpec& spec,
                             const SingletHandle& singlet,
                             const PartyClocks& clocks, Rng& rng);

// (|0 1 1 0> - |1 0 0 1>)/sqrt(2) over (A, A', B, B'); dark and immune
// to pairwise transport phases.
StateVector make_phase_immune_state();

// Measurement-based entanglement with a random phase phi ~ U[0, 2 pi):
// (|0>_A |1>_B + e^{i phi} |1>_A |0>_B)/sqrt(2).  In the make_singlet
// convention this is Psi_delta with delta = phi + pi.
std::pair<StateVector, double> cabrillo_entangle(Rng& rng);

} // namespace qcs
