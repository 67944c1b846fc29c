#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qcs/rng.hpp"

namespace qcs {

using Amplitude = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12;

// Exact state vector over a labeled qubit register.
//
// Basis ordering: |q0 q1 ... q_{n-1}> with q0 (the first label) most
// significant, so amplitude index i addresses the computational basis
// state whose bit k (counting from the most significant) is the value
// of qubit k.  Immutable after construction; every operation returns a
// new value.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<Amplitude> amps);

    // |basis_index> over the given register.
    static StateVector basis_state(std::vector<std::string> labels,
                                   std::size_t basis_index);

    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Amplitude>& amps() const { return amps_; }
    const Amplitude& amp(std::size_t i) const { return amps_[i]; }

    // Register position of a label; throws if unknown.
    std::size_t qubit_index(const std::string& label) const;

    double norm() const;

    // Probability of measuring qubit `label` in |1>, tracing out the rest.
    double excited_population(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::vector<Amplitude> amps_;
};

// 2x2 unitary, row-major: m[0] m[1] / m[2] m[3].
struct SingleQubitOp {
    std::array<Amplitude, 4> m;

    bool is_unitary(double tol = kAlgebraTol) const;
    SingleQubitOp adjoint() const;

    // this * other (apply `other` first).
    SingleQubitOp compose(const SingleQubitOp& other) const;

    static SingleQubitOp identity() {
        return SingleQubitOp{{1.0, 0.0, 0.0, 1.0}};
    }
};

// U_t = exp(i t H0) = diag(1, e^{i omega t}): |0> fixed, |1> picks up
// phase omega*t.  Note this is the *dephasing* map of the clock
// Hamiltonian; forward Schroedinger evolution over an interval dt is
// its adjoint, free_evolution(omega, -dt).
SingleQubitOp free_evolution(double omega, double t);

// |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2); self-inverse.
SingleQubitOp hadamard_clock();

// Tensor-extend `op` to act on qubit `label` of `s`.
StateVector apply(const SingleQubitOp& op, const std::string& label,
                  const StateVector& s);

// Orthonormal, complete basis over a sub-register of qubit labels.
// Each element is a StateVector over exactly `labels`.
class MeasurementBasis {
public:
    MeasurementBasis(std::vector<std::string> labels,
                     std::vector<StateVector> states);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<StateVector>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }

private:
    std::vector<std::string> labels_;
    std::vector<StateVector> states_;
};

struct MeasurementResult {
    int outcome;
    StateVector post;
    double probability;
};

// Born probabilities of each basis outcome on `s` (complement traced out).
std::vector<double> measure_probabilities(const StateVector& s,
                                          const MeasurementBasis& basis);

// Renormalized post-measurement state for a forced outcome.
StateVector collapse(const StateVector& s, const MeasurementBasis& basis,
                     int outcome);

// Projective measurement; the outcome is sampled by inverse CDF on the
// RNG's next 64-bit draw (u = next_double(), first k with cumsum > u).
MeasurementResult measure(const StateVector& s, const MeasurementBasis& basis,
                          Rng& rng);

// True iff min over phi of ||a - e^{i phi} b|| <= tol.  Implemented by
// canonicalizing each vector so its first amplitude of magnitude > 1e-9
// is real and positive.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol = kAlgebraTol);

} // namespace qcs
