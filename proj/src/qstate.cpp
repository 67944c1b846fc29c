#include "qcs/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qcs {

namespace {

bool finite(const Amplitude& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

} // namespace

StateVector::StateVector(std::vector<std::string> labels,
                         std::vector<Amplitude> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.empty() || labels_.size() > 24) {
        throw std::invalid_argument("StateVector: register size out of range");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw std::invalid_argument("StateVector: duplicate qubit label '" +
                                        l + "'");
        }
    }
    if (amps_.size() != (std::size_t{1} << labels_.size())) {
        throw std::invalid_argument(
            "StateVector: amplitude count is not 2^(register length)");
    }
    double n2 = 0.0;
    for (const auto& a : amps_) {
        if (!finite(a)) {
            throw std::invalid_argument("StateVector: non-finite amplitude");
        }
        n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > 1e-10) {
        throw std::invalid_argument("StateVector: not normalized");
    }
}

StateVector StateVector::basis_state(std::vector<std::string> labels,
                                     std::size_t basis_index) {
    std::vector<Amplitude> amps(std::size_t{1} << labels.size(), 0.0);
    if (basis_index >= amps.size()) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    amps[basis_index] = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

std::size_t StateVector::qubit_index(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown qubit label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

double StateVector::excited_population(const std::string& label) const {
    const std::size_t pos = qubit_index(label);
    const std::size_t bit = labels_.size() - 1 - pos; // q0 most significant
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i >> bit) & 1u) p += std::norm(amps_[i]);
    }
    return p;
}

bool SingleQubitOp::is_unitary(double tol) const {
    // U^dag U = I
    const Amplitude a = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Amplitude b = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Amplitude c = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
    const Amplitude d = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol &&
           std::abs(c) <= tol && std::abs(d - 1.0) <= tol;
}

SingleQubitOp SingleQubitOp::adjoint() const {
    return SingleQubitOp{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
                          std::conj(m[3])}};
}

SingleQubitOp SingleQubitOp::compose(const SingleQubitOp& o) const {
    return SingleQubitOp{{m[0] * o.m[0] + m[1] * o.m[2],
                          m[0] * o.m[1] + m[1] * o.m[3],
                          m[2] * o.m[0] + m[3] * o.m[2],
                          m[2] * o.m[1] + m[3] * o.m[3]}};
}

SingleQubitOp free_evolution(double omega, double t) {
    if (!std::isfinite(omega) || !std::isfinite(t)) {
        throw std::invalid_argument("free_evolution: non-finite argument");
    }
    return SingleQubitOp{{1.0, 0.0, 0.0, std::polar(1.0, omega * t)}};
}

SingleQubitOp hadamard_clock() {
    const double s = 1.0 / std::sqrt(2.0);
    return SingleQubitOp{{s, s, s, -s}};
}

StateVector apply(const SingleQubitOp& op, const std::string& label,
                  const StateVector& s) {
    if (!op.is_unitary(kAlgebraTol * 10)) {
        throw std::invalid_argument("apply: operator is not unitary");
    }
    const std::size_t pos = s.qubit_index(label);
    const std::size_t bit = s.num_qubits() - 1 - pos;
    const std::size_t mask = std::size_t{1} << bit;
    std::vector<Amplitude> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (i & mask) continue;
        const Amplitude a0 = s.amp(i);
        const Amplitude a1 = s.amp(i | mask);
        out[i] = op.m[0] * a0 + op.m[1] * a1;
        out[i | mask] = op.m[2] * a0 + op.m[3] * a1;
    }
    return StateVector(s.labels(), std::move(out));
}

MeasurementBasis::MeasurementBasis(std::vector<std::string> labels,
                                   std::vector<StateVector> states)
    : labels_(std::move(labels)), states_(std::move(states)) {
    const std::size_t d = std::size_t{1} << labels_.size();
    if (states_.size() != d) {
        throw std::invalid_argument(
            "MeasurementBasis: element count does not span the subspace");
    }
    for (const auto& st : states_) {
        if (st.labels() != labels_) {
            throw std::invalid_argument(
                "MeasurementBasis: element register mismatch");
        }
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        for (std::size_t j = i; j < states_.size(); ++j) {
            Amplitude ip = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                ip += std::conj(states_[i].amp(k)) * states_[j].amp(k);
            }
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(ip - want) > kAlgebraTol) {
                throw std::invalid_argument(
                    "MeasurementBasis: elements not orthonormal");
            }
        }
    }
}

namespace {

struct SubRegisterMap {
    std::vector<std::size_t> sub_bits;  // full-register bit of each basis qubit
    std::size_t comp_dim;
    std::vector<std::size_t> comp_bits; // full-register bits of the complement

    std::size_t full_index(std::size_t sub, std::size_t comp) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < sub_bits.size(); ++k) {
            if ((sub >> (sub_bits.size() - 1 - k)) & 1u) {
                idx |= std::size_t{1} << sub_bits[k];
            }
        }
        for (std::size_t k = 0; k < comp_bits.size(); ++k) {
            if ((comp >> (comp_bits.size() - 1 - k)) & 1u) {
                idx |= std::size_t{1} << comp_bits[k];
            }
        }
        return idx;
    }
};

SubRegisterMap map_sub_register(const StateVector& s,
                                const MeasurementBasis& basis) {
    SubRegisterMap m;
    std::vector<bool> in_sub(s.num_qubits(), false);
    for (const auto& l : basis.labels()) {
        const std::size_t pos = s.qubit_index(l);
        in_sub[pos] = true;
        m.sub_bits.push_back(s.num_qubits() - 1 - pos);
    }
    for (std::size_t pos = 0; pos < s.num_qubits(); ++pos) {
        if (!in_sub[pos]) m.comp_bits.push_back(s.num_qubits() - 1 - pos);
    }
    m.comp_dim = std::size_t{1} << m.comp_bits.size();
    return m;
}

} // namespace

std::vector<double> measure_probabilities(const StateVector& s,
                                          const MeasurementBasis& basis) {
    const SubRegisterMap m = map_sub_register(s, basis);
    const std::size_t sub_dim = std::size_t{1} << basis.labels().size();
    std::vector<double> probs(basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (std::size_t c = 0; c < m.comp_dim; ++c) {
            Amplitude ov = 0.0;
            for (std::size_t sub = 0; sub < sub_dim; ++sub) {
                ov += std::conj(basis.states()[k].amp(sub)) *
                      s.amp(m.full_index(sub, c));
            }
            probs[k] += std::norm(ov);
        }
    }
    return probs;
}

StateVector collapse(const StateVector& s, const MeasurementBasis& basis,
                     int outcome) {
    if (outcome < 0 || static_cast<std::size_t>(outcome) >= basis.size()) {
        throw std::invalid_argument("collapse: outcome index out of range");
    }
    const SubRegisterMap m = map_sub_register(s, basis);
    const std::size_t sub_dim = std::size_t{1} << basis.labels().size();
    const auto& bk = basis.states()[static_cast<std::size_t>(outcome)];
    std::vector<Amplitude> out(s.dim(), 0.0);
    double p = 0.0;
    for (std::size_t c = 0; c < m.comp_dim; ++c) {
        Amplitude ov = 0.0;
        for (std::size_t sub = 0; sub < sub_dim; ++sub) {
            ov += std::conj(bk.amp(sub)) * s.amp(m.full_index(sub, c));
        }
        p += std::norm(ov);
        for (std::size_t sub = 0; sub < sub_dim; ++sub) {
            out[m.full_index(sub, c)] += bk.amp(sub) * ov;
        }
    }
    if (p <= 0.0) {
        throw std::runtime_error("collapse: zero-probability outcome");
    }
    const double inv = 1.0 / std::sqrt(p);
    for (auto& a : out) a *= inv;
    return StateVector(s.labels(), std::move(out));
}

MeasurementResult measure(const StateVector& s, const MeasurementBasis& basis,
                          Rng& rng) {
    const std::vector<double> probs = measure_probabilities(s, basis);
    const double u = rng.next_double();
    double acc = 0.0;
    int outcome = static_cast<int>(probs.size()) - 1;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) {
            outcome = static_cast<int>(k);
            break;
        }
    }
    return MeasurementResult{outcome, collapse(s, basis, outcome),
                             probs[static_cast<std::size_t>(outcome)]};
}

namespace {

// Rotate so the first amplitude with |a| > 1e-9 is real-positive.
std::vector<Amplitude> canonical_phase(const StateVector& s) {
    std::vector<Amplitude> v = s.amps();
    for (const auto& a : v) {
        if (std::abs(a) > 1e-9) {
            const Amplitude rot = std::conj(a) / std::abs(a);
            for (auto& b : v) b *= rot;
            break;
        }
    }
    return v;
}

} // namespace

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol) {
    if (a.labels() != b.labels()) {
        throw std::invalid_argument(
            "equal_up_to_global_phase: register mismatch");
    }
    const auto va = canonical_phase(a);
    const auto vb = canonical_phase(b);
    double d2 = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) d2 += std::norm(va[i] - vb[i]);
    return std::sqrt(d2) <= tol;
}

} // namespace qcs
