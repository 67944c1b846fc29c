#include "qcs/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

bool finite(const FourVector& v) {
    return std::isfinite(v.t) && std::isfinite(v.x) && std::isfinite(v.y) &&
           std::isfinite(v.z);
}

std::array<double, 16> matmul(const std::array<double, 16>& a,
                              const std::array<double, 16>& b) {
    std::array<double, 16> c{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a[4 * i + k] * b[4 * k + j];
            c[4 * i + j] = s;
        }
    }
    return c;
}

FourVector matvec(const std::array<double, 16>& m, const FourVector& v) {
    const double in[4] = {v.t, v.x, v.y, v.z};
    double out[4];
    for (int i = 0; i < 4; ++i) {
        out[i] = m[4 * i] * in[0] + m[4 * i + 1] * in[1] +
                 m[4 * i + 2] * in[2] + m[4 * i + 3] * in[3];
    }
    return {out[0], out[1], out[2], out[3]};
}

} // namespace

double minkowski_dot(const FourVector& a, const FourVector& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

FourVelocity::FourVelocity(const FourVector& u) : u_(u) {
    if (!finite(u)) {
        throw std::invalid_argument("FourVelocity: non-finite components");
    }
    if (u.t <= 0.0) {
        throw std::invalid_argument("FourVelocity: not future-pointing");
    }
    if (std::abs(minkowski_dot(u, u) + 1.0) > kGeometryTol) {
        throw std::invalid_argument("FourVelocity: u.u != -1");
    }
}

FourVelocity FourVelocity::from_velocity(double vx, double vy, double vz) {
    const double v2 = vx * vx + vy * vy + vz * vz;
    if (v2 >= 1.0) {
        throw std::invalid_argument("FourVelocity: |v| must be < 1");
    }
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    return FourVelocity({gamma, gamma * vx, gamma * vy, gamma * vz});
}

WaveVectorPair wave_vectors(const FourVelocity& u, double m0, double omega) {
    if (!(m0 > 0.0)) {
        throw std::invalid_argument("wave_vectors: rest mass must be positive");
    }
    if (omega < 0.0) {
        throw std::invalid_argument("wave_vectors: omega must be >= 0");
    }
    return {u.vec() * m0, u.vec() * (m0 + omega), m0, omega};
}

double plane_wave_phase(const FourVector& k, const FourVector& x) {
    return minkowski_dot(k, x);
}

LorentzMap::LorentzMap(std::array<double, 16> lambda, FourVector a)
    : lambda_(lambda), a_(a) {
    // Lambda^T eta Lambda = eta
    static const double eta[4] = {-1.0, 1.0, 1.0, 1.0};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) {
                s += lambda_[4 * k + i] * eta[k] * lambda_[4 * k + j];
            }
            const double want = (i == j) ? eta[i] : 0.0;
            if (std::abs(s - want) > kGeometryTol) {
                throw std::invalid_argument(
                    "LorentzMap: matrix does not preserve the metric");
            }
        }
    }
}

LorentzMap LorentzMap::identity() {
    std::array<double, 16> m{};
    m[0] = m[5] = m[10] = m[15] = 1.0;
    return LorentzMap(m, {});
}

LorentzMap LorentzMap::boost(double vx, double vy, double vz) {
    const double v2 = vx * vx + vy * vy + vz * vz;
    if (v2 >= 1.0) {
        throw std::invalid_argument("LorentzMap::boost: |v| must be < 1");
    }
    std::array<double, 16> m{};
    if (v2 == 0.0) {
        m[0] = m[5] = m[10] = m[15] = 1.0;
        return LorentzMap(m, {});
    }
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    const double v[3] = {vx, vy, vz};
    m[0] = gamma;
    for (int i = 0; i < 3; ++i) {
        // active convention: boost(v) maps the rest observer to velocity v
        m[i + 1] = m[4 * (i + 1)] = gamma * v[i];
        for (int j = 0; j < 3; ++j) {
            m[4 * (i + 1) + j + 1] =
                (i == j ? 1.0 : 0.0) + (gamma - 1.0) * v[i] * v[j] / v2;
        }
    }
    return LorentzMap(m, {});
}

LorentzMap LorentzMap::rotation(double ax, double ay, double az, double angle) {
    const double n = std::sqrt(ax * ax + ay * ay + az * az);
    if (n == 0.0) {
        throw std::invalid_argument("LorentzMap::rotation: zero axis");
    }
    const double u[3] = {ax / n, ay / n, az / n};
    const double c = std::cos(angle), s = std::sin(angle);
    std::array<double, 16> m{};
    m[0] = 1.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double r = (i == j ? c : 0.0) + (1.0 - c) * u[i] * u[j];
            const int k = 3 - i - j; // valid only when i != j
            if (i != j) {
                const double sign = ((i + 1) % 3 == j % 3) ? -1.0 : 1.0;
                r += sign * s * u[k];
            }
            m[4 * (i + 1) + j + 1] = r;
        }
    }
    return LorentzMap(m, {});
}

LorentzMap LorentzMap::translation(const FourVector& a) {
    std::array<double, 16> m{};
    m[0] = m[5] = m[10] = m[15] = 1.0;
    return LorentzMap(m, a);
}

LorentzMap LorentzMap::compose(const LorentzMap& other) const {
    // x -> lambda_ (other.lambda_ x + other.a_) + a_
    return LorentzMap(matmul(lambda_, other.lambda_),
                      matvec(lambda_, other.a_) + a_);
}

FourVector LorentzMap::apply_point(const FourVector& x) const {
    return matvec(lambda_, x) + a_;
}

FourVector LorentzMap::apply_direction(const FourVector& v) const {
    return matvec(lambda_, v);
}

FourVelocity LorentzMap::apply(const FourVelocity& u) const {
    return FourVelocity(apply_direction(u.vec()));
}

Worldline::Worldline(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw std::invalid_argument("Worldline: empty");
    }
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const FourVector d = nodes_[i + 1].event - nodes_[i].event;
        const double d2 = minkowski_dot(d, d);
        if (d2 > kGeometryTol) {
            throw std::invalid_argument("Worldline: spacelike segment");
        }
        if (d.t <= 0.0 && !(d.t == 0.0 && d2 == 0.0)) {
            throw std::invalid_argument("Worldline: segment not future-directed");
        }
        // segment direction must match the stated velocity: d = |d| u
        const double len = std::sqrt(std::max(0.0, -d2));
        if (len > 0.0) {
            const FourVector expect = nodes_[i].velocity.vec() * len;
            const FourVector r = d - expect;
            if (std::abs(r.t) + std::abs(r.x) + std::abs(r.y) + std::abs(r.z) >
                kGeometryTol * (1.0 + len)) {
                throw std::invalid_argument(
                    "Worldline: segment direction does not match velocity");
            }
        }
    }
}

double proper_time(const Worldline& w) {
    double tau = 0.0;
    for (std::size_t i = 0; i + 1 < w.nodes().size(); ++i) {
        const FourVector d = w.nodes()[i + 1].event - w.nodes()[i].event;
        tau += std::sqrt(std::max(0.0, -minkowski_dot(d, d)));
    }
    return tau;
}

bool is_timelike_separated(const FourVector& x1, const FourVector& x2) {
    const FourVector d = x1 - x2;
    return minkowski_dot(d, d) < 0.0;
}

double phi_delta(const FourVelocity& uA, const FourVelocity& uB,
                 const FourVector& x1, const FourVector& x2, double omega,
                 double delta) {
    return omega * (minkowski_dot(uA.vec(), x1) - minkowski_dot(uB.vec(), x2)) +
           delta;
}

double wrap_phase(double phi) {
    const double two_pi = 2.0 * M_PI;
    double r = std::remainder(phi, two_pi);
    if (r <= -M_PI) r += two_pi;
    return r;
}

double synchronization_pairs(const FourVelocity& u, const FourVector& x1,
                             const FourVector& x2) {
    return minkowski_dot(u.vec(), x1 - x2);
}

} // namespace qcs
