#pragma once

#include <array>
#include <vector>

namespace qcs {

// Minkowski geometry with signature -+++ and units hbar = c = 1.

struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    FourVector operator+(const FourVector& o) const {
        return {t + o.t, x + o.x, y + o.y, z + o.z};
    }
    FourVector operator-(const FourVector& o) const {
        return {t - o.t, x - o.x, y - o.y, z - o.z};
    }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
};

inline constexpr double kGeometryTol = 1e-9;

// -a_t b_t + a_x b_x + a_y b_y + a_z b_z
double minkowski_dot(const FourVector& a, const FourVector& b);

// Unit timelike, future-pointing: u.u = -1 within 1e-9, u.t > 0.
class FourVelocity {
public:
    explicit FourVelocity(const FourVector& u);

    // gamma * (1, v) from a 3-velocity with |v| < 1.
    static FourVelocity from_velocity(double vx, double vy, double vz);

    const FourVector& vec() const { return u_; }

private:
    FourVector u_;
};

// Ground/excited wave four-vectors k0 = m0 u, k1 = (m0 + Omega) u.
struct WaveVectorPair {
    FourVector k0;
    FourVector k1;
    double m0;
    double omega;
};

WaveVectorPair wave_vectors(const FourVelocity& u, double m0, double omega);

// Plane-wave phase exponent k.x.
double plane_wave_phase(const FourVector& k, const FourVector& x);

// Proper orthochronous Lorentz map (boost composed with rotation) plus an
// optional translation.  Points transform as Lambda x + a; directions
// (velocities, wave vectors) as Lambda x.
class LorentzMap {
public:
    static LorentzMap identity();
    static LorentzMap boost(double vx, double vy, double vz);
    // Rotation by `angle` about the spatial axis (ax, ay, az).
    static LorentzMap rotation(double ax, double ay, double az, double angle);
    static LorentzMap translation(const FourVector& a);

    // this after other: (this * other)(x) = this(other(x)).
    LorentzMap compose(const LorentzMap& other) const;

    FourVector apply_point(const FourVector& x) const;
    FourVector apply_direction(const FourVector& v) const;
    FourVelocity apply(const FourVelocity& u) const;

    const std::array<double, 16>& matrix() const { return lambda_; }
    const FourVector& offset() const { return a_; }

private:
    LorentzMap(std::array<double, 16> lambda, FourVector a);

    std::array<double, 16> lambda_; // row-major
    FourVector a_;
};

// Piecewise-inertial worldline: events joined by straight segments whose
// directions must match the stated four-velocities.
class Worldline {
public:
    struct Node {
        FourVector event;
        FourVelocity velocity;
    };

    explicit Worldline(std::vector<Node> nodes);

    const std::vector<Node>& nodes() const { return nodes_; }

private:
    std::vector<Node> nodes_;
};

// Sum over segments of sqrt(-dx.dx); throws on a spacelike segment.
double proper_time(const Worldline& w);

bool is_timelike_separated(const FourVector& x1, const FourVector& x2);

// Lorentz-invariant two-point phase Omega (uA.x1 - uB.x2) + delta.
// Raw (unwrapped) value.
double phi_delta(const FourVelocity& uA, const FourVelocity& uB,
                 const FourVector& x1, const FourVector& x2, double omega,
                 double delta);

// Principal value in (-pi, pi]; boundary ties resolve toward +pi.
double wrap_phase(double phi);

// u.(x1 - x2); zero means the pair is synchronous in the comoving frame.
double synchronization_pairs(const FourVelocity& u, const FourVector& x1,
                             const FourVector& x2);

} // namespace qcs
