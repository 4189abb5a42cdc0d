#pragma once

// Photon directions, polarization vectors and dipole couplings.
//
// Spherical convention used throughout: k = (sin t cos p, sin t sin p, cos t).
// The two transverse vectors are
//   e1 = (cos t cos p, cos t sin p, -sin t),   e2 = (-sin p, cos p, 0)
// and the up/down polarizations are up = -(e1 + e2)/sqrt2, down = (e1 - e2)/sqrt2.
// Lengths are measured in units of c/Omega, so every detected photon has
// unit wavenumber.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <utility>

namespace atomswap {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar = double>
struct Direction {
    Scalar theta{0};  ///< polar angle, radians
    Scalar phi{0};    ///< azimuth, radians

    friend bool operator==(const Direction&, const Direction&) = default;
};

enum class Polarization { Up, Down };

template <typename Scalar = double>
struct PhotonMode {
    Direction<Scalar> direction;
    Polarization polarization{Polarization::Up};

    friend bool operator==(const PhotonMode&, const PhotonMode&) = default;
};

template <typename Scalar>
Vector3<Scalar> unit_vector(const Direction<Scalar>& d) {
    using std::cos;
    using std::sin;
    const Scalar st = sin(d.theta);
    return {st * cos(d.phi), st * sin(d.phi), cos(d.theta)};
}

/// Transverse basis (e1, e2) attached to a propagation direction.
template <typename Scalar>
std::pair<Vector3<Scalar>, Vector3<Scalar>> polarization_basis(const Direction<Scalar>& d) {
    using std::cos;
    using std::sin;
    const Scalar ct = cos(d.theta), st = sin(d.theta);
    const Scalar cp = cos(d.phi), sp = sin(d.phi);
    return {Vector3<Scalar>(ct * cp, ct * sp, -st), Vector3<Scalar>(-sp, cp, Scalar(0))};
}

template <typename Scalar>
Vector3<Scalar> updown_vector(const Direction<Scalar>& d, Polarization p) {
    const auto [e1, e2] = polarization_basis(d);
    const Scalar inv_sqrt2 = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
    if (p == Polarization::Up) return -inv_sqrt2 * (e1 + e2);
    return inv_sqrt2 * (e1 - e2);
}

template <typename Scalar = double>
Vector3<Scalar> dipole_axis() {
    return Vector3<Scalar>::UnitZ();
}

/// z.eps(k, p) in units of |d|: +sin(theta)/sqrt2 for Up, -sin(theta)/sqrt2 for Down.
template <typename Scalar>
Scalar dipole_coupling(const Direction<Scalar>& d, Polarization p) {
    return dipole_axis<Scalar>().dot(updown_vector(d, p));
}

/// Two atoms on the y axis, A at -(z/2) y and B at +(z/2) y, dipoles along z.
template <typename Scalar = double>
struct AtomGeometry {
    Scalar z{1};  ///< Omega L / c

    Vector3<Scalar> position_a() const { return Vector3<Scalar>(0, -z / 2, 0); }
    Vector3<Scalar> position_b() const { return Vector3<Scalar>(0, z / 2, 0); }
};

/// Detected directions for the beam-splitter layout of the reference
/// apparatus: both photons at theta = pi/4, phi = pi/2, giving
/// (h_plus, h_minus) = (sqrt2, 0).
template <typename Scalar = double>
std::pair<Direction<Scalar>, Direction<Scalar>> fig1_preset() {
    const Direction<Scalar> d{std::numbers::pi_v<Scalar> / 4, std::numbers::pi_v<Scalar> / 2};
    return {d, d};
}

}  // namespace atomswap
