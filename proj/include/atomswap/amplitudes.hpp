#pragma once

// Closed-form two-photon emission amplitudes and the concurrence of the
// post-selected atomic state f|EE> + g|GG>.

#include "atomswap/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atomswap {

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

std::string_view to_string(BellKind bell);
/// Accepts psi+, psi-, phi+, phi-.
BellKind parse_bell(std::string_view text);

inline bool is_minus(BellKind bell) {
    return bell == BellKind::PsiMinus || bell == BellKind::PhiMinus;
}

/// Sweep coordinates: z = Omega L / c, u = Omega t, x = L / (c t) = z / u.
template <typename Scalar = double>
class DimensionlessPoint {
public:
    DimensionlessPoint(Scalar z, Scalar u) : z_(z), u_(u) {
        if (!(z > 0) || !(u > 0) || !std::isfinite(z) || !std::isfinite(u))
            throw std::invalid_argument("DimensionlessPoint: z and u must be positive and finite");
    }

    static DimensionlessPoint from_zx(Scalar z, Scalar x) {
        if (!(x > 0)) throw std::invalid_argument("DimensionlessPoint: x must be positive");
        return DimensionlessPoint(z, z / x);
    }

    Scalar z() const { return z_; }
    Scalar u() const { return u_; }
    Scalar x() const { return z_ / u_; }

private:
    Scalar z_;
    Scalar u_;
};

template <typename Scalar = double>
struct AmplitudePair {
    std::complex<Scalar> f{};  ///< one atom emits both photons, atoms end in |EE>
    std::complex<Scalar> g{};  ///< each atom emits one photon, atoms end in |GG>

    Scalar norm() const { return std::hypot(std::abs(f), std::abs(g)); }
};

template <typename Scalar = double>
struct PhysicalScale {
    Scalar dipole_group{Scalar(5e-3)};            ///< Omega |d| / (e c)
    Scalar fine_structure{Scalar(7.2973525693e-3)};
};

template <typename Scalar = double>
struct GeometryFactors {
    Scalar h_plus{0};
    Scalar h_minus{0};
};

inline constexpr double kEnvelopeSeriesThreshold = 1e-3;

/// Temporal envelope |-1 + exp(2iu)(1 - 2iu)| / u^2 of the double-emission channel.
///
/// The real part is rewritten as 2u sin(2u) - 2 sin^2(u) so the direct branch
/// keeps full relative accuracy down to the series switch.
template <typename Scalar>
Scalar envelope_j(Scalar u) {
    using std::abs;
    using std::cos;
    using std::hypot;
    using std::sin;
    if (!(u > 0)) throw std::invalid_argument("envelope_j: u must be positive");
    if (u < Scalar(kEnvelopeSeriesThreshold)) {
        const Scalar u2 = u * u;
        return Scalar(2) - Scalar(2) / Scalar(9) * u2;
    }
    const Scalar s = sin(u);
    const Scalar re = Scalar(2) * u * sin(Scalar(2) * u) - Scalar(2) * s * s;
    const Scalar im = sin(Scalar(2) * u) - Scalar(2) * u * cos(Scalar(2) * u);
    return hypot(re, im) / (u * u);
}

/// h+- = sin(tk) sin(pk) +- sin(tk') sin(pk'): the y components of the two
/// detected directions, added and subtracted.
template <typename Scalar>
GeometryFactors<Scalar> geometry_h(const Direction<Scalar>& dk, const Direction<Scalar>& dk2) {
    const Scalar yk = unit_vector(dk).y();
    const Scalar yk2 = unit_vector(dk2).y();
    return {yk + yk2, yk - yk2};
}

/// Common positive factor of f and g, in the dimensionless form
/// alpha (Omega|d|/ec)^2 u^2 sin(tk) sin(tk') / (2 pi^2).
template <typename Scalar>
Scalar prefactor_K(const PhysicalScale<Scalar>& scale, Scalar u, const Direction<Scalar>& dk,
                   const Direction<Scalar>& dk2) {
    using std::sin;
    if (!(u > 0)) throw std::invalid_argument("prefactor_K: u must be positive");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    return scale.fine_structure * scale.dipole_group * scale.dipole_group * u * u * sin(dk.theta) *
           sin(dk2.theta) / (Scalar(2) * pi * pi);
}

template <typename Scalar>
AmplitudePair<Scalar> closed_form_amplitudes(const DimensionlessPoint<Scalar>& p, const Direction<Scalar>& dk,
                                             const Direction<Scalar>& dk2, BellKind bell,
                                             const PhysicalScale<Scalar>& scale = {}) {
    using std::cos;
    if (is_minus(bell)) return {};
    const Scalar K = prefactor_K(scale, p.u(), dk, dk2);
    const auto h = geometry_h(dk, dk2);
    AmplitudePair<Scalar> a{K / 2 * envelope_j(p.u()) * cos(p.z() / 2 * h.h_plus), K * cos(p.z() / 2 * h.h_minus)};
    if (bell == BellKind::PhiPlus) {
        a.f = -a.f;
        a.g = -a.g;
    }
    return a;
}

/// 2|f g*| / (|f|^2 + |g|^2); empty when both amplitudes vanish.
template <typename Scalar>
std::optional<Scalar> concurrence_from_fg(const AmplitudePair<Scalar>& a) {
    const Scalar af = std::abs(a.f), ag = std::abs(a.g);
    const Scalar m = std::max(af, ag);
    if (!(m > 0)) return std::nullopt;
    const Scalar rf = af / m, rg = ag / m;
    return Scalar(2) * rf * rg / (rf * rf + rg * rg);
}

template <typename Scalar>
std::optional<Scalar> concurrence_closed(const DimensionlessPoint<Scalar>& p, const Direction<Scalar>& dk,
                                         const Direction<Scalar>& dk2) {
    using std::abs;
    using std::cos;
    const auto h = geometry_h(dk, dk2);
    const Scalar cp = cos(p.z() / 2 * h.h_plus);
    const Scalar cm = cos(p.z() / 2 * h.h_minus);
    if (cp == 0 && cm == 0) return std::nullopt;
    const Scalar j = envelope_j(p.u());
    return Scalar(4) * abs(cp * cm) / (cp * cp * j + cm * cm * Scalar(4) / j);
}

/// Unnormalized channel weight |f|^2 + |g|^2.
template <typename Scalar>
Scalar relative_weight(const AmplitudePair<Scalar>& a) {
    return std::norm(a.f) + std::norm(a.g);
}

}  // namespace atomswap
