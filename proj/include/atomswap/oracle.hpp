#pragma once

// First-principles reconstruction of the emission amplitudes from the
// second-order, time-ordered perturbation series: explicit dipole vertices,
// plane-wave position phases, analytic time integrals and the four-ket
// expansion of each photonic Bell state. Used to validate the closed forms.
//
// Units: every vertex carries the same constant (mode normalization, |d|,
// factors of i and hbar), which is dropped. Both channels therefore come out
// in one shared unit and only ratios such as f/g are physical.

#include "atomswap/amplitudes.hpp"
#include "atomswap/kinematics.hpp"
#include "atomswap/quadrature.hpp"

#include <array>
#include <complex>
#include <optional>

namespace atomswap::oracle {

using Complex = std::complex<double>;

enum class Atom { A, B };
/// Plus raises G -> E and carries exp(+i Omega t); Minus lowers E -> G.
enum class Rotating { Plus, Minus };

struct EmissionVertex {
    Atom atom;
    Rotating sign;
    PhotonMode<> photon;
};

struct KetComponent {
    PhotonMode<> first;
    PhotonMode<> second;
    double coefficient;
};

/// Four ordered two-photon kets with coefficients +-1/sqrt2.
std::array<KetComponent, 4> bell_components(BellKind bell, const Direction<>& dk, const Direction<>& dk2);

/// <k lambda| z.E(x) |0> up to the shared constant: dipole_coupling * exp(-i k.x),
/// with x in units of c/Omega and |k| = Omega/c.
Complex emission_matrix_element(const PhotonMode<>& mode, const Vector3<double>& position);

/// Integral over [0,u]^2 of exp(i r1 s1 + i r2 s2); rates in units of Omega.
Complex time_integral_g(double rate1, double rate2, double u);

/// Integral over 0 <= s2 <= s1 <= u of exp(i a s1 + i b s2), where a is the
/// phase rate of the later vertex and b of the earlier one.
Complex time_integral_f(double a, double b, double u);

/// Tolerance for the quadrature cross-checks. The integrands have unit modulus,
/// so roundoff scales with the area u^2 no matter how small the result is.
quadrature::Tolerance time_integral_tolerance(double u);

quadrature::Result time_integral_g_quadrature(double rate1, double rate2, double u);
quadrature::Result time_integral_g_quadrature(double rate1, double rate2, double u,
                                              const quadrature::Tolerance& tol);
quadrature::Result time_integral_f_quadrature(double a, double b, double u);
quadrature::Result time_integral_f_quadrature(double a, double b, double u, const quadrature::Tolerance& tol);

AmplitudePair<> oracle_amplitudes(const DimensionlessPoint<>& p, const Direction<>& dk, const Direction<>& dk2,
                                  BellKind bell);

enum class Verdict {
    Agree,         ///< ratio |f/g| within tolerance
    Disagree,
    Inconclusive,  ///< a closed-form channel vanishes, ratio undefined
    ZeroZero,      ///< both channels vanish in both routes
};

std::string_view to_string(Verdict v);

struct CompareOptions {
    double tolerance{1e-6};
    double zero_threshold{1e-12};       ///< relative to u^2, the size of a single on-shell g term
    double negligible_channel{1e-9};    ///< closed channel below this fraction of the other is "zero"
    bool check_quadrature{true};
    double quadrature_tolerance{1e-8};
};

struct ComparisonReport {
    AmplitudePair<> oracle;
    AmplitudePair<> closed;
    /// Relative error of |f/g| (oracle vs closed form); empty when inconclusive.
    std::optional<double> ratio_error;
    /// When one closed channel vanishes: |oracle small/large| (should be ~0).
    std::optional<double> vanishing_channel_ratio;
    Verdict verdict{Verdict::Disagree};
    /// Max relative deviation of the on-shell analytic time integrals from quadrature.
    std::optional<double> time_integral_error;
    bool quadrature_converged{true};
    bool passed{false};
};

ComparisonReport compare_to_closed_form(const DimensionlessPoint<>& p, const Direction<>& dk,
                                        const Direction<>& dk2, BellKind bell, const CompareOptions& options = {});

}  // namespace atomswap::oracle
