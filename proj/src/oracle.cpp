#include "atomswap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace atomswap::oracle {
namespace {

constexpr Complex kI{0.0, 1.0};

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

// (exp(i t) - 1) / (i t), without cancellation near t = 0.
Complex phi1(double t) {
    const double h = 0.5 * t;
    return {sinc(t), std::sin(h) * sinc(h)};
}

// Second divided difference of exp at the imaginary nodes 0, ix, iw with
// w = x + y. Equals the integral of exp(i x t1 + i w t2) over the unit simplex.
Complex exp_divided_difference(double x, double y) {
    const double w = x + y;
    const double ax = std::abs(x), ay = std::abs(y), aw = std::abs(w);
    const double largest = std::max({ax, ay, aw});

    if (largest < 1.0) {
        // sum_n h_n(ix, iw) / (n+2)!, h_n the complete homogeneous polynomial.
        const Complex X = kI * x, W = kI * w;
        Complex sum{};
        Complex x_pow{1.0};
        std::array<Complex, 26> w_pows{};
        w_pows[0] = 1.0;
        for (std::size_t n = 1; n < w_pows.size(); ++n) w_pows[n] = w_pows[n - 1] * W;
        double factorial = 2.0;  // (n+2)!
        for (int n = 0; n < 25; ++n) {
            Complex h{};
            x_pow = 1.0;
            for (int p = 0; p <= n; ++p) {
                h += x_pow * w_pows[n - p];
                x_pow *= X;
            }
            sum += h / factorial;
            factorial *= static_cast<double>(n + 3);
        }
        return sum;
    }

    const Complex ex{std::cos(x), std::sin(x)};
    if (aw == largest) return (ex * phi1(y) - phi1(x)) / (kI * w);
    if (ay == largest) return (phi1(w) - phi1(x)) / (kI * y);
    return (ex * phi1(y) - phi1(w)) / (kI * x);
}

struct AtomState {
    bool a_excited{true};
    bool b_excited{true};

    bool apply(Atom atom, Rotating sign) {
        bool& excited = atom == Atom::A ? a_excited : b_excited;
        if (sign == Rotating::Minus) {
            if (!excited) return false;
            excited = false;
        } else {
            if (excited) return false;
            excited = true;
        }
        return true;
    }
};

// Time-phase rate of a vertex in units of Omega: photon creation gives
// exp(+i omega t), the atomic operator exp(+-i Omega t). Photons are on shell.
double phase_rate(Rotating sign) { return 1.0 + (sign == Rotating::Plus ? 1.0 : -1.0); }

constexpr std::array<Rotating, 2> kSigns = {Rotating::Plus, Rotating::Minus};
constexpr std::array<Atom, 2> kAtoms = {Atom::A, Atom::B};

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Agree: return "agree";
        case Verdict::Disagree: return "disagree";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::ZeroZero: return "zero-zero";
    }
    return "?";
}

std::array<KetComponent, 4> bell_components(BellKind bell, const Direction<>& dk, const Direction<>& dk2) {
    const double c = 1.0 / std::numbers::sqrt2;
    const double s = (bell == BellKind::PsiPlus || bell == BellKind::PhiPlus) ? c : -c;
    const auto up = Polarization::Up;
    const auto down = Polarization::Down;

    if (bell == BellKind::PsiPlus || bell == BellKind::PsiMinus) {
        return {{
            {{dk, down}, {dk2, up}, c},
            {{dk2, up}, {dk, down}, c},
            {{dk, up}, {dk2, down}, s},
            {{dk2, down}, {dk, up}, s},
        }};
    }
    return {{
        {{dk, down}, {dk2, down}, c},
        {{dk2, down}, {dk, down}, c},
        {{dk, up}, {dk2, up}, s},
        {{dk2, up}, {dk, up}, s},
    }};
}

Complex emission_matrix_element(const PhotonMode<>& mode, const Vector3<double>& position) {
    const double coupling = dipole_coupling(mode.direction, mode.polarization);
    const double kx = unit_vector(mode.direction).dot(position);
    return coupling * Complex{std::cos(kx), -std::sin(kx)};
}

Complex time_integral_g(double rate1, double rate2, double u) {
    return u * phi1(rate1 * u) * u * phi1(rate2 * u);
}

Complex time_integral_f(double a, double b, double u) { return u * u * exp_divided_difference(a * u, b * u); }

quadrature::Tolerance time_integral_tolerance(double u) { return {1e-12 * std::max(1.0, u * u), 1e-10, 4000}; }

quadrature::Result time_integral_g_quadrature(double rate1, double rate2, double u) {
    return time_integral_g_quadrature(rate1, rate2, u, time_integral_tolerance(u));
}

quadrature::Result time_integral_f_quadrature(double a, double b, double u) {
    return time_integral_f_quadrature(a, b, u, time_integral_tolerance(u));
}

quadrature::Result time_integral_g_quadrature(double rate1, double rate2, double u, const quadrature::Tolerance& tol) {
    auto one = [&](double rate) {
        return quadrature::integrate([rate](double s) { return Complex{std::cos(rate * s), std::sin(rate * s)}; }, 0.0,
                                     u, tol);
    };
    const auto r1 = one(rate1);
    const auto r2 = one(rate2);
    quadrature::Result out;
    out.value = r1.value * r2.value;
    out.error_estimate = r1.error_estimate * std::abs(r2.value) + r2.error_estimate * std::abs(r1.value);
    out.converged = r1.converged && r2.converged;
    out.evaluations = r1.evaluations + r2.evaluations;
    return out;
}

quadrature::Result time_integral_f_quadrature(double a, double b, double u, const quadrature::Tolerance& tol) {
    return quadrature::integrate_ordered_triangle(
        [a, b](double s1, double s2) {
            const double phase = a * s1 + b * s2;
            return Complex{std::cos(phase), std::sin(phase)};
        },
        u, tol);
}

AmplitudePair<> oracle_amplitudes(const DimensionlessPoint<>& p, const Direction<>& dk, const Direction<>& dk2,
                                  BellKind bell) {
    const AtomGeometry<> geometry{p.z()};
    auto position = [&](Atom atom) { return atom == Atom::A ? geometry.position_a() : geometry.position_b(); };
    const double u = p.u();

    AmplitudePair<> out;
    auto deposit = [&](const AtomState& final_state, Complex amplitude) {
        if (final_state.a_excited && final_state.b_excited)
            out.f += amplitude;
        else if (!final_state.a_excited && !final_state.b_excited)
            out.g += amplitude;
    };

    // Second-order Dyson term: a sum over pairs of dipole vertices. On one
    // atom the operators do not commute and only the order "lower, then
    // raise" survives, weighted by the ordered time integral. On different
    // atoms they commute and both orderings add up to the full square.
    for (const KetComponent& component : bell_components(bell, dk, dk2)) {
        const Complex bra = std::conj(Complex{component.coefficient});
        const std::array<PhotonMode<>, 2> photons = {component.first, component.second};

        // <m1 m2| a+_p a+_q |0> = [m1=p][m2=q] + [m1=q][m2=p]: both hand-offs.
        for (int handoff = 0; handoff < 2; ++handoff) {
            const PhotonMode<>& photon1 = photons[handoff];
            const PhotonMode<>& photon2 = photons[1 - handoff];

            for (Atom atom : kAtoms) {
                for (Rotating early : kSigns) {
                    for (Rotating late : kSigns) {
                        AtomState state;
                        if (!state.apply(atom, early) || !state.apply(atom, late)) continue;
                        const EmissionVertex first{atom, early, photon1};
                        const EmissionVertex second{atom, late, photon2};
                        const Complex amplitude = bra *
                                                  emission_matrix_element(second.photon, position(second.atom)) *
                                                  emission_matrix_element(first.photon, position(first.atom)) *
                                                  time_integral_f(phase_rate(late), phase_rate(early), u);
                        deposit(state, amplitude);
                    }
                }
            }

            for (Rotating sign_a : kSigns) {
                for (Rotating sign_b : kSigns) {
                    AtomState state;
                    if (!state.apply(Atom::A, sign_a) || !state.apply(Atom::B, sign_b)) continue;
                    const EmissionVertex on_a{Atom::A, sign_a, photon1};
                    const EmissionVertex on_b{Atom::B, sign_b, photon2};
                    const Complex amplitude = bra * emission_matrix_element(on_b.photon, position(Atom::B)) *
                                              emission_matrix_element(on_a.photon, position(Atom::A)) *
                                              time_integral_g(phase_rate(sign_a), phase_rate(sign_b), u);
                    deposit(state, amplitude);
                }
            }
        }
    }
    return out;
}

ComparisonReport compare_to_closed_form(const DimensionlessPoint<>& p, const Direction<>& dk,
                                        const Direction<>& dk2, BellKind bell, const CompareOptions& options) {
    ComparisonReport report;
    report.oracle = oracle_amplitudes(p, dk, dk2, bell);
    report.closed = closed_form_amplitudes(p, dk, dk2, bell);

    const double u = p.u();
    const double zero = options.zero_threshold * u * u;
    const double of = std::abs(report.oracle.f), og = std::abs(report.oracle.g);
    const double cf = std::abs(report.closed.f), cg = std::abs(report.closed.g);
    const bool oracle_zero = of < zero && og < zero;

    if (cf == 0.0 && cg == 0.0) {
        report.verdict = oracle_zero ? Verdict::ZeroZero : Verdict::Disagree;
    } else if (cf <= options.negligible_channel * cg || cg <= options.negligible_channel * cf) {
        // One channel sits on a cosine zero: the ratio is meaningless, but the
        // oracle must show the same channel vanishing relative to the other.
        const bool f_vanishes = cf <= options.negligible_channel * cg;
        const double ratio = f_vanishes ? (og > 0 ? of / og : INFINITY) : (of > 0 ? og / of : INFINITY);
        report.vanishing_channel_ratio = ratio;
        report.verdict = ratio <= std::sqrt(options.negligible_channel) ? Verdict::Inconclusive : Verdict::Disagree;
    } else if (og == 0.0) {
        report.verdict = Verdict::Disagree;
    } else {
        const double closed_ratio = cf / cg;
        report.ratio_error = std::abs(of / og - closed_ratio) / closed_ratio;
        report.verdict = *report.ratio_error < options.tolerance ? Verdict::Agree : Verdict::Disagree;
    }

    if (options.check_quadrature) {
        const double a = phase_rate(Rotating::Plus), b = phase_rate(Rotating::Minus);
        const auto qf = time_integral_f_quadrature(a, b, u);
        const auto qg = time_integral_g_quadrature(b, b, u);
        const Complex af = time_integral_f(a, b, u);
        const Complex ag = time_integral_g(b, b, u);
        report.time_integral_error =
            std::max(std::abs(qf.value - af) / std::abs(af), std::abs(qg.value - ag) / std::abs(ag));
        report.quadrature_converged = qf.converged && qg.converged;
    }

    const bool quadrature_ok =
        !options.check_quadrature ||
        (report.quadrature_converged && *report.time_integral_error < options.quadrature_tolerance);
    report.passed = report.verdict != Verdict::Disagree && quadrature_ok;
    return report;
}

}  // namespace atomswap::oracle
