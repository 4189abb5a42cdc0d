#include "atomswap/amplitudes.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace atomswap;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

// Reference values of |-1 + exp(2iu)(1 - 2iu)| / u^2 from 40-digit arithmetic.
struct EnvelopeValue {
    double u;
    double j;
};
constexpr EnvelopeValue kEnvelope[] = {
    {1e-4, 1.999999997777777778765432098592984},
    {1e-3, 1.999999777777787654320815206744616},
    {0.01, 1.999977777876543037429311734009405},
    {0.1, 1.997778765259686025182002505514824},
    {1.0, 1.787485374986759994444956423100090},
    {2.0, 1.259010206575751162212868578347992},
    {100.0, 0.020087395187912140994333815949061},
    {500.0, 0.003996692865178976273492567284354},
};

const auto kFig1 = fig1_preset();

Direction<> random_direction(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta(0.0, pi), phi(0.0, 2 * pi);
    return {theta(rng), phi(rng)};
}

}  // namespace

TEST_CASE("envelope_j against high-precision values") {
    for (const auto& [u, j] : kEnvelope) {
        CAPTURE(u);
        CHECK(std::abs(envelope_j(u) - j) <= 2e-15 * j + 1e-15);
    }
    CHECK(std::abs(envelope_j(1e-4) - 2.0) < 1e-8);
    CHECK(std::abs(envelope_j(1.0) - 1.78749) < 1e-4);
    CHECK(envelope_j(100.0) >= 0.0199);
    CHECK(envelope_j(100.0) <= 0.0201);
}

TEST_CASE("envelope_j: domain, continuity at the series switch, large-u decay") {
    CHECK_THROWS_AS(envelope_j(0.0), std::invalid_argument);
    CHECK_THROWS_AS(envelope_j(-1.0), std::invalid_argument);

    const double t = kEnvelopeSeriesThreshold;
    const double below = envelope_j(std::nextafter(t, 0.0));
    const double above = envelope_j(t);
    CHECK(std::abs(below - above) < 1e-10);

    // triangle-inequality bracket (sqrt(1+4u^2) -+ 1)/u^2
    for (double u : {10.0, 50.0, 200.0, 1e4}) {
        const double r = std::sqrt(1 + 4 * u * u);
        CHECK(envelope_j(u) >= (r - 1) / (u * u) - 1e-15);
        CHECK(envelope_j(u) <= (r + 1) / (u * u) + 1e-15);
    }
}

TEST_CASE("geometry_h") {
    const auto h = geometry_h(kFig1.first, kFig1.second);
    CHECK(h.h_plus == doctest::Approx(sqrt2).epsilon(1e-15));
    CHECK(h.h_minus == 0.0);

    const auto opposite = geometry_h(Direction<>{pi / 2, pi / 2}, Direction<>{pi / 2, 3 * pi / 2});
    CHECK(std::abs(opposite.h_plus) < 1e-15);
    CHECK(opposite.h_minus == doctest::Approx(2.0).epsilon(1e-15));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_direction(rng), b = random_direction(rng);
        const auto ab = geometry_h(a, b), ba = geometry_h(b, a);
        CHECK(ab.h_plus == ba.h_plus);
        CHECK(ab.h_minus == -ba.h_minus);
        CHECK(std::abs(ab.h_plus) <= 2.0);
        CHECK(geometry_h(a, a).h_minus == 0.0);
    }
}

TEST_CASE("prefactor_K") {
    const PhysicalScale<> scale;
    const Direction<> pole{0, 0.4};
    CHECK(prefactor_K(scale, 1.0, pole, kFig1.second) == 0.0);

    const double k1 = prefactor_K(scale, 1.3, kFig1.first, kFig1.second);
    CHECK(prefactor_K(scale, 2.6, kFig1.first, kFig1.second) == doctest::Approx(4 * k1).epsilon(1e-15));

    const Direction<> equator{pi / 2, pi / 2};
    const double k0 = prefactor_K(scale, 1.0, equator, equator);
    CHECK(prefactor_K(scale, 1.0, kFig1.first, kFig1.second) / k0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k0 == doctest::Approx(scale.fine_structure * 25e-6 / (2 * pi * pi)).epsilon(1e-15));
}

TEST_CASE("closed_form_amplitudes") {
    const DimensionlessPoint<> p(sqrt2 * pi, 1.0);
    const auto a = closed_form_amplitudes(p, kFig1.first, kFig1.second, BellKind::PsiPlus);
    CHECK((a.f / a.g).real() == doctest::Approx(-0.8937426874933800).epsilon(1e-14));
    CHECK((a.f / a.g).imag() == 0.0);

    const auto phi = closed_form_amplitudes(p, kFig1.first, kFig1.second, BellKind::PhiPlus);
    CHECK(phi.f == -a.f);
    CHECK(phi.g == -a.g);

    for (BellKind minus : {BellKind::PsiMinus, BellKind::PhiMinus}) {
        const auto m = closed_form_amplitudes(p, Direction<>{0.3, 1.2}, Direction<>{2.0, 0.1}, minus);
        CHECK(m.f == std::complex<double>{});
        CHECK(m.g == std::complex<double>{});
        CHECK_FALSE(concurrence_from_fg(m).has_value());
    }

    const auto late = closed_form_amplitudes(DimensionlessPoint<>(1.0, 1e4), kFig1.first, kFig1.second,
                                             BellKind::PsiPlus);
    CHECK(std::abs(late.f / late.g) < 3e-4);
}

TEST_CASE("concurrence_from_fg") {
    using C = std::complex<double>;
    CHECK(*concurrence_from_fg(AmplitudePair<>{C{0}, C{1}}) == 0.0);
    CHECK(*concurrence_from_fg(AmplitudePair<>{C{0.3, 0.4}, C{0.3, 0.4}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*concurrence_from_fg(AmplitudePair<>{C{1}, C{2}}) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_FALSE(concurrence_from_fg(AmplitudePair<>{}).has_value());
    // tiny amplitudes do not underflow
    CHECK(*concurrence_from_fg(AmplitudePair<>{C{1e-200}, C{2e-200}}) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("property: concurrence bounds and global-scale invariance") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> logmag(-6, 6);
    for (int i = 0; i < 1000; ++i) {
        const AmplitudePair<> a{{n(rng), n(rng)}, {n(rng), n(rng)}};
        const std::complex<double> lambda = std::pow(10.0, logmag(rng)) * std::polar(1.0, n(rng));
        const double c = *concurrence_from_fg(a);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(*concurrence_from_fg(AmplitudePair<>{lambda * a.f, lambda * a.g}) == doctest::Approx(c).epsilon(1e-13));
        const bool equal_magnitudes = std::abs(std::abs(a.f) - std::abs(a.g)) < 1e-9;
        if (!equal_magnitudes) CHECK(c < 1.0);
    }
}

TEST_CASE("concurrence_closed") {
    const auto& [a, b] = kFig1;
    CHECK(*concurrence_closed(DimensionlessPoint<>(1.0, 0.01), a, b) == doctest::Approx(0.96356894972821650).epsilon(1e-13));
    for (double u : {0.1, 1.0, 7.0}) CHECK(*concurrence_closed(DimensionlessPoint<>(sqrt2 * pi / 2, u), a, b) < 1e-15);

    // both cosines +-1 and j -> 2
    const Direction<> equator{pi / 2, 0.0};
    CHECK(*concurrence_closed(DimensionlessPoint<>(3.0, 1e-5), equator, equator) == doctest::Approx(1.0).epsilon(1e-12));

    // cos never returns an exact zero in double precision; a channel without
    // events comes from vanishing couplings instead.
    const auto none = closed_form_amplitudes(DimensionlessPoint<>(1.0, 1.0), Direction<>{0, 0}, Direction<>{0, 0},
                                             BellKind::PsiPlus);
    CHECK_FALSE(concurrence_from_fg(none).has_value());
}

TEST_CASE("property: closed concurrence equals 2|fg*|/N^2 of the closed amplitudes") {
    const auto& [a, b] = kFig1;
    int points = 0;
    for (double z : {1.0, 5.0, 10.0}) {
        for (int i = 0; i < 40; ++i) {
            const double u = 0.5 + 9.5 * i / 39.0;
            const DimensionlessPoint<> p(z, u);
            for (BellKind bell : {BellKind::PsiPlus, BellKind::PhiPlus}) {
                const double direct = *concurrence_from_fg(closed_form_amplitudes(p, a, b, bell));
                CHECK(std::abs(direct - *concurrence_closed(p, a, b)) < 1e-12);
            }
            ++points;
        }
    }
    CHECK(points >= 100);
}

TEST_CASE("property: concurrence is periodic in z with period 2 sqrt2 pi for the fig1 preset") {
    const auto& [a, b] = kFig1;
    for (double z : {0.3, 1.0, 2.9, 7.5})
        for (double u : {0.2, 1.0, 4.0}) {
            const double c0 = *concurrence_closed(DimensionlessPoint<>(z, u), a, b);
            const double c1 = *concurrence_closed(DimensionlessPoint<>(z + 2 * sqrt2 * pi, u), a, b);
            CHECK(c1 == doctest::Approx(c0).epsilon(1e-12));
        }
}

TEST_CASE("relative_weight") {
    CHECK(relative_weight(AmplitudePair<>{}) == 0.0);
    CHECK(relative_weight(AmplitudePair<>{1.0, 0.0}) == 1.0);
    CHECK(relative_weight(AmplitudePair<>{1.0, 2.0}) == 5.0);
}

TEST_CASE("DimensionlessPoint") {
    const auto p = DimensionlessPoint<>::from_zx(5.0, 2.5);
    CHECK(p.u() == 2.0);
    CHECK(std::abs(p.x() * p.u() - p.z()) < 1e-12);
    CHECK_THROWS_AS(DimensionlessPoint<>(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DimensionlessPoint<>(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(DimensionlessPoint<>::from_zx(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Bell labels round-trip") {
    for (BellKind b : {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus})
        CHECK(parse_bell(to_string(b)) == b);
    CHECK_THROWS_AS(parse_bell("psi"), std::invalid_argument);
}
