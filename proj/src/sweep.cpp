#include "atomswap/sweep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace atomswap {

std::string_view to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::LightCone: return "lightcone";
        case CausalClass::Timelike: return "timelike";
    }
    return "?";
}

std::string_view to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::VsX: return "vs_x";
        case SweepKind::VsZ: return "vs_z";
        case SweepKind::VsU: return "vs_u";
        case SweepKind::VsPhi: return "vs_phi";
    }
    return "?";
}

CausalClass classify_causality(double x) {
    if (!(x > 0)) throw std::invalid_argument("classify_causality: x must be positive");
    if (x > 1.0 + kLightConeTolerance) return CausalClass::Spacelike;
    if (std::abs(x - 1.0) <= kLightConeTolerance) return CausalClass::LightCone;
    return CausalClass::Timelike;
}

std::vector<double> Range::points() const {
    if (count < 2) throw std::invalid_argument("range needs at least 2 points");
    if (!(start < stop)) throw std::invalid_argument("range start must be below stop");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
    out.back() = stop;
    return out;
}

void SweepSpec::validate() const {
    (void)range.points();
    auto positive = [](double v, const char* what) {
        if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
    };
    if (kind == SweepKind::VsPhi) {
        positive(phi_scan_z, "z");
        positive(phi_scan_x, "x");
        return;
    }
    if (fixed.empty()) throw std::invalid_argument("sweep needs at least one fixed value");
    for (double v : fixed) positive(v, kind == SweepKind::VsZ ? "fixed u" : "fixed z");
    positive(range.start, "scan start");
}

SweepRecord evaluate_point(const DimensionlessPoint<>& p, const Direction<>& dk, const Direction<>& dk2,
                           BellKind bell, double coordinate) {
    SweepRecord r;
    r.coordinate = coordinate;
    r.z = p.z();
    r.u = p.u();
    r.x = p.x();
    r.j = envelope_j(p.u());
    const auto h = geometry_h(dk, dk2);
    r.h_plus = h.h_plus;
    r.h_minus = h.h_minus;
    r.amplitudes = closed_form_amplitudes(p, dk, dk2, bell);
    if (std::abs(r.amplitudes.g) > 0) r.abs_f_over_g = std::abs(r.amplitudes.f) / std::abs(r.amplitudes.g);
    // Closed-form concurrence only for channels that carry events.
    if (r.amplitudes.norm() > 0) r.concurrence = concurrence_closed(p, dk, dk2);
    r.causal_class = classify_causality(r.x);
    return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = spec.range.points();
    const auto& [dk, dk2] = spec.directions;

    std::vector<SweepRecord> out;
    switch (spec.kind) {
        case SweepKind::VsX:
            for (double z : spec.fixed)
                for (double x : grid) out.push_back(evaluate_point(DimensionlessPoint<>::from_zx(z, x), dk, dk2, spec.bell, x));
            break;
        case SweepKind::VsZ:
            for (double u : spec.fixed)
                for (double z : grid) out.push_back(evaluate_point(DimensionlessPoint<>(z, u), dk, dk2, spec.bell, z));
            break;
        case SweepKind::VsU:
            for (double z : spec.fixed)
                for (double u : grid) out.push_back(evaluate_point(DimensionlessPoint<>(z, u), dk, dk2, spec.bell, u));
            break;
        case SweepKind::VsPhi: {
            const auto p = DimensionlessPoint<>::from_zx(spec.phi_scan_z, spec.phi_scan_x);
            for (double phi : grid) {
                const auto [a, b] = fig4_preset(spec.phi_scan_z, spec.phi_scan_x, phi);
                out.push_back(evaluate_point(p, a, b, spec.bell, phi));
            }
            break;
        }
    }
    return out;
}

std::pair<Direction<>, Direction<>> fig4_preset(double z, double x, double phi) {
    if (!(z > 0) || !(x > 0)) throw std::invalid_argument("fig4_preset: z and x must be positive");
    const Direction<> d{std::numbers::pi / 4, phi};
    return {d, d};
}

ApparatusTiming detection_timing(double z, double delta, double u) {
    if (!(z > 0)) throw std::invalid_argument("detection_timing: z must be positive");
    if (!(delta >= 0) || !(u >= 0)) throw std::invalid_argument("detection_timing: delta and u must be non-negative");
    ApparatusTiming t;
    t.z = z;
    t.delta = delta;
    t.u = u;
    t.path_length = z / std::numbers::sqrt2 + delta;
    t.detection_time = u + t.path_length;
    t.before_light_crossing = t.detection_time < z;
    return t;
}

}  // namespace atomswap
