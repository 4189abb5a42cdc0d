#pragma once

// Parameter scans over (x, z, u, phi), causality classification and the
// detection-timing arithmetic of the beam-splitter apparatus.

#include "atomswap/amplitudes.hpp"
#include "atomswap/kinematics.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace atomswap {

enum class CausalClass { Spacelike, LightCone, Timelike };

std::string_view to_string(CausalClass c);

inline constexpr double kLightConeTolerance = 1e-9;

CausalClass classify_causality(double x);

/// Inclusive grid: count >= 2 points from start to stop.
struct Range {
    double start{0};
    double stop{1};
    int count{2};

    std::vector<double> points() const;
};

enum class SweepKind {
    VsX,    ///< fixed z values, scan x = L/(ct)
    VsZ,    ///< fixed u values, scan z
    VsU,    ///< fixed z values, scan u
    VsPhi,  ///< fixed (z, x), both photons at theta = pi/4, scan phi
};

std::string_view to_string(SweepKind kind);

struct SweepSpec {
    SweepKind kind{SweepKind::VsX};
    /// z values (VsX, VsU) or u values (VsZ). VsPhi uses z and x below.
    std::vector<double> fixed;
    double phi_scan_z{5.0};
    double phi_scan_x{2.5};
    Range range;
    BellKind bell{BellKind::PsiPlus};
    /// Detected directions for VsX, VsZ, VsU.
    std::pair<Direction<>, Direction<>> directions{fig1_preset()};

    void validate() const;
};

struct SweepRecord {
    double coordinate{0};
    double z{0};
    double u{0};
    double x{0};
    double j{0};
    double h_plus{0};
    double h_minus{0};
    AmplitudePair<> amplitudes;
    std::optional<double> abs_f_over_g;
    std::optional<double> concurrence;  ///< empty when the channel has no events
    CausalClass causal_class{CausalClass::Spacelike};
};

/// Closed-form evaluation at one point; the single code path shared by
/// point queries and sweeps.
SweepRecord evaluate_point(const DimensionlessPoint<>& p, const Direction<>& dk, const Direction<>& dk2,
                           BellKind bell, double coordinate);

std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// Both photons at theta = pi/4 and the given azimuth.
std::pair<Direction<>, Direction<>> fig4_preset(double z, double x, double phi);

struct ApparatusTiming {
    double z{0};
    double delta{0};          ///< detector arm Omega d / c
    double u{0};              ///< interaction time Omega t
    double path_length{0};    ///< z / sqrt2 + delta, units of c/Omega
    double detection_time{0}; ///< u + path_length, units of 1/Omega
    bool before_light_crossing{false};  ///< detection_time < z
};

ApparatusTiming detection_timing(double z, double delta, double u);

}  // namespace atomswap
