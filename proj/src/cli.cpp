#include "atomswap/cli.hpp"

#include "atomswap/oracle.hpp"
#include "atomswap/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace atomswap::cli {

using Meta = std::vector<std::pair<std::string, std::string>>;

double parse_real(std::string_view text, std::string_view what) {
    const auto fail = [&](const std::string& why) {
        return std::invalid_argument(std::string(what) + ": " + why + " '" + std::string(text) + "'");
    };
    if (text.find("deg") != std::string_view::npos || text.find("\xC2\xB0") != std::string_view::npos)
        throw fail("angles are radians only, got");
    double value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || begin == end) throw fail("not a number");
    if (!std::isfinite(value)) throw fail("not finite");
    return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_real(text.substr(pos, stop - pos), what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

Range parse_range(std::string_view text, std::string_view what) {
    const std::size_t a = text.find(':');
    const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
        throw std::invalid_argument(std::string(what) + ": expected start:stop:count, got '" + std::string(text) + "'");
    Range r;
    r.start = parse_real(text.substr(0, a), what);
    r.stop = parse_real(text.substr(a + 1, b - a - 1), what);
    const std::string_view count = text.substr(b + 1);
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), r.count);
    if (ec != std::errc{} || ptr != count.data() + count.size())
        throw std::invalid_argument(std::string(what) + ": bad point count '" + std::string(count) + "'");
    (void)r.points();
    return r;
}

namespace {

struct OutputOptions {
    std::string format{"csv"};
    std::string path;

    void attach(CLI::App* app) {
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app->add_option("--output,-o", path, "Write to this file instead of standard output");
    }

    report::Format parsed() const { return format == "json" ? report::Format::Json : report::Format::Csv; }
};

struct AngleOptions {
    std::string theta_k, phi_k, theta_k2, phi_k2;

    void attach(CLI::App* app) {
        app->add_option("--theta-k", theta_k, "Polar angle of photon k (radians)");
        app->add_option("--phi-k", phi_k, "Azimuth of photon k (radians)");
        app->add_option("--theta-k2", theta_k2, "Polar angle of photon k' (radians)");
        app->add_option("--phi-k2", phi_k2, "Azimuth of photon k' (radians)");
    }

    bool any() const { return !theta_k.empty() || !phi_k.empty() || !theta_k2.empty() || !phi_k2.empty(); }

    std::pair<Direction<>, Direction<>> parsed() const {
        if (theta_k.empty() || phi_k.empty() || theta_k2.empty() || phi_k2.empty())
            throw std::invalid_argument("explicit directions need all of --theta-k --phi-k --theta-k2 --phi-k2");
        return {Direction<>{parse_real(theta_k, "--theta-k"), parse_real(phi_k, "--phi-k")},
                Direction<>{parse_real(theta_k2, "--theta-k2"), parse_real(phi_k2, "--phi-k2")}};
    }
};

void direction_meta(Meta& meta, const std::pair<Direction<>, Direction<>>& d) {
    meta.emplace_back("theta_k", report::format_number(d.first.theta));
    meta.emplace_back("phi_k", report::format_number(d.first.phi));
    meta.emplace_back("theta_k2", report::format_number(d.second.theta));
    meta.emplace_back("phi_k2", report::format_number(d.second.phi));
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + report::format_number(values[i]);
    return s;
}

std::string range_text(const Range& r) {
    return report::format_number(r.start) + ":" + report::format_number(r.stop) + ":" + std::to_string(r.count);
}

// Writes to the --output file or the given stream, reporting I/O errors with the path.
void emit(const report::Table& table, const OutputOptions& output, std::ostream& out) {
    if (output.path.empty()) {
        report::write(out, table, output.parsed());
        return;
    }
    std::ofstream file(output.path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + output.path + "': " + std::strerror(errno));
    report::write(file, table, output.parsed());
    file.flush();
    if (!file) throw std::runtime_error("write failed for output file '" + output.path + "'");
}

// --- point ---------------------------------------------------------------

struct PointCommand {
    std::string z, u, x, preset, phi, bell{"psi+"};
    AngleOptions angles;
    OutputOptions output;

    void attach(CLI::App* app) {
        app->add_option("--z", z, "Omega L / c")->required();
        auto* ou = app->add_option("--u", u, "Omega t");
        auto* ox = app->add_option("--x", x, "L / (c t)");
        ou->excludes(ox);
        app->add_option("--preset", preset, "Detected directions preset")->check(CLI::IsMember({"fig1", "fig4"}));
        app->add_option("--phi", phi, "Common azimuth for --preset fig4 (radians)");
        app->add_option("--bell", bell, "psi+, psi-, phi+ or phi-");
        angles.attach(app);
        output.attach(app);
    }

    int run(std::ostream& out) const {
        const double zv = parse_real(z, "--z");
        if (u.empty() == x.empty()) throw std::invalid_argument("give exactly one of --u or --x");
        const auto point = u.empty() ? DimensionlessPoint<>::from_zx(zv, parse_real(x, "--x"))
                                     : DimensionlessPoint<>(zv, parse_real(u, "--u"));
        const BellKind kind = parse_bell(bell);

        Meta meta{{"generator", "atomswap"}, {"command", "point"}};
        std::pair<Direction<>, Direction<>> dirs;
        if (angles.any()) {
            if (!preset.empty()) throw std::invalid_argument("--preset cannot be combined with explicit angles");
            dirs = angles.parsed();
            meta.emplace_back("preset", "none");
        } else if (preset == "fig4") {
            if (phi.empty()) throw std::invalid_argument("--preset fig4 needs --phi");
            dirs = fig4_preset(point.z(), point.x(), parse_real(phi, "--phi"));
            meta.emplace_back("preset", "fig4");
        } else {
            if (!phi.empty()) throw std::invalid_argument("--phi only applies to --preset fig4");
            dirs = fig1_preset();
            meta.emplace_back("preset", "fig1");
        }
        direction_meta(meta, dirs);
        meta.emplace_back("bell", std::string(to_string(kind)));
        const PhysicalScale<> scale;
        meta.emplace_back("dipole_group", report::format_number(scale.dipole_group));
        meta.emplace_back("fine_structure", report::format_number(scale.fine_structure));

        const SweepRecord record = evaluate_point(point, dirs.first, dirs.second, kind, point.x());
        emit(report::point_table(record, std::move(meta)), output, out);
        return record.concurrence ? kSuccess : kUndefinedConcurrence;
    }
};

// --- sweep ---------------------------------------------------------------

struct SweepCommand {
    std::string fixed_z, fixed_u, scan_x, scan_z, scan_phi, vary, bell{"psi+"};
    AngleOptions angles;
    OutputOptions output;

    void attach_common(CLI::App* app) {
        app->add_option("--bell", bell, "psi+, psi-, phi+ or phi-");
        output.attach(app);
    }

    int finish(const SweepSpec& spec, Meta meta, std::ostream& out) const {
        const auto records = run_sweep(spec);
        emit(report::sweep_table(records, std::move(meta)), output, out);
        const bool any_defined =
            std::any_of(records.begin(), records.end(), [](const SweepRecord& r) { return r.concurrence.has_value(); });
        return any_defined ? kSuccess : kUndefinedConcurrence;
    }

    Meta base_meta(std::string_view kind, const SweepSpec& spec) const {
        Meta meta{{"generator", "atomswap"}, {"command", "sweep"}, {"kind", std::string(kind)}};
        meta.emplace_back("bell", std::string(to_string(spec.bell)));
        return meta;
    }

    int fig2(std::ostream& out) const {
        SweepSpec spec;
        spec.kind = SweepKind::VsX;
        spec.fixed = parse_list(fixed_z, "--z");
        spec.range = parse_range(scan_x, "--x");
        spec.bell = parse_bell(bell);
        Meta meta = base_meta("fig2", spec);
        meta.emplace_back("preset", "fig1");
        direction_meta(meta, spec.directions);
        meta.emplace_back("z", join(spec.fixed));
        meta.emplace_back("x", range_text(spec.range));
        return finish(spec, std::move(meta), out);
    }

    int fig3(std::ostream& out) const {
        SweepSpec spec;
        spec.kind = SweepKind::VsZ;
        spec.fixed = parse_list(fixed_u, "--u");
        spec.range = parse_range(scan_z, "--z");
        spec.bell = parse_bell(bell);
        Meta meta = base_meta("fig3", spec);
        meta.emplace_back("preset", "fig1");
        direction_meta(meta, spec.directions);
        meta.emplace_back("u", join(spec.fixed));
        meta.emplace_back("z", range_text(spec.range));
        return finish(spec, std::move(meta), out);
    }

    int fig4(std::ostream& out) const {
        SweepSpec spec;
        spec.kind = SweepKind::VsPhi;
        spec.phi_scan_z = parse_real(fixed_z, "--z");
        spec.phi_scan_x = parse_real(scan_x, "--x");
        spec.range = parse_range(scan_phi, "--phi");
        spec.bell = parse_bell(bell);
        Meta meta = base_meta("fig4", spec);
        meta.emplace_back("preset", "fig4");
        meta.emplace_back("theta", report::format_number(std::numbers::pi / 4));
        meta.emplace_back("z", report::format_number(spec.phi_scan_z));
        meta.emplace_back("x", report::format_number(spec.phi_scan_x));
        meta.emplace_back("phi", range_text(spec.range));
        return finish(spec, std::move(meta), out);
    }

    int custom(std::ostream& out) const {
        SweepSpec spec;
        spec.bell = parse_bell(bell);
        spec.directions = angles.any() ? angles.parsed() : fig1_preset();
        Meta meta = base_meta("custom", spec);
        meta.emplace_back("preset", angles.any() ? "none" : "fig1");
        direction_meta(meta, spec.directions);
        meta.emplace_back("vary", vary);
        if (vary == "x") {
            spec.kind = SweepKind::VsX;
            spec.fixed = parse_list(fixed_z, "--z");
            spec.range = parse_range(scan_x, "--x");
            meta.emplace_back("z", join(spec.fixed));
            meta.emplace_back("x", range_text(spec.range));
        } else if (vary == "z") {
            spec.kind = SweepKind::VsZ;
            spec.fixed = parse_list(fixed_u, "--u");
            spec.range = parse_range(fixed_z, "--z");
            meta.emplace_back("u", join(spec.fixed));
            meta.emplace_back("z", range_text(spec.range));
        } else {
            spec.kind = SweepKind::VsU;
            spec.fixed = parse_list(fixed_z, "--z");
            spec.range = parse_range(fixed_u, "--u");
            meta.emplace_back("z", join(spec.fixed));
            meta.emplace_back("u", range_text(spec.range));
        }
        return finish(spec, std::move(meta), out);
    }
};

// --- verify --------------------------------------------------------------

struct VerifyCommand {
    std::string z_list{"1,5,10"};
    std::string u_list{"0.5,1,2,5,10"};
    std::string bell{"psi+"};
    std::string tolerance{"1e-6"};
    int random_pairs{10};
    std::uint64_t seed{20070315};
    int offenders{5};
    bool no_quadrature{false};
    OutputOptions output;

    void attach(CLI::App* app) {
        app->add_option("--z", z_list, "Comma-separated z values");
        app->add_option("--u", u_list, "Comma-separated u values");
        app->add_option("--bell", bell, "psi+, psi-, phi+ or phi-");
        app->add_option("--tolerance,--tol", tolerance, "Relative tolerance on f/g");
        app->add_option("--random", random_pairs, "Random direction pairs in addition to the fig1 preset")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--seed", seed, "Seed for the random directions");
        app->add_option("--worst", offenders, "Number of worst offenders to list")->check(CLI::NonNegativeNumber);
        app->add_flag("--no-quadrature", no_quadrature, "Skip the quadrature cross-check of the time integrals");
        output.attach(app);
    }

    int run(std::ostream& out, std::ostream& err) const {
        const double tol = parse_real(tolerance, "--tolerance");
        if (!(tol > 0)) throw std::invalid_argument("--tolerance must be positive");
        const auto zs = parse_list(z_list, "--z");
        const auto us = parse_list(u_list, "--u");
        const BellKind kind = parse_bell(bell);

        std::vector<std::pair<Direction<>, Direction<>>> directions{fig1_preset()};
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < random_pairs; ++i) {
            auto draw = [&] {
                return Direction<>{std::acos(1.0 - 2.0 * unit(rng)), 2.0 * std::numbers::pi * unit(rng)};
            };
            const Direction<> a = draw();
            directions.emplace_back(a, draw());
        }

        oracle::CompareOptions options;
        options.tolerance = tol;
        options.check_quadrature = !no_quadrature;

        std::vector<report::VerifyRow> rows;
        for (const auto& [dk, dk2] : directions)
            for (double z : zs)
                for (double u : us) {
                    const DimensionlessPoint<> p(z, u);
                    rows.push_back({z, u, dk, dk2, kind, oracle::compare_to_closed_form(p, dk, dk2, kind, options)});
                }

        double max_error = 0;
        int failures = 0, inconclusive = 0;
        for (const auto& r : rows) {
            if (r.report.ratio_error) max_error = std::max(max_error, *r.report.ratio_error);
            if (!r.report.passed) ++failures;
            if (r.report.verdict == oracle::Verdict::Inconclusive) ++inconclusive;
        }
        const bool pass = failures == 0 && max_error < tol;

        Meta meta{{"generator", "atomswap"},
                  {"command", "verify"},
                  {"bell", std::string(to_string(kind))},
                  {"tolerance", report::format_number(tol)},
                  {"points", std::to_string(rows.size())},
                  {"max_ratio_error", report::format_number(max_error)},
                  {"failures", std::to_string(failures)},
                  {"inconclusive", std::to_string(inconclusive)},
                  {"verdict", pass ? "pass" : "fail"}};
        emit(report::verify_table(rows, std::move(meta)), output, out);

        err << "verify: " << rows.size() << " points, max |f/g| relative error " << report::format_number(max_error)
            << ", " << failures << " failed, " << inconclusive << " inconclusive -> " << (pass ? "PASS" : "FAIL")
            << '\n';
        std::vector<const report::VerifyRow*> ranked;
        for (const auto& r : rows) ranked.push_back(&r);
        auto badness = [](const report::VerifyRow* r) {
            if (!r->report.passed) return std::numeric_limits<double>::infinity();
            return r->report.ratio_error.value_or(0.0);
        };
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](const auto* a, const auto* b) { return badness(a) > badness(b); });
        for (int i = 0; i < offenders && i < static_cast<int>(ranked.size()); ++i) {
            const auto& r = *ranked[static_cast<std::size_t>(i)];
            err << "  worst #" << i + 1 << ": z=" << report::format_number(r.z) << " u=" << report::format_number(r.u)
                << " dirs=(" << report::format_number(r.dk.theta) << "," << report::format_number(r.dk.phi) << ";"
                << report::format_number(r.dk2.theta) << "," << report::format_number(r.dk2.phi) << ") "
                << oracle::to_string(r.report.verdict);
            if (r.report.ratio_error) err << " err=" << report::format_number(*r.report.ratio_error);
            if (r.report.time_integral_error)
                err << " quad=" << report::format_number(*r.report.time_integral_error)
                    << (r.report.quadrature_converged ? "" : " (quadrature not converged)");
            err << '\n';
        }
        return pass ? kSuccess : kVerificationFailed;
    }
};

// --- timing --------------------------------------------------------------

struct TimingCommand {
    std::string z, delta{"0"}, u{"0"}, omega;
    OutputOptions output;

    void attach(CLI::App* app) {
        app->add_option("--z", z, "Omega L / c")->required();
        app->add_option("--delta", delta, "Detector arm Omega d / c");
        app->add_option("--u", u, "Interaction time Omega t");
        app->add_option("--omega", omega, "Transition frequency in rad/s, adds times in seconds");
        output.attach(app);
    }

    int run(std::ostream& out) const {
        const auto t = detection_timing(parse_real(z, "--z"), parse_real(delta, "--delta"), parse_real(u, "--u"));
        report::Table table{{{"generator", "atomswap"}, {"command", "timing"}},
                            {"z", "delta", "u", "path_length", "detection_time", "before_light_crossing"},
                            {}};
        std::vector<report::Cell> row{t.z, t.delta, t.u, t.path_length, t.detection_time,
                                      std::string(t.before_light_crossing ? "yes" : "no")};
        if (!omega.empty()) {
            const double w = parse_real(omega, "--omega");
            if (!(w > 0)) throw std::invalid_argument("--omega must be positive");
            for (const char* c : {"t_seconds", "detection_seconds", "light_crossing_seconds"}) table.columns.emplace_back(c);
            row.emplace_back(t.u / w);
            row.emplace_back(t.detection_time / w);
            row.emplace_back(t.z / w);
        }
        table.rows.push_back(std::move(row));
        emit(table, output, out);
        return kSuccess;
    }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Post-selected entanglement swapping between two spacelike-separated two-level atoms", "atomswap"};
    app.require_subcommand(1);

    PointCommand point;
    auto* point_app = app.add_subcommand("point", "Evaluate amplitudes and concurrence at one parameter point");
    point.attach(point_app);

    SweepCommand sweep;
    auto* sweep_app = app.add_subcommand("sweep", "Parameter scans (CSV or JSON)");
    sweep_app->require_subcommand(1);
    auto* fig2 = sweep_app->add_subcommand("fig2", "Concurrence versus x at fixed z, fig1 directions");
    fig2->add_option("--z", sweep.fixed_z, "Comma-separated z values")->required();
    fig2->add_option("--x", sweep.scan_x, "x range start:stop:count")->required();
    sweep.attach_common(fig2);
    auto* fig3 = sweep_app->add_subcommand("fig3", "Concurrence versus z at fixed u, fig1 directions");
    fig3->add_option("--u", sweep.fixed_u, "Comma-separated u values")->required();
    fig3->add_option("--z", sweep.scan_z, "z range start:stop:count")->required();
    sweep.attach_common(fig3);
    auto* fig4 = sweep_app->add_subcommand("fig4", "Concurrence versus common azimuth phi at theta = pi/4");
    fig4->add_option("--z", sweep.fixed_z, "z value")->required();
    fig4->add_option("--x", sweep.scan_x, "x value")->required();
    fig4->add_option("--phi", sweep.scan_phi, "phi range start:stop:count (radians)")->required();
    sweep.attach_common(fig4);
    auto* custom = sweep_app->add_subcommand("custom", "Scan x, z or u with arbitrary directions");
    custom->add_option("--vary", sweep.vary, "Scanned variable")->required()->check(CLI::IsMember({"x", "z", "u"}));
    custom->add_option("--z", sweep.fixed_z, "z values (vary x/u) or z range (vary z)");
    custom->add_option("--u", sweep.fixed_u, "u values (vary z) or u range (vary u)");
    custom->add_option("--x", sweep.scan_x, "x range (vary x)");
    sweep.angles.attach(custom);
    sweep.attach_common(custom);

    VerifyCommand verify;
    auto* verify_app = app.add_subcommand("verify", "Check the closed forms against the perturbative oracle");
    verify.attach(verify_app);

    TimingCommand timing;
    auto* timing_app = app.add_subcommand("timing", "Detection-time arithmetic for the analyzer geometry");
    timing.attach(timing_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*point_app) return point.run(out);
        if (*fig2) return sweep.fig2(out);
        if (*fig3) return sweep.fig3(out);
        if (*fig4) return sweep.fig4(out);
        if (*custom) return sweep.custom(out);
        if (*verify_app) return verify.run(out, err);
        if (*timing_app) return timing.run(out);
    } catch (const std::exception& e) {
        err << "atomswap: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace atomswap::cli
