#include "atomswap/report.hpp"

#include <json.hpp>

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace atomswap::report {
namespace {

std::string text_of(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) return format_number(std::get<double>(cell));
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    return {};
}

double parse_number(const std::string& text) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error("internal: cannot re-read number '" + text + "'");
    return value;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

Cell number_or_empty(const std::optional<double>& value) {
    if (value) return *value;
    return std::monostate{};
}

void write_csv(std::ostream& os, const Table& table) {
    for (const auto& [key, value] : table.meta) os << "# " << key << '=' << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << text_of(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& table) {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const Cell& cell = row[i];
            if (std::holds_alternative<double>(cell))
                rec[table.columns[i]] = parse_number(format_number(std::get<double>(cell)));
            else if (std::holds_alternative<std::string>(cell))
                rec[table.columns[i]] = std::get<std::string>(cell);
            else
                rec[table.columns[i]] = nullptr;
        }
        doc["records"].push_back(std::move(rec));
    }
    os << doc.dump(2) << '\n';
}

void write(std::ostream& os, const Table& table, Format format) {
    if (format == Format::Json)
        write_json(os, table);
    else
        write_csv(os, table);
}

std::vector<Cell> sweep_row(const SweepRecord& r) {
    return {r.coordinate,
            r.z,
            r.u,
            r.x,
            r.j,
            r.h_plus,
            r.h_minus,
            number_or_empty(r.abs_f_over_g),
            number_or_empty(r.concurrence),
            std::string(to_string(r.causal_class))};
}

Table point_table(const SweepRecord& r, std::vector<std::pair<std::string, std::string>> meta) {
    Table t{std::move(meta), kSweepColumns, {}};
    for (const char* extra : {"f_re", "f_im", "g_re", "g_im", "norm_sq"}) t.columns.emplace_back(extra);
    auto row = sweep_row(r);
    row.emplace_back(r.amplitudes.f.real());
    row.emplace_back(r.amplitudes.f.imag());
    row.emplace_back(r.amplitudes.g.real());
    row.emplace_back(r.amplitudes.g.imag());
    row.emplace_back(relative_weight(r.amplitudes));
    t.rows.push_back(std::move(row));
    return t;
}

Table sweep_table(const std::vector<SweepRecord>& records, std::vector<std::pair<std::string, std::string>> meta) {
    Table t{std::move(meta), kSweepColumns, {}};
    t.rows.reserve(records.size());
    for (const auto& r : records) t.rows.push_back(sweep_row(r));
    return t;
}

Table verify_table(const std::vector<VerifyRow>& rows, std::vector<std::pair<std::string, std::string>> meta) {
    Table t{std::move(meta),
            {"z", "u", "theta_k", "phi_k", "theta_k2", "phi_k2", "bell", "oracle_abs_f", "oracle_abs_g",
             "closed_abs_f_over_g", "ratio_rel_error", "vanishing_ratio", "time_integral_error", "verdict", "passed"},
            {}};
    for (const auto& v : rows) {
        const auto& r = v.report;
        std::optional<double> closed_ratio;
        if (std::abs(r.closed.g) > 0) closed_ratio = std::abs(r.closed.f) / std::abs(r.closed.g);
        t.rows.push_back({v.z, v.u, v.dk.theta, v.dk.phi, v.dk2.theta, v.dk2.phi, std::string(to_string(v.bell)),
                          std::abs(r.oracle.f), std::abs(r.oracle.g), number_or_empty(closed_ratio),
                          number_or_empty(r.ratio_error), number_or_empty(r.vanishing_channel_ratio),
                          number_or_empty(r.time_integral_error), std::string(oracle::to_string(r.verdict)),
                          std::string(r.passed ? "yes" : "no")});
    }
    return t;
}

}  // namespace atomswap::report
