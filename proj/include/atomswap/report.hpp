#pragma once

// Tabular output for the command-line tool: '#'-prefixed metadata, a header
// row and data rows as CSV, or {"meta": ..., "records": [...]} as JSON.
// Numbers are rendered with 9 significant digits independent of locale; the
// JSON value of every number is the CSV text read back, so both formats
// carry identical numeric content.

#include "atomswap/oracle.hpp"
#include "atomswap/sweep.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace atomswap::report {

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

std::string format_number(double value);
Cell number_or_empty(const std::optional<double>& value);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);
void write(std::ostream& os, const Table& table, Format format);

inline const std::vector<std::string> kSweepColumns = {"sweep_coord", "z",       "u",           "x",
                                                       "j",           "h_plus",  "h_minus",     "abs_f_over_g",
                                                       "concurrence", "causal_class"};

std::vector<Cell> sweep_row(const SweepRecord& r);

/// Point query: the sweep columns followed by the raw amplitudes and N^2.
Table point_table(const SweepRecord& r, std::vector<std::pair<std::string, std::string>> meta);

Table sweep_table(const std::vector<SweepRecord>& records, std::vector<std::pair<std::string, std::string>> meta);

struct VerifyRow {
    double z;
    double u;
    Direction<> dk;
    Direction<> dk2;
    BellKind bell;
    oracle::ComparisonReport report;
};

Table verify_table(const std::vector<VerifyRow>& rows, std::vector<std::pair<std::string, std::string>> meta);

}  // namespace atomswap::report
