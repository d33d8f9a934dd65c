// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nfsec {

/// Shortest round-trippable decimal form ("%.17g" trimmed to the first
/// representation that parses back exactly); "inf"/"-inf" for infinities.
std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws std::out_of_range if absent.
    std::size_t column(std::string_view name) const;
};

/// Plain comma-separated reader: no quoting, fields never contain commas.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace nfsec
