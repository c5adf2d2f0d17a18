#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace elicit {

/// Numeric CSV table: header row, comma separated, '.' decimal point.
/// Blank lines are skipped. Every cell must parse as a finite double.
struct CsvTable {
	std::string path;
	std::vector<std::string> header;
	std::vector<std::vector<double>> columns;
	std::vector<std::size_t> line_numbers; // 1-based source line of each row

	std::size_t rows() const noexcept { return line_numbers.size(); }
	bool has_column(const std::string &name) const;
	const std::vector<double> &column(const std::string &name) const;
};

CsvTable read_csv_table(const std::string &path);

} // namespace elicit
