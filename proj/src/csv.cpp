#include "elicit/csv.hpp"

#include "elicit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace elicit {

namespace {

std::string trim(std::string_view s) {
	const auto first = s.find_first_not_of(" \t\r");
	if (first == std::string_view::npos) {
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r");
	return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string &line) {
	std::vector<std::string> fields;
	std::size_t start = 0;
	while (true) {
		const auto comma = line.find(',', start);
		fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
		if (comma == std::string::npos) {
			break;
		}
		start = comma + 1;
	}
	return fields;
}

std::string where(const std::string &path, std::size_t line) {
	return path + ":" + std::to_string(line) + ": ";
}

} // namespace

bool CsvTable::has_column(const std::string &name) const {
	return std::find(header.begin(), header.end(), name) != header.end();
}

const std::vector<double> &CsvTable::column(const std::string &name) const {
	const auto it = std::find(header.begin(), header.end(), name);
	if (it == header.end()) {
		throw InputError(path + ": no column named '" + name + "'");
	}
	return columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable read_csv_table(const std::string &path) {
	std::ifstream in(path);
	if (!in) {
		throw InputError(path + ": cannot open file");
	}

	CsvTable table;
	table.path = path;

	std::string line;
	std::size_t line_no = 0;
	bool have_header = false;
	while (std::getline(in, line)) {
		++line_no;
		if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
			line.erase(0, 3);
		}
		if (trim(line).empty()) {
			continue;
		}
		auto fields = split_fields(line);
		if (!have_header) {
			for (const auto &name : fields) {
				if (name.empty()) {
					throw InputError(where(path, line_no) + "empty column name in header");
				}
			}
			table.header = std::move(fields);
			table.columns.resize(table.header.size());
			have_header = true;
			continue;
		}
		if (fields.size() != table.header.size()) {
			throw InputError(where(path, line_no) + "expected " + std::to_string(table.header.size()) +
			                 " fields, found " + std::to_string(fields.size()));
		}
		for (std::size_t c = 0; c < fields.size(); ++c) {
			const auto &f = fields[c];
			double v = 0.0;
			const auto *end = f.data() + f.size();
			const auto [ptr, ec] = std::from_chars(f.data(), end, v);
			if (f.empty() || ec != std::errc() || ptr != end) {
				throw InputError(where(path, line_no) + "cannot parse '" + f + "' in column '" +
				                 table.header[c] + "' as a number");
			}
			if (!std::isfinite(v)) {
				throw InputError(where(path, line_no) + "non-finite value in column '" + table.header[c] + "'");
			}
			table.columns[c].push_back(v);
		}
		table.line_numbers.push_back(line_no);
	}
	if (!have_header) {
		throw InputError(path + ": empty file");
	}
	if (table.rows() == 0) {
		throw InputError(path + ": no data rows");
	}
	return table;
}

} // namespace elicit
