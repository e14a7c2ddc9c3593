#pragma once

// Row tables written as CSV or as JSON arrays of records.

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace asym::cli {

using Cell = std::variant<long, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// %.17g, so that CSV output round-trips doubles and is byte-stable.
std::string format_cell(const Cell& c);

}  // namespace asym::cli
