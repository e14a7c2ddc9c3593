#include "asym/cli/table.hpp"

#include "asym/core/errors.hpp"

#include <cstdio>
#include <sstream>

namespace asym::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("table '" + name + "': row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_cell(r[i]);
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json Table::to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < r.size(); ++i)
            std::visit([&](const auto& v) { rec[columns[i]] = v; }, r[i]);
        arr.push_back(std::move(rec));
    }
    return arr;
}

}  // namespace asym::cli
