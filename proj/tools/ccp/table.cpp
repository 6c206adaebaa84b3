#include "ccp/table.hpp"

#include <ccp/errors.hpp>

namespace ccp::cli {

Format parse_format(const std::string& text) {
    if (text == "csv") {
        return Format::csv;
    }
    if (text == "json") {
        return Format::json;
    }
    throw ValidationError("unknown output format '" + text + "' (expected csv or json)");
}

Cell Cell::str(const std::string& s) {
    return Cell{s, s};
}

Cell Cell::num(double v) {
    return Cell{format_double(v), v};
}

Cell Cell::integer(std::int64_t v) {
    return Cell{std::to_string(v), v};
}

Cell Cell::scalar(const Scalar& s) {
    if (s.is_exact()) {
        return Cell::str(s.to_string());
    }
    return Cell::num(s.to_double());
}

Cell Cell::empty() {
    return Cell{"", nullptr};
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != headers_.size()) {
        throw Error("table row has " + std::to_string(row.size()) + " cells, expected " +
                    std::to_string(headers_.size()));
    }
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, Format format) const {
    if (format == Format::csv) {
        for (std::size_t c = 0; c < headers_.size(); ++c) {
            out << (c ? "," : "") << headers_[c];
        }
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << row[c].text;
            }
            out << '\n';
        }
        return;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[headers_[c]] = row[c].json;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

} // namespace ccp::cli
