#pragma once

#include <ccp/scalar.hpp>

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ccp::cli {

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// One output value: its CSV text and its JSON form.
struct Cell {
    std::string text;
    nlohmann::ordered_json json;

    static Cell str(const std::string& s);
    static Cell num(double v);
    static Cell integer(std::int64_t v);
    /// "p/q" (a JSON string) in exact mode, a number otherwise.
    static Cell scalar(const Scalar& s);
    static Cell empty();
};

class Table {
public:
    explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

    void add(std::vector<Cell> row);
    std::size_t rows() const noexcept { return rows_.size(); }

    /// CSV with a header line, or a JSON array of objects keyed by header.
    void write(std::ostream& out, Format format) const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace ccp::cli
