#pragma once

#include <ccp/popularity.hpp>

#include <CLI11.hpp>

#include <string>
#include <vector>

namespace ccp::cli {

/// Flags selecting exactly one popularity source plus the arithmetic mode.
struct PopularitySource {
    std::string file;
    std::size_t uniform = 0;
    std::vector<std::string> powerlaw;
    std::vector<std::string> weights;
    std::string mode = "auto";

    void attach(CLI::App& app);
    bool given() const;
    Popularity build() const;
};

/// Parses {"weights": [...]} with entries as "p/q", decimal strings, or
/// JSON numbers.
Popularity popularity_from_json(const std::string& text);

} // namespace ccp::cli
