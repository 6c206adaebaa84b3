#pragma once

#include "ccp/table.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>
#include <vector>

namespace ccp::cli {

/// Output stream plus diagnostics stream handed to a subcommand.
struct Streams {
    std::ostream& out;
    std::ostream& err;
};

/// A registered subcommand and the action to run when it is selected.
/// The action returns the exit status.
struct Command {
    CLI::App* app = nullptr;
    std::function<int(Streams)> action;
};

std::vector<Command> register_commands(CLI::App& root);

/// Named data recipes behind `ccp repro`.
struct RecipeOptions {
    double step = 0.01;
    unsigned k_max = 200;
    unsigned n_max = 1000;
};

const std::vector<std::string>& recipe_names();
void run_recipe(const std::string& name, const RecipeOptions& options, Format format,
                Streams streams);

} // namespace ccp::cli
