#include "ccp/cli.hpp"

#include "ccp/commands.hpp"

#include <ccp/errors.hpp>

#include <CLI11.hpp>

#include <sstream>

namespace ccp::cli {

void diagnostic(std::ostream& err, const std::string& level, const std::string& message,
                nlohmann::ordered_json extra) {
    nlohmann::ordered_json line;
    line["level"] = level;
    line["message"] = message;
    for (auto& [key, value] : extra.items()) {
        line[key] = value;
    }
    err << line.dump() << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupon-collector distributions, working sets and LRU miss rates under IRM", "ccp"};
    app.require_subcommand(1);
    const std::vector<Command> commands = register_commands(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        diagnostic(err, "error", e.what(), {{"kind", "validation"}});
        return kExitValidation;
    }

    for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) {
            continue;
        }
        try {
            return cmd.action(Streams{out, err});
        } catch (const CapacityError& e) {
            diagnostic(err, "error", e.what(),
                       {{"kind", "capacity"}, {"requested", e.requested()}, {"limit", e.limit()}});
            return kExitCapacity;
        } catch (const ValidationError& e) {
            diagnostic(err, "error", e.what(), {{"kind", "validation"}});
            return kExitValidation;
        } catch (const NumericError& e) {
            diagnostic(err, "error", e.what(), {{"kind", "numeric"}});
            return kExitValidation;
        }
    }
    diagnostic(err, "error", "no subcommand given", {{"kind", "validation"}});
    return kExitValidation;
}

} // namespace ccp::cli
