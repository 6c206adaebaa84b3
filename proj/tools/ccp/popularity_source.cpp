#include "ccp/popularity_source.hpp"

#include <ccp/errors.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ccp::cli {

void PopularitySource::attach(CLI::App& app) {
    app.add_option("--file", file, "JSON popularity file {\"weights\": [...]}");
    app.add_option("--uniform", uniform, "Uniform popularity over N items");
    app.add_option("--powerlaw", powerlaw, "Power law: N and skewness a")->expected(2);
    app.add_option("--weights", weights, "Comma-separated weights (p/q or decimals)")
        ->delimiter(',');
    app.add_option("--mode", mode, "Arithmetic: auto, exact or float")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
}

bool PopularitySource::given() const {
    return !file.empty() || uniform > 0 || !powerlaw.empty() || !weights.empty();
}

namespace {

Popularity from_texts(const std::vector<std::string>& texts) {
    std::vector<Rational> w;
    w.reserve(texts.size());
    for (const auto& t : texts) {
        w.push_back(parse_rational(t));
    }
    return Popularity::from_weights(std::span<const Rational>(w));
}

} // namespace

Popularity popularity_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("popularity file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("weights") || !doc["weights"].is_array()) {
        throw ValidationError("popularity file must be an object with a \"weights\" array");
    }
    std::vector<std::string> texts;
    for (const auto& w : doc["weights"]) {
        if (w.is_string()) {
            texts.push_back(w.get<std::string>());
        } else if (w.is_number_integer()) {
            texts.push_back(std::to_string(w.get<long long>()));
        } else if (w.is_number()) {
            texts.push_back(format_double(w.get<double>()));
        } else {
            throw ValidationError("popularity weights must be strings or numbers");
        }
    }
    return from_texts(texts);
}

Popularity PopularitySource::build() const {
    const int sources = static_cast<int>(!file.empty()) + static_cast<int>(uniform > 0) +
                        static_cast<int>(!powerlaw.empty()) + static_cast<int>(!weights.empty());
    if (sources != 1) {
        throw ValidationError(
            "give exactly one popularity source: --file, --uniform, --powerlaw or --weights");
    }
    Popularity pop = [&] {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) {
                throw ValidationError("cannot read popularity file '" + file + "'");
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            return popularity_from_json(ss.str());
        }
        if (uniform > 0) {
            return Popularity::uniform(uniform);
        }
        if (!powerlaw.empty()) {
            const Rational n = parse_rational(powerlaw[0]);
            if (n.get_den() != 1 || sgn(n) <= 0 || !n.get_num().fits_ulong_p()) {
                throw ValidationError("--powerlaw N must be a positive integer");
            }
            const Rational a = parse_rational(powerlaw[1]);
            const Scalar sa = a.get_den() == 1 ? Scalar(a) : Scalar(a.get_d());
            return Popularity::power_law(n.get_num().get_ui(), sa);
        }
        return from_texts(weights);
    }();
    if (mode == "float") {
        return pop.to_float();
    }
    if (mode == "exact") {
        return pop.to_exact();
    }
    return pop;
}

} // namespace ccp::cli
