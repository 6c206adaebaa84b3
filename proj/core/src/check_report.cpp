#include "ccp/check_report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace ccp {

std::string_view to_string(Relation r) {
    switch (r) {
    case Relation::greater: return ">";
    case Relation::less: return "<";
    case Relation::greater_equal: return ">=";
    case Relation::less_equal: return "<=";
    case Relation::equal: return "==";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

Witness make_witness(std::string input, Scalar lhs, Scalar rhs, Relation relation,
                     double float_tolerance) {
    Witness w;
    w.input = std::move(input);
    w.relation = relation;
    switch (relation) {
    case Relation::greater:
    case Relation::greater_equal:
        w.margin = lhs - rhs;
        break;
    case Relation::less:
    case Relation::less_equal:
        w.margin = rhs - lhs;
        break;
    case Relation::equal:
        w.margin = abs(lhs - rhs);
        break;
    }

    const bool exact = w.margin.is_exact();
    const int s = w.margin.sign();
    const double scale =
        std::max({1.0, std::abs(lhs.to_double()), std::abs(rhs.to_double())});
    if (exact) {
        switch (relation) {
        case Relation::greater:
        case Relation::less: w.verdict = s > 0 ? Verdict::pass : Verdict::fail; break;
        case Relation::greater_equal:
        case Relation::less_equal: w.verdict = s >= 0 ? Verdict::pass : Verdict::fail; break;
        case Relation::equal: w.verdict = s == 0 ? Verdict::pass : Verdict::fail; break;
        }
    } else {
        const double m = w.margin.to_double();
        const double tiny = kStrictMarginScale * scale;
        switch (relation) {
        case Relation::greater:
        case Relation::less:
            w.verdict = m > tiny ? Verdict::pass : m >= -tiny ? Verdict::indeterminate : Verdict::fail;
            break;
        case Relation::greater_equal:
        case Relation::less_equal:
            w.verdict = m >= 0 ? Verdict::pass : m > -tiny ? Verdict::indeterminate : Verdict::fail;
            break;
        case Relation::equal:
            w.verdict = std::isfinite(m) && m <= float_tolerance * scale ? Verdict::pass
                                                                          : Verdict::fail;
            break;
        }
    }
    w.lhs = std::move(lhs);
    w.rhs = std::move(rhs);
    return w;
}

void CheckReport::add(Witness w) {
    if (w.verdict != Verdict::pass) {
        passed = false;
    }
    witnesses.push_back(std::move(w));
}

std::size_t CheckReport::count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(
        witnesses.begin(), witnesses.end(), [v](const Witness& w) { return w.verdict == v; }));
}

namespace {

nlohmann::ordered_json report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    auto& ws = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::ordered_json wj;
        wj["input"] = w.input;
        wj["relation"] = std::string(to_string(w.relation));
        wj["lhs"] = w.lhs.to_string();
        wj["rhs"] = w.rhs.to_string();
        wj["margin"] = w.margin.to_string();
        wj["verdict"] = std::string(to_string(w.verdict));
        ws.push_back(std::move(wj));
    }
    j["notes"] = r.notes;
    return j;
}

} // namespace

std::string to_json(const std::vector<CheckReport>& reports, int indent) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
    }
    return arr.dump(indent);
}

std::string to_json(const CheckReport& report, int indent) {
    return report_json(report).dump(indent);
}

} // namespace ccp
