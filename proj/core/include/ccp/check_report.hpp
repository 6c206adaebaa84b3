#pragma once

#include "ccp/scalar.hpp"

#include <string>
#include <vector>

namespace ccp {

/// The direction a witness is checked against.
enum class Relation {
    greater,       ///< lhs > rhs
    less,          ///< lhs < rhs
    greater_equal, ///< lhs >= rhs
    less_equal,    ///< lhs <= rhs
    equal,         ///< lhs == rhs (exact), or within tolerance in float mode
};

enum class Verdict { pass, fail, indeterminate };

std::string_view to_string(Relation r);
std::string_view to_string(Verdict v);

struct Witness {
    std::string input;
    Scalar lhs;
    Scalar rhs;
    /// Signed slack in the checked direction: positive means satisfied with
    /// room to spare; zero for an exact equality.
    Scalar margin;
    Relation relation = Relation::equal;
    Verdict verdict = Verdict::pass;
};

/// Relative slack below which a float-mode strict inequality cannot be
/// trusted.
inline constexpr double kStrictMarginScale = 1e-12;

/// Builds a witness and classifies it. Exact operands give a definite verdict.
/// Float operands: strict relations need margin > 1e-12*scale (otherwise
/// indeterminate); equality passes within `float_tolerance`*scale.
Witness make_witness(std::string input, Scalar lhs, Scalar rhs, Relation relation,
                     double float_tolerance = 1e-12);

struct CheckReport {
    std::string name;
    bool passed = true;
    std::vector<Witness> witnesses;
    std::string notes;

    void add(Witness w);
    std::size_t count(Verdict v) const;
};

/// Stable-order JSON for a list of reports.
std::string to_json(const std::vector<CheckReport>& reports, int indent = 2);
std::string to_json(const CheckReport& report, int indent = 2);

} // namespace ccp
