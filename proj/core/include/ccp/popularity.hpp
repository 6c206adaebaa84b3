#pragma once

#include "ccp/scalar.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ccp {

/// A validated probability vector {p_i} over N >= 2 items with 0 < p_i < 1.
///
/// Exact mode keeps rationals summing to exactly one (the doubles are kept
/// alongside for float kernels). Float mode holds doubles with
/// |sum - 1| <= 1e-12. Immutable once built.
class Popularity {
public:
    /// Probabilities proportional to `weights`. Mode is exact iff every
    /// weight is exact. Zero and negative weights are rejected.
    static Popularity from_weights(std::span<const Scalar> weights);
    static Popularity from_weights(std::span<const Rational> weights);
    static Popularity from_weights(std::span<const double> weights);

    static Popularity uniform(std::size_t N);

    /// p_i = 1 / (H_{N,a} i^a). Exact for integer a, float otherwise.
    static Popularity power_law(std::size_t N, const Scalar& a);

    /// The (N-1)-item distribution p_j / (1 - p_l), j != l.
    Popularity exclude(std::size_t l) const;

    bool is_uniform() const;

    std::size_t size() const noexcept { return values_.size(); }
    ArithmeticMode mode() const noexcept { return mode_; }
    bool is_exact() const noexcept { return mode_ == ArithmeticMode::exact; }

    /// Rational probabilities; throws ValidationError in float mode.
    std::span<const Rational> exact() const;
    /// Double probabilities, available in both modes.
    std::span<const double> values() const noexcept { return values_; }

    Scalar prob(std::size_t i) const;
    std::vector<Scalar> probs() const;

    /// Same distribution evaluated in float mode.
    Popularity to_float() const;
    /// Exact copy. In float mode the doubles are taken as exact rationals and
    /// renormalized by their exact sum.
    Popularity to_exact() const;

    /// Applies `f` to the probability span of the matching mode (Rational in
    /// exact mode, double otherwise).
    template <class F>
    decltype(auto) visit(F&& f) const {
        if (is_exact()) {
            return f(std::span<const Rational>(exact_));
        }
        return f(std::span<const double>(values_));
    }

    friend bool operator==(const Popularity& a, const Popularity& b);

private:
    Popularity() = default;
    static Popularity make_exact(std::vector<Rational> probs);
    static Popularity make_float(std::vector<double> probs);

    ArithmeticMode mode_ = ArithmeticMode::exact;
    std::vector<Rational> exact_;
    std::vector<double> values_;
};

} // namespace ccp
