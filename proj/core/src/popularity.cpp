#include "ccp/popularity.hpp"

#include "ccp/combinatorics.hpp"
#include "ccp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ccp {

namespace {

void check_weight_count(std::size_t n) {
    if (n < 2) {
        throw ValidationError("popularity needs at least 2 positive weights, got " +
                              std::to_string(n));
    }
}

[[noreturn]] void reject_weight(std::size_t i, const std::string& value) {
    throw ValidationError("weight " + std::to_string(i) + " is " + value +
                          "; every weight must be strictly positive");
}

} // namespace

Popularity Popularity::make_exact(std::vector<Rational> probs) {
    Popularity p;
    p.mode_ = ArithmeticMode::exact;
    p.values_.reserve(probs.size());
    for (const auto& q : probs) {
        if (sgn(q) <= 0 || q >= 1) {
            throw ValidationError("probability " + q.get_str() + " outside (0, 1)");
        }
        p.values_.push_back(q.get_d());
    }
    p.exact_ = std::move(probs);
    return p;
}

Popularity Popularity::make_float(std::vector<double> probs) {
    Popularity p;
    p.mode_ = ArithmeticMode::floating;
    CompensatedSum<double> total;
    for (double v : probs) {
        if (!(v > 0.0 && v < 1.0)) {
            throw ValidationError("probability " + format_double(v) + " outside (0, 1)");
        }
        total += v;
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        throw ValidationError("float probabilities sum to " + format_double(total.value()));
    }
    p.values_ = std::move(probs);
    return p;
}

Popularity Popularity::from_weights(std::span<const Rational> weights) {
    check_weight_count(weights.size());
    Rational total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (sgn(weights[i]) <= 0) {
            reject_weight(i, weights[i].get_str());
        }
        total += weights[i];
    }
    std::vector<Rational> probs;
    probs.reserve(weights.size());
    for (const auto& w : weights) {
        probs.push_back(w / total);
    }
    return make_exact(std::move(probs));
}

Popularity Popularity::from_weights(std::span<const double> weights) {
    check_weight_count(weights.size());
    CompensatedSum<double> total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
            reject_weight(i, format_double(weights[i]));
        }
        total += weights[i];
    }
    std::vector<double> probs;
    probs.reserve(weights.size());
    for (double w : weights) {
        probs.push_back(w / total.value());
    }
    return make_float(std::move(probs));
}

Popularity Popularity::from_weights(std::span<const Scalar> weights) {
    const bool all_exact =
        std::all_of(weights.begin(), weights.end(), [](const Scalar& s) { return s.is_exact(); });
    if (all_exact) {
        std::vector<Rational> w;
        w.reserve(weights.size());
        for (const auto& s : weights) {
            w.push_back(s.exact());
        }
        return from_weights(std::span<const Rational>(w));
    }
    std::vector<double> w;
    w.reserve(weights.size());
    for (const auto& s : weights) {
        w.push_back(s.to_double());
    }
    return from_weights(std::span<const double>(w));
}

Popularity Popularity::uniform(std::size_t N) {
    if (N < 2) {
        throw ValidationError("uniform popularity needs N >= 2");
    }
    return make_exact(std::vector<Rational>(N, Rational(1, static_cast<unsigned long>(N))));
}

Popularity Popularity::power_law(std::size_t N, const Scalar& a) {
    if (N < 2) {
        throw ValidationError("power law needs N >= 2");
    }
    if (a.sign() < 0) {
        throw ValidationError("power law skewness must be nonnegative");
    }
    const Scalar h = harmonic(static_cast<unsigned>(N), a);
    if (h.is_exact()) {
        const unsigned long e = a.exact().get_num().get_ui();
        std::vector<Rational> probs;
        probs.reserve(N);
        for (std::size_t i = 1; i <= N; ++i) {
            Rational p = Rational(1) / (h.exact() * pow_int(Rational(static_cast<unsigned long>(i)), e));
            probs.push_back(std::move(p));
        }
        return make_exact(std::move(probs));
    }
    const double ad = a.to_double();
    std::vector<double> w;
    w.reserve(N);
    for (std::size_t i = 1; i <= N; ++i) {
        w.push_back(std::pow(static_cast<double>(i), -ad));
    }
    return from_weights(std::span<const double>(w));
}

Popularity Popularity::exclude(std::size_t l) const {
    if (l >= size()) {
        throw ValidationError("exclude: index " + std::to_string(l) + " out of range");
    }
    if (size() < 3) {
        throw ValidationError("exclude: a 2-item popularity would leave a single item");
    }
    if (is_exact()) {
        const Rational rest = Rational(1) - exact_[l];
        std::vector<Rational> probs;
        probs.reserve(size() - 1);
        for (std::size_t j = 0; j < size(); ++j) {
            if (j != l) {
                probs.push_back(exact_[j] / rest);
            }
        }
        return make_exact(std::move(probs));
    }
    std::vector<double> w;
    w.reserve(size() - 1);
    for (std::size_t j = 0; j < size(); ++j) {
        if (j != l) {
            w.push_back(values_[j]);
        }
    }
    return from_weights(std::span<const double>(w));
}

bool Popularity::is_uniform() const {
    if (is_exact()) {
        return std::all_of(exact_.begin(), exact_.end(),
                           [&](const Rational& q) { return q == exact_.front(); });
    }
    const double target = 1.0 / static_cast<double>(size());
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return std::abs(v - target) <= 1e-12; });
}

std::span<const Rational> Popularity::exact() const {
    if (!is_exact()) {
        throw ValidationError("exact probabilities requested from a float-mode popularity");
    }
    return exact_;
}

Scalar Popularity::prob(std::size_t i) const {
    if (is_exact()) {
        return Scalar(exact_.at(i));
    }
    return Scalar(values_.at(i));
}

std::vector<Scalar> Popularity::probs() const {
    std::vector<Scalar> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(prob(i));
    }
    return out;
}

Popularity Popularity::to_float() const {
    Popularity p = *this;
    p.mode_ = ArithmeticMode::floating;
    p.exact_.clear();
    return p;
}

Popularity Popularity::to_exact() const {
    if (is_exact()) {
        return *this;
    }
    std::vector<Rational> w;
    w.reserve(size());
    for (double v : values_) {
        w.push_back(rational_from_double(v));
    }
    return from_weights(std::span<const Rational>(w));
}

bool operator==(const Popularity& a, const Popularity& b) {
    if (a.mode_ != b.mode_) {
        return false;
    }
    return a.is_exact() ? a.exact_ == b.exact_ : a.values_ == b.values_;
}

} // namespace ccp
