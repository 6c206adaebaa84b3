#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <string>
#include <string_view>
#include <variant>

namespace ccp {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ArithmeticMode { exact, floating };

std::string_view to_string(ArithmeticMode mode);

/// Neumaier (improved Kahan) compensated summation.
template <class Float>
class CompensatedSum {
public:
    CompensatedSum& operator+=(Float x) noexcept {
        const Float t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }
    CompensatedSum& operator-=(Float x) noexcept { return *this += -x; }

    Float value() const noexcept { return sum_ + comp_; }

private:
    Float sum_{0};
    Float comp_{0};
};

/// Accumulator with one interface for both arithmetic modes: exact sums for
/// rationals, compensated sums for binary floats.
template <class T>
class Accumulator;

template <>
class Accumulator<double> {
public:
    void add(double x) noexcept { sum_ += x; }
    void sub(double x) noexcept { sum_ -= x; }
    double value() const noexcept { return sum_.value(); }

private:
    CompensatedSum<double> sum_;
};

template <>
class Accumulator<Rational> {
public:
    void add(const Rational& x) { sum_ += x; }
    void sub(const Rational& x) { sum_ -= x; }
    const Rational& value() const noexcept { return sum_; }

private:
    Rational sum_{0};
};

/// x^e for a nonnegative integer exponent, with 0^0 = 1.
Rational pow_int(const Rational& x, unsigned long e);
double pow_int(double x, unsigned long e);

/// A number in one of the two arithmetic modes. Mixed arithmetic degrades to
/// floating point; exact-only operations throw ValidationError in float mode.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(const Rational& q) : value_(q) {}
    Scalar(Rational&& q) : value_(std::move(q)) {}
    Scalar(const Integer& z) : value_(Rational(z)) {}
    Scalar(int v) : value_(Rational(v)) {}
    Scalar(long v) : value_(Rational(v)) {}
    Scalar(double v) : value_(v) {}

    static Scalar of(const Rational& q) { return Scalar(q); }
    static Scalar of(double v) { return Scalar(v); }

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
    ArithmeticMode mode() const noexcept {
        return is_exact() ? ArithmeticMode::exact : ArithmeticMode::floating;
    }

    const Rational& exact() const;
    double to_double() const;
    Scalar to_float() const { return Scalar(to_double()); }

    bool is_integer() const;
    int sign() const;

    /// "p/q" (or "p" when q = 1) in exact mode, shortest round-trip decimal
    /// otherwise.
    std::string to_string() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Exact comparison when both are exact, double comparison otherwise.
    friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits).
std::string format_double(double v);

/// Parses "p/q", an integer, or a decimal such as "0.05" / "1.5e-3" into an
/// exact rational. Throws ValidationError on malformed text.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double v);

} // namespace ccp
