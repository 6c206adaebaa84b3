#include "ccp/scalar.hpp"

#include "ccp/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace ccp {

std::string_view to_string(ArithmeticMode mode) {
    return mode == ArithmeticMode::exact ? "exact" : "float";
}

Rational pow_int(const Rational& x, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
    // num/den stay coprime under powering, and den > 0.
    return r;
}

double pow_int(double x, unsigned long e) {
    double result = 1.0;
    double base = x;
    while (e != 0) {
        if (e & 1UL) {
            result *= base;
        }
        base *= base;
        e >>= 1U;
    }
    return result;
}

const Rational& Scalar::exact() const {
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return *q;
    }
    throw ValidationError("exact value requested from a float-mode scalar");
}

double Scalar::to_double() const {
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return q->get_d();
    }
    return std::get<double>(value_);
}

bool Scalar::is_integer() const {
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return q->get_den() == 1;
    }
    const double v = std::get<double>(value_);
    return std::isfinite(v) && std::floor(v) == v;
}

int Scalar::sign() const {
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return sgn(*q);
    }
    const double v = std::get<double>(value_);
    return (v > 0) - (v < 0);
}

std::string Scalar::to_string() const {
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return q->get_str();
    }
    return format_double(std::get<double>(value_));
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar(Rational(op(a.exact(), b.exact())));
    }
    return Scalar(op(a.to_double(), b.to_double()));
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_exact() && sgn(b.exact()) == 0) {
        throw ValidationError("division by exact zero");
    }
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        return Scalar(Rational(-exact()));
    }
    return Scalar(-to_double());
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        const int c = cmp(a.exact(), b.exact());
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }
    return a.to_double() <=> b.to_double();
}

bool operator==(const Scalar& a, const Scalar& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
}

Scalar abs(const Scalar& x) {
    return x.sign() < 0 ? -x : x;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ValidationError("malformed number: '" + std::string(text) + "'");
    };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        return fail();
    }

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse_rational(text.substr(0, slash));
        const Rational den = parse_rational(text.substr(slash + 1));
        if (sgn(den) == 0) {
            throw ValidationError("zero denominator in '" + std::string(text) + "'");
        }
        return num / den;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        return fail();
    }
    long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') {
            return fail();
        }
        ++pos;
        const std::string_view exp_text = text.substr(pos);
        std::string_view body = exp_text;
        if (!body.empty() && body.front() == '+') {
            body.remove_prefix(1);
        }
        const auto res = std::from_chars(body.data(), body.data() + body.size(), exponent);
        if (res.ec != std::errc{} || res.ptr != body.data() + body.size()) {
            return fail();
        }
    }

    Rational value{Integer(digits, 10)};
    const long shift = exponent - frac_digits;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift < 0) {
        value /= scale;
    } else {
        value *= scale;
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) {
        throw ValidationError("non-finite value cannot be made exact");
    }
    Rational q;
    mpq_set_d(q.get_mpq_t(), v);
    return q;
}

} // namespace ccp
