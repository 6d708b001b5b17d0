/**
 * @file rational.hpp
 * @brief Exact integers, rationals, and the factorial/binomial/multinomial
 *        primitives every closed-form chromatic formula is built from.
 *
 * Big integers come from Boost.Multiprecision (cpp_int); Rational is a thin
 * value type on top of cpp_rational that pins the canonical form
 * (lowest terms, positive denominator) and the "p/q" text format.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skeinlab/errors.hpp"

namespace skeinlab {

using BigInt = boost::multiprecision::cpp_int;

/**
 * @brief Exact arbitrary-precision rational number.
 *
 * Always stored in lowest terms with a positive denominator; zero is 0/1.
 */
class Rational {
    using rep_t = boost::multiprecision::cpp_rational;
    rep_t value_;

    explicit Rational(rep_t v) : value_(std::move(v)) {}

  public:
    Rational() = default;
    Rational(long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : value_(n) {}        // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        value_ = den < 0 ? rep_t(BigInt(-num), BigInt(-den)) : rep_t(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

    double to_double() const { return value_.convert_to<double>(); }

    Rational operator-() const { return Rational(rep_t(-value_)); }
    Rational& operator+=(const Rational& o) {
        value_ += o.value_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        value_ -= o.value_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        value_ *= o.value_;
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        value_ /= o.value_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "p/q", or just "p" when q = 1.
    std::string to_string() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

    /// Inverse of to_string; also accepts surrounding whitespace.
    static Rational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        auto parse_int = [](std::string_view s) {
            if (s.empty()) throw DomainError("empty integer in rational literal");
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) throw DomainError("bad integer '" + std::string(s) + "'");
            for (std::size_t k = i; k < s.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(s[k])))
                    throw DomainError("bad integer '" + std::string(s) + "'");
            return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
        };
        text = trim(text);
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        return Rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }
};

/// (-1)^n as a small integer.
constexpr int sign_power(long long n) { return (n % 2 == 0) ? 1 : -1; }

namespace detail {

/// Read-mostly factorial table; grows on demand under an exclusive lock.
class FactorialTable {
    mutable std::shared_mutex mutex_;
    std::vector<BigInt> table_{BigInt(1)};

  public:
    BigInt get(std::size_t n) {
        {
            std::shared_lock lock(mutex_);
            if (n < table_.size()) return table_[n];
        }
        std::unique_lock lock(mutex_);
        table_.reserve(n + 1);
        while (table_.size() <= n) table_.push_back(table_.back() * BigInt(table_.size()));
        return table_[n];
    }
};

inline FactorialTable& factorial_table() {
    static FactorialTable table;
    return table;
}

}  // namespace detail

/// n! (memoized). Throws DomainError for n < 0.
inline BigInt factorial(long long n) {
    if (n < 0) throw DomainError("factorial of negative number " + std::to_string(n));
    return detail::factorial_table().get(static_cast<std::size_t>(n));
}

/// n choose k; 0 whenever k < 0 or k > n.
inline BigInt binomial(long long n, long long k) {
    if (n < 0) throw DomainError("binomial with negative n " + std::to_string(n));
    if (k < 0 || k > n) return BigInt(0);
    return factorial(n) / (factorial(k) * factorial(n - k));
}

/// total! / prod(parts_i!). The parts must sum to total.
inline BigInt multinomial(long long total, std::span<const long long> parts) {
    if (total < 0) throw DomainError("multinomial with negative total");
    long long sum = 0;
    BigInt den = 1;
    for (long long p : parts) {
        if (p < 0) throw DomainError("multinomial with negative part");
        sum += p;
        den *= factorial(p);
    }
    if (sum != total)
        throw DomainError("multinomial parts sum to " + std::to_string(sum) + ", expected " +
                          std::to_string(total));
    return factorial(total) / den;
}

inline BigInt multinomial(long long total, std::initializer_list<long long> parts) {
    return multinomial(total, std::span<const long long>(parts.begin(), parts.size()));
}

}  // namespace skeinlab
