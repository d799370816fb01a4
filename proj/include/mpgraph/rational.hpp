#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational scalar.
 *
 * Thin value type over GMP's mpq_class. Every value is kept in lowest
 * terms with a positive denominator, and zero is always 0/1, so equality
 * of representations is equality of numbers.
 */

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace mpgraph {

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
    explicit Rational(const mpz_class& value) : q_(value) {}

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    /// Wraps a GMP value that is already in canonical form (any result of
    /// mpq_class arithmetic on canonical operands is).
    static Rational from_canonical(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);
        return r;
    }

    /// Parses "p", "-p", "p/q" or "+p/q". Whitespace is not allowed.
    static Rational parse(std::string_view text) {
        auto digits = [&](std::string_view s, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ++i;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        auto to_mpz = [](std::string_view s) {
            if (!s.empty() && s[0] == '+') s.remove_prefix(1);
            return mpz_class(std::string(s), 10);
        };

        const auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            if (!digits(text, true))
                throw ParseError("malformed rational '" + std::string(text) + "'", 0);
            return Rational(to_mpz(text));
        }
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!digits(num, true) || !digits(den, false))
            throw ParseError("malformed rational '" + std::string(text) + "'", 0);
        return Rational(to_mpz(num), to_mpz(den));
    }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& value() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_one() const { return q_ == 1; }

    double to_double() const { return q_.get_d(); }

    /// "p" for integers, otherwise "p/q".
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        Rational r;
        r.q_ = 1 / q_;
        return r;
    }

    Rational abs() const {
        Rational r;
        r.q_ = ::abs(q_);
        return r;
    }

    Rational operator-() const {
        Rational r;
        r.q_ = -q_;
        return r;
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    mpq_class q_;
};

inline Rational rat_add(const Rational& a, const Rational& b) { return a + b; }
inline Rational rat_mul(const Rational& a, const Rational& b) { return a * b; }
inline Rational rat_neg(const Rational& a) { return -a; }
inline Rational rat_inv(const Rational& a) { return a.inverse(); }

}  // namespace mpgraph
