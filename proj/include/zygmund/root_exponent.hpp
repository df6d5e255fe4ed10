#pragma once

#include <cmath>
#include <compare>
#include <numeric>
#include <string>
#include <utility>

#include "zygmund/bigint.hpp"

namespace zygmund {

/// Exact representation of the real number sign(q) * |q|^(1/r).
///
/// The pair (q, r) is kept in reduced form: if |q| = s^t and g = gcd(t, r) > 1
/// the value is rewritten as (sign(q) * s^(t/g), r/g), so r == 1 exactly when
/// the denoted value is an integer, and equal values have identical
/// representations.
class RootExponent {
public:
    RootExponent() : q_(0), r_(1) {}
    RootExponent(BigInt q, unsigned long r) : q_(std::move(q)), r_(r) {
        if (r_ == 0) throw Error("RootExponent: root index must be >= 1");
        normalize();
    }
    RootExponent(long q) : q_(q), r_(1) {}            // NOLINT: implicit by design
    RootExponent(int q) : q_(q), r_(1) {}             // NOLINT
    explicit RootExponent(const std::string& s) : q_(s), r_(1) {}

    const BigInt& radicand() const { return q_; }
    unsigned long root() const { return r_; }

    bool is_integer() const { return r_ == 1; }
    const BigInt& integer_value() const {
        if (!is_integer()) throw Error("RootExponent: not an integer");
        return q_;
    }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return q_ == 0; }

    RootExponent operator-() const {
        RootExponent n;
        n.q_ = -q_;
        n.r_ = r_;
        return n;
    }

    RootExponent abs_value() const {
        RootExponent n;
        n.q_ = abs(q_);
        n.r_ = r_;
        return n;
    }

    /// Exact power: (sign(q)|q|^(1/r))^e = sign(q)^e |q|^(e/r).
    RootExponent pow(unsigned long e) const {
        if (e == 0) return RootExponent(1);
        BigInt mag = big_pow(abs(q_), e);
        if (q_ < 0 && e % 2 == 1) mag = -mag;
        return RootExponent(mag, r_);
    }

    bool operator==(const RootExponent& o) const { return r_ == o.r_ && q_ == o.q_; }

    std::string to_string() const {
        if (r_ == 1) return q_.get_str();
        return (q_ < 0 ? "-(" : "(") + BigInt(abs(q_)).get_str() + ")^(1/" +
               std::to_string(r_) + ")";
    }

    /// Midpoint double for display; never used in exact decisions.
    double to_double() const {
        double m = std::pow(std::abs(q_.get_d()), 1.0 / static_cast<double>(r_));
        return q_ < 0 ? -m : m;
    }

private:
    void normalize() {
        if (q_ == 0) {
            r_ = 1;
            return;
        }
        if (r_ == 1) return;
        BigInt a = abs(q_);
        if (a == 1) {
            r_ = 1;
            return;
        }
        BigInt s;
        unsigned long t = max_power_exponent(q_, s);
        unsigned long g = std::gcd(t, r_);
        if (g > 1) {
            BigInt mag = big_pow(s, t / g);
            q_ = (q_ < 0) ? BigInt(-mag) : mag;
            r_ /= g;
        }
    }

    BigInt q_;
    unsigned long r_;
};

/// Exact order of the denoted real numbers, by sign analysis and integer
/// cross-powering |qa|^rb vs |qb|^ra. Never touches floating point.
inline std::strong_ordering compare(const RootExponent& a, const RootExponent& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    std::strong_ordering mag = std::strong_ordering::equal;
    if (a.root() == b.root()) {
        mag = cmp(abs(a.radicand()), abs(b.radicand())) <=> 0;
    } else {
        BigInt lhs = big_pow(abs(a.radicand()), b.root());
        BigInt rhs = big_pow(abs(b.radicand()), a.root());
        mag = cmp(lhs, rhs) <=> 0;
    }
    if (sa > 0) return mag;
    if (mag == std::strong_ordering::less) return std::strong_ordering::greater;
    if (mag == std::strong_ordering::greater) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

inline bool operator<(const RootExponent& a, const RootExponent& b) {
    return compare(a, b) == std::strong_ordering::less;
}
inline bool operator<=(const RootExponent& a, const RootExponent& b) {
    return compare(a, b) != std::strong_ordering::greater;
}

inline const RootExponent& min_exp(const RootExponent& a, const RootExponent& b) {
    return b < a ? b : a;
}
inline const RootExponent& max_exp(const RootExponent& a, const RootExponent& b) {
    return a < b ? b : a;
}

}  // namespace zygmund
