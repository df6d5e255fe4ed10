#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "zygmund/bigint.hpp"

namespace zygmund {

/// Exact dyadic rational num * 2^exp, kept canonical (num odd or zero).
class DyadicRational {
public:
    DyadicRational() : num_(0), exp_(0) {}
    DyadicRational(long v) : num_(v), exp_(0) { canonicalize(); }  // NOLINT
    DyadicRational(BigInt num, int64_t exp) : num_(std::move(num)), exp_(exp) {
        canonicalize();
    }

    static DyadicRational pow2(int64_t e) { return DyadicRational(BigInt(1), e); }

    const BigInt& numerator() const { return num_; }
    int64_t exponent() const { return exp_; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return sgn(num_); }

    DyadicRational operator-() const {
        DyadicRational r;
        r.num_ = -num_;
        r.exp_ = exp_;
        return r;
    }

    DyadicRational operator+(const DyadicRational& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        int64_t e = std::min(exp_, o.exp_);
        BigInt n = shifted(num_, exp_ - e) + shifted(o.num_, o.exp_ - e);
        return DyadicRational(std::move(n), e);
    }
    DyadicRational operator-(const DyadicRational& o) const { return *this + (-o); }
    DyadicRational operator*(const DyadicRational& o) const {
        return DyadicRational(num_ * o.num_, exp_ + o.exp_);
    }
    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }

    DyadicRational times_pow2(int64_t e) const {
        if (is_zero()) return {};
        return DyadicRational(num_, exp_ + e);
    }

    std::strong_ordering operator<=>(const DyadicRational& o) const {
        return sgn((*this - o).num_) <=> 0;
    }
    bool operator==(const DyadicRational& o) const {
        return num_ == o.num_ && exp_ == o.exp_;
    }

    double to_double() const {
        if (num_ == 0) return 0.0;
        signed long e2 = 0;
        double d = mpz_get_d_2exp(&e2, num_.get_mpz_t());
        return std::ldexp(d, static_cast<int>(e2 + exp_));
    }

    /// Exact finite decimal expansion.
    std::string to_decimal_string() const {
        if (num_ == 0) return "0";
        if (exp_ >= 0) {
            BigInt v = shifted(num_, exp_);
            return v.get_str();
        }
        uint64_t k = static_cast<uint64_t>(-exp_);
        BigInt scaled = abs(num_) * big_pow(BigInt(5), k);
        std::string digits = scaled.get_str();
        if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
        digits.insert(digits.size() - k, ".");
        if (num_ < 0) digits.insert(0, "-");
        return digits;
    }

    std::string to_string() const {
        return num_.get_str() + "*2^" + std::to_string(exp_);
    }

private:
    static BigInt shifted(const BigInt& v, int64_t k) {
        BigInt r;
        mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        return r;
    }

    void canonicalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), tz);
            exp_ += static_cast<int64_t>(tz);
        }
    }

    BigInt num_;
    int64_t exp_;
};

}  // namespace zygmund
